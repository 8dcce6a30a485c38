//! Subcommand implementations. Each returns an [`Outcome`] instead of
//! printing, so the binary and the tests share one code path.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use rigidity_core::similarity::invariant_factors;
use rigidity_core::{
    centralizer_dimension, rational, stationary_phase, verify_preservation, MonodromyTuple,
    PreservationReport, QMatrix, QPoly, TupleSpec,
};

use crate::campaign::{run_campaign, CampaignConfig, CampaignSummary};
use crate::catalog::{self, CatalogEntry};
use crate::error::{CliError, EXIT_FAILED, EXIT_OK};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &CliError) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }

    fn from_result(r: Result<Outcome, CliError>) -> Self {
        r.unwrap_or_else(|e| Outcome::error(&e))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Reads a tuple from a path, or from stdin when the path is `-`.
pub fn read_tuple(path: &Path) -> Result<MonodromyTuple, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io("stdin".into(), e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?
    };
    parse_tuple(&text)
}

/// Parses and validates tuple JSON. Syntax errors, schema violations and
/// invariant violations are reported separately.
pub fn parse_tuple(text: &str) -> Result<MonodromyTuple, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::MalformedJson(e.to_string()))?;
    let spec: TupleSpec =
        serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?;
    let tuple = spec.into_tuple()?;
    tuple.validate().map_err(rigidity_core::Error::from)?;
    Ok(tuple)
}

fn matrix_text(m: &QMatrix, indent: &str) -> String {
    m.to_string()
        .lines()
        .map(|l| format!("{indent}{l}\n"))
        .collect()
}

pub fn cmd_rig(input: &Path, format: Format) -> Outcome {
    Outcome::from_result((|| {
        let tuple = read_tuple(input)?;
        let report = tuple.rigidity_report()?;
        Ok(Outcome::ok(match format {
            Format::Json => to_json(&report),
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "rank:             {}", report.rank).unwrap();
                writeln!(s, "points:           {} (infinity included)", report.num_points).unwrap();
                writeln!(s, "dim Z(A_i):       {:?}", report.centralizer_dims).unwrap();
                writeln!(s, "rigidity index:   {}", report.index).unwrap();
                writeln!(s, "irreducible:      {}", report.irreducible).unwrap();
                writeln!(s, "physically rigid: {}", report.physically_rigid).unwrap();
                s
            }
        }))
    })())
}

#[derive(Serialize)]
struct ComponentView {
    exp_coefficient: String,
    dimension: usize,
    regular_monodromy: QMatrix,
    centralizer_dim: usize,
}

#[derive(Serialize)]
struct FourierView {
    rank_hat: usize,
    components: Vec<ComponentView>,
    zero_monodromy: QMatrix,
    zero_invariant_factors: Vec<QPoly>,
    zero_centralizer_dim: usize,
    irregularity: usize,
    rig_fourier: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

fn fourier_view(tuple: &MonodromyTuple) -> Result<FourierView, CliError> {
    let data = stationary_phase(tuple)?;
    let components = data
        .components
        .iter()
        .map(|c| {
            Ok(ComponentView {
                exp_coefficient: rational::format(&c.coefficient),
                dimension: c.dimension,
                centralizer_dim: centralizer_dimension(&c.regular_monodromy)?,
                regular_monodromy: c.regular_monodromy.clone(),
            })
        })
        .collect::<Result<Vec<_>, rigidity_core::Error>>()?;
    Ok(FourierView {
        rank_hat: data.rank_hat,
        components,
        zero_invariant_factors: invariant_factors(&data.zero_monodromy).invariant_factors,
        zero_centralizer_dim: centralizer_dimension(&data.zero_monodromy)?,
        irregularity: data.irregularity_end(),
        rig_fourier: data.rig_fourier()?,
        zero_monodromy: data.zero_monodromy,
        warnings: data.warnings,
    })
}

pub fn cmd_fourier(input: &Path, format: Format) -> Outcome {
    Outcome::from_result((|| {
        let tuple = read_tuple(input)?;
        let view = fourier_view(&tuple)?;
        let mut out = Outcome::ok(match format {
            Format::Json => to_json(&view),
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "rank_hat: {}", view.rank_hat).unwrap();
                for c in &view.components {
                    writeln!(
                        s,
                        "component E^({}/tau): dimension {}, dim Z = {}",
                        c.exp_coefficient, c.dimension, c.centralizer_dim
                    )
                    .unwrap();
                    s.push_str(&matrix_text(&c.regular_monodromy, "    "));
                }
                writeln!(s, "monodromy at 0 (dim Z = {}):", view.zero_centralizer_dim).unwrap();
                s.push_str(&matrix_text(&view.zero_monodromy, "    "));
                let factors: Vec<String> =
                    view.zero_invariant_factors.iter().map(ToString::to_string).collect();
                writeln!(s, "invariant factors at 0: [{}]", factors.join(", ")).unwrap();
                writeln!(s, "irregularity at infinity: {}", view.irregularity).unwrap();
                writeln!(s, "rig(M_F): {}", view.rig_fourier).unwrap();
                s
            }
        });
        for w in &view.warnings {
            writeln!(out.stderr, "warning: {w}").unwrap();
        }
        Ok(out)
    })())
}

fn report_text(r: &PreservationReport) -> String {
    let mut s = String::new();
    writeln!(s, "rig(M)   = {}", r.rig_source).unwrap();
    writeln!(s, "rig(M_F) = {}", r.rig_fourier).unwrap();
    writeln!(s, "equal:     {}", r.equal).unwrap();
    for id in &r.per_point_identities {
        writeln!(
            s,
            "  {:>10}: {} = {} {}",
            id.point,
            id.lhs,
            id.rhs,
            if id.holds() { "ok" } else { "FAILED" }
        )
        .unwrap();
    }
    writeln!(s, "irregularity at infinity: {}", r.irregularity).unwrap();
    if !r.hypothesis_holds {
        writeln!(s, "(forced on a reducible tuple; equality is not claimed)").unwrap();
    }
    s
}

pub fn cmd_verify(input: &Path, force: bool, format: Format) -> Outcome {
    Outcome::from_result((|| {
        let tuple = read_tuple(input)?;
        let report = verify_preservation(&tuple, force)?;
        let stdout = match format {
            Format::Json => to_json(&report),
            Format::Text => report_text(&report),
        };
        let asserted = report.hypothesis_holds;
        let code = if !asserted || (report.equal && report.identities_hold()) {
            EXIT_OK
        } else {
            EXIT_FAILED
        };
        let stderr = if asserted {
            String::new()
        } else {
            "warning: tuple is reducible; report printed without asserting equality\n".into()
        };
        Ok(Outcome {
            code,
            stdout,
            stderr,
        })
    })())
}

fn summary_text(s: &CampaignSummary) -> String {
    let mut out = String::new();
    let c = &s.config;
    writeln!(
        out,
        "campaign: {} trials, rank <= {}, finite points <= {}, seed {}",
        c.trials, c.max_rank, c.max_points, c.seed
    )
    .unwrap();
    writeln!(out, "identities checked:  {}", s.identities_checked).unwrap();
    writeln!(out, "reducible discarded: {}", s.discarded_reducible).unwrap();
    writeln!(out, "all equal:           {}", s.all_equal).unwrap();
    for f in &s.failures {
        writeln!(out, "  trial {} (seed {}): {}", f.trial, f.seed, f.reason).unwrap();
    }
    out
}

pub fn cmd_verify_random(config: &CampaignConfig, format: Format) -> Outcome {
    Outcome::from_result((|| {
        let summary = run_campaign(config)?;
        Ok(Outcome {
            code: if summary.all_equal { EXIT_OK } else { EXIT_FAILED },
            stdout: match format {
                Format::Json => to_json(&summary),
                Format::Text => summary_text(&summary),
            },
            stderr: String::new(),
        })
    })())
}

#[derive(Serialize)]
struct ListedEntry<'a> {
    name: &'a str,
    description: &'a str,
    rank: usize,
    num_points: usize,
    expected_index: i64,
    expected_rigid: bool,
}

fn listed(e: &CatalogEntry) -> ListedEntry<'_> {
    ListedEntry {
        name: &e.name,
        description: &e.description,
        rank: e.tuple.rank,
        num_points: e.tuple.num_points(),
        expected_index: e.expected_index,
        expected_rigid: e.expected_rigid,
    }
}

pub fn cmd_catalog_list(format: Format) -> Outcome {
    Outcome::from_result((|| {
        let entries = catalog::load()?;
        Ok(Outcome::ok(match format {
            Format::Json => to_json(&entries.iter().map(listed).collect::<Vec<_>>()),
            Format::Text => entries
                .iter()
                .map(|e| {
                    format!(
                        "{:<20} rank {} points {} index {:>3} rigid {:<5} {}\n",
                        e.name,
                        e.tuple.rank,
                        e.tuple.num_points(),
                        e.expected_index,
                        e.expected_rigid,
                        e.description
                    )
                })
                .collect(),
        }))
    })())
}

/// Emits the tuple JSON of an entry, ready to feed to the other commands.
pub fn cmd_catalog_show(name: &str) -> Outcome {
    Outcome::from_result(catalog::find(name).map(|e| Outcome::ok(to_json(&e.tuple))))
}
