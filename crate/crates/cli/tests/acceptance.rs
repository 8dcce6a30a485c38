//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line
//! each and exits non-zero if any fails. All comparisons are exact.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use rigidity_core::random::{random_conjugate, random_invertible, JordanData};
use rigidity_core::rational::{frac, int};
use rigidity_core::similarity::invariant_factors;
use rigidity_core::{
    centralizer_dimension, fixed_space_dim, similar, stationary_phase, verify_preservation,
    FinitePoint, MonodromyTuple, QMatrix, ThetaPair,
};
use rigidity_lab::campaign::{run_trials, CampaignConfig};
use rigidity_lab::catalog;

const BIN: &str = env!("CARGO_BIN_EXE_rigidity-lab");

const CAMPAIGN_BUDGET: Duration = Duration::from_secs(120);
const MIN_PAIRS: usize = 200;
const MIN_JORDAN: usize = 200;
const MIN_CONJUGATIONS: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `sum_lambda sum_{i,j} min(m_i, m_j)`.
fn partition_formula(data: &JordanData) -> usize {
    data.eigenvalues()
        .iter()
        .map(|l| {
            let p = data.partition(l);
            p.iter().flat_map(|a| p.iter().map(move |b| a.min(b))).sum::<usize>()
        })
        .sum()
}

fn ac1_preservation_campaign() -> Outcome {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args([
            "verify", "--random", "--trials", "500", "--max-rank", "4", "--max-points", "4",
            "--seed", "7",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let summary: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status))?;
    ensure(summary["all_equal"] == Value::Bool(true), || {
        format!("failures: {}", summary["failures"])
    })?;
    ensure(summary["trials_run"] == 500, || "trials_run != 500".into())?;
    ensure(summary["failures"].as_array().is_some_and(Vec::is_empty), || {
        "non-empty failure list".into()
    })?;
    ensure(elapsed < CAMPAIGN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("500/500 equal in {:.1}s", elapsed.as_secs_f64()))
}

fn ac2_katz_criterion() -> Outcome {
    let entries = catalog::builtin();
    let mut checked = Vec::new();
    for e in &entries {
        let expect = match (e.tuple.rank, e.name.as_str()) {
            (1, _) | (_, "hypergeometric2") => Some((2, true)),
            (_, "generic4") => Some((0, false)),
            _ => None,
        };
        let Some((index, rigid)) = expect else { continue };
        let got = (
            e.tuple.rigidity_index().map_err(|x| x.to_string())?,
            e.tuple.is_physically_rigid().map_err(|x| x.to_string())?,
        );
        ensure(got == (index, rigid), || format!("{}: got {got:?}", e.name))?;
        checked.push(e.name.clone());
    }
    ensure(checked.len() >= 5, || format!("only {checked:?} checked"))?;
    Ok(format!("checked {}", checked.join(", ")))
}

fn ac3_worked_example() -> Outcome {
    let t = MonodromyTuple::with_computed_infinity(
        1,
        vec![
            FinitePoint::new(int(0), QMatrix::diag(&[int(2)])),
            FinitePoint::new(int(1), QMatrix::diag(&[int(3)])),
        ],
    )
    .map_err(|e| e.to_string())?;
    ensure(t.infinity_matrix == QMatrix::diag(&[frac(1, 6)]), || "A_inf != 1/6".into())?;
    let d = stationary_phase(&t).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = d.components.iter().map(|c| c.dimension).collect();
    ensure(dims == [1, 1], || format!("component dims {dims:?}"))?;
    ensure(d.rank_hat == 2, || format!("rank_hat {}", d.rank_hat))?;
    ensure(
        similar(&d.zero_monodromy, &QMatrix::diag(&[frac(1, 6), int(1)])),
        || format!("zero monodromy {:?}", d.zero_monodromy),
    )?;
    ensure(d.irregularity_end() == 2, || "irregularity != 2".into())?;
    let r = verify_preservation(&t, false).map_err(|e| e.to_string())?;
    ensure(r.rig_source == 2 && r.rig_fourier == 2, || format!("{r:?}"))?;
    Ok("dims (1,1), rank_hat 2, T0 ~ diag(1/6,1), irregularity 2, rig 2 = 2".into())
}

fn ac4_corollaries() -> Outcome {
    let config = CampaignConfig::default();
    let trials = run_trials(&config).map_err(|e| e.to_string())?;
    let mut checks = 0;
    for t in trials {
        let t = t.map_err(|e| e.to_string())?;
        let tuple = &t.tuple;
        let n = tuple.rank as i64;
        let d = stationary_phase(tuple).map_err(|e| format!("trial {}: {e}", t.index))?;
        for (p, c) in tuple.finite_points.iter().zip(&d.components) {
            let lhs = centralizer_dimension(&p.matrix).unwrap() as i64
                - centralizer_dimension(&c.regular_monodromy).unwrap() as i64;
            let rhs = (n - c.dimension as i64).pow(2);
            ensure(lhs == rhs, || format!("trial {}: finite point {lhs} != {rhs}", t.index))?;
            checks += 1;
        }
        let hat = d.rank_hat as i64;
        let lhs = centralizer_dimension(&tuple.infinity_matrix).unwrap() as i64
            - centralizer_dimension(&d.zero_monodromy).unwrap() as i64;
        ensure(lhs == -(hat - n).pow(2), || format!("trial {}: infinity {lhs}", t.index))?;
        let fixed = fixed_space_dim(&d.zero_monodromy).unwrap() as i64;
        ensure(fixed == hat - n, || format!("trial {}: dim ker {fixed}", t.index))?;
        checks += 2;
    }
    Ok(format!("{checks} exact identities over {} tuples, 0 failures", config.trials))
}

fn ac5_theta_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut with_unit = 0;
    for i in 0..MIN_PAIRS {
        let size = 1 + i % 6;
        let data = JordanData::random(&mut rng, size);
        let t = random_conjugate(&mut rng, &data);
        let pair = ThetaPair::from_star(&t).map_err(|e| e.to_string())?;
        ensure(pair.is_minimal(), || format!("pair {i} not minimal"))?;
        let (lhs, rhs) = pair.centralizer_identity_check().map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("pair {i}: {lhs} != {rhs} for {data:?}"))?;
        if !data.partition(&int(1)).is_empty() {
            with_unit += 1;
        }
    }
    Ok(format!("{MIN_PAIRS} pairs, {with_unit} with unit blocks, lhs = rhs"))
}

fn ac6_centralizer_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..MIN_JORDAN {
        let size = 1 + i % 6;
        let data = JordanData::random(&mut rng, size);
        let a = random_conjugate(&mut rng, &data);
        let got = centralizer_dimension(&a).map_err(|e| e.to_string())?;
        let want = partition_formula(&data);
        ensure(got == want, || format!("matrix {i}: {got} != {want} for {data:?}"))?;
    }
    Ok(format!("{MIN_JORDAN} matrices, Kronecker system = partition formula"))
}

fn ac7_conjugation_invariance() -> Outcome {
    let config = CampaignConfig {
        trials: MIN_CONJUGATIONS,
        seed: 77,
        ..CampaignConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = run_trials(&config).map_err(|e| e.to_string())?;
    for t in trials {
        let t = t.map_err(|e| e.to_string())?;
        let p = random_invertible(&mut rng, t.tuple.rank);
        let c = t.tuple.conjugate_by(&p);
        let err = |e: rigidity_core::Error| format!("trial {}: {e}", t.index);
        ensure(
            c.rigidity_index().map_err(err)? == t.tuple.rigidity_index().map_err(err)?,
            || format!("trial {}: rigidity index changed", t.index),
        )?;
        let (d, e) = (stationary_phase(&t.tuple).map_err(err)?, stationary_phase(&c).map_err(err)?);
        ensure(
            d.rig_fourier().map_err(err)? == e.rig_fourier().map_err(err)?,
            || format!("trial {}: rig_fourier changed", t.index),
        )?;
        ensure(
            invariant_factors(&d.zero_monodromy) == invariant_factors(&e.zero_monodromy),
            || format!("trial {}: T0 left its similarity class", t.index),
        )?;
        for (a, b) in d.components.iter().zip(&e.components) {
            ensure(
                invariant_factors(&a.regular_monodromy) == invariant_factors(&b.regular_monodromy),
                || format!("trial {}: regular part at {} changed class", t.index, a.coefficient),
            )?;
        }
    }
    Ok(format!("{MIN_CONJUGATIONS} conjugated tuples, indices and classes unchanged"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("AC1 preservation campaign (500 trials, rank<=4, points<=4, seed 7)", ac1_preservation_campaign),
        ("AC2 Katz criterion on catalog entries", ac2_katz_criterion),
        ("AC3 worked example (2),(3),(1/6)", ac3_worked_example),
        ("AC4 corollary identities on campaign tuples", ac4_corollaries),
        ("AC5 centralizer identity on minimal pairs", ac5_theta_identity),
        ("AC6 centralizer oracle equivalence", ac6_centralizer_oracle),
        ("AC7 conjugation invariance", ac7_conjugation_invariance),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
