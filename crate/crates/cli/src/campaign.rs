//! Seeded randomized verification of rigidity index preservation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use rigidity_core::{random_tuple, verify_preservation, MonodromyTuple, PreservationReport};

use crate::error::CliError;

/// Redraws allowed per trial before it is reported as a failure.
const MAX_REDRAWS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignConfig {
    pub trials: usize,
    pub max_rank: usize,
    /// Upper bound on the number of finite singular points.
    pub max_points: usize,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            trials: 500,
            max_rank: 4,
            max_points: 4,
            seed: 7,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 || self.max_rank == 0 || self.max_points == 0 {
            return Err(CliError::Config(
                "trials, max-rank and max-points must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub trials_run: usize,
    pub all_equal: bool,
    /// Per-point corollary identities checked across all trials.
    pub identities_checked: usize,
    pub discarded_reducible: usize,
    pub failures: Vec<TrialFailure>,
}

/// One completed trial: the tuple that was checked and its report.
#[derive(Clone, Debug)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    pub tuple: MonodromyTuple,
    pub discarded: usize,
    pub report: Result<PreservationReport, rigidity_core::Error>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index`; independent of how trials are scheduled.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

/// Draws an irreducible tuple for one trial. The rank is fixed by the
/// first draw; reducible draws are discarded and the number of points is
/// redrawn with the tuple, since for rank >= 2 a single finite point always
/// gives a commutative, hence reducible, monodromy group.
pub fn draw_trial_tuple(config: &CampaignConfig, seed: u64) -> Result<(MonodromyTuple, usize), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rng.gen_range(1..=config.max_rank);
    for discarded in 0..MAX_REDRAWS {
        let k = rng.gen_range(1..=config.max_points);
        let tuple = random_tuple(rank, k, rng.gen())?;
        if tuple.is_irreducible()? {
            return Ok((tuple, discarded));
        }
    }
    Err(CliError::Config(format!(
        "no irreducible tuple of rank {rank} with at most {} points after {MAX_REDRAWS} draws",
        config.max_points
    )))
}

pub fn run_trial(config: &CampaignConfig, index: usize) -> Result<Trial, CliError> {
    let seed = trial_seed(config.seed, index);
    let (tuple, discarded) = draw_trial_tuple(config, seed)?;
    let report = verify_preservation(&tuple, false);
    Ok(Trial {
        index,
        seed,
        tuple,
        discarded,
        report,
    })
}

fn failure_reason(trial: &Trial) -> Option<String> {
    match &trial.report {
        Err(e) => Some(e.to_string()),
        Ok(r) if !r.equal => Some(format!(
            "rig_source {} != rig_fourier {}",
            r.rig_source, r.rig_fourier
        )),
        Ok(r) => r
            .per_point_identities
            .iter()
            .find(|id| !id.holds())
            .map(|id| format!("identity at {} fails: {} != {}", id.point, id.lhs, id.rhs)),
    }
}

/// Runs every trial (in parallel) and aggregates in trial order.
pub fn run_trials(config: &CampaignConfig) -> Result<Vec<Result<Trial, CliError>>, CliError> {
    config.validate()?;
    Ok((0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect())
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary, CliError> {
    let trials = run_trials(config)?;
    let mut failures = Vec::new();
    let mut identities_checked = 0;
    let mut discarded_reducible = 0;
    for (i, t) in trials.into_iter().enumerate() {
        match t {
            Ok(t) => {
                discarded_reducible += t.discarded;
                if let Ok(r) = &t.report {
                    identities_checked += r.per_point_identities.len();
                }
                if let Some(reason) = failure_reason(&t) {
                    failures.push(TrialFailure {
                        trial: t.index,
                        seed: t.seed,
                        reason,
                    });
                }
            }
            Err(e) => failures.push(TrialFailure {
                trial: i,
                seed: trial_seed(config.seed, i),
                reason: e.to_string(),
            }),
        }
    }
    Ok(CampaignSummary {
        config: *config,
        trials_run: config.trials,
        all_equal: failures.is_empty(),
        identities_checked,
        discarded_reducible,
        failures,
    })
}
