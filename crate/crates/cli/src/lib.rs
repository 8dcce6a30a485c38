//! Front end for rigidity index computations: tuple ingestion, reports,
//! the example catalog and seeded verification campaigns.
//!
//! Exit codes are a stable contract: 0 success, 1 a verification failed,
//! 2 input or validation error, 3 non-realizable reconstruction at zero,
//! 4 the theorem hypothesis (irreducibility) does not hold.

pub mod campaign;
pub mod catalog;
pub mod commands;
pub mod error;

pub use campaign::{run_campaign, CampaignConfig, CampaignSummary};
pub use catalog::CatalogEntry;
pub use commands::{Format, Outcome};
pub use error::CliError;
