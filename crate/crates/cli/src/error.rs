use thiserror::Error;

/// Failures surfaced by the command-line front end, each tied to a stable
/// exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("{0}")]
    Core(#[from] rigidity_core::Error),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("invalid campaign configuration: {0}")]
    Config(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NON_REALIZABLE: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use rigidity_core::Error as E;
        match self {
            CliError::Core(E::NonRealizable { .. }) => EXIT_NON_REALIZABLE,
            CliError::Core(E::HypothesisViolated) => EXIT_HYPOTHESIS,
            CliError::Core(E::Postcondition(_)) => EXIT_FAILED,
            _ => EXIT_INPUT,
        }
    }
}
