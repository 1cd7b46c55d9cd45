use trackhom::ValidationReport;

/// Failures of a command, each with its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {}", summary(.0))]
    Validation(Vec<ValidationReport>),
    #[error("finiteness gate refused the fixture: {0}")]
    Gate(trackhom::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn summary(reports: &[ValidationReport]) -> String {
    reports
        .iter()
        .filter(|r| !r.is_valid())
        .flat_map(|r| r.violations.iter().map(move |v| format!("{}: {v}", r.subject)))
        .collect::<Vec<_>>()
        .join("; ")
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Gate(_) => 4,
            CliError::Verification(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Internal(_) => "internal",
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Gate(_) => "gate",
            CliError::Verification(_) => "verification",
        }
    }
}

impl From<trackhom::Error> for CliError {
    fn from(e: trackhom::Error) -> Self {
        match e {
            trackhom::Error::CyclicSupport { .. } | trackhom::Error::TooLarge { .. } => CliError::Gate(e),
            trackhom::Error::Invalid(r) => CliError::Validation(vec![*r]),
            other => CliError::Internal(other.to_string()),
        }
    }
}
