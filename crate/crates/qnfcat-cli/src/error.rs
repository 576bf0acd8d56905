use qnfcat::oracle::OracleError;
use qnfcat::potentials::PotentialError;
use qnfcat::qnf::QnfError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{op}: {source}")]
    Numeric {
        op: &'static str,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn numeric(op: &'static str, e: impl std::error::Error + Send + Sync + 'static) -> Self {
        CliError::Numeric {
            op,
            source: Box::new(e),
        }
    }
}

impl From<PotentialError> for CliError {
    fn from(e: PotentialError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<QnfError> for CliError {
    fn from(e: QnfError) -> Self {
        CliError::numeric("qnf", e)
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::numeric("oracle", e)
    }
}
