//! Exit-code contract: 0 ok, 1 I/O, 2 usage or parse, 3 numerical failure,
//! 4 resource or budget.

use std::fmt;

use coupled_array::{ModelError, OptError, SweepError};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    pub fn budget(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Self {
            code: 1,
            message: format!("{e:#}"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::SingularCoupling { .. } => Self::numerical(format!("SingularCoupling: {e}")),
            other => Self::usage(other.to_string()),
        }
    }
}

impl From<OptError> for Failure {
    fn from(e: OptError) -> Self {
        let text = format!("{}: {e}", e.name());
        match e {
            OptError::GridExhausted { .. } | OptError::BudgetExceeded { .. } => Self::budget(text),
            OptError::Model(m) => m.into(),
            _ => Self::usage(text),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Model(m) => m.into(),
            other => Self::usage(other.to_string()),
        }
    }
}
