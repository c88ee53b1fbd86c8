use std::path::PathBuf;

use serde_json::{json, Value};
use thiserror::Error;
use torica_core::cone::ConeError;
use torica_core::divisor::DivisorError;
use torica_core::polyring::PolyError;
use torica_core::toric::ToricError;

/// Exit code for domain failures (failed checks, unsupported input).
pub const EXIT_DOMAIN: i32 = 1;
/// Exit code for usage errors and malformed input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("field {0} refused: need an odd prime below 2^31")]
    BadField(u64),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error("{} check(s) failed: {}", .0.len(), .0.join(", "))]
    VerifyFailed(Vec<String>),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io { path: path.into(), source }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "USAGE",
            CliError::BadField(_) => "BAD_FIELD",
            CliError::Json(_) => "BAD_JSON",
            CliError::Io { .. } => "IO",
            CliError::Poly(e) => match e {
                PolyError::InconclusiveAtBound { .. } => "INCONCLUSIVE",
                PolyError::NotHomogeneous(_) => "NOT_HOMOGENEOUS",
                PolyError::RingMismatch => "RING_MISMATCH",
                PolyError::NotPrime(_) => "BAD_FIELD",
                PolyError::Parse { .. } | PolyError::UnknownVariable(_) | PolyError::BadVariable(_) => "BAD_POLYNOMIAL",
            },
            CliError::Cone(e) => cone_code(e),
            CliError::Toric(e) => match e {
                ToricError::InfiniteCokernel(_) => "INFINITE_COKERNEL",
                ToricError::NotInSemigroup(_) => "NOT_IN_SEMIGROUP",
                ToricError::EvenCharacteristic => "BAD_FIELD",
                ToricError::VariableCount { .. } | ToricError::Matrix(_) => "SHAPE",
                ToricError::Poly(_) => "BAD_POLYNOMIAL",
                _ => "TORIC",
            },
            CliError::Divisor(e) => match e {
                DivisorError::Cone(c) => cone_code(c),
                DivisorError::NonUnique { .. } => "NON_UNIQUE",
                DivisorError::NoSolution => "NO_SOLUTION",
                DivisorError::VarietyMismatch { .. } => "VARIETY_MISMATCH",
                DivisorError::CoefficientCount { .. } | DivisorError::ClassShape { .. } => "SHAPE",
                DivisorError::NotFullDimensional => "NOT_FULL_DIMENSIONAL",
                DivisorError::Unsupported(_) => "UNSUPPORTED",
                DivisorError::NoCertificate(_) => "INCONCLUSIVE",
            },
            CliError::VerifyFailed(_) => "VERIFY_FAILED",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::BadField(_) | CliError::Json(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Poly(PolyError::Parse { .. } | PolyError::UnknownVariable(_) | PolyError::BadVariable(_))
            | CliError::Poly(PolyError::NotPrime(_))
            | CliError::Cone(ConeError::BadGenerator { .. })
            | CliError::Toric(ToricError::VariableCount { .. } | ToricError::Matrix(_) | ToricError::Poly(_))
            | CliError::Divisor(DivisorError::CoefficientCount { .. }) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        }
    }

    /// `{"error": {"code": ..., "message": ..., ...}}`.
    pub fn to_json(&self) -> Value {
        let mut body = json!({ "code": self.code(), "message": self.to_string(), "exit": self.exit_code() });
        match self {
            CliError::Divisor(DivisorError::NonUnique { count }) => body["count"] = json!(count),
            CliError::Poly(PolyError::InconclusiveAtBound { bound, needed }) => {
                body["bound"] = json!(bound);
                body["needed"] = json!(needed);
            }
            CliError::VerifyFailed(ids) => body["failed"] = json!(ids),
            _ => {}
        }
        json!({ "error": body })
    }
}

fn cone_code(e: &ConeError) -> &'static str {
    match e {
        ConeError::NotStronglyConvex => "NOT_STRONGLY_CONVEX",
        ConeError::NotPointed => "NOT_POINTED",
        ConeError::BadGenerator { .. } => "BAD_GENERATOR",
        ConeError::Overflow => "OVERFLOW",
    }
}
