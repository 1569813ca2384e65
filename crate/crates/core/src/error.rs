use thiserror::Error;

use crate::dual::Flavor;

/// Errors raised by the algebra, the rule systems and the model engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u32),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("flavor mismatch: {left} vs {right}")]
    FlavorMismatch { left: Flavor, right: Flavor },

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u32, modulus: u32 },

    #[error("not a valid {flavor} symmetry: {reason}")]
    InvalidSymmetry { flavor: Flavor, reason: String },

    #[error("invalid dichotomy: {0}")]
    InvalidDichotomy(String),

    #[error("dichotomy is not strong: {count} polarity symmetries found")]
    NotStrong { count: usize },

    #[error("{0} is not a consonance")]
    NotConsonant(u32),

    #[error("preliminary rule violated: {0}")]
    PreliminaryRule(String),

    #[error("symmetry has nonzero translation part u = {0}")]
    NonZeroTranslation(u32),

    #[error("no strict preimage for reduced progression {0}")]
    EmptyPreimage(String),

    #[error("{0} requires modulus 12")]
    RequiresTwelve(&'static str),

    #[error("invalid scale: {0}")]
    InvalidScale(String),

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),

    #[error("formula/oracle disagreement: {0}")]
    OracleDisagreement(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
