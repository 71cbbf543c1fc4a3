use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible radicands sqrt({0}) and sqrt({1})")]
    IncompatibleRadicand(String, String),

    #[error("negative radicand {0}")]
    NegativeRadicand(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("polynomial must have degree >= 1, got {0}")]
    ConstantPolynomial(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parameters outside the regime a, b, d < 0 < c: {0}")]
    Regime(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("roots not separated after {0} bisections")]
    RefinementLimit(usize),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("config: {0}")]
    Config(String),

    #[error("sweep output failed after {written} records: {source}")]
    SweepOutput {
        written: usize,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
