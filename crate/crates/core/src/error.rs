use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("feature space needs at least one feature")]
    NoFeatures,
    #[error("feature {feature} has {count} values, at least 2 are required")]
    TooFewValues { feature: usize, count: usize },
    #[error("feature space too large: more than {limit} outcomes")]
    SpaceTooLarge { limit: usize },
    #[error("expected {expected} feature values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value {value} out of range for feature {feature} (0..{count})")]
    ValueOutOfRange { feature: usize, value: usize, count: usize },
    #[error("outcome index {index} out of range (0..{size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("object has no features")]
    EmptyObject,
    #[error("feature {feature} does not exist (features are numbered 1..={n})")]
    FeatureOutOfRange { feature: usize, n: usize },
    #[error("objects scheme is empty")]
    EmptyScheme,
    #[error("objects scheme does not cover feature {feature}")]
    SchemeNotCovering { feature: usize },
    #[error("objects scheme lists object {object} twice")]
    DuplicateObject { object: String },
    #[error("agenda refers to object {index}, scheme has {count}")]
    AgendaIndexOutOfRange { index: usize, count: usize },
    #[error("agenda never visits object {index}")]
    AgendaNotCovering { index: usize },
    #[error("rule file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot parse {what}: {input:?}")]
    Syntax { what: &'static str, input: String },
    #[error("tournament size {got} does not match feature space size {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("agenda run exceeded its step budget of {budget}")]
    StepBudgetExhausted { budget: usize },
    #[error("agenda length bound {bound} is shorter than the number of objects {objects}")]
    AgendaBoundTooSmall { bound: usize, objects: usize },
    #[error("{what} = {value} exceeds the supported limit {limit}")]
    LimitExceeded { what: &'static str, value: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
