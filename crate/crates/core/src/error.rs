use thiserror::Error;

/// Failure modes of the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("not a germ at the origin: f(0,0) != 0")]
    NotAGerm,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not y-regular: {0}")]
    NotYRegular(String),
    #[error("polynomial is not reduced (has a repeated factor)")]
    NotReduced,
    #[error("internal precision cap exceeded: {0}")]
    PrecisionOverflow(String),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("denominator vanishes identically on branch {0}")]
    DenominatorVanishesOnBranch(usize),
    #[error("generator list is empty or vanishes on branch {0:?}")]
    EmptyIdeal(Option<usize>),
    #[error("fiber at t = {0} is not reduced")]
    FiberNotReduced(String),
    #[error("family is not a germ along the t-axis at t = {0}")]
    FiberNotAGerm(String),
    #[error("sample radius {0} exceeds the validity radius")]
    RadiusTooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for malformed input (as opposed to a mathematical precondition).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::InvalidArgument(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
