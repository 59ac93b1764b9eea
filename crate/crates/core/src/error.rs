use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("precision exhausted: no nonzero coefficient is known")]
    PrecisionExhausted,
    #[error("series precision does not reach the constant term")]
    InsufficientPrecision,
    #[error("{0} is not a power of the characteristic")]
    NotAFrobeniusPower(u64),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("dominant-root condition failed at partial quotient {position}")]
    DominantRootViolation { position: usize },
    #[error("equation has a vanishing leading coefficient")]
    DegenerateLeading,
    #[error("derivative vanishes at the root; Newton iteration does not apply")]
    SingularRoot,
    #[error("Newton iteration did not converge")]
    NoConvergence,
    #[error("precision budget of {budget} coefficients exceeded ({certified} letters certified)")]
    PrecisionBudgetExceeded { budget: usize, certified: usize },
    #[error("engine produced partial quotient {position} inconsistent with the known prefix")]
    InconsistentExpansion { position: usize },
    #[error("degenerate transformation: UZ - VW = 0")]
    DegenerateTransformation,
    #[error("family {0} has no defining equation")]
    UnsupportedFamily(String),
    #[error("B_{n} is not a polynomial: division by T^2 - 1 leaves a remainder")]
    NonDivisible { n: usize },
    #[error("no closed form known for {0}")]
    NoClosedForm(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
