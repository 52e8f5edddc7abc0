use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields (generator orders {0} and {1})")]
    FieldMismatch(u32, u32),
    #[error("generator order {0} is outside the supported range 2..=30")]
    UnsupportedGeneratorOrder(u32),
    #[error("2cos(pi/{label}) is not expressible in Q(2cos(pi/{order}))")]
    NotExpressible { label: u32, order: u32 },
    #[error("cannot parse type symbol `{symbol}`: {reason}")]
    Parse { symbol: String, reason: String },
    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),
    #[error("Coxeter graph is not 2-colourable")]
    NotBipartite,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("order of the Coxeter element exceeds the cap of {0}")]
    OrderCapExceeded(usize),
    #[error("root positivity partition violated at Steinberg index {0}")]
    PositivityViolated(usize),
    #[error("reflection requested for a vector that is not a unit vector")]
    NotUnit,
    #[error("element is not below the Coxeter element: {0}")]
    NotBelowGamma(String),
    #[error("root index {0} is out of range")]
    IndexOutOfRange(i64),
    #[error("compatibility rotation did not reach a negative simple root within {0} steps")]
    RotationCap(usize),
    #[error("{0} is not crystallographic; pass the extension flag to build its associahedron")]
    NonCrystallographic(String),
    #[error("the identity has no simple system")]
    TrivialElement,
    #[error("root index {0} is not in the reflection set of the element")]
    NotInReflectionSet(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
