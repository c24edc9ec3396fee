use thiserror::Error;

use crate::linalg::FieldDesc;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("operands live over different fields ({0} vs {1})")]
    MixedFields(FieldDesc, FieldDesc),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("operation requires a finite field, got {0}")]
    InfiniteField(FieldDesc),
    #[error("enumeration of {q}^{n} vectors exceeds the guardrail (use force to override)")]
    GuardrailExceeded { n: usize, q: u64 },
    #[error("quadratic form is isotropic")]
    IsotropicForm,
    #[error("brute-force envelope exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("symmetrized form is degenerate")]
    DegenerateForm,
    #[error("quadratic form similarity is not supported in characteristic 2")]
    EvenCharacteristic,
    #[error("matrix is not alternate")]
    NotAlternate,
    #[error("equivalence witness is singular")]
    SingularWitness,
    #[error("equivalence witness failed affine-set verification")]
    WitnessMismatch,
    #[error("level sets do not form an invariant flag: {0}")]
    NotAFlag(String),
    #[error("space is not of the form P.Alt_m: {0}")]
    NotPAltForm(String),
    #[error("classification failed: {0}")]
    ClassificationFailed(String),
    #[error("classification over a field with 2 elements is not supported")]
    CharTwoUnsupported,
    #[error("space has dimension {dim}, expected n(n-1)/2 = {expected}")]
    NotMaximal { dim: usize, expected: usize },
    #[error("affine space contains no invertible element")]
    NoInvertibleElement,
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}
