use thiserror::Error;

use crate::scalar::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("variable universe mismatch")]
    VariableMismatch,
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not parity-homogeneous")]
    NonHomogeneous,
    #[error("product of basis vectors {0} and {1} violates the declared grading")]
    GradingViolation(String, String),
    #[error("unit vector is not a two-sided identity (fails on `{0}`)")]
    BadUnit(String),
    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("element lies outside the identified M2 block")]
    OutsideM2,
    #[error("matrix-unit relations violated: {0}")]
    MatrixUnitRelations(String),
    #[error("algebra is not commutative: {0}")]
    NotCommutative(String),
    #[error("algebra is not associative: {0}")]
    NotAssociative(String),
    #[error("algebra has no unit: {0}")]
    NoUnit(String),
    #[error("Gamma-algebra conditions fail: {0}")]
    GammaConditions(String),
    #[error("bracket module invariant violated: {0}")]
    BracketModule(String),
    #[error("map is not an algebra homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map does not respect the grading: {0}")]
    NotGraded(String),
    #[error("map is not bijective (rank {rank} of {dim})")]
    NotBijective { rank: usize, dim: usize },
    #[error("envelope map does not fix 1*{0}")]
    NotM2Fixing(String),
    #[error(
        "envelope map is not induced by a Gamma-morphism: image of {basis} has a nonzero {component} \
         component, but (1*{unit})(image) = image forces it to vanish"
    )]
    ForcingViolation {
        basis: String,
        component: String,
        unit: String,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("odd weight required, got {0}")]
    EvenWeight(usize),
    #[error("signature mismatch: ({0}, {1}) vs ({2}, {3})")]
    SignatureMismatch(usize, usize, usize, usize),
    #[error("assignment violates parity: {0}")]
    ParityViolation(String),
    #[error("embedding oracle requires no even generators")]
    EvenGeneratorsPresent,
    #[error("singular matrix")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}
