use thiserror::Error;

use crate::complex::Simplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero direction is not a valid filtration parameter")]
    ZeroDirection,
    #[error("vertex index {0} does not exist")]
    MissingVertex(usize),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(Simplex),
    #[error("{0} is contained in a simplex of dimension > 2")]
    SubdivisionTooDeep(Simplex),
    #[error("enumeration of {candidates} candidate complexes exceeds budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("invalid fixture parameters: {0}")]
    FixtureParams(String),
    #[error("not a clothespin: {0}")]
    NotClothespin(String),
    #[error("clothesline generation failed: {0}")]
    Clothesline(String),
    #[error("filter is not monotone: {face} has a larger value than its coface {coface}")]
    NonMonotone { face: Simplex, coface: Simplex },
    #[error("parameter kind mismatch: {0}")]
    ParameterKind(String),
    #[error("descriptor type mismatch: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("empty direction set")]
    EmptyDirections,
    #[error("halfspace system is infeasible")]
    Infeasible,
    #[error("reference complex is not in the adversary universe")]
    ReferenceNotInUniverse,
    #[error("adversary universe mixes ambient dimensions: {0}")]
    MixedUniverse(String),
    #[error("initial parameters do not separate vertex sets: adversary {0} is indistinguishable")]
    VertexSetsNotSeparated(usize),
    #[error("no candidate distinguishes adversary {0} from the reference complex")]
    Stuck(usize),
    #[error("subset search budget of {0} subsets exhausted")]
    SearchBudgetExhausted(u128),
    #[error("malformed input: {0}")]
    Malformed(String),
}
