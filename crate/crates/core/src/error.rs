use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("a dimension vector needs at least two entries, got {0}")]
    TooShort(usize),

    #[error("rank vector {ranks:?} is not admissible for dims {dims:?}: r_{next} + r_{index} exceeds d_{index}", next = .index + 1)]
    Inadmissible { dims: Vec<u64>, ranks: Vec<u64>, index: usize },

    #[error("homology vector is infeasible at index {index}: chi_{index}(h) = {homology} but chi_{index}(d) = {dims}")]
    InfeasibleHomology { index: usize, homology: BigInt, dims: BigInt },

    #[error("no exact complex exists: chi_{index}(d) = {value}{}", exact_hint(.value))]
    ExactHypothesis { index: usize, value: BigInt },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("maps do not form a complex: M_{next} * M_{index} is nonzero", next = .index + 1)]
    NotAComplex { index: usize },

    #[error("block {0} of the group element is singular")]
    Singular(usize),

    #[error("no generic sample found after {0} attempts")]
    SamplingFailed(usize),

    #[error("ambient mismatch: P^{0} against P^{1}")]
    AmbientMismatch(usize, usize),

    #[error("degenerate twist: {left} + {right} = 0")]
    DegenerateTwist { left: i64, right: i64 },

    #[error("expected a {expected}-form, got a {found}-form")]
    FormDegree { expected: usize, found: usize },

    #[error("invalid twisted form: {0}")]
    InvalidForm(String),

    #[error("form is not in the span of the basis")]
    NotInSpan,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("form is not integrable")]
    NotIntegrable,

    #[error("parse error: {0}")]
    Parse(String),
}

fn exact_hint(value: &BigInt) -> &'static str {
    if value.is_negative() {
        " < 0"
    } else {
        " but the last one must vanish"
    }
}
