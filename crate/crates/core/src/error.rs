use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("multiplication table is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element in table")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("generator {index} is not a bijection on {{0..{degree}}}")]
    NotBijection { index: usize, degree: usize },
    #[error("group order cap exceeded: cap {cap}, required at least {required}")]
    OrderCapExceeded { cap: u128, required: u128 },
    #[error("homomorphism enumeration cap exceeded: cap {cap}, required {required} candidate tuples")]
    EnumerationCapExceeded { cap: u128, required: u128 },
    #[error("simplex cap exceeded: cap {cap}, required at least {required}")]
    SizeCapExceeded { cap: usize, required: usize },
    #[error("invalid word: letter {letter} references a generator outside 1..={generators}")]
    InvalidWord { letter: i32, generators: usize },
    #[error("image tuple does not satisfy relator {relator}")]
    RelatorViolated { relator: usize },
    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid type function: {0}")]
    InvalidType(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("complex has no vertex order that is total on simplex {simplex:?}")]
    NoVertexOrder { simplex: Vec<usize> },
    #[error("equivariant complex is not regular: element {element} stabilizes simplex {simplex:?} without fixing it pointwise")]
    NotRegular { element: usize, simplex: Vec<usize> },
    #[error("regularization failed after {subdivisions} subdivisions")]
    RegularizationFailed { subdivisions: usize },
    #[error("bad extension datum: {0}")]
    BadExtension(String),
    #[error("exp requires a series with zero constant term")]
    ExpNonzeroConstant,
    #[error("log requires a series with constant term 1")]
    LogNonunitConstant,
    #[error("series is not invertible (zero constant term)")]
    NonInvertibleSeries,
    #[error("series truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("exponent {0} is not an integer")]
    NonIntegerExponent(String),
    #[error("angle {0} is outside (0, 1]")]
    AngleOutOfRange(String),
    #[error("shift {0} is not an integer")]
    NonIntegerShift(String),
    #[error("exponent of xy {0} is not an integer")]
    NonIntegerExponentOfXy(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for the cap-style failures that callers may want to treat as "infeasible size".
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. } | Error::EnumerationCapExceeded { .. } | Error::SizeCapExceeded { .. }
        )
    }
}
