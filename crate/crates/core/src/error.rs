use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("ring mismatch: cannot combine an {0} class with an {1} class")]
    RingMismatch(&'static str, &'static str),
    #[error("degree error: degree {degree} exceeds complex dimension {dim}")]
    Degree { degree: usize, dim: usize },
    #[error("cochain of degree {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("cochain length {got} does not match the {expected} simplices of degree {degree}")]
    CochainLength {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("coordinate vector length {got} does not match rank {expected} of H^{degree}")]
    CoordLength {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("cup-{i} index out of range for degrees {p} and {q}")]
    CupIndex { i: usize, p: usize, q: usize },
    #[error("not a pseudo-manifold / top homology not rank 1 over {ring} (rank {rank})")]
    NoFundamentalClass { ring: &'static str, rank: usize },
    #[error("duality pairing singular in degree {0}")]
    PairingSingular(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} not 4m")]
    NotFourM(usize),
    #[error("non-orientable (no integral fundamental class)")]
    NonOrientable,
    #[error("pairing singular on torsion-free part")]
    FormSingular,
    #[error("singular quadratic form")]
    SingularForm,
    #[error("quadratic form is not integral")]
    NonIntegral,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("zero has no p-adic decomposition")]
    ZeroValuation,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
