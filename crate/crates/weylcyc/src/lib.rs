//! Exact computer algebra for the polynomial Weyl algebra and its cyclic cocycles.
//!
//! The crate constructs the Hochschild cocycle `tau_2n` of the Weyl algebra
//! `A_2n` (evaluation-at-zero composed with a Bernoulli-weighted exponential
//! bidifferential operator integrated over a simplex, composed with a
//! determinant of partial derivatives), its lowered components `tau_2k`, the
//! cyclic extension and the matrix extension over `A_2n ⊗ gl_r`, and checks
//! the identities these objects satisfy — cocycle equations, sp-basicness,
//! cyclicity, Bernoulli integral lemmas and the cochain-level comparison with
//! the A-roof-genus/Chern-character Chern–Weil classes.
//!
//! All arithmetic is exact. The core math is generic over a [`Scalar`] type;
//! the artifact instantiates everything at arbitrary-precision rationals via
//! the aliases below ([`Rat`], [`Poly`], [`Mat`], ...). No floating point is
//! used anywhere in the computation paths.

pub mod bernoulli;
pub mod chain;
pub mod cochain;
pub mod cocycle;
pub mod liecw;
pub mod linalg;
pub mod matrix;
pub mod mono;
pub mod parse;
pub mod perm;
pub mod scalar;
pub mod suite;
pub mod weyl;

pub use scalar::{frac, int, Rat, Scalar};

/// Concrete Weyl polynomial over exact rationals.
pub type Poly = weyl::WeylPoly<Rat>;
/// Concrete quadratic (symplectic Lie algebra) element.
pub type Sp = weyl::SpElement<Rat>;
/// Concrete matrix-valued Weyl element of `A_2n ⊗ gl_r`.
pub type Mat = matrix::MatrixElement<Rat>;
/// Concrete dense rational matrix.
pub type RMat = linalg::RMatrix<Rat>;
/// Concrete chain over scalar Weyl polynomials.
pub type PolyChain = chain::Chain<Poly>;
/// Concrete chain over matrix Weyl elements.
pub type MatChain = chain::Chain<Mat>;
/// Concrete cochain handle on the scalar complex.
pub type PolyCochain = cochain::Cochain<Poly>;
/// Concrete cochain handle on the matrix complex.
pub type MatCochain = cochain::Cochain<Mat>;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected n={expected}, got n={got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix size mismatch: expected r={expected}, got r={got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("polynomial of total degree {degree} exceeds degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("expansion exceeds plan cap {cap}")]
    PlanCapExceeded { cap: u64 },
    #[error("integration dimension {dim} exceeds chamber cap {cap}")]
    ChamberCapExceeded { dim: usize, cap: usize },
    #[error("chain degree mismatch: cochain has degree {expected}, chain has degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("operator undefined on cochains of degree {degree}")]
    DegreeTooSmall { degree: usize },
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("element is not homogeneous quadratic")]
    NotQuadratic,
    #[error("malformed region: {0}")]
    MalformedRegion(String),
    #[error("word length {got} does not match expected {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
