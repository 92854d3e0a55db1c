use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("expected a homogeneous polynomial of degree {expected}, found a term of degree {found}")]
    NotHomogeneous { expected: usize, found: usize },
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("bracket table is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("not 2-step nilpotent: [e{x}, [e{y}, e{z}]] is nonzero")]
    NotTwoStep { x: usize, y: usize, z: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Gram matrix is not positive definite (leading minor of order {0} is not positive)")]
    NotPositiveDefinite(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("symmetric eigensolver did not converge in degree {0}")]
    EigenFailure(usize),
    #[error("orthonormality residual {residual:e} exceeds tolerance {tol:e}")]
    Numerical { residual: f64, tol: f64 },
    #[error(
        "no abelian subalgebra of dimension {target} found after {explored} search nodes \
         (largest found: {found})"
    )]
    AbelianSearchExhausted {
        target: usize,
        found: usize,
        explored: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
