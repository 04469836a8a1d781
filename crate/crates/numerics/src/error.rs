use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix 1-norm {norm:.3e} exceeds the exponential range {limit:.3e}")]
    Overflow { norm: f64, limit: f64 },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("eigenvalue {re:.3e}{im:+.3e}i lies on the closed negative real axis")]
    BranchCut { re: f64, im: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("quadrature order {0} is below the minimum 4")]
    OrderTooSmall(usize),
}
