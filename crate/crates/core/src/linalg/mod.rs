//! Small dense and tridiagonal solvers used by the quadrature rules and the
//! Schmidt-spectrum oracle.

mod svd;
mod sym_eigen;
mod tridiag;

pub use svd::{singular_values, MAX_SWEEPS as SVD_MAX_SWEEPS, OFF_DIAGONAL_TOLERANCE};
pub use sym_eigen::symmetric_eigenvalues;
pub use tridiag::{tridiagonal_eigen, TridiagonalEigen, MAX_QL_ITERATIONS};
