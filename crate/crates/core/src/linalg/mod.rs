//! Dense complex linear algebra used by the operator windows.

mod cholesky;
mod eigen;
mod matrix;

pub use cholesky::cholesky;
pub use eigen::{hermitian_inverse, hermitian_sqrt, HermitianEigen, HERMITIAN_TOL, PD_TOL};
pub use matrix::{inner, norm_sq, CMatrix};
