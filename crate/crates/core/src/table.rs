//! Coefficient tables of scalar kernels.

use serde::Serialize;

use crate::linalg::CMatrix;
use crate::numeric::threshold;
use crate::verdict::Verdict;
use crate::C64;

/// Basis in which a coefficient table is expressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Coefficients of `z^m conj(w)^n` of an analytic-model kernel, with the
    /// one-dimensional wandering space identified with the scalars.
    Wandering,
    /// Coefficients of `z^m conj(w)^n` of a scalar kernel on the disc.
    Monomial,
}

/// `X[m][n]` for `0 <= m, n <= max_index`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub entries: CMatrix,
    pub basis: Basis,
    /// Largest entry change when the working window was doubled, if measured.
    pub doubling_deviation: Option<f64>,
}

impl CoefficientTable {
    pub fn new(entries: CMatrix, basis: Basis) -> Self {
        assert!(entries.is_square() && entries.rows() > 0);
        CoefficientTable {
            entries,
            basis,
            doubling_deviation: None,
        }
    }

    pub fn max_index(&self) -> usize {
        self.entries.rows() - 1
    }

    pub fn get(&self, m: usize, n: usize) -> C64 {
        self.entries[(m, n)]
    }

    /// Off-band entries `(m, n)` with `n >= m + 2` in row-major order.
    pub fn off_band(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let top = self.max_index();
        (0..=top).flat_map(move |m| ((m + 2)..=top).map(move |n| (m, n, self.get(m, n).norm())))
    }

    /// Largest off-band modulus.
    pub fn off_band_max(&self) -> f64 {
        self.off_band().map(|x| x.2).fold(0.0, f64::max)
    }

    /// Tolerance relative to the largest entry in the table.
    pub fn tolerance(&self) -> f64 {
        threshold(self.entries.max_abs())
    }

    /// Tridiagonality of the kernel: every off-band entry vanishes. Hermitian
    /// symmetry makes the upper triangle sufficient.
    pub fn tridiagonal_verdict(&self) -> Verdict {
        Verdict::all_zero(self.off_band(), self.tolerance())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.entries.hermitian_defect() <= tol * self.entries.max_abs().max(1.0)
    }
}
