//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! matrix functions (inverse, square root, real powers) built on it.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};
use crate::C64;

const MAX_SWEEPS: usize = 100;

/// Relative Hermitian-symmetry tolerance accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative positive-definiteness threshold: `min eig > PD_TOL * max eig`.
pub const PD_TOL: f64 = 1e-12;

/// `A = V diag(values) V*` with `values` ascending and `V` unitary.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(a: &CMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let defect = a.hermitian_defect();
        if defect > HERMITIAN_TOL * a.max_abs().max(1.0) {
            return Err(Error::NotHermitian { deviation: defect });
        }
        Ok(jacobi(a))
    }

    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Fails unless every eigenvalue clears `PD_TOL` relative to the largest.
    pub fn require_positive_definite(&self) -> Result<()> {
        let max = self.max_value();
        let min = self.min_value();
        if !(max > 0.0) || min <= PD_TOL * max {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
        }
        Ok(())
    }

    /// `V diag(f(values)) V*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fl: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..n {
                    s += v[(i, k)] * fl[k] * v[(j, k)].conj();
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        }
        out
    }

    /// `A^s` on the positive branch. Requires positive definiteness.
    pub fn power(&self, s: f64) -> Result<CMatrix> {
        self.require_positive_definite()?;
        Ok(self.map(|x| x.powf(s)))
    }
}

/// Inverse of a Hermitian positive-definite matrix.
pub fn hermitian_inverse(a: &CMatrix) -> Result<CMatrix> {
    HermitianEigen::new(a)?.power(-1.0)
}

/// Positive square root of a Hermitian positive-definite matrix.
pub fn hermitian_sqrt(a: &CMatrix) -> Result<CMatrix> {
    HermitianEigen::new(a)?.power(0.5)
}

fn off_diagonal_sq(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn jacobi(input: &CMatrix) -> HermitianEigen {
    let n = input.rows();
    // Symmetrize so roundoff in the input cannot leak into the rotations.
    let mut a = CMatrix::from_fn(n, n, |i, j| 0.5 * (input[(i, j)] + input[(j, i)].conj()));
    let mut v = CMatrix::identity(n);
    let total: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)].norm_sqr())
        .sum();
    let target = (f64::EPSILON * f64::EPSILON) * total.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sq(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[(i, i)].re, i)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let values = pairs.iter().map(|p| p.0).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| v[(i, pairs[k].1)]);
    HermitianEigen { values, vectors }
}

/// One rotation zeroing `a[p][q]`. The 2x2 unitary is `D R`, where
/// `D = diag(1, e^{-i phi})` strips the phase of `a[p][q]` and `R` is the real
/// symmetric Jacobi rotation of the resulting real block.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let em = phase.conj(); // e^{-i phi}
    let ep = phase; // e^{+i phi}
    let n = a.rows();

    // Columns: A <- A V.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * (s * em);
        a[(k, q)] = akp * s + akq * (c * em);
    }
    // Rows: A <- V* A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * (s * ep);
        a[(q, k)] = apk * s + aqk * (c * ep);
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * (s * em);
        v[(k, q)] = vkp * s + vkq * (c * em);
    }
}
