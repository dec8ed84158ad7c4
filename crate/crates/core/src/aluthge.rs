//! Polar decomposition and Aluthge transform of the shift, the rank-one
//! correction `F`, and the Shimorin-Aluthge and standard Aluthge kernels.
//!
//! `|M_z|^-2 = L L*` is a finite dense block followed by a diagonal, so every
//! real power of `|M_z|` has the same shape and its window is exact once the
//! block fits. The same holds for `M_z* |M_z| M_z`. Products whose inner index
//! runs below the window (anything with `M_z*` on the left) are taken on a
//! window enlarged by `pad` and cut back.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{basis_to_monomial, require_analytic, KernelSpec};
use crate::linalg::{hermitian_inverse, norm_sq, CMatrix, HermitianEigen};
use crate::shimorin::gram_table;
use crate::table::{Basis, CoefficientTable};
use crate::window::{l_matrix, mz_matrix};
use crate::C64;

/// Largest entry change tolerated between a window and its double.
pub const DOUBLING_LIMIT: f64 = 1e-8;

/// Windows of the polar and Aluthge data of `M_z`, all of size `dim`.
#[derive(Clone, Debug)]
pub struct AluthgeData {
    pub dim: usize,
    /// Leading block on which products are exact.
    pub interior: usize,
    pub mz: CMatrix,
    pub mod_inv_sq: CMatrix,
    pub mod_window: CMatrix,
    pub mod_inv: CMatrix,
    pub mod_sqrt: CMatrix,
    pub mod_inv_sqrt: CMatrix,
    /// `U = M_z |M_z|^-1`.
    pub partial_isometry: CMatrix,
    /// `|M_z|^(1/2) M_z |M_z|^(-1/2)`.
    pub tilde_window: CMatrix,
    /// `(M_z* |M_z| M_z)^-1`.
    pub gram_inv: CMatrix,
    /// `v` with `F g = <g, f_0> v`.
    pub f_vector: Vec<C64>,
}

/// Padding for a spec: enough for the dense block and two shifts past it.
fn working_pad(spec: &KernelSpec) -> usize {
    spec.pad() + 2
}

/// Builds every window on `dim` basis vectors.
pub fn aluthge_data(spec: &KernelSpec, dim: usize) -> Result<AluthgeData> {
    require_analytic(spec)?;
    let pad = working_pad(spec);
    let dim = dim.max(pad + 1);
    let big = dim + pad;

    let l = l_matrix(spec, big + pad);
    let mod_inv_sq = (&l * &l.adjoint()).restrict(big);
    let eig = HermitianEigen::new(&mod_inv_sq)?;
    eig.require_positive_definite()?;
    // |M|^s = (|M|^-2)^(-s/2)
    let power = |s: f64| eig.map(|x| x.powf(-s / 2.0));
    let mod_big = power(1.0);
    let mod_inv_big = power(-1.0);
    let mod_sqrt_big = power(0.5);
    let mod_inv_sqrt_big = power(-0.5);

    let mz_big = mz_matrix(spec, big);
    let gram = (&(&mz_big.adjoint() * &mod_big) * &mz_big).restrict(dim);
    let gram_inv = hermitian_inverse(&gram)?;

    let mz = mz_big.restrict(dim);
    let mod_window = mod_big.restrict(dim);
    let mod_inv = mod_inv_big.restrict(dim);
    let mod_sqrt = mod_sqrt_big.restrict(dim);
    let mod_inv_sqrt = mod_inv_sqrt_big.restrict(dim);

    let partial_isometry = &mz * &mod_inv;
    let tilde_window = &(&mod_sqrt * &mz) * &mod_inv_sqrt;

    // v = (M* |M| M)^-1 M* |M| f_0
    let m_star_mod = (&mz_big.adjoint() * &mod_big).restrict(dim);
    let f_vector = gram_inv.mul_vec(&m_star_mod.column(0));

    Ok(AluthgeData {
        dim,
        interior: dim - pad,
        mz,
        mod_inv_sq: mod_inv_sq.restrict(dim),
        mod_window,
        mod_inv,
        mod_sqrt,
        mod_inv_sqrt,
        partial_isometry,
        tilde_window,
        gram_inv,
        f_vector,
    })
}

impl AluthgeData {
    /// `L_tilde* = |M|^(1/2) M (M*|M|M)^-1 |M|^(1/2)`, adjoint of the
    /// closed form for the Shimorin left inverse of the transform.
    pub fn tilde_left_inverse_adj(&self) -> CMatrix {
        &(&(&self.mod_sqrt * &self.mz) * &self.gram_inv) * &self.mod_sqrt
    }

    /// `L_tilde = |M|^(1/2) (M*|M|M)^-1 M* |M|^(1/2)`.
    pub fn tilde_left_inverse(&self) -> CMatrix {
        self.tilde_left_inverse_adj().adjoint()
    }

    /// `F` as a matrix: column 0 is `v`, the rest is zero.
    pub fn f_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, self.dim, |i, j| {
            if j == 0 {
                self.f_vector[i]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Unit vector spanning `ker T_tilde* = |M|^(-1/2) ker M_z*`.
    pub fn wandering_vector(&self) -> Vec<C64> {
        let w = self.mod_inv_sqrt.column(0);
        let norm = norm_sq(&w).sqrt();
        w.into_iter().map(|x| x / norm).collect()
    }

    /// Subdiagonal of the Aluthge transform, `T_tilde f_n` paired with `f_(n+1)`.
    pub fn tilde_weights(&self) -> Vec<C64> {
        (0..self.interior).map(|n| self.tilde_window[(n + 1, n)]).collect()
    }
}

/// The vector `v = (M*|M|M)^-1 M*|M| f_0` of the rank-one correction.
pub fn rank_one_f(spec: &KernelSpec, dim: usize) -> Result<Vec<C64>> {
    let data = aluthge_data(spec, dim)?;
    let mut v = data.f_vector;
    v.truncate(dim);
    Ok(v)
}

/// Default working window for a table up to index `max`.
pub fn default_window(spec: &KernelSpec, max: usize) -> usize {
    let s = spec.b_support();
    (4 * max).max(2 * s + 16).max(2 * max + s + 8)
}

fn sa_table_on(spec: &KernelSpec, max: usize, dim: usize) -> Result<CMatrix> {
    let data = aluthge_data(spec, dim)?;
    let lt_adj = data.tilde_left_inverse_adj();
    let mut u = Vec::with_capacity(max + 1);
    let mut v = data.wandering_vector();
    for _ in 0..=max {
        let next = lt_adj.mul_vec(&v);
        u.push(v);
        v = next;
    }
    Ok(gram_table(&u))
}

/// Shimorin-Aluthge coefficients `X_tilde_mn = <L_tilde^m L_tilde*^n w, w>`
/// with `w` the unit wandering vector of the transform, certified by
/// recomputation on a doubled window.
pub fn shimorin_aluthge_coeffs(spec: &KernelSpec, max: usize) -> Result<CoefficientTable> {
    let dim = default_window(spec, max);
    let table = sa_table_on(spec, max, dim)?;
    let check = sa_table_on(spec, max, 2 * dim)?;
    let deviation = table.max_abs_diff(&check);
    if deviation > DOUBLING_LIMIT {
        return Err(Error::UnstableTruncation {
            deviation,
            limit: DOUBLING_LIMIT,
        });
    }
    let mut out = CoefficientTable::new(table, Basis::Wandering);
    out.doubling_deviation = Some(deviation);
    Ok(out)
}

/// Monomial coefficients of `<P k(., w), k(., z)>` for a window `P` in the
/// basis `f_n`: the matrix `G P G*`, where column `i` of `G` holds the
/// monomial coefficients of `f_i`. `P` must have at least `max + 1` rows.
pub fn monomial_kernel_table(spec: &KernelSpec, p: &CMatrix, max: usize) -> CMatrix {
    let k = max + 1;
    let g = basis_to_monomial(spec, k);
    let p = p.restrict(k);
    &(&g * &p) * &g.adjoint()
}

/// Coefficients of `z^m conj(w)^n` in the standard Aluthge kernel
/// `<|M_z|^-1 k(., w), k(., z)>`.
pub fn standard_aluthge_coeffs(spec: &KernelSpec, max: usize) -> Result<CoefficientTable> {
    let data = aluthge_data(spec, max + 2)?;
    let mut out = CoefficientTable::new(monomial_kernel_table(spec, &data.mod_inv, max), Basis::Monomial);
    let check = aluthge_data(spec, 2 * (max + 2))?;
    out.doubling_deviation = Some(monomial_kernel_table(spec, &check.mod_inv, max).max_abs_diff(&out.entries));
    Ok(out)
}

/// Interior residuals of the contracts tying the transform to `L` and `F`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AluthgeContracts {
    /// `max |U* U - I|`.
    pub isometry: f64,
    /// `max |T_tilde - |M|^(1/2) U |M|^(1/2)|`.
    pub polar: f64,
    /// `max |L_tilde |M|^(1/2) - |M|^(1/2) (L + F)|`.
    pub similarity: f64,
    /// `max |(T_tilde* T_tilde)^-1 T_tilde* - L_tilde|`.
    pub direct_left_inverse: f64,
}

pub fn aluthge_contracts(spec: &KernelSpec, data: &AluthgeData) -> Result<AluthgeContracts> {
    let n = data.interior;
    let pad = data.dim - n;
    let cut = |m: &CMatrix| m.restrict(n);

    let u = &data.partial_isometry;
    let isometry = cut(&(&u.adjoint() * u)).identity_defect();
    let polar = cut(&(&(&data.mod_sqrt * u) * &data.mod_sqrt)).max_abs_diff(&cut(&data.tilde_window));

    let lt = data.tilde_left_inverse();
    let l = l_matrix(spec, data.dim);
    let lhs = &lt * &data.mod_sqrt;
    let rhs = &data.mod_sqrt * &(&l + &data.f_matrix());
    let similarity = cut(&lhs).max_abs_diff(&cut(&rhs));

    // Direct route on a larger window so T_tilde* T_tilde is exact on `dim`.
    let wide = aluthge_data(spec, data.dim + pad)?;
    let t = &wide.tilde_window;
    let tt = (&t.adjoint() * t).restrict(data.dim);
    let direct = &hermitian_inverse(&tt)? * &t.adjoint().top_left(data.dim, data.dim);
    let direct_left_inverse = cut(&direct).max_abs_diff(&cut(&lt));

    Ok(AluthgeContracts {
        isometry,
        polar,
        similarity,
        direct_left_inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked;

    #[test]
    fn szego_transform_is_the_shift() {
        let spec = worked::szego();
        let d = aluthge_data(&spec, 10).unwrap();
        assert!(d.mod_window.identity_defect() < 1e-14);
        assert!(d.tilde_window.max_abs_diff(&d.mz) < 1e-14);
        assert!(d.partial_isometry.max_abs_diff(&d.mz) < 1e-14);
        let t = shimorin_aluthge_coeffs(&spec, 5).unwrap();
        assert!(t.entries.identity_defect() < 1e-13);
        let s = standard_aluthge_coeffs(&spec, 5).unwrap();
        assert!(s.entries.identity_defect() < 1e-13);
    }

    #[test]
    fn b0_b1_one_modulus_block() {
        let spec = worked::b0_b1_one();
        let d = aluthge_data(&spec, 12).unwrap();
        let corner = d.mod_inv[(1, 2)].re;
        assert!((corner + 1.0 / 5f64.sqrt()).abs() < 1e-12);
        assert!(d.f_vector.iter().all(|x| x.norm() < 1e-13));
        let t = shimorin_aluthge_coeffs(&spec, 6).unwrap();
        assert!((t.get(1, 3).norm() - 1.0 / 5f64.sqrt()).abs() < 1e-10);
        let s = standard_aluthge_coeffs(&spec, 6).unwrap();
        assert!(s.off_band_max() < 1e-12);
    }

    #[test]
    fn contracts_hold_on_examples() {
        for spec in [worked::nonzero_b0(), worked::b0_b1_one(), worked::split_modulus()] {
            let d = aluthge_data(&spec, 16).unwrap();
            let c = aluthge_contracts(&spec, &d).unwrap();
            assert!(c.isometry < 1e-12, "{c:?}");
            assert!(c.polar < 1e-12, "{c:?}");
            assert!(c.similarity < 1e-10, "{c:?}");
            assert!(c.direct_left_inverse < 1e-10, "{c:?}");
        }
    }

    #[test]
    fn nonzero_b0_f_is_nonzero() {
        let v = rank_one_f(&worked::nonzero_b0(), 10).unwrap();
        assert!(v.iter().any(|x| x.norm() > 1e-3));
    }

    #[test]
    fn weighted_shift_closure() {
        let spec = KernelSpec::real(&[1.0, 0.5, 0.4, 0.3], &[], 0.8).unwrap();
        let d = aluthge_data(&spec, 12).unwrap();
        for (n, w) in d.tilde_weights().iter().enumerate() {
            let expected = (spec.weight(n).re * spec.weight(n + 1).re).sqrt();
            assert!((w.re - expected).abs() < 1e-12 && w.im.abs() < 1e-12);
        }
    }
}
