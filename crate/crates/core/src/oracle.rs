//! Slow reference computations that share as little as possible with the
//! primary routes: dense powers of the `[L]` window, the projection
//! `P_W = I - M_z L`, and pointwise kernel sums.

use crate::aluthge::{aluthge_data, standard_aluthge_coeffs};
use crate::error::{Error, Result};
use crate::kernel::{require_analytic, KernelSpec};
use crate::linalg::{hermitian_inverse, CMatrix};
use crate::table::{Basis, CoefficientTable};
use crate::window::{l_matrix, mz_matrix};
use crate::C64;

/// Shimorin table from `P_W L^m L*^n f_0`, with `L^m` and `L*^n` formed by
/// repeated dense multiplication of the `[L]` window of size `dim`.
///
/// Also returns the largest component of `P_W L^m L*^n f_0` off `f_0`, which
/// must vanish because the range of `P_W` is the span of `f_0`.
pub fn brute_shimorin_table(spec: &KernelSpec, max: usize, dim: usize) -> Result<(CoefficientTable, f64)> {
    require_analytic(spec)?;
    let dim = dim.max(2 * max + spec.pad() + 2);
    let l = l_matrix(spec, dim);
    let lt = l.adjoint();
    let projection = &CMatrix::identity(dim) - &(&mz_matrix(spec, dim) * &l);

    let mut l_pow = vec![CMatrix::identity(dim)];
    let mut lt_pow = vec![CMatrix::identity(dim)];
    for p in 1..=max {
        l_pow.push(&l_pow[p - 1] * &l);
        lt_pow.push(&lt_pow[p - 1] * &lt);
    }

    let mut table = CMatrix::zeros(max + 1, max + 1);
    let mut leak: f64 = 0.0;
    // Only the first `dim - max - pad` components are free of edge effects.
    let trusted = dim - max - spec.pad();
    for m in 0..=max {
        for n in 0..=max {
            let v = lt_pow[n].column(0);
            let v = l_pow[m].mul_vec(&v);
            let v = projection.mul_vec(&v);
            table[(m, n)] = v[0];
            for x in v.iter().take(trusted).skip(1) {
                leak = leak.max(x.norm());
            }
        }
    }
    Ok((CoefficientTable::new(table, Basis::Wandering), leak))
}

/// `(M_z* M_z)^-1` from a dense window of `[M_z]`, cut to `dim`.
pub fn dense_modulus_inv_sq(spec: &KernelSpec, dim: usize) -> Result<CMatrix> {
    let big = dim + spec.pad() + 2;
    let m = mz_matrix(spec, big + spec.pad());
    let gram = (&m.adjoint() * &m).restrict(big);
    Ok(hermitian_inverse(&gram)?.restrict(dim))
}

/// Largest deviation, over the sample points, between the standard Aluthge
/// kernel summed from its monomial table and `<|M_z|^-1 k(., w), k(., z)>`
/// summed from basis evaluations. Both sums use `terms` indices.
pub fn gram_kernel_check(spec: &KernelSpec, points: &[C64], terms: usize) -> Result<f64> {
    let reach = 1.0 / spec.rho().norm().max(1.0);
    for z in points {
        if z.norm() >= reach {
            return Err(Error::DivergenceWarning {
                ratio: spec.rho().norm_sqr() * z.norm_sqr(),
            });
        }
    }
    let terms = terms.max(spec.pad() + 2);
    let table = standard_aluthge_coeffs(spec, terms)?;
    let p = aluthge_data(spec, terms + 2)?.mod_inv;

    let mut worst: f64 = 0.0;
    for z in points {
        for w in points {
            let from_table = polynomial(&table.entries, *z, *w);
            let fz: Vec<C64> = (0..=terms).map(|i| spec.basis_eval(i, *z)).collect();
            let fw: Vec<C64> = (0..=terms).map(|j| spec.basis_eval(j, *w)).collect();
            let mut pointwise = C64::new(0.0, 0.0);
            for i in 0..=terms {
                for j in 0..=terms {
                    pointwise += fz[i] * p[(i, j)] * fw[j].conj();
                }
            }
            worst = worst.max((from_table - pointwise).norm());
        }
    }
    Ok(worst)
}

/// `sum_mn X_mn z^m conj(w)^n`.
pub fn polynomial(x: &CMatrix, z: C64, w: C64) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    let mut zm = C64::new(1.0, 0.0);
    for m in 0..x.rows() {
        let mut wn = C64::new(1.0, 0.0);
        for n in 0..x.cols() {
            total += x[(m, n)] * zm * wn;
            wn *= w.conj();
        }
        zm *= z;
    }
    total
}

/// Nine points on the circle of radius `radius` and its centre.
pub fn sample_grid(radius: f64) -> Vec<C64> {
    let mut pts = vec![C64::new(0.0, 0.0)];
    pts.extend((0..8).map(|k| C64::from_polar(radius, k as f64 * std::f64::consts::FRAC_PI_4)));
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shimorin::shimorin_coeffs;
    use crate::worked;

    #[test]
    fn brute_table_matches_examples() {
        let (t, leak) = brute_shimorin_table(&worked::szego(), 5, 0).unwrap();
        assert_eq!(t.entries.identity_defect(), 0.0);
        assert_eq!(leak, 0.0);
        let (t, leak) = brute_shimorin_table(&worked::nonzero_b0(), 5, 0).unwrap();
        assert!((t.get(1, 3) - C64::new(0.25, 0.0)).norm() < 1e-15);
        assert!(leak < 1e-15);
        let primary = shimorin_coeffs(&worked::nonzero_b0(), 5).unwrap();
        assert!(t.entries.max_abs_diff(&primary.entries) < 1e-14);
    }

    #[test]
    fn szego_gram_check() {
        let pts = [C64::new(0.0, 0.0), C64::new(0.3, 0.0), C64::new(0.0, 0.5)];
        assert!(gram_kernel_check(&worked::szego(), &pts, 40).unwrap() < 1e-12);
    }

    #[test]
    fn examples_gram_check() {
        for spec in [worked::nonzero_b0(), worked::b0_b1_one()] {
            assert!(gram_kernel_check(&spec, &sample_grid(0.5), 40).unwrap() < 1e-9);
        }
    }

    #[test]
    fn out_of_disc_points_are_rejected() {
        assert!(matches!(
            gram_kernel_check(&worked::szego(), &[C64::new(1.2, 0.0)], 10),
            Err(Error::DivergenceWarning { .. })
        ));
    }

    #[test]
    fn dense_inverse_matches_l_lstar() {
        let spec = worked::b0_b1_one();
        let dense = dense_modulus_inv_sq(&spec, 6).unwrap();
        let lls = crate::window::modulus_inv_sq_window(&spec, 6).unwrap();
        assert!(dense.max_abs_diff(&lls.entries) < 1e-12);
    }
}
