//! Shimorin kernel coefficients of the shift.
//!
//! The wandering space `ker M_z*` is spanned by the unit vector `f_0`, so the
//! Shimorin kernel is scalar with coefficients
//! `X_mn = <L^m L*^n f_0, f_0> = <L*^n f_0, L*^m f_0>`.
//! The vector `L*^p f_0` is the conjugate of row 0 of `[L^p]`.

use serde::Serialize;

use crate::error::Result;
use crate::kernel::{require_analytic, KernelSpec};
use crate::linalg::{inner, CMatrix};
use crate::numeric::threshold;
use crate::table::{Basis, CoefficientTable};
use crate::verdict::{Verdict, Witness};
use crate::window::lp_matrix;
use crate::C64;

/// Working window for tables up to index `max`: `2 max + pad`.
pub fn default_window(spec: &KernelSpec, max: usize) -> usize {
    2 * max + spec.pad()
}

/// Vectors `L*^p f_0` for `p = 0..=max` on a window of size `dim`.
fn adjoint_orbit(spec: &KernelSpec, max: usize, dim: usize) -> Vec<Vec<C64>> {
    (0..=max)
        .map(|p| {
            if p == 0 {
                let mut e0 = vec![C64::new(0.0, 0.0); dim];
                e0[0] = C64::new(1.0, 0.0);
                e0
            } else {
                lp_matrix(spec, p, dim).row(0).iter().map(|z| z.conj()).collect()
            }
        })
        .collect()
}

/// Gram table `X_mn = <u_n, u_m>`.
pub(crate) fn gram_table(u: &[Vec<C64>]) -> CMatrix {
    let k = u.len();
    CMatrix::from_fn(k, k, |m, n| inner(&u[n], &u[m]))
}

/// Shimorin coefficients on an explicit working window.
pub fn shimorin_coeffs_on(spec: &KernelSpec, max: usize, dim: usize) -> Result<CoefficientTable> {
    require_analytic(spec)?;
    let dim = dim.max(max + 1);
    let u = adjoint_orbit(spec, max, dim);
    Ok(CoefficientTable::new(gram_table(&u), Basis::Wandering))
}

/// `X_mn` for `0 <= m, n <= max`.
pub fn shimorin_coeffs(spec: &KernelSpec, max: usize) -> Result<CoefficientTable> {
    shimorin_coeffs_on(spec, max, default_window(spec, max))
}

/// Whether `b_n / a_n` is constant, i.e. `M_z` is a weighted shift.
///
/// Indices up to `horizon` are compared with `b_0 / a_0`. Past the stored
/// prefix the ratio is zero, so a nonzero constant fails at `b_support`.
pub fn is_weighted_shift(spec: &KernelSpec, horizon: usize) -> Verdict {
    let r0 = spec.b(0) / spec.a(0);
    let upto = horizon.max(spec.b_support());
    for n in 1..=upto {
        let gap = (spec.b(n) / spec.a(n) - r0).norm();
        if gap > 0.0 {
            return Verdict::fails(Witness { m: 0, n, magnitude: gap }, 0.0);
        }
    }
    Verdict::holds(0.0)
}

/// Both sides of the tridiagonality criterion for the Shimorin kernel.
#[derive(Clone, Debug, Serialize)]
pub struct TridiagonalEvidence {
    /// `b_0 = 0` or `M_z` is a weighted shift.
    pub criterion: Verdict,
    /// Off-band entries of the coefficient table vanish.
    pub numeric: Verdict,
    /// Largest index of the table the numeric channel inspected.
    pub horizon: usize,
    pub agree: bool,
}

/// Decides whether the Shimorin kernel is tridiagonal, from the criterion and
/// from the table.
///
/// The first nonzero off-band entry of a non-tridiagonal table sits at or
/// before `(s, s + 2)` with `s` the b-support, so the table is widened to
/// `max(max, s + 3)` when needed.
pub fn shimorin_tridiagonal_verdict(spec: &KernelSpec, max: usize) -> Result<TridiagonalEvidence> {
    let horizon = max.max(spec.b_support() + 3);
    let table = shimorin_coeffs(spec, horizon)?;
    let numeric = table.tridiagonal_verdict();

    let b0 = (spec.b(0) / spec.a(0)).norm();
    let criterion = if b0 <= threshold(1.0) {
        Verdict::holds(threshold(1.0))
    } else {
        let ws = is_weighted_shift(spec, horizon);
        if ws.is_true() {
            ws
        } else {
            // The criterion fails; report where the table first shows it.
            match numeric.witness {
                Some(w) => Verdict::fails(w, table.tolerance()),
                None => ws,
            }
        }
    };
    let agree = criterion.agrees_with(&numeric);
    Ok(TridiagonalEvidence {
        criterion,
        numeric,
        horizon,
        agree,
    })
}

/// Taylor coefficients `<L^n h, f_0>` of the model image of `h`, for
/// `n <= max`. `h` is given by its coefficients in the basis `f_n`.
pub fn analytic_model_coeffs(spec: &KernelSpec, target: &[C64], max: usize) -> Result<Vec<C64>> {
    require_analytic(spec)?;
    let dim = target.len().max(max + 1);
    let mut h = target.to_vec();
    h.resize(dim, C64::new(0.0, 0.0));
    // <L^n h, f_0> = sum_j (L^n)_0j h_j, and row 0 of L^n lives in columns <= n.
    Ok((0..=max)
        .map(|n| {
            if n == 0 {
                h[0]
            } else {
                lp_matrix(spec, n, dim)
                    .row(0)
                    .iter()
                    .zip(&h)
                    .map(|(l, x)| l * x)
                    .sum()
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::VerdictValue;
    use crate::worked;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn szego_table_is_identity() {
        let t = shimorin_coeffs(&worked::szego(), 6).unwrap();
        assert_eq!(t.entries.identity_defect(), 0.0);
    }

    #[test]
    fn nonzero_b0_x13() {
        let t = shimorin_coeffs(&worked::nonzero_b0(), 8).unwrap();
        assert!((t.get(1, 3) - r(0.25)).norm() < 1e-15);
        let ev = shimorin_tridiagonal_verdict(&worked::nonzero_b0(), 8).unwrap();
        assert_eq!(ev.numeric.value, VerdictValue::False);
        let w = ev.numeric.witness.unwrap();
        assert_eq!((w.m, w.n), (1, 3));
        assert!((w.magnitude - 0.25).abs() < 1e-15);
        assert!(ev.agree);
    }

    #[test]
    fn diagonal_table_matches_weight_products() {
        let spec = worked::bergman_like(10);
        let t = shimorin_coeffs(&spec, 8).unwrap();
        let mut prod = 1.0;
        for n in 0..=8 {
            assert!((t.get(n, n).re - 1.0 / (prod * prod)).abs() < 1e-13);
            prod *= spec.weight(n).re;
        }
        assert!(t.off_band_max() == 0.0);
    }

    #[test]
    fn weighted_shift_detection() {
        assert!(is_weighted_shift(&worked::szego(), 5).is_true());
        let ws = is_weighted_shift(&worked::nonzero_b0(), 5);
        assert!(ws.is_false());
        assert_eq!(ws.witness.unwrap().n, 1);
        let ones = KernelSpec::real(&[1.0], &[1.0, 1.0, 1.0], 1.0).unwrap();
        let v = is_weighted_shift(&ones, 2);
        assert!(v.is_false());
        assert_eq!(v.witness.unwrap().n, 3);
    }

    #[test]
    fn truncated_and_weighted_are_tridiagonal() {
        for spec in [worked::truncated_b2(1.0), worked::constant_weight(2.0)] {
            let ev = shimorin_tridiagonal_verdict(&spec, 8).unwrap();
            assert!(ev.criterion.is_true() && ev.numeric.is_true() && ev.agree);
        }
    }

    #[test]
    fn model_coefficients() {
        let spec = worked::nonzero_b0();
        let f0 = [r(1.0)];
        assert_eq!(analytic_model_coeffs(&spec, &f0, 3).unwrap(), vec![r(1.0), r(0.0), r(0.0), r(0.0)]);
        let f1 = [r(0.0), r(1.0)];
        assert_eq!(
            analytic_model_coeffs(&spec, &f1, 3).unwrap(),
            vec![r(0.0), r(1.0), r(-0.5), r(0.25)]
        );
        let f2 = [r(0.0), r(0.0), r(1.0)];
        assert_eq!(
            analytic_model_coeffs(&worked::szego(), &f2, 3).unwrap(),
            vec![r(0.0), r(0.0), r(1.0), r(0.0)]
        );
    }
}
