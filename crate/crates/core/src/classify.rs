//! Stand-alone criteria: tridiagonality of kernels induced by positive
//! operators, quasinormality of the shift, and the truncated-kernel test for
//! the Shimorin-Aluthge kernel.

use serde::Serialize;

use crate::aluthge::monomial_kernel_table;
use crate::error::{Error, Result};
use crate::kernel::{require_analytic, KernelSpec};
use crate::linalg::{cholesky, hermitian_sqrt, inner, CMatrix, HERMITIAN_TOL};
use crate::numeric::{threshold, ABS_FLOOR};
use crate::verdict::Verdict;
use crate::window::{l_matrix, mz_matrix};
use crate::C64;

/// Both channels of the positive-operator criterion.
#[derive(Clone, Debug, Serialize)]
pub struct PositiveEvidence {
    /// `c_mn + (conj b_(n-1) / conj a_n) c_(m,n-1) = 0` for `n >= m + 2`.
    pub recurrence: Verdict,
    /// Off-band coefficients of `<P k(., w), k(., z)>` vanish.
    pub direct: Verdict,
    pub agree: bool,
}

/// Residuals `c_mn + (conj b_(n-1) / conj a_n) c_(m,n-1)` for
/// `m + 2 <= n <= last`, in row-major order.
fn recurrence_residuals<'a>(
    p: &'a CMatrix,
    spec: &'a KernelSpec,
    last: usize,
) -> impl Iterator<Item = (usize, usize, f64)> + 'a {
    (0..=last).flat_map(move |m| {
        ((m + 2)..=last).map(move |n| {
            let ratio = spec.b(n - 1).conj() / spec.a(n).conj();
            let res = p[(m, n)] + ratio * p[(m, n - 1)];
            (m, n, res.norm())
        })
    })
}

/// Decides whether the kernel `K(z, w) = <P k(., w), k(., z)>` is tridiagonal
/// for a positive window `P` in the basis `f_n`, checking indices below
/// `band` (at most the window size).
pub fn positive_kernel_criterion(p: &CMatrix, spec: &KernelSpec, band: usize) -> Result<PositiveEvidence> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch {
            expected: p.rows(),
            found: p.cols(),
        });
    }
    if band > p.rows() || band < 1 {
        return Err(Error::DimensionMismatch {
            expected: p.rows(),
            found: band,
        });
    }
    let scale = p.max_abs();
    let defect = p.hermitian_defect();
    if defect > HERMITIAN_TOL * scale.max(1.0) {
        return Err(Error::NotHermitian { deviation: defect });
    }
    let tol = threshold(scale);
    let last = band - 1;
    let recurrence = Verdict::all_zero(recurrence_residuals(p, spec, last), tol);

    let alpha = monomial_kernel_table(spec, p, last);
    let alpha = &alpha;
    let direct = Verdict::all_zero(
        (0..=last).flat_map(|m| ((m + 2)..=last).map(move |n| (m, n, alpha[(m, n)].norm()))),
        threshold(alpha.max_abs()),
    );
    let agree = recurrence.agrees_with(&direct);
    Ok(PositiveEvidence {
        recurrence,
        direct,
        agree,
    })
}

/// Outcome of the quasinormality test.
#[derive(Clone, Debug, Serialize)]
pub struct QuasinormalEvidence {
    /// `M_z* M_z - M_z M_z* = r P_(f_0)` on the window.
    pub commutator: Verdict,
    /// Column and row inner-product identities.
    pub inner_products: Verdict,
    /// `r = ||M_z f_0||^2`.
    pub r: f64,
    /// `max |[M_z*, M_z] - r P_(f_0)|`.
    pub residual: f64,
    pub agree: bool,
}

/// Tests `M_z* M_z - M_z M_z* = r P_(f_0)` on `dim` basis vectors.
pub fn quasinormal_test(spec: &KernelSpec, dim: usize) -> Result<QuasinormalEvidence> {
    if dim < 2 {
        return Err(Error::InvalidArgument("quasinormal test needs dim >= 2".into()));
    }
    let big = dim + spec.pad();
    let m = mz_matrix(spec, big);
    let mm = (&m.adjoint() * &m).restrict(dim);
    let mmt = (&m * &m.adjoint()).restrict(dim);
    let bracket = &mm - &mmt;

    let scale = mm.max_abs().max(mmt.max_abs());
    let tol = threshold(scale);
    let magnitude = bracket.max_abs();
    if magnitude < tol {
        return Err(Error::NormalityDetected { magnitude });
    }

    let r: f64 = (0..big).map(|k| m[(k, 0)].norm_sqr()).sum();
    let mut shifted = bracket.clone();
    shifted[(0, 0)] -= C64::new(r, 0.0);
    let residual = shifted.max_abs();
    let commutator = Verdict::all_zero(
        (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| (i, j, shifted[(i, j)].norm())),
        tol,
    );

    // Second channel from explicit columns C_n and rows R_n of [M_z].
    let cols: Vec<Vec<C64>> = (0..dim).map(|n| m.column(n)).collect();
    let rows: Vec<Vec<C64>> = (0..dim).map(|n| m.row(n).to_vec()).collect();
    let mut checks = Vec::new();
    for i in 1..dim {
        checks.push((0, i, inner(&cols[0], &cols[i]).norm()));
    }
    for n in 1..dim {
        for mi in 1..=n {
            let gap = inner(&cols[n], &cols[mi]) - inner(&rows[mi], &rows[n]);
            checks.push((mi, n, gap.norm()));
        }
    }
    let inner_products = Verdict::all_zero(checks, tol);
    let agree = commutator.agrees_with(&inner_products);
    Ok(QuasinormalEvidence {
        commutator,
        inner_products,
        r,
        residual,
        agree,
    })
}

/// Order of a truncated kernel: `b_0 = b_1 = 0` and `b_n = 0` for `n > r`.
pub fn truncated_order(spec: &KernelSpec) -> Result<usize> {
    for i in 0..2 {
        if spec.b(i).norm() > ABS_FLOOR * spec.a(i).norm() {
            return Err(Error::NotTruncated(format!("b_{i} is nonzero")));
        }
    }
    Ok(spec.b_support().saturating_sub(1).max(2))
}

/// The truncated-kernel test with its cross-checks.
#[derive(Clone, Debug, Serialize)]
pub struct TruncatedEvidence {
    pub order: usize,
    pub verdict: Verdict,
    /// `max | |diag of Cholesky(A^2)| - |a_(k+1)/a_k| |`.
    pub factor_check: f64,
    /// `max |A - corresponding block of |M_z|^-1 computed on a full window|`.
    pub block_check: f64,
}

/// Decides tridiagonality of the Shimorin-Aluthge kernel of a truncated kernel
/// of order `r` from the middle `(r+1)`-block `A` of `|M_z|^-1`.
pub fn truncated_sa_criterion(spec: &KernelSpec) -> Result<TruncatedEvidence> {
    require_analytic(spec)?;
    let r = truncated_order(spec)?;
    let k = r + 1;
    // Rows 1..=r+1 and columns 2..=r+2 of [L]; lower triangular.
    let l = l_matrix(spec, r + 3);
    let lk = l.block(1, 2, k, k);
    let a_sq = &lk * &lk.adjoint();
    let a = hermitian_sqrt(&a_sq)?;

    let g = cholesky(&a_sq)?;
    let factor_check = (0..k)
        .map(|i| (g[(i, i)].norm() - (spec.a(i + 2) / spec.a(i + 1)).norm()).abs())
        .fold(0.0, f64::max);

    let full = crate::aluthge::aluthge_data(spec, r + 4)?;
    let block_check = full.mod_inv.block(1, 1, k, k).max_abs_diff(&a);

    // Global index i of |M_z|^-1 is block index i - 1.
    let tol = threshold(a.max_abs());
    let checks = (1..=r.saturating_sub(1)).flat_map(|m| {
        ((m + 2).max(3)..=(r + 1)).map(move |n| (m, n))
    });
    let verdict = Verdict::all_zero(
        checks.map(|(m, n)| {
            let ratio = spec.b(n - 1).conj() / spec.a(n).conj();
            (m, n, (a[(m - 1, n - 1)] + ratio * a[(m - 1, n - 2)]).norm())
        }),
        tol,
    );
    Ok(TruncatedEvidence {
        order: r,
        verdict,
        factor_check,
        block_check,
    })
}
