//! Tridiagonal kernel specifications.
//!
//! A kernel is described by two scalar sequences `a_n` (never zero) and
//! `b_n`. The orthonormal basis of the space is `f_n(z) = (a_n + b_n z) z^n`
//! and the kernel is `k(z, w) = sum_n f_n(z) conj(f_n(w))`.
//!
//! Sequences are stored as a finite prefix plus a tail rule: past the stored
//! prefix `a_n` continues geometrically with ratio `rho` and `b_n` is zero.
//! Every validity condition then reduces to a finite check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::numeric::ABS_FLOOR;
use crate::C64;

/// A complex scalar as it appears in JSON: either `[re, im]` or a bare real.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Pair([f64; 2]),
    Real(f64),
}

impl From<JsonScalar> for C64 {
    fn from(s: JsonScalar) -> C64 {
        match s {
            JsonScalar::Pair([re, im]) => C64::new(re, im),
            JsonScalar::Real(re) => C64::new(re, 0.0),
        }
    }
}

impl From<C64> for JsonScalar {
    fn from(z: C64) -> JsonScalar {
        JsonScalar::Pair([z.re, z.im])
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailJson {
    pub rho: JsonScalar,
}

/// The JSON form of a [`KernelSpec`] before validation. `b` defaults to empty
/// and `tail.rho` to 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpecJson {
    pub a: Vec<JsonScalar>,
    #[serde(default)]
    pub b: Vec<JsonScalar>,
    #[serde(default)]
    pub tail: Option<TailJson>,
}

impl KernelSpecJson {
    pub fn build(self) -> Result<KernelSpec> {
        KernelSpec::try_from(self)
    }
}

/// Defining sequences of a tridiagonal kernel.
///
/// Invariant: every stored `a_n` is nonzero and `rho` is nonzero, so every
/// `a_n` of the infinite sequence is nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KernelSpecJson", into = "KernelSpecJson")]
pub struct KernelSpec {
    a: Vec<C64>,
    b: Vec<C64>,
    rho: C64,
}

impl TryFrom<KernelSpecJson> for KernelSpec {
    type Error = Error;

    fn try_from(raw: KernelSpecJson) -> Result<Self> {
        let rho = raw.tail.map_or(C64::new(1.0, 0.0), |t| t.rho.into());
        KernelSpec::new(
            raw.a.into_iter().map(Into::into).collect(),
            raw.b.into_iter().map(Into::into).collect(),
            rho,
        )
    }
}

impl From<KernelSpec> for KernelSpecJson {
    fn from(s: KernelSpec) -> Self {
        KernelSpecJson {
            a: s.a.into_iter().map(Into::into).collect(),
            b: s.b.into_iter().map(Into::into).collect(),
            tail: Some(TailJson { rho: s.rho.into() }),
        }
    }
}

impl KernelSpec {
    /// `a` is the stored prefix of `a_n` (at least one entry), `b` the
    /// stored prefix of `b_n` (any length, zero afterwards), `rho` the tail
    /// ratio `a_(n+1) / a_n` past the `a` prefix.
    pub fn new(a: Vec<C64>, b: Vec<C64>, rho: C64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidSpec("the a prefix must be nonempty".into()));
        }
        if let Some(i) = a.iter().position(|x| *x == C64::new(0.0, 0.0)) {
            return Err(Error::NonzeroViolation { index: Some(i) });
        }
        if rho == C64::new(0.0, 0.0) {
            return Err(Error::NonzeroViolation { index: None });
        }
        let finite = a.iter().chain(&b).chain(std::iter::once(&rho)).all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::InvalidSpec("coefficients must be finite".into()));
        }
        let mut b = b;
        while b.last() == Some(&C64::new(0.0, 0.0)) {
            b.pop();
        }
        Ok(KernelSpec { a, b, rho })
    }

    /// Real-coefficient convenience constructor.
    pub fn real(a: &[f64], b: &[f64], rho: f64) -> Result<Self> {
        Self::new(
            a.iter().map(|&x| C64::new(x, 0.0)).collect(),
            b.iter().map(|&x| C64::new(x, 0.0)).collect(),
            C64::new(rho, 0.0),
        )
    }

    /// `a_n` for any `n`.
    pub fn a(&self, n: usize) -> C64 {
        let p = self.a.len();
        if n < p {
            self.a[n]
        } else {
            self.a[p - 1] * self.rho.powu((n - p + 1) as u32)
        }
    }

    /// `b_n` for any `n`.
    pub fn b(&self, n: usize) -> C64 {
        self.b.get(n).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn a_prefix(&self) -> &[C64] {
        &self.a
    }

    pub fn b_prefix(&self) -> &[C64] {
        &self.b
    }

    pub fn rho(&self) -> C64 {
        self.rho
    }

    /// One past the last nonzero `b_n` (zero when `b` vanishes identically).
    pub fn b_support(&self) -> usize {
        self.b.len()
    }

    /// First index from which `a` is geometric and `b` is zero.
    pub fn tail_start(&self) -> usize {
        self.a.len().max(self.b.len())
    }

    /// Window padding that makes finite-section products exact on the interior.
    ///
    /// With `b_n = 0` for `n >= s`, every column of `[L]` and `[M_z]` has at
    /// most `s + 2` nonzero entries below the diagonal.
    pub fn pad(&self) -> usize {
        self.b_support() + 2
    }

    /// `f_n(z) = (a_n + b_n z) z^n`.
    pub fn basis_eval(&self, n: usize, z: C64) -> C64 {
        (self.a(n) + self.b(n) * z) * z.powu(n as u32)
    }

    /// Whether `b_n = 0` for every `n`, in which case `M_z` is a weighted
    /// shift with weights `a_n / a_(n+1)`.
    pub fn is_diagonal(&self) -> bool {
        self.b.is_empty()
    }

    /// Weight `a_n / a_(n+1)` of the diagonal part of `M_z`.
    pub fn weight(&self, n: usize) -> C64 {
        self.a(n) / self.a(n + 1)
    }
}

/// Computed values of the standing conditions on a kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub all_a_nonzero: bool,
    /// `sup_n |a_n / a_(n+1)|`.
    pub sup_ratio: f64,
    /// `limsup_n |b_n / a_(n+1)|`; zero under the zero-`b` tail.
    pub limsup_b_ratio: f64,
    /// `max_n |b_n / a_(n+1)|` over the stored prefix. Recorded only.
    pub prefix_b_ratio_max: f64,
    /// `inf_n |a_n / a_(n+1)|`.
    pub bounded_away: f64,
    /// `sup` finite and `limsup < 1`.
    pub semi_analytic: bool,
    /// Semi-analytic and bounded away from zero; equivalently `M_z` is
    /// left-invertible.
    pub analytic: bool,
    /// Every monomial is a finite combination of basis vectors because `b`
    /// has finite support, so the polynomials lie in the space.
    pub polynomials_contained: bool,
}

/// Evaluates the standing conditions over prefix and tail.
pub fn validate_spec(spec: &KernelSpec) -> ValidationReport {
    let last = spec.tail_start() + 1;
    let mut sup: f64 = 0.0;
    let mut inf = f64::INFINITY;
    for n in 0..last {
        let r = spec.weight(n).norm();
        sup = sup.max(r);
        inf = inf.min(r);
    }
    // The tail contributes the constant 1/|rho|.
    let tail = 1.0 / spec.rho().norm();
    sup = sup.max(tail);
    inf = inf.min(tail);

    let prefix_b_ratio_max = (0..spec.b_support())
        .map(|n| (spec.b(n) / spec.a(n + 1)).norm())
        .fold(0.0, f64::max);
    let limsup_b_ratio = 0.0;
    let semi_analytic = sup.is_finite() && limsup_b_ratio < 1.0;
    let analytic = semi_analytic && inf > ABS_FLOOR;
    ValidationReport {
        all_a_nonzero: true,
        sup_ratio: sup,
        limsup_b_ratio,
        prefix_b_ratio_max,
        bounded_away: inf,
        semi_analytic,
        analytic,
        polynomials_contained: true,
    }
}

/// Fails with `NotLeftInvertible` unless the kernel is analytic.
pub fn require_analytic(spec: &KernelSpec) -> Result<()> {
    let report = validate_spec(spec);
    if report.analytic {
        Ok(())
    } else {
        Err(Error::NotLeftInvertible {
            epsilon: report.bounded_away,
        })
    }
}

/// Partial kernel sum with a rigorous bound on the omitted terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: C64,
    pub tail_bound: f64,
}

/// `sum_{n < terms} f_n(z) conj(f_n(w))` together with a bound on
/// `sum_{n >= terms} |f_n(z)| |f_n(w)|`.
pub fn kernel_eval(spec: &KernelSpec, z: C64, w: C64, terms: usize) -> Result<KernelValue> {
    if z.norm() >= 1.0 || w.norm() >= 1.0 {
        return Err(Error::InvalidArgument("kernel points must lie in the open unit disc".into()));
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one term is required".into()));
    }
    let value = (0..terms)
        .map(|n| spec.basis_eval(n, z) * spec.basis_eval(n, w).conj())
        .sum();

    let zw = z.norm() * w.norm();
    if zw == 0.0 {
        // Only f_0 survives at the origin; every omitted term vanishes.
        return Ok(KernelValue { value, tail_bound: 0.0 });
    }
    let q = spec.rho().norm_sqr() * zw;
    if q >= 1.0 {
        return Err(Error::DivergenceWarning { ratio: q });
    }
    let start = spec.tail_start();
    let explicit: f64 = (terms..start.max(terms))
        .map(|n| spec.basis_eval(n, z).norm() * spec.basis_eval(n, w).norm())
        .sum();
    let n0 = start.max(terms);
    let geometric = spec.a(n0).norm_sqr() * zw.powi(n0 as i32) / (1.0 - q);
    Ok(KernelValue {
        value,
        tail_bound: explicit + geometric,
    })
}

/// Coefficients of `z^n` in the basis: entry `m` is the coefficient of
/// `f_(n+m)`, namely `(1/a_n) (-1)^m prod_{j<m} b_(n+j) / prod_{j<m} a_(n+j+1)`.
pub fn monomial_coeffs(spec: &KernelSpec, n: usize, len: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(len);
    let mut term = C64::new(1.0, 0.0) / spec.a(n);
    for m in 0..len {
        if m > 0 {
            term = -term * spec.b(n + m - 1) / spec.a(n + m);
        }
        out.push(term);
    }
    out
}

/// `z^n` as a coefficient vector of length `dim` in the basis `f_0, f_1, ...`.
pub fn monomial_in_basis(spec: &KernelSpec, n: usize, dim: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    if n < dim {
        for (m, c) in monomial_coeffs(spec, n, dim - n).into_iter().enumerate() {
            v[n + m] = c;
        }
    }
    v
}

/// Change of basis from `f` to monomials: column `i` holds the monomial
/// coefficients of `f_i` (`a_i` at row `i`, `b_i` at row `i + 1`), cut to
/// `dim x dim`.
pub fn basis_to_monomial(spec: &KernelSpec, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |m, i| {
        if m == i {
            spec.a(i)
        } else if m == i + 1 {
            spec.b(i)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn unweighted_shift_validates() {
        let spec = worked::szego();
        let r = validate_spec(&spec);
        assert!(r.semi_analytic && r.analytic);
        assert_eq!(r.bounded_away, 1.0);
        assert_eq!(r.sup_ratio, 1.0);
    }

    #[test]
    fn half_b0_is_analytic() {
        assert!(validate_spec(&worked::nonzero_b0()).analytic);
    }

    #[test]
    fn zero_a_is_rejected() {
        assert_eq!(
            KernelSpec::real(&[1.0, 0.0], &[], 1.0),
            Err(Error::NonzeroViolation { index: Some(1) })
        );
        assert_eq!(
            KernelSpec::real(&[1.0], &[], 0.0),
            Err(Error::NonzeroViolation { index: None })
        );
    }

    #[test]
    fn tiny_ratio_is_not_analytic() {
        let spec = KernelSpec::real(&[1e-20, 1.0], &[], 1.0).unwrap();
        let r = validate_spec(&spec);
        assert!(!r.analytic);
        assert!(matches!(require_analytic(&spec), Err(Error::NotLeftInvertible { .. })));
    }

    #[test]
    fn tail_rule_extends_a() {
        let spec = KernelSpec::real(&[1.0, 2.0], &[0.5], 0.5).unwrap();
        assert_eq!(spec.a(1), c(2.0, 0.0));
        assert_eq!(spec.a(3), c(0.5, 0.0));
        assert_eq!(spec.b(0), c(0.5, 0.0));
        assert_eq!(spec.b(7), c(0.0, 0.0));
    }

    #[test]
    fn basis_values() {
        let szego = worked::szego();
        assert_eq!(szego.basis_eval(3, c(0.5, 0.0)), c(0.125, 0.0));
        let s4 = worked::nonzero_b0();
        assert_eq!(s4.basis_eval(0, c(0.0, 1.0)), c(1.0, 0.5));
        assert_eq!(s4.basis_eval(0, c(0.0, 0.0)), s4.a(0));
    }

    #[test]
    fn kernel_values() {
        let szego = worked::szego();
        let k0 = kernel_eval(&szego, c(0.0, 0.0), c(0.0, 0.0), 5).unwrap();
        assert_eq!(k0.value, c(1.0, 0.0));
        assert_eq!(k0.tail_bound, 0.0);
        // Geometric series sum (1/4)^n = 4/3.
        let k = kernel_eval(&szego, c(0.5, 0.0), c(0.5, 0.0), 60).unwrap();
        assert!((k.value - c(4.0 / 3.0, 0.0)).norm() < 1e-15);
        let s4 = worked::nonzero_b0();
        let k = kernel_eval(&s4, c(0.0, 0.0), c(0.0, 0.0), 3).unwrap();
        assert_eq!(k.value, c(1.0, 0.0));
    }

    #[test]
    fn kernel_tail_bound_tracks_remainder() {
        let szego = worked::szego();
        let k = kernel_eval(&szego, c(0.5, 0.0), c(0.5, 0.0), 4).unwrap();
        let exact_tail = 4.0 / 3.0 - k.value.re;
        assert!((k.tail_bound - exact_tail).abs() < 1e-15);
    }

    #[test]
    fn kernel_divergence() {
        let spec = KernelSpec::real(&[1.0], &[], 3.0).unwrap();
        assert!(matches!(
            kernel_eval(&spec, c(0.5, 0.0), c(0.5, 0.0), 4),
            Err(Error::DivergenceWarning { .. })
        ));
    }

    #[test]
    fn monomial_examples() {
        let szego = worked::szego();
        assert_eq!(monomial_coeffs(&szego, 2, 3), vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let s4 = worked::nonzero_b0();
        assert_eq!(monomial_coeffs(&s4, 0, 3), vec![c(1.0, 0.0), c(-0.5, 0.0), c(0.0, 0.0)]);
        let s9 = worked::b0_b1_one();
        assert_eq!(
            monomial_coeffs(&s9, 0, 5),
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn monomial_solves_triangular_system_by_brute_force() {
        // Independent route: solve z^n = sum alpha_m f_m by forward
        // substitution on the monomial coefficients of the basis.
        let spec = KernelSpec::new(
            vec![c(1.0, 0.5), c(0.7, -0.2), c(1.3, 0.0)],
            vec![c(0.3, 0.1), c(-0.4, 0.2), c(0.2, 0.0), c(0.1, -0.1)],
            c(0.9, 0.1),
        )
        .unwrap();
        let dim = 9;
        let g = basis_to_monomial(&spec, dim);
        for n in 0..4 {
            let mut alpha = vec![c(0.0, 0.0); dim];
            for m in 0..dim {
                let target = if m == n { c(1.0, 0.0) } else { c(0.0, 0.0) };
                let prev = if m > 0 { g[(m, m - 1)] * alpha[m - 1] } else { c(0.0, 0.0) };
                alpha[m] = (target - prev) / g[(m, m)];
            }
            let ours = monomial_in_basis(&spec, n, dim);
            for m in 0..dim {
                assert!((ours[m] - alpha[m]).norm() < 1e-14, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn json_round_trip_and_shorthand() {
        let spec: KernelSpec =
            serde_json::from_str(r#"{"a": [1, [2.0, 0.5]], "b": [0.5], "tail": {"rho": 1}}"#).unwrap();
        assert_eq!(spec.a(1), c(2.0, 0.5));
        assert_eq!(spec.b(0), c(0.5, 0.0));
        let text = serde_json::to_string(&spec).unwrap();
        let back: KernelSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let bad: std::result::Result<KernelSpec, _> = serde_json::from_str(r#"{"a": [1, 0]}"#);
        assert!(bad.is_err());
    }
}
