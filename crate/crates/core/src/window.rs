//! Finite windows of the infinite operator matrices in the basis `f_n`.
//!
//! `[M_z]`, `[L]` and `[L^p]` are built entry by entry from closed forms, so
//! their windows nest exactly. Products are formed on a window enlarged by
//! [`KernelSpec::pad`] and then cut back, which makes every interior entry of
//! the product exact.

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::Result;
use crate::kernel::{monomial_coeffs, require_analytic, KernelSpec};
use crate::linalg::{self, CMatrix};
use crate::sequences::derived_sequences;
use crate::C64;

/// Which operator a window represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Mz,
    MzAdj,
    L,
    Lp(usize),
    LAdjP(usize),
    ModInvSq,
    ModInv,
    Mod,
    ModSqrt,
    ModInvSqrt,
    /// A Hermitian matrix function of some other window.
    Derived,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Mz => f.write_str("Mz"),
            Source::MzAdj => f.write_str("MzAdj"),
            Source::L => f.write_str("L"),
            Source::Lp(p) => write!(f, "Lp({p})"),
            Source::LAdjP(p) => write!(f, "LAdjP({p})"),
            Source::ModInvSq => f.write_str("ModInvSq"),
            Source::ModInv => f.write_str("ModInv"),
            Source::Mod => f.write_str("Mod"),
            Source::ModSqrt => f.write_str("ModSqrt"),
            Source::ModInvSqrt => f.write_str("ModInvSqrt"),
            Source::Derived => f.write_str("Derived"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    /// Every entry comes from a closed form or an exact interior product.
    ClosedForm,
    /// Entries come from a finite-section matrix function.
    Truncated,
}

impl Exactness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Exactness::ClosedForm => "closed_form",
            Exactness::Truncated => "truncated",
        }
    }
}

/// An `N x N` section of an infinite matrix in the basis `f_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorWindow {
    pub entries: CMatrix,
    pub source: Source,
    pub exactness: Exactness,
}

impl OperatorWindow {
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn restrict(&self, n: usize) -> OperatorWindow {
        OperatorWindow {
            entries: self.entries.restrict(n),
            ..self.clone()
        }
    }

    pub fn get(&self, m: usize, n: usize) -> C64 {
        self.entries[(m, n)]
    }
}

impl Serialize for OperatorWindow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .entries
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
            .collect();
        let mut s = serializer.serialize_struct("OperatorWindow", 4)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("entries", &rows)?;
        s.serialize_field("source", &self.source.to_string())?;
        s.serialize_field("exactness", self.exactness.as_str())?;
        s.end()
    }
}

fn closed(entries: CMatrix, source: Source) -> OperatorWindow {
    OperatorWindow {
        entries,
        source,
        exactness: Exactness::ClosedForm,
    }
}

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Raw `[M_z]` section, no validation.
pub(crate) fn mz_matrix(spec: &KernelSpec, dim: usize) -> CMatrix {
    let seq = derived_sequences(spec);
    let mut m = CMatrix::zeros(dim, dim);
    for n in 0..dim {
        if n + 1 < dim {
            m[(n + 1, n)] = spec.a(n) / spec.a(n + 1);
        }
        if n + 2 >= dim {
            continue;
        }
        let mut term = seq.c(n);
        m[(n + 2, n)] = term;
        for row in (n + 3)..dim {
            if term == ZERO {
                break;
            }
            term = -term * spec.b(row - 1) / spec.a(row);
            m[(row, n)] = term;
        }
    }
    m
}

/// Raw `[L]` section, no validation.
pub(crate) fn l_matrix(spec: &KernelSpec, dim: usize) -> CMatrix {
    let seq = derived_sequences(spec);
    let mut l = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        l[(n - 1, n)] = spec.a(n) / spec.a(n - 1);
        let mut term = seq.d(n);
        l[(n, n)] = term;
        for row in (n + 1)..dim {
            if term == ZERO {
                break;
            }
            term = -term * spec.b(row - 1) / spec.a(row);
            l[(row, n)] = term;
        }
    }
    l
}

/// Raw `[L^p]` section for `p >= 1`, no validation.
pub(crate) fn lp_matrix(spec: &KernelSpec, p: usize, dim: usize) -> CMatrix {
    assert!(p >= 1);
    if p == 1 {
        return l_matrix(spec, dim);
    }
    let seq = derived_sequences(spec);
    let mut out = CMatrix::zeros(dim, dim);
    // L^p f_n for 1 <= n < p is the constant beta_n^(p), expanded in the basis.
    let one = monomial_coeffs(spec, 0, dim);
    for n in 1..p.min(dim) {
        let beta = seq.beta_p(n, p);
        if beta == ZERO {
            continue;
        }
        for (k, coeff) in one.iter().enumerate() {
            out[(k, n)] = beta * coeff;
        }
    }
    // L^p f_n = (a_n/a_(n-p)) f_(n-p) + d_n^(p) z^(n-p+1) for n >= p.
    for n in p..dim {
        out[(n - p, n)] = spec.a(n) / spec.a(n - p);
        let d = seq.d_p(n, p);
        if d == ZERO {
            continue;
        }
        let start = n - p + 1;
        for (k, coeff) in monomial_coeffs(spec, start, dim - start).into_iter().enumerate() {
            out[(start + k, n)] = d * coeff;
        }
    }
    out
}

/// `[M_z]` on `f_0..f_(dim-1)`.
pub fn mz_window(spec: &KernelSpec, dim: usize) -> OperatorWindow {
    closed(mz_matrix(spec, dim), Source::Mz)
}

/// `[M_z*]` on `f_0..f_(dim-1)`.
pub fn mz_adj_window(spec: &KernelSpec, dim: usize) -> OperatorWindow {
    closed(mz_matrix(spec, dim).adjoint(), Source::MzAdj)
}

/// The Shimorin left inverse `L = (M_z* M_z)^-1 M_z*`.
pub fn left_inverse_window(spec: &KernelSpec, dim: usize) -> Result<OperatorWindow> {
    require_analytic(spec)?;
    Ok(closed(l_matrix(spec, dim), Source::L))
}

/// `[L^p]` from its closed form.
pub fn lp_window(spec: &KernelSpec, p: usize, dim: usize) -> Result<OperatorWindow> {
    require_analytic(spec)?;
    if p == 0 {
        return Ok(closed(CMatrix::identity(dim), Source::Lp(0)));
    }
    Ok(closed(lp_matrix(spec, p, dim), Source::Lp(p)))
}

/// `[L*^p]`, the adjoint of [`lp_window`].
pub fn lp_adj_window(spec: &KernelSpec, p: usize, dim: usize) -> Result<OperatorWindow> {
    let w = lp_window(spec, p, dim)?;
    Ok(closed(w.entries.adjoint(), Source::LAdjP(p)))
}

/// `|M_z|^-2 = L L*`, exact on the window.
pub fn modulus_inv_sq_window(spec: &KernelSpec, dim: usize) -> Result<OperatorWindow> {
    require_analytic(spec)?;
    let l = l_matrix(spec, dim + spec.pad());
    let product = &l * &l.adjoint();
    Ok(closed(product.restrict(dim), Source::ModInvSq))
}

/// `M_z* M_z`, exact on the window. The dense counterpart of `|M_z|^2`.
pub fn modulus_sq_window(spec: &KernelSpec, dim: usize) -> OperatorWindow {
    let m = mz_matrix(spec, dim + spec.pad());
    closed((&m.adjoint() * &m).restrict(dim), Source::Derived)
}

/// Inverse of a Hermitian positive-definite window.
pub fn hermitian_inverse(w: &OperatorWindow) -> Result<OperatorWindow> {
    Ok(OperatorWindow {
        entries: linalg::hermitian_inverse(&w.entries)?,
        source: match w.source {
            Source::ModInvSq => Source::Derived,
            Source::ModInv => Source::Mod,
            Source::Mod => Source::ModInv,
            _ => Source::Derived,
        },
        exactness: Exactness::Truncated,
    })
}

/// Positive square root of a Hermitian positive-definite window.
pub fn hermitian_sqrt(w: &OperatorWindow) -> Result<OperatorWindow> {
    Ok(OperatorWindow {
        entries: linalg::hermitian_sqrt(&w.entries)?,
        source: match w.source {
            Source::ModInvSq => Source::ModInv,
            Source::ModInv => Source::ModInvSqrt,
            Source::Mod => Source::ModSqrt,
            _ => Source::Derived,
        },
        exactness: Exactness::Truncated,
    })
}

/// `max |(L M_z)_(mn) - delta_mn|` over the window.
pub fn verify_left_inverse(spec: &KernelSpec, dim: usize) -> Result<f64> {
    require_analytic(spec)?;
    let big = dim + spec.pad();
    let product = &l_matrix(spec, big) * &mz_matrix(spec, big);
    Ok(product.restrict(dim).identity_defect())
}
