//! Sequences derived from `a_n` and `b_n` that populate the operator matrices.

use crate::kernel::KernelSpec;
use crate::C64;

/// Index-addressable view of `c_n`, `d_n`, `d_n^(p)`, `beta_n` and
/// `beta_n^(p)` for one kernel.
#[derive(Clone, Debug)]
pub struct DerivedSequences<'a> {
    spec: &'a KernelSpec,
}

pub fn derived_sequences(spec: &KernelSpec) -> DerivedSequences<'_> {
    DerivedSequences { spec }
}

impl<'a> DerivedSequences<'a> {
    fn ratio(&self, n: usize) -> C64 {
        self.spec.b(n) / self.spec.a(n)
    }

    /// `c_n = (a_n / a_(n+2)) (b_n/a_n - b_(n+1)/a_(n+1))`, the entry of
    /// `[M_z]` two below the diagonal.
    pub fn c(&self, n: usize) -> C64 {
        self.spec.a(n) / self.spec.a(n + 2) * (self.ratio(n) - self.ratio(n + 1))
    }

    /// `d_n = b_n/a_n - b_(n-1)/a_(n-1)` for `n >= 1`; the diagonal of `[L]`.
    pub fn d(&self, n: usize) -> C64 {
        assert!(n >= 1, "d_n is defined for n >= 1");
        self.ratio(n) - self.ratio(n - 1)
    }

    /// `d_n^(p) = b_n - (a_n / a_(n-p)) b_(n-p)` for `n >= p`.
    pub fn d_p(&self, n: usize, p: usize) -> C64 {
        assert!(n >= p, "d_n^(p) is defined for n >= p");
        self.spec.b(n) - self.spec.a(n) / self.spec.a(n - p) * self.spec.b(n - p)
    }

    /// `beta_n = b_n/a_n - b_0/a_0`.
    pub fn beta(&self, n: usize) -> C64 {
        self.ratio(n) - self.ratio(0)
    }

    /// `beta_n^(p) = a_n (-b_0/a_0)^(p-n-1) beta_n` for `n < p`, with `0^0 = 1`.
    ///
    /// This is the value of the constant function `L^p f_n`.
    pub fn beta_p(&self, n: usize, p: usize) -> C64 {
        assert!(n < p, "beta_n^(p) is defined for n < p");
        let base = -self.ratio(0);
        let e = (p - n - 1) as u32;
        let pow = if e == 0 { C64::new(1.0, 0.0) } else { base.powu(e) };
        self.spec.a(n) * pow * self.beta(n)
    }
}
