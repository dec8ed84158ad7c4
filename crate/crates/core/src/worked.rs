//! Small named kernels used throughout the tests, the book and the CLI.

use crate::kernel::KernelSpec;

/// `a_n = 1`, `b_n = 0`: the Hardy space, where `M_z` is the unilateral shift.
pub fn szego() -> KernelSpec {
    KernelSpec::real(&[1.0], &[], 1.0).expect("valid spec")
}

/// `a_n = 1`, `b_0 = 1/2`, all other `b_n = 0`. The Shimorin kernel of this
/// shift is not tridiagonal.
pub fn nonzero_b0() -> KernelSpec {
    KernelSpec::real(&[1.0], &[0.5], 1.0).expect("valid spec")
}

/// `a_n = 1`, `b_0 = b_1 = 1`. The standard Aluthge kernel is tridiagonal but
/// the Shimorin-Aluthge kernel is not.
pub fn b0_b1_one() -> KernelSpec {
    KernelSpec::real(&[1.0], &[1.0, 1.0], 1.0).expect("valid spec")
}

/// `a_n = 1` and a single nonzero `b_2`; truncated of order 2.
pub fn truncated_b2(b2: f64) -> KernelSpec {
    KernelSpec::real(&[1.0], &[0.0, 0.0, b2], 1.0).expect("valid spec")
}

/// `a_n = 1` except `a_2 = 2`, and `b_n = 0` except `b_2 = 1`.
///
/// `|M_z|^-2` induces a tridiagonal kernel here while `|M_z|^-1` does not.
pub fn split_modulus() -> KernelSpec {
    KernelSpec::real(&[1.0, 1.0, 2.0, 1.0], &[0.0, 0.0, 1.0], 1.0).expect("valid spec")
}

/// Diagonal kernel with constant weight `a_n / a_(n+1) = weight`.
pub fn constant_weight(weight: f64) -> KernelSpec {
    KernelSpec::real(&[1.0], &[], 1.0 / weight).expect("valid spec")
}

/// Diagonal kernel with `a_n = 1/(n+1)` for `n < len`, continued
/// geometrically with ratio 1.
pub fn bergman_like(len: usize) -> KernelSpec {
    let a: Vec<f64> = (0..len.max(1)).map(|n| 1.0 / (n as f64 + 1.0)).collect();
    KernelSpec::real(&a, &[], 1.0).expect("valid spec")
}
