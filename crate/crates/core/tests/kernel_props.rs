mod common;

use proptest::prelude::*;
use tdk_core::kernel::{kernel_eval, monomial_coeffs, validate_spec};
use tdk_core::sequences::derived_sequences;
use tdk_core::{KernelSpec, C64};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomials_reconstruct(spec in common::spec(), n in 0usize..6, pts in prop::collection::vec(common::disc_point(), 16)) {
        // Enough terms that every nonzero coefficient is included.
        let len = spec.b_support() + 3;
        let coeffs = monomial_coeffs(&spec, n, len);
        for z in pts {
            let sum: C64 = coeffs.iter().enumerate().map(|(m, c)| c * spec.basis_eval(n + m, z)).sum();
            let target = z.powu(n as u32);
            prop_assert!((sum - target).norm() <= 1e-12 * target.norm().max(1e-3) + 1e-14,
                "n={} z={} sum={} target={}", n, z, sum, target);
        }
    }

    #[test]
    fn c_equals_scaled_d(spec in common::spec()) {
        let s = derived_sequences(&spec);
        for n in 0..12 {
            let rhs = -(spec.a(n) / spec.a(n + 2)) * s.d(n + 1);
            prop_assert!((s.c(n) - rhs).norm() <= 1e-12 * s.c(n).norm().max(1.0));
        }
    }

    #[test]
    fn c_vanishes_iff_ratio_constant(a in prop::collection::vec(common::complex(0.5, 2.0), 1..6),
                                     ratio in common::complex(0.1, 0.9),
                                     len in 1usize..6,
                                     bump in prop::option::of((0usize..6, common::complex(0.1, 0.5)))) {
        let plain = KernelSpec::new(a.clone(), vec![], C64::new(1.0, 0.0)).unwrap();
        let mut b: Vec<C64> = (0..len).map(|n| ratio * plain.a(n)).collect();
        if let Some((at, extra)) = bump {
            if at < len { b[at] += extra; }
        }
        let spec = KernelSpec::new(a, b, C64::new(1.0, 0.0)).unwrap();
        let s = derived_sequences(&spec);
        for horizon in 0..8 {
            let c_zero = (0..=horizon).all(|n| s.c(n).norm() < 1e-13);
            let r0 = spec.b(0) / spec.a(0);
            let constant = (0..=horizon + 1).all(|n| (spec.b(n) / spec.a(n) - r0).norm() < 1e-13);
            prop_assert_eq!(c_zero, constant, "horizon {}", horizon);
        }
    }

    #[test]
    fn beta_p_vanishing_propagates(spec in common::spec()) {
        let s = derived_sequences(&spec);
        for n in 0..6 {
            for q in (n + 1)..8 {
                if s.beta_p(n, q) == C64::new(0.0, 0.0) {
                    for p in q..10 {
                        prop_assert_eq!(s.beta_p(n, p), C64::new(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_partial_sums_are_cauchy(spec in common::spec(), z in common::complex(0.0, 0.5), w in common::complex(0.0, 0.5), n in 1usize..20) {
        let k1 = kernel_eval(&spec, z, w, n).unwrap();
        let k2 = kernel_eval(&spec, z, w, 2 * n).unwrap();
        prop_assert!((k2.value - k1.value).norm() <= k1.tail_bound * (1.0 + 1e-12) + 1e-15);
        prop_assert!(k2.tail_bound <= k1.tail_bound * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn validation_matches_finite_checks(spec in common::spec()) {
        let r = validate_spec(&spec);
        prop_assert!(r.analytic && r.semi_analytic && r.polynomials_contained);
        prop_assert!(r.bounded_away <= 1.0 / spec.rho().norm() + 1e-15);
        prop_assert!(r.sup_ratio >= 1.0 / spec.rho().norm() - 1e-15);
    }
}
