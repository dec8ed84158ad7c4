#![allow(dead_code)]

use proptest::prelude::*;
use tdk_core::{KernelSpec, C64};

pub fn complex(lo: f64, hi: f64) -> impl Strategy<Value = C64> {
    (lo..hi, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

/// `b` entries that are zero about a third of the time.
fn b_entry() -> impl Strategy<Value = C64> {
    prop_oneof![
        1 => Just(C64::new(0.0, 0.0)),
        2 => complex(0.05, 0.7),
    ]
}

/// Analytic kernels with short prefixes.
pub fn spec() -> impl Strategy<Value = KernelSpec> {
    (
        prop::collection::vec(complex(0.4, 2.5), 1..6),
        prop::collection::vec(b_entry(), 0..6),
        complex(0.6, 1.3),
    )
        .prop_map(|(a, b, rho)| KernelSpec::new(a, b, rho).unwrap())
}

/// Truncated kernels: `b_0 = b_1 = 0`, order at most 5.
pub fn truncated_spec() -> impl Strategy<Value = KernelSpec> {
    (
        prop::collection::vec(complex(0.5, 2.0), 1..6),
        prop::collection::vec(b_entry(), 1..5),
        complex(0.7, 1.2),
    )
        .prop_map(|(a, tail_b, rho)| {
            let mut b = vec![C64::new(0.0, 0.0); 2];
            b.extend(tail_b);
            KernelSpec::new(a, b, rho).unwrap()
        })
}

/// Diagonal kernels with complex `a`.
pub fn diagonal_spec() -> impl Strategy<Value = KernelSpec> {
    (prop::collection::vec(complex(0.5, 2.0), 1..8), complex(0.6, 1.4))
        .prop_map(|(a, rho)| KernelSpec::new(a, vec![], rho).unwrap())
}

pub fn disc_point() -> impl Strategy<Value = C64> {
    complex(0.0, 0.95)
}
