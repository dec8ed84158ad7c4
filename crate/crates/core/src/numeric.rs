//! Tolerances and the three-way zero test shared by every classifier.

use serde::{Deserialize, Serialize};

/// Relative tolerance for comparisons.
pub const REL_TOL: f64 = 1e-10;
/// Absolute floor under every relative tolerance.
pub const ABS_FLOOR: f64 = 1e-14;
/// Width of the indeterminate band, as a multiple of the tolerance.
pub const BAND_FACTOR: f64 = 10.0;

/// Relative comparison with an absolute floor.
pub fn approx_eq(x: f64, y: f64) -> bool {
    (x - y).abs() <= REL_TOL * x.abs().max(y.abs()) + ABS_FLOOR
}

/// Outcome of testing a magnitude against a tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroTest {
    Zero,
    Nonzero,
    Indeterminate,
}

/// The absolute threshold used for a given scale.
pub fn threshold(scale: f64) -> f64 {
    (REL_TOL * scale).max(ABS_FLOOR)
}

/// Classifies `magnitude` as zero below `tol`, nonzero above `BAND_FACTOR * tol`,
/// and indeterminate in between.
pub fn classify_magnitude(magnitude: f64, tol: f64) -> ZeroTest {
    if magnitude < tol {
        ZeroTest::Zero
    } else if magnitude > BAND_FACTOR * tol {
        ZeroTest::Nonzero
    } else {
        ZeroTest::Indeterminate
    }
}
