//! Three-valued classification outcomes with a witness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{classify_magnitude, ZeroTest, BAND_FACTOR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictValue {
    True,
    False,
    Indeterminate,
}

/// First violating index pair and the magnitude found there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub m: usize,
    pub n: usize,
    pub magnitude: f64,
}

/// A classification outcome. `witness` is present exactly when `value` is
/// `False`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: VerdictValue,
    pub witness: Option<Witness>,
    pub tolerance_used: f64,
}

impl Verdict {
    pub fn holds(tolerance_used: f64) -> Self {
        Verdict {
            value: VerdictValue::True,
            witness: None,
            tolerance_used,
        }
    }

    pub fn fails(witness: Witness, tolerance_used: f64) -> Self {
        Verdict {
            value: VerdictValue::False,
            witness: Some(witness),
            tolerance_used,
        }
    }

    /// A verdict for a predicate that is decided exactly rather than numerically.
    pub fn from_bool(value: bool, witness: Witness) -> Self {
        if value {
            Verdict::holds(0.0)
        } else {
            Verdict::fails(witness, 0.0)
        }
    }

    /// "Every listed magnitude vanishes." The first clearly nonzero entry, in
    /// the order given, is the witness; with none but some entry inside the
    /// band the verdict is indeterminate.
    pub fn all_zero(entries: impl IntoIterator<Item = (usize, usize, f64)>, tol: f64) -> Self {
        let mut undecided = false;
        for (m, n, magnitude) in entries {
            match classify_magnitude(magnitude, tol) {
                ZeroTest::Zero => {}
                ZeroTest::Indeterminate => undecided = true,
                ZeroTest::Nonzero => return Verdict::fails(Witness { m, n, magnitude }, tol),
            }
        }
        Verdict {
            value: if undecided {
                VerdictValue::Indeterminate
            } else {
                VerdictValue::True
            },
            witness: None,
            tolerance_used: tol,
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == VerdictValue::True
    }

    pub fn is_false(&self) -> bool {
        self.value == VerdictValue::False
    }

    pub fn is_decided(&self) -> bool {
        self.value != VerdictValue::Indeterminate
    }

    /// Converts an indeterminate outcome into `IndeterminateBand`.
    pub fn decided(self, magnitude: f64) -> Result<Self> {
        if self.is_decided() {
            Ok(self)
        } else {
            Err(Error::IndeterminateBand {
                magnitude,
                tolerance: self.tolerance_used,
            })
        }
    }

    /// Whether two decided verdicts agree. Indeterminate matches nothing.
    pub fn agrees_with(&self, other: &Verdict) -> bool {
        self.is_decided() && self.value == other.value
    }
}

/// Upper edge of the indeterminate band for a tolerance.
pub fn band_upper(tol: f64) -> f64 {
    BAND_FACTOR * tol
}
