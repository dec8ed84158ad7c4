//! Shifts on tridiagonal reproducing kernel Hilbert spaces.
//!
//! A tridiagonal space is described by a [`KernelSpec`]: two sequences
//! `a_n`, `b_n` whose functions `f_n(z) = (a_n + b_n z) z^n` form an
//! orthonormal basis. The crate builds finite windows of the shift `M_z` and
//! its Shimorin left inverse in that basis, computes the Shimorin,
//! Shimorin-Aluthge and standard Aluthge kernel coefficients, and decides the
//! tridiagonality and quasinormality criteria for these shifts.
//!
//! ```
//! use tdk_core::{shimorin, worked};
//!
//! let spec = worked::nonzero_b0();
//! let table = shimorin::shimorin_coeffs(&spec, 4).unwrap();
//! assert!((table.get(1, 3).re - 0.25).abs() < 1e-12);
//! ```

pub type C64 = num_complex::Complex64;

pub mod aluthge;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod numeric;
pub mod oracle;
pub mod sequences;
pub mod shimorin;
pub mod table;
pub mod verdict;
pub mod window;
pub mod worked;

pub use error::{Error, Result};
pub use kernel::{validate_spec, KernelSpec, ValidationReport};
pub use linalg::CMatrix;
pub use sequences::DerivedSequences;
pub use table::{Basis, CoefficientTable};
pub use verdict::{Verdict, VerdictValue, Witness};
pub use window::{Exactness, OperatorWindow, Source};
