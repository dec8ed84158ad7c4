//! Runs the listings of the guide in `book/` as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/kernels.md")]
pub mod kernels {}
#[doc = include_str!("../../../book/src/windows.md")]
pub mod windows {}
#[doc = include_str!("../../../book/src/shimorin.md")]
pub mod shimorin {}
#[doc = include_str!("../../../book/src/aluthge.md")]
pub mod aluthge {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
