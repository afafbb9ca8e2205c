//! The guide's chapters, compiled so their code blocks run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/measures.md")]
pub mod measures {}

#[doc = include_str!("../../../book/src/custom.md")]
pub mod custom {}

#[doc = include_str!("../../../book/src/fast.md")]
pub mod fast {}

#[doc = include_str!("../../../book/src/range.md")]
pub mod range {}

#[doc = include_str!("../../../book/src/inference.md")]
pub mod inference {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
