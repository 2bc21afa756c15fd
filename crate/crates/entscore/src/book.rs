//! Doc-tested copies of the guide chapters.
//!
//! mdBook cannot run book snippets against this crate, so each chapter is
//! included here as a doc comment and `cargo test --doc` executes every Rust
//! code block in `book/src/`. A failing snippet fails the test suite, which
//! keeps the guide and the library in sync.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/tokenization.md")]
pub mod tokenization {}

#[doc = include_str!("../../../book/src/alignment.md")]
pub mod alignment {}

#[doc = include_str!("../../../book/src/fluency.md")]
pub mod fluency {}

#[doc = include_str!("../../../book/src/metrics.md")]
pub mod metrics {}

#[doc = include_str!("../../../book/src/meta-evaluation.md")]
pub mod meta_evaluation {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
