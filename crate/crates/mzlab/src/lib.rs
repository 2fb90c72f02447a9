//! Exact-arithmetic workbench for Mathieu-Zhao space experiments.
//!
//! The crate provides derivations, ring endomorphisms and E-derivations
//! (maps 1 - phi) on Laurent polynomial rings and truncated formal power
//! series rings, together with the machinery needed to study their
//! images as Mathieu-Zhao spaces: local finiteness certificates, exact
//! rational Jordan-Chevalley decomposition with root-of-unity
//! certification, radical and image membership tests, and the prime-field
//! counterexamples. Everything is computed exactly over Q or F_p; there
//! is no floating point anywhere.

pub mod cli;
pub mod error;
pub mod jordan;
pub mod locfin;
pub mod mzspace;
pub mod operators;
pub mod parse;
pub mod report;
pub mod rng;
pub mod linalg;
pub mod rings;

pub use error::{Error, Result};

// The guide's code blocks double as doc-tests: `cargo test --doc` runs
// every runnable snippet in book/src, so the book cannot drift from the
// library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/local-finiteness.md")]
    mod local_finiteness {}
    #[doc = include_str!("../../../book/src/jordan.md")]
    mod jordan {}
    #[doc = include_str!("../../../book/src/mz-spaces.md")]
    mod mz_spaces {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
