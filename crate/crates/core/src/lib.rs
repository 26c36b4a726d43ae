//! Error-correcting codes for substring composition multisets.
//!
//! A binary string read through a mass-spectrometry-style channel is observed
//! only as the multiset of zero/one compositions of all its substrings. This
//! crate implements codes whose codewords survive up to `t` substitutions in
//! that multiset: a systematic construction built on bivariate prefix
//! polynomials and sparse polynomial recovery over a prime field, and a
//! Catalan-path construction for a single error. Brute-force oracles are
//! included so every decoder can be checked against exhaustive search.
//!
//! The crate is `no_std` (with `alloc`); file formats and the CLI live in the
//! companion `compec` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod catalan;
pub mod codec;
pub mod composition;
pub mod field;
pub mod oracle;
pub mod polybiv;
pub mod sparse;

pub use composition::{BitString, Composition, CompositionMultiset, ErrorPattern};
pub use field::PrimeField;
