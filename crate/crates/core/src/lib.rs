//! Trifferent codes over the alphabet `{0, 1, 2}`.
//!
//! A code is *trifferent* when every three distinct codewords have a
//! coordinate at which they take all three symbols. This crate provides the
//! codeword and code types, a bitplane verifier, the code transformations
//! used by the counting arguments (shifting, pruning, projection), explicit
//! constructions, the graphs derived from `r`-bounded codes together with
//! `K_{s,t}` detection, numeric bound evaluation and an exact search with an
//! independent exhaustive oracle.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line tool live in the `trifferent` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod bits;
pub mod bounds;
mod code;
mod codeword;
pub mod constructions;
mod error;
pub mod graphs;
pub mod math;
pub mod search;
pub mod transform;
mod verify;

pub use code::Code;
pub use codeword::{Codeword, SYMBOLS};
pub use error::{Error, Result};
pub use verify::{
    first_violation_with_leading, is_trifferent_triple, triple_is_separated, verify_trifferent,
    VerificationResult,
};
