//! Dynamically corrected gates: pulse-sequence synthesis from Eulerian walks
//! on Cayley graphs, toggling-frame error analysis and open-system propagation.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the command
//! line and timing live in the `dcg-forge` companion crate.

#![no_std]

extern crate alloc;

pub mod bench;
pub mod compile;
pub mod dynamics;
pub mod error;
pub mod euler;
pub mod operator;
pub mod pulses;
pub mod random;

pub use error::{Error, Result};
pub use operator::{DenseOperator, Pauli, PauliString, C64};
