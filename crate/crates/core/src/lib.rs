//! Computational toolkit for bound-quiver representation theory: exact linear
//! algebra, path algebras, representations, wildness witnesses with tracked
//! ranks, Galois-covering pushdown, tilting data and module-variety probes.
//!
//! The crate is `no_std` with `alloc`; file formats and the command-line
//! front end live in `wildrank-cli`.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod exactlin;
pub mod quiver;
pub mod rep;
pub mod wildness;
pub mod modvariety;
pub mod covering;
pub mod tilting;

pub use error::*;
