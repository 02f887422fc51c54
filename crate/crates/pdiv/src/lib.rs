//! Exact polyhedral-divisor calculus for torus actions.
//!
//! Everything is computed over arbitrary-precision rationals. The crate is
//! `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod base;
pub mod cox;
pub mod deform;
pub mod downgrade;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod pdivisor;
pub mod polyhedra;
pub mod rat;
pub mod tvariety;
pub mod upgrade;

pub use error::{Error, Result};
pub use rat::{Int, QVec, Q};
