//! Exact synthesis of qutrit Clifford+R circuits.
//!
//! Unitaries with entries in ℤ[1/χ], χ = 1 − ω, are decomposed into words over
//! `{H, S, R}` by walking down the tree of self-dual lattices over the
//! χ-adic completion of ℤ[ω].

// 3×3 index loops read better than iterator chains here
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod building;
pub mod error;
pub mod f3;
pub mod gates;
pub mod lattice;
pub mod matrix;
pub mod metric;
pub mod monomial;
pub mod synthesis;
pub mod wire;

pub use error::Error;
