//! Exact computer algebra for the extended Ramanujan differential system.
//!
//! The library covers Eisenstein and divisor-sum series ([`forms`]), the
//! polynomial ring carrying the derivation `D` ([`ring`]), principal
//! `D`-stability ([`stability`]) and an empirical laboratory for orders of
//! vanishing of auxiliary polynomials ([`multlab`]). All arithmetic is exact.

pub mod arith;
pub mod cli;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod multlab;
pub mod ring;
pub mod series;
pub mod stability;

pub use arith::Rational;
pub use error::{Error, Result};
pub use series::{Order, TruncatedSeries};
