//! Exact arithmetic around discriminants of trinomials `t^n + a·t + b`.
//!
//! The crate computes, at desk scale and without floating shortcuts where
//! exactness is possible:
//!
//! * closed-form discriminants checked against a Sylvester-resultant oracle
//!   ([`trinomial`]),
//! * Jacobi symbols, integer factorization and square-free kernels
//!   ([`arith`]),
//! * irreducibility over prime fields (Rabin's test) and over the rationals,
//!   plus exact counts of irreducible trinomials over `F_p` ([`polyfield`]),
//! * complete, composite and incomplete Jacobi-symbol character sums and
//!   Gauss sums ([`charsums`]),
//! * the square-sieve detector and the counting functions for pairs `(a, b)`
//!   with `Δ_n(a,b) = s·r²` and for distinct quadratic fields `Q(√Δ)`
//!   ([`sieve`]),
//! * empirical verification of the character-sum and irreducible-count
//!   budgets with measured constants ([`verify`]).
//!
//! Box enumeration and the `O(m²)` character-sum loops are data parallel;
//! with the default `parallel` feature they run on rayon, sharded by row and
//! merged in index order so every result is independent of the thread count.
//! Building with `--no-default-features` gives a sequential fallback with
//! identical output.

pub mod arith;
pub mod charsums;
pub mod error;
mod par;
pub mod polyfield;
pub mod sieve;
pub mod trinomial;
pub mod verify;

pub use error::{Error, Result};
