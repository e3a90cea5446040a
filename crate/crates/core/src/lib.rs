//! Exact computational commutative algebra for finitely generated rings
//! `Z[x_1..x_n]/(f_1..f_m)`.
//!
//! The crate is `no_std` (it needs `alloc`). Text formats, JSON reports and
//! the command line live in the companion `fgring` crate.
#![no_std]

extern crate alloc;

pub mod error;
pub mod fol;
pub mod groebner;
pub mod integer;
pub mod poly;
pub mod spectrum;
pub mod univariate;
pub mod witt;

pub use error::{Error, Result};
pub use poly::{ArithOp, Context, Monomial, MonomialOrder, Polynomial, Term};
