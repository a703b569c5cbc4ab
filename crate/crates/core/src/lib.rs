//! Partial flag incidence algebras on finite graded posets, multi-indexed
//! Whitney numbers, matroid Kazhdan-Lusztig polynomials and generalized
//! characteristic polynomials, all in exact integer arithmetic.

pub mod char_poly;
pub mod error;
pub mod flags;
pub mod incidence;
pub mod integer;
pub mod kl_index;
pub mod kl_poly;
pub mod limits;
pub mod mobius;
pub mod multipoly;
pub mod polynomial;
pub mod selftest;
pub mod poset;
pub mod structure;
pub mod whitney;

pub use error::{Error, Result};
pub use integer::Integer;
pub use limits::Limits;
pub use poset::{generators, Diagnostics, Poset};
