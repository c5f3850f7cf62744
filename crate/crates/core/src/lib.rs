//! Exact enumeration and generating-function toolkit for colored Motzkin
//! paths of arbitrary rank.
//!
//! A rank-`r` path uses up-steps `U_j = (1, j)`, down-steps `D_j = (1, -j)`
//! for `1 <= j <= r` and a level step `L = (1, 0)`, each carrying an integer
//! weight (the number of available colors). The crate provides:
//!
//! * [`paths`]: explicit paths, exhaustive enumeration and the pair
//!   recoloring bijection `(u, l, d) -> (1, l, u*d)` for rank one.
//! * [`counting`]: weighted counts via dynamic programming, the rank-one
//!   closed form and the published linear recursions.
//! * [`genfunc`]: truncated power series over the rationals and the
//!   first-return equation system for the generating functions `A_{s,t}`.
//! * [`algebraics`]: discovery and verification of polynomial equations
//!   `P(x, A_{0,0}) = 0`.
//! * [`recurrence`]: discovery and verification of P-recursive relations.
//! * [`wire`]: the JSON / CSV / text exchange formats.
//!
//! All arithmetic is exact; nothing in the crate touches floating point.

pub mod algebraics;
pub mod counting;
pub mod error;
pub mod genfunc;
pub mod linalg;
pub mod paths;
pub mod poly;
pub mod recurrence;
pub mod wire;

#[cfg(test)]
mod proptests;

pub use algebraics::{AlgebraicEquation, GuessReport};
pub use counting::{count_paths_dp, CountTable};
pub use error::Error;
pub use genfunc::{CoeffSeries, SeriesFamily, SystemOfEquations};
pub use paths::{ColoredPath, PairMatching, Step, WeightSpec};
pub use poly::IntPoly;
pub use recurrence::{MinimalityReport, Recurrence};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
