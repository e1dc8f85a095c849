//! Coxeter group combinatorics and cosets of twisted parabolic subgroups.
//!
//! A [`CoxeterSystem`] is built from a bond matrix and enumerated as a Cayley
//! graph with ShortLex canonical words. On top of it:
//!
//! - [`twisted`] builds the subgroup `W_L^θ` of elements of a standard
//!   parabolic subgroup fixed by an involutive diagram automorphism `θ`,
//!   with its Coxeter generators (longest elements of the finite θ-orbits).
//! - [`cosets`] analyzes cosets `x·W_L^θ`: their minimal-length elements,
//!   the equal-length steps joining them, and a Bruhat-dominated minimal
//!   element below any coset member.
//! - [`verify`] holds brute-force oracles and exhaustive checkers.

mod bruhat;
pub mod cosets;
mod error;
pub mod named;
mod par;
mod parabolic;
mod reflection;
mod ring;
mod system;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};
pub use parabolic::{Ball, ParabolicDecomposition, Truncation};
pub use reflection::{InversionSet, Reflection};
pub use system::{
    Bond, CoxeterMatrix, CoxeterSystem, Element, Side, WordParseError, DEFAULT_CAP,
};
