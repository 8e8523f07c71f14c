//! Exact computations on varieties of differential complexes and on the
//! moduli of codimension-one foliations of projective space.
//!
//! - [`rankcomb`]: the admissible rank poset `R(d)` and the closed-form
//!   dimension counts of strata, tangent spaces and Hom spaces.
//! - [`cxlin`]: explicit complexes of rational matrices, used both as
//!   witnesses and as brute-force oracles for the formulas in `rankcomb`.
//! - [`pforms`]: twisted differential forms on `P^r` and the second
//!   multiplication `*` of forms.
//! - [`folan`]: the complexes `C^±_ω(e)` built from a 1-form and its rank
//!   profile inside the stratification.

pub mod cxlin;
pub mod error;
pub mod folan;
pub mod json;
pub mod linalg;
pub mod pforms;
pub mod rankcomb;

pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
pub use rankcomb::{DimVector, HomologyProfile, RankVector};
