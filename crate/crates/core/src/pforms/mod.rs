//! Twisted differential forms on projective space.
//!
//! A section of `Omega^k_{P^r}(e)` is represented by a polynomial `k`-form on
//! `K^{r+1}` with coefficients of degree `e - k` and zero radial contraction.
//! Raw [`PolyForm`]s carry the exterior algebra; [`TwistedForm`] enforces the
//! descent condition.

mod basis;
mod delta;
mod form;
mod twisted;

pub use basis::{
    basis, binomial, bott_dim, contraction_kernel_dim, dimension_report, printed_dim_formula, DimensionReport,
    FormBasis, PrintedFormula,
};
pub use delta::{delta_injectivity_rank, delta_matrix, delta_matrix_between, integrable};
pub use form::{index_sets, monomial_forms, monomials, PolyForm, TermKey};
pub use twisted::{star, TwistedForm};
