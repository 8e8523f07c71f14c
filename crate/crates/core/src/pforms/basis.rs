//! Deterministic bases of `Omega^k_r(e)` and dimension counts.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::form::{monomial_forms, radial_image, PolyForm, TermKey};
use super::twisted::TwistedForm;
use crate::error::{Error, Result};
use crate::linalg::{axpy, rat, Rational, SparseEchelon, SparseVec};

/// A basis of `Omega^k_r(e)` in reduced echelon form with respect to the
/// canonical term order: element `j` has coefficient one at `pivots[j]` and
/// every other element vanishes there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBasis {
    r: usize,
    k: usize,
    e: i64,
    elements: Vec<TwistedForm>,
    pivots: Vec<TermKey>,
}

impl FormBasis {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn twist(&self) -> i64 {
        self.e
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[TwistedForm] {
        &self.elements
    }

    /// Coordinates of `w` in this basis; fails if `w` is outside the span.
    pub fn coordinates(&self, w: &PolyForm) -> Result<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots.iter().map(|p| w.coefficient(p)).collect();
        let mut residual = w.terms().clone();
        for (c, b) in coords.iter().zip(&self.elements) {
            if !c.is_zero() {
                axpy(&mut residual, &-c, b.form().terms());
            }
        }
        if residual.is_empty() {
            Ok(coords)
        } else {
            Err(Error::NotInSpan)
        }
    }

    /// The form with the given coordinates.
    pub fn combine(&self, coords: &[Rational]) -> Result<TwistedForm> {
        if coords.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), found: coords.len() });
        }
        let mut terms = SparseVec::new();
        for (c, b) in coords.iter().zip(&self.elements) {
            if !c.is_zero() {
                axpy(&mut terms, c, b.form().terms());
            }
        }
        Ok(TwistedForm::new(self.r, self.k, self.e, PolyForm::from_sparse(self.r + 1, terms))
            .expect("combination of basis elements"))
    }

    /// A random element with integer coordinates in `-bound..=bound`.
    pub fn random_element(&self, rng: &mut impl Rng, bound: i64) -> TwistedForm {
        let coords: Vec<Rational> = (0..self.dim()).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
        self.combine(&coords).expect("coordinate count matches")
    }

    /// A random combination of `count` basis elements drawn with replacement,
    /// with nonzero integer weights in `-bound..=bound`.
    pub fn random_combination(&self, rng: &mut impl Rng, count: usize, bound: i64) -> TwistedForm {
        let mut coords = vec![rat(0); self.dim()];
        if !self.is_empty() {
            for _ in 0..count {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-bound..=bound);
                }
                coords[rng.gen_range(0..self.dim())] += rat(c);
            }
        }
        self.combine(&coords).expect("coordinate count matches")
    }

    pub fn random_element_seeded(&self, seed: u64, bound: i64) -> TwistedForm {
        self.random_element(&mut ChaCha8Rng::seed_from_u64(seed), bound)
    }
}

fn coefficient_degree(k: usize, e: i64) -> Option<u32> {
    u32::try_from(e - k as i64).ok()
}

/// A basis of `Omega^k_r(e)`, empty when the space is zero.
///
/// For `k = 0` the space is all forms of degree `e`, so the basis is the
/// monomials. For `k >= 1` the Koszul complex of `x_0, ..., x_r` is exact, so
/// the forms killed by `i_R` are exactly the contractions `i_R(x^a dx_J)` with
/// `|J| = k + 1`; the basis is the reduced echelon form of their span.
pub fn basis(r: usize, k: usize, e: i64) -> FormBasis {
    let nvars = r + 1;
    let mut ech = SparseEchelon::new();
    if k == 0 {
        if let Some(deg) = coefficient_degree(0, e) {
            for key in monomial_forms(nvars, 0, deg) {
                ech.insert(SparseVec::from([(key, Rational::from_integer(1.into()))]));
            }
        }
    } else if let Some(deg) = coefficient_degree(k + 1, e) {
        for key in monomial_forms(nvars, k + 1, deg) {
            ech.insert(radial_image(&key));
        }
    }
    let (pivots, elements) = ech
        .into_rows()
        .into_iter()
        .map(|(pivot, row)| {
            let w = TwistedForm::new(r, k, e, PolyForm::from_sparse(nvars, row)).expect("Koszul image descends");
            (pivot, w)
        })
        .unzip();
    FormBasis { r, k, e, elements, pivots }
}

/// Brute-force `dim ker i_R` on all `k`-forms with coefficients of degree `e - k`.
pub fn contraction_kernel_dim(r: usize, k: usize, e: i64) -> usize {
    let Some(deg) = coefficient_degree(k, e) else {
        return 0;
    };
    let keys = monomial_forms(r + 1, k, deg);
    let mut ech = SparseEchelon::new();
    for key in &keys {
        ech.insert(radial_image(key));
    }
    keys.len() - ech.rank()
}

/// `binom(n, k)` for integers, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Bott's count `binom(e-1, k) binom(e+r-k, r-k)`, valid for `e > k >= 1`.
pub fn bott_dim(r: usize, k: usize, e: i64) -> Option<BigInt> {
    let (r, k) = (r as i64, k as i64);
    (k >= 1 && e > k && k <= r).then(|| binomial(e - 1, k) * binomial(e + r - k, r - k))
}

/// The count `binom(r-k+e, r-k) binom(d-1, k)` with the foliation degree `d`
/// in the second factor, as printed in the source this tool follows.
pub fn printed_dim_formula(r: usize, k: usize, e: i64, d: i64) -> BigInt {
    let (r, k) = (r as i64, k as i64);
    binomial(r - k + e, r - k) * binomial(d - 1, k)
}

/// Computed, brute-force and closed-form counts for one `Omega^k_r(e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub r: usize,
    pub k: usize,
    pub e: i64,
    pub basis_dim: usize,
    pub kernel_dim: usize,
    pub bott: Option<i64>,
    pub printed: Option<PrintedFormula>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrintedFormula {
    pub d: i64,
    pub value: i64,
    pub agrees: bool,
}

impl DimensionReport {
    pub fn consistent(&self) -> bool {
        self.basis_dim == self.kernel_dim && self.bott.is_none_or(|b| b == self.basis_dim as i64)
    }
}

pub fn dimension_report(r: usize, k: usize, e: i64, foliation_degree: Option<i64>) -> DimensionReport {
    let basis_dim = basis(r, k, e).dim();
    let to_i64 = |b: BigInt| i64::try_from(b).expect("dimension fits in i64");
    DimensionReport {
        r,
        k,
        e,
        basis_dim,
        kernel_dim: contraction_kernel_dim(r, k, e),
        bott: bott_dim(r, k, e).map(to_i64),
        printed: foliation_degree.map(|d| {
            let value = to_i64(printed_dim_formula(r, k, e, d));
            PrintedFormula { d, value, agrees: value == basis_dim as i64 }
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pforms::form::monomials;

    #[test]
    fn dimension_examples() {
        assert_eq!(basis(3, 1, 1).dim(), 0);
        assert_eq!(basis(3, 1, 2).dim(), 6);
        assert_eq!(basis(3, 0, 2).dim(), 10);
        assert_eq!(basis(3, 0, 0).dim(), 1);
        assert_eq!(basis(3, 0, -1).dim(), 0);
        assert_eq!(basis(3, 2, 2).dim(), 0);
        assert_eq!(basis(3, 3, 4).dim(), 1);
    }

    #[test]
    fn basis_elements_descend_and_are_echelon() {
        let b = basis(3, 1, 2);
        for (j, w) in b.elements().iter().enumerate() {
            assert!(w.form().radial_contract().is_zero());
            for (i, p) in b.pivots.iter().enumerate() {
                let expected = if i == j { 1 } else { 0 };
                assert_eq!(w.form().coefficient(p), rat(expected));
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let b = basis(3, 1, 3);
        let w = b.random_element_seeded(4, 3);
        let coords = b.coordinates(w.form()).unwrap();
        assert_eq!(b.combine(&coords).unwrap(), w);
        let outside = PolyForm::monomial(4, vec![2, 0, 0, 0], vec![1], rat(1)).unwrap();
        assert_eq!(b.coordinates(&outside), Err(Error::NotInSpan));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(1, 2), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(5, 0), BigInt::from(1));
    }

    #[test]
    fn bott_examples() {
        assert_eq!(bott_dim(3, 1, 2), Some(BigInt::from(6)));
        assert_eq!(bott_dim(5, 1, 2), Some(BigInt::from(15)));
        assert_eq!(bott_dim(5, 3, 4), Some(BigInt::from(15)));
        assert_eq!(bott_dim(5, 5, 6), Some(BigInt::from(1)));
        assert_eq!(bott_dim(3, 0, 2), None);
        assert_eq!(bott_dim(3, 2, 2), None);
    }

    #[test]
    fn printed_formula_differs_from_bott_off_diagonal() {
        // With d = e the printed count is Bott's.
        assert_eq!(printed_dim_formula(4, 1, 3, 3), bott_dim(4, 1, 3).unwrap());
        let report = dimension_report(5, 3, 4, Some(2));
        assert_eq!(report.basis_dim, 15);
        assert!(report.consistent());
        assert_eq!(report.printed.as_ref().unwrap().value, 0);
        assert!(!report.printed.unwrap().agrees);
    }

    #[test]
    fn kernel_oracle_on_functions_counts_monomials() {
        for e in 0..4 {
            assert_eq!(contraction_kernel_dim(3, 0, e), monomials(4, e as u32).len());
        }
    }
}
