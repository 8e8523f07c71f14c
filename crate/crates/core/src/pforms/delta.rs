//! The multiplication operator `delta_w(eta) = w * eta` and integrability.

use std::collections::BTreeMap;

use super::basis::{basis, FormBasis};
use super::twisted::{star, TwistedForm};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, SparseEchelon};

fn require_one_form(w: &TwistedForm) -> Result<()> {
    if w.k() == 1 {
        Ok(())
    } else {
        Err(Error::FormDegree { expected: 1, found: w.k() })
    }
}

/// Frobenius condition `w ^ dw = 0` for a twisted 1-form.
pub fn integrable(w: &TwistedForm) -> Result<bool> {
    require_one_form(w)?;
    Ok(w.form().wedge(&w.form().ext_d())?.is_zero())
}

/// Matrix of `eta -> w * eta` from `source` to `target`, one column per
/// source basis element.
pub fn delta_matrix_between(w: &TwistedForm, source: &FormBasis, target: &FormBasis) -> Result<Matrix> {
    require_one_form(w)?;
    if w.r() != source.r() || w.r() != target.r() {
        return Err(Error::AmbientMismatch(w.r(), source.r()));
    }
    let sum = w.twist() + source.twist();
    if sum == 0 {
        return Err(Error::DegenerateTwist { left: w.twist(), right: source.twist() });
    }
    if target.k() != source.k() + 2 || target.twist() != sum {
        return Err(Error::Shape(format!(
            "target Omega^{}({}) does not receive Omega^{}({}) under a 1-form of twist {}",
            target.k(),
            target.twist(),
            source.k(),
            source.twist(),
            w.twist()
        )));
    }
    let mut columns = Vec::with_capacity(source.dim());
    for eta in source.elements() {
        columns.push(target.coordinates(star(w, eta)?.form())?);
    }
    Ok(Matrix::from_columns(target.dim(), &columns))
}

/// Matrix of `eta -> w * eta` from `Omega^k(e)` to `Omega^{k+2}(e+d)`.
pub fn delta_matrix(w: &TwistedForm, k: usize, e: i64) -> Result<Matrix> {
    require_one_form(w)?;
    if w.twist() + e == 0 {
        return Err(Error::DegenerateTwist { left: w.twist(), right: e });
    }
    let source = basis(w.r(), k, e);
    let target = basis(w.r(), k + 2, e + w.twist());
    delta_matrix_between(w, &source, &target)
}

/// Rank of the linear map `w -> delta_w` on `Omega^1_r(d)`, each operator
/// flattened to its matrix entries.
pub fn delta_injectivity_rank(r: usize, d: i64, k: usize, e: i64) -> Result<usize> {
    if k + 2 > r {
        return Err(Error::Precondition(format!("need k + 2 <= r, got k = {k}, r = {r}")));
    }
    let forms = basis(r, 1, d);
    let source = basis(r, k, e);
    let target = basis(r, k + 2, e + d);
    if forms.is_empty() || source.is_empty() || target.is_empty() {
        return Err(Error::Precondition(format!(
            "zero space among Omega^1({d}) = {}, Omega^{k}({e}) = {}, Omega^{}({}) = {}",
            forms.dim(),
            source.dim(),
            k + 2,
            e + d,
            target.dim()
        )));
    }
    let mut ech = SparseEchelon::new();
    for w in forms.elements() {
        let m = delta_matrix_between(w, &source, &target)?;
        let flat: BTreeMap<(usize, usize), Rational> = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| !num_traits::Zero::is_zero(&m[(i, j)]))
            .map(|(i, j)| ((i, j), m[(i, j)].clone()))
            .collect();
        ech.insert(flat);
    }
    Ok(ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pforms::PolyForm;

    fn rotation(r: usize, i: usize, j: usize) -> PolyForm {
        let n = r + 1;
        let x = |i| PolyForm::variable(n, i);
        let dx = |i| PolyForm::differential(n, i);
        &x(i).wedge(&dx(j)).unwrap() - &x(j).wedge(&dx(i)).unwrap()
    }

    fn contact(r: usize) -> TwistedForm {
        TwistedForm::new(r, 1, 2, &rotation(r, 0, 1) + &rotation(r, 2, 3)).unwrap()
    }

    #[test]
    fn zero_form_gives_zero_matrix() {
        let m = delta_matrix(&TwistedForm::zero(3, 1, 2), 1, 2).unwrap();
        assert_eq!(m.shape(), (basis(3, 3, 4).dim(), 6));
        assert!(m.is_zero());
    }

    #[test]
    fn linear_in_the_form() {
        let b = basis(3, 1, 2);
        let w1 = b.random_element_seeded(1, 3);
        let w2 = b.random_element_seeded(2, 3);
        let sum = w1.add(&w2).unwrap();
        let lhs = delta_matrix(&sum, 1, 2).unwrap();
        let rhs = &delta_matrix(&w1, 1, 2).unwrap() + &delta_matrix(&w2, 1, 2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rotation_lies_in_its_own_kernel() {
        let w = TwistedForm::new(3, 1, 2, rotation(3, 0, 1)).unwrap();
        let source = basis(3, 1, 2);
        let m = delta_matrix(&w, 1, 2).unwrap();
        let coords = source.coordinates(w.form()).unwrap();
        assert!(m.mul_vec(&coords).iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn integrability_examples() {
        let w = TwistedForm::new(3, 1, 2, rotation(3, 0, 1)).unwrap();
        assert!(integrable(&w).unwrap());
        assert!(!integrable(&contact(3)).unwrap());
        assert!(integrable(&TwistedForm::zero(3, 1, 2)).unwrap());
        assert_eq!(integrable(&TwistedForm::zero(3, 2, 3)), Err(Error::FormDegree { expected: 1, found: 2 }));
    }

    #[test]
    fn integrable_agrees_with_self_product() {
        for w in [contact(3), TwistedForm::new(3, 1, 2, rotation(3, 1, 3)).unwrap()] {
            assert_eq!(integrable(&w).unwrap(), star(&w, &w).unwrap().is_zero());
        }
    }

    #[test]
    fn delta_squared_detects_integrability() {
        // r = 5 leaves room for two consecutive steps starting at 1-forms.
        let w = TwistedForm::new(5, 1, 2, rotation(5, 0, 1)).unwrap();
        let c = TwistedForm::new(5, 1, 2, &rotation(5, 0, 1) + &rotation(5, 2, 3)).unwrap();
        for (form, expect) in [(w, true), (c, false)] {
            let first = delta_matrix(&form, 1, 2).unwrap();
            let second = delta_matrix(&form, 3, 4).unwrap();
            assert_eq!((&second * &first).is_zero(), expect);
        }
    }

    #[test]
    fn injectivity_small_case() {
        assert_eq!(delta_injectivity_rank(3, 2, 1, 3).unwrap(), 6);
        assert!(matches!(delta_injectivity_rank(3, 2, 2, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn degenerate_twist_is_reported() {
        let w = TwistedForm::new(3, 1, 2, rotation(3, 0, 1)).unwrap();
        assert_eq!(delta_matrix(&w, 0, -2), Err(Error::DegenerateTwist { left: 2, right: -2 }));
    }
}
