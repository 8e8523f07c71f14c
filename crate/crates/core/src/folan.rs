//! The complexes `C^+_w(e)` and `C^-_w(e)` of a twisted 1-form and the
//! position of an integrable form in the rank stratification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cxlin::{self, ComplexInstance};
use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix};
use crate::pforms::{basis, delta_matrix_between, integrable, PolyForm, TwistedForm};
use crate::rankcomb::{self, DimVector, RankVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Even forms `Omega^0(e) -> Omega^2(e+d) -> ...`.
    Plus,
    /// Odd forms `Omega^1(e) -> Omega^3(e+d) -> ...`.
    Minus,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Minus, Variant::Plus];

    /// Form degrees of the stages on `P^r`.
    pub fn form_degrees(self, r: usize) -> Vec<usize> {
        let first = match self {
            Variant::Plus => 0,
            Variant::Minus => 1,
        };
        (first..=r).step_by(2).collect()
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Variant::Plus),
            "minus" | "-" => Ok(Variant::Minus),
            _ => Err(Error::Parse(format!("unknown variant {s:?}, expected plus or minus"))),
        }
    }
}

/// One graded piece `Omega^k(twist)` of a delta complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub k: usize,
    pub twist: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    pub variant: Variant,
    pub r: usize,
    pub d: i64,
    pub e: i64,
    pub stages: Vec<Stage>,
    pub complex: ComplexInstance,
}

impl DeltaComplex {
    pub fn dims(&self) -> DimVector {
        self.complex.dim_vector().expect("at least two stages")
    }

    pub fn matrices(&self) -> &[Matrix] {
        self.complex.maps()
    }

    pub fn is_complex(&self) -> bool {
        cxlin::verify_complex(&self.complex)
    }
}

/// The complex of multiplication maps `eta -> w * eta` starting at twist `e`.
pub fn build_complex(w: &TwistedForm, e: i64, variant: Variant) -> Result<DeltaComplex> {
    if w.k() != 1 {
        return Err(Error::FormDegree { expected: 1, found: w.k() });
    }
    let (r, d) = (w.r(), w.twist());
    if d < 1 {
        return Err(Error::Precondition(format!("the 1-form must have twist at least 1, got {d}")));
    }
    let degrees = variant.form_degrees(r);
    if degrees.len() < 2 {
        return Err(Error::Precondition(format!("the {variant} complex on P^{r} has a single stage")));
    }
    let bases: Vec<_> = degrees.iter().enumerate().map(|(j, &k)| basis(r, k, e + j as i64 * d)).collect();
    let maps = bases.windows(2).map(|pair| delta_matrix_between(w, &pair[0], &pair[1])).collect::<Result<Vec<_>>>()?;
    let stages: Vec<Stage> = bases.iter().map(|b| Stage { k: b.k(), twist: b.twist(), dim: b.dim() }).collect();
    let complex = ComplexInstance::new(stages.iter().map(|s| s.dim).collect(), maps)?;
    Ok(DeltaComplex { variant, r, d, e, stages, complex })
}

/// Integrability of `w` next to whether both delta complexes are complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Check {
    pub integrable: bool,
    pub minus_complex: bool,
    pub plus_complex: bool,
}

impl Theorem1Check {
    pub fn membership(&self) -> bool {
        self.minus_complex && self.plus_complex
    }

    pub fn agrees(&self) -> bool {
        self.integrable == self.membership()
    }
}

pub fn theorem1_check(w: &TwistedForm, e: i64) -> Result<Theorem1Check> {
    Ok(Theorem1Check {
        integrable: integrable(w)?,
        minus_complex: build_complex(w, e, Variant::Minus)?.is_complex(),
        plus_complex: build_complex(w, e, Variant::Plus)?.is_complex(),
    })
}

/// Where the delta complex of an integrable form sits in the stratification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoliationReport {
    pub r: usize,
    pub d: i64,
    pub e: i64,
    pub variant: Variant,
    pub dims: DimVector,
    pub ranks: RankVector,
    pub homology: Vec<u64>,
    pub admissible: bool,
    pub dominating_maximal: Vec<RankVector>,
    #[serde(serialize_with = "crate::json::big_int")]
    pub stratum_dim: BigInt,
    #[serde(serialize_with = "crate::json::big_int")]
    pub tangent_dim: BigInt,
}

pub fn rank_profile(w: &TwistedForm, e: i64, variant: Variant) -> Result<FoliationReport> {
    if !integrable(w)? {
        return Err(Error::NotIntegrable);
    }
    let dc = build_complex(w, e, variant)?;
    let dims = dc.dims();
    let ranks = cxlin::ranks(&dc.complex)?;
    let admissible = rankcomb::is_admissible(&dims, &ranks)?;
    let homology = rankcomb::homology_from_ranks(&dims, &ranks)?.h;
    let dominating_maximal = rankcomb::maximal_elements(&dims)
        .into_iter()
        .filter(|m| rankcomb::poset_leq(&ranks, m).unwrap_or(false))
        .collect();
    Ok(FoliationReport {
        r: dc.r,
        d: dc.d,
        e,
        variant,
        stratum_dim: rankcomb::stratum_dim(&dims, &ranks)?,
        tangent_dim: rankcomb::tangent_dim(&dims, &ranks)?,
        dims,
        ranks,
        homology,
        admissible,
        dominating_maximal,
    })
}

/// The pencil form `p F dG - q G dF` of homogeneous `F`, `G` of degrees `p`, `q`.
pub fn pencil(f: &PolyForm, g: &PolyForm, p: u32, q: u32) -> Result<TwistedForm> {
    if f.nvars() != g.nvars() {
        return Err(Error::AmbientMismatch(f.nvars(), g.nvars()));
    }
    for (name, h, deg) in [("F", f, p), ("G", g, q)] {
        if h.form_degree().is_some_and(|k| k != 0) {
            return Err(Error::FormDegree { expected: 0, found: h.form_degree().unwrap_or(0) });
        }
        let homogeneous = h.terms().keys().all(|t| t.poly_degree() == deg);
        if h.is_zero() || !homogeneous {
            return Err(Error::Precondition(format!("{name} is not a nonzero form of degree {deg}")));
        }
    }
    let left = f.wedge(&g.ext_d())?.scale(&rat(p.into()));
    let right = g.wedge(&f.ext_d())?.scale(&rat(q.into()));
    let r = f.nvars().checked_sub(1).ok_or(Error::Precondition("no variables".into()))?;
    TwistedForm::new(r, 1, i64::from(p + q), &left - &right)
}

/// [`pencil`] of two monomials given by exponent vectors in `r + 1` variables.
pub fn fixture_pencil(r: usize, f: &[u32], g: &[u32], p: u32, q: u32) -> Result<TwistedForm> {
    let mono = |exp: &[u32]| PolyForm::monomial(r + 1, exp.to_vec(), vec![], rat(1));
    pencil(&mono(f)?, &mono(g)?, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pforms::{basis, star};

    fn unit(r: usize, i: usize) -> Vec<u32> {
        let mut e = vec![0; r + 1];
        e[i] = 1;
        e
    }

    fn contact(r: usize) -> TwistedForm {
        let x = |i| PolyForm::variable(r + 1, i);
        let dx = |i| PolyForm::differential(r + 1, i);
        let rot = |i, j| &x(i).wedge(&dx(j)).unwrap() - &x(j).wedge(&dx(i)).unwrap();
        TwistedForm::new(r, 1, 2, &rot(0, 1) + &rot(2, 3)).unwrap()
    }

    #[test]
    fn linear_pencil_is_the_rotation() {
        let w = fixture_pencil(3, &unit(3, 0), &unit(3, 1), 1, 1).unwrap();
        let mut expected = PolyForm::zero(4);
        expected.add_term(unit(3, 0), vec![1], rat(1)).unwrap();
        expected.add_term(unit(3, 1), vec![0], rat(-1)).unwrap();
        assert_eq!(w.form(), &expected);
    }

    #[test]
    fn quadratic_pencil_expansion() {
        let w = fixture_pencil(3, &[2, 0, 0, 0], &[0, 1, 1, 0], 2, 2).unwrap();
        let mut expected = PolyForm::zero(4);
        expected.add_term(vec![2, 1, 0, 0], vec![2], rat(2)).unwrap();
        expected.add_term(vec![2, 0, 1, 0], vec![1], rat(2)).unwrap();
        expected.add_term(vec![1, 1, 1, 0], vec![0], rat(-4)).unwrap();
        assert_eq!(w.form(), &expected);
        assert_eq!(w.twist(), 4);
        assert!(integrable(&w).unwrap());
    }

    #[test]
    fn pencil_rejects_wrong_degree() {
        assert!(matches!(fixture_pencil(3, &[2, 0, 0, 0], &unit(3, 1), 1, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn stage_counts() {
        let w = fixture_pencil(3, &unit(3, 0), &unit(3, 1), 1, 1).unwrap();
        assert_eq!(build_complex(&w, 2, Variant::Minus).unwrap().matrices().len(), 1);
        let w5 = fixture_pencil(5, &unit(5, 0), &unit(5, 1), 1, 1).unwrap();
        let minus = build_complex(&w5, 2, Variant::Minus).unwrap();
        assert_eq!(minus.matrices().len(), 2);
        assert_eq!(minus.dims().as_slice(), &[15, 15, 1]);
        let plus = build_complex(&w5, 2, Variant::Plus).unwrap();
        assert_eq!(plus.dims().as_slice(), &[21, 105, 35]);
        for (stage, b) in plus.stages.iter().zip([(0, 2), (2, 4), (4, 6)]) {
            assert_eq!((stage.k, stage.twist), b);
            assert_eq!(stage.dim, basis(5, b.0, b.1).dim());
        }
    }

    #[test]
    fn zero_form_gives_zero_matrices() {
        let dc = build_complex(&TwistedForm::zero(5, 1, 2), 2, Variant::Minus).unwrap();
        assert!(dc.matrices().iter().all(Matrix::is_zero));
        let report = rank_profile(&TwistedForm::zero(5, 1, 2), 2, Variant::Minus).unwrap();
        assert!(report.ranks.is_zero());
        assert_eq!(report.dominating_maximal, rankcomb::maximal_elements(&report.dims));
    }

    #[test]
    fn integrability_and_membership_examples() {
        let pencil = fixture_pencil(5, &unit(5, 0), &unit(5, 1), 1, 1).unwrap();
        let check = theorem1_check(&pencil, 2).unwrap();
        assert_eq!((check.integrable, check.membership()), (true, true));
        let check = theorem1_check(&contact(5), 2).unwrap();
        assert_eq!((check.integrable, check.membership()), (false, false));
        let check = theorem1_check(&TwistedForm::zero(5, 1, 2), 2).unwrap();
        assert_eq!((check.integrable, check.membership()), (true, true));
    }

    #[test]
    fn non_integrable_profile_is_rejected() {
        assert_eq!(rank_profile(&contact(5), 2, Variant::Minus), Err(Error::NotIntegrable));
    }

    #[test]
    fn pencil_profile_is_admissible_and_dominated() {
        let w = fixture_pencil(5, &[2, 0, 0, 0, 0, 0], &[0, 1, 1, 0, 0, 0], 2, 2).unwrap();
        for variant in Variant::ALL {
            let report = rank_profile(&w, 2, variant).unwrap();
            assert!(report.admissible);
            assert!(!report.dominating_maximal.is_empty());
        }
    }

    #[test]
    fn profile_is_natural_under_coordinate_change() {
        let a = fixture_pencil(5, &unit(5, 0), &unit(5, 1), 1, 1).unwrap();
        let b = fixture_pencil(5, &unit(5, 2), &unit(5, 4), 1, 1).unwrap();
        for variant in Variant::ALL {
            let ra = rank_profile(&a, 2, variant).unwrap();
            let rb = rank_profile(&b, 2, variant).unwrap();
            assert_eq!(ra.ranks, rb.ranks);
        }
    }

    #[test]
    fn form_lies_in_its_own_first_kernel() {
        let w = fixture_pencil(5, &unit(5, 0), &unit(5, 3), 1, 1).unwrap();
        let dc = build_complex(&w, w.twist(), Variant::Minus).unwrap();
        let coords = basis(5, 1, 2).coordinates(w.form()).unwrap();
        assert!(dc.matrices()[0].mul_vec(&coords).iter().all(num_traits::Zero::is_zero));
        assert!(star(&w, &w).unwrap().is_zero());
    }

    #[test]
    fn variant_strings() {
        assert_eq!("minus".parse::<Variant>().unwrap(), Variant::Minus);
        assert_eq!(serde_json::to_string(&Variant::Plus).unwrap(), "\"plus\"");
        assert!("both".parse::<Variant>().is_err());
    }
}
