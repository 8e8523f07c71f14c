//! Global sections of `Omega^k_{P^r}(e)` and the second multiplication.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::form::{PolyForm, TermKey};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};

/// A `k`-form on `K^{r+1}` whose coefficients are homogeneous of degree
/// `twist - k` and which is killed by radial contraction, i.e. a section of
/// `Omega^k(twist)` on `P^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedForm {
    r: usize,
    k: usize,
    twist: i64,
    form: PolyForm,
}

impl TwistedForm {
    pub fn new(r: usize, k: usize, twist: i64, form: PolyForm) -> Result<Self> {
        if form.nvars() != r + 1 {
            return Err(Error::AmbientMismatch(r, form.nvars().saturating_sub(1)));
        }
        for key in form.terms().keys() {
            if key.form_degree() != k {
                return Err(Error::InvalidForm(format!("term of form degree {} in a {k}-form", key.form_degree())));
            }
            if i64::from(key.poly_degree()) + k as i64 != twist {
                return Err(Error::InvalidForm(format!(
                    "coefficient of degree {} in a {k}-form of twist {twist}",
                    key.poly_degree()
                )));
            }
        }
        if !form.radial_contract().is_zero() {
            return Err(Error::InvalidForm("radial contraction is nonzero".into()));
        }
        Ok(Self { r, k, twist, form })
    }

    pub fn zero(r: usize, k: usize, twist: i64) -> Self {
        Self { r, k, twist, form: PolyForm::zero(r + 1) }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn form(&self) -> &PolyForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.r != other.r {
            return Err(Error::AmbientMismatch(self.r, other.r));
        }
        if self.k != other.k || self.twist != other.twist {
            return Err(Error::InvalidForm(format!(
                "cannot add a section of Omega^{}({}) to one of Omega^{}({})",
                other.k, other.twist, self.k, self.twist
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self { form: &self.form + &other.form, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self { form: &self.form - &other.form, ..self.clone() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { form: self.form.scale(c), ..self.clone() }
    }

    /// `i_R(d w)`, which equals `twist * w` since `i_R w = 0`.
    pub fn euler_identity_holds(&self) -> bool {
        self.form.ext_d().radial_contract() == self.form.scale(&Rational::from_integer(self.twist.into()))
    }
}

impl fmt::Display for TwistedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Omega^{}_{}({})", self.form, self.k, self.r, self.twist)
    }
}

/// `a * b = d_a/(d_a+d_b) a ^ db + (-1)^{(k_a+1)(k_b+1)} d_b/(d_a+d_b) b ^ da`.
///
/// Fails on ambient mismatch and when the twists sum to zero. The result is
/// validated as a twisted form, so a nonzero radial contraction is reported as
/// [`Error::InvalidForm`].
pub fn star(a: &TwistedForm, b: &TwistedForm) -> Result<TwistedForm> {
    if a.r != b.r {
        return Err(Error::AmbientMismatch(a.r, b.r));
    }
    let total = a.twist + b.twist;
    if total == 0 {
        return Err(Error::DegenerateTwist { left: a.twist, right: b.twist });
    }
    let k = a.k + b.k + 1;
    let sign: i64 = if ((a.k + 1) * (b.k + 1)).is_multiple_of(2) { 1 } else { -1 };
    let weight = |num: i64| Rational::new(num.into(), total.into());
    let left = a.form.wedge(&b.form.ext_d())?.scale(&weight(a.twist));
    let right = b.form.wedge(&a.form.ext_d())?.scale(&weight(sign * b.twist));
    TwistedForm::new(a.r, k, total, &left + &right)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    dx: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    r: usize,
    k: usize,
    twist: i64,
    terms: Vec<TermJson>,
}

impl Serialize for TwistedForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .form
            .terms()
            .iter()
            .map(|(TermKey { exp, dx }, c)| TermJson { exp: exp.clone(), dx: dx.clone(), coeff: format_rational(c) })
            .collect();
        FormJson { r: self.r, k: self.k, twist: self.twist, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FormJson::deserialize(d)?;
        let build = || -> Result<TwistedForm> {
            let mut form = PolyForm::zero(raw.r + 1);
            for t in raw.terms {
                form.add_term(t.exp, t.dx, parse_rational(&t.coeff)?)?;
            }
            TwistedForm::new(raw.r, raw.k, raw.twist, form)
        };
        build().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn x(i: usize) -> PolyForm {
        PolyForm::variable(4, i)
    }

    fn dx(i: usize) -> PolyForm {
        PolyForm::differential(4, i)
    }

    fn rot(i: usize, j: usize) -> PolyForm {
        &x(i).wedge(&dx(j)).unwrap() - &x(j).wedge(&dx(i)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(TwistedForm::new(3, 1, 2, rot(0, 1)).is_ok());
        assert!(matches!(TwistedForm::new(3, 1, 2, x(0).wedge(&dx(1)).unwrap()), Err(Error::InvalidForm(_))));
        assert!(matches!(TwistedForm::new(3, 1, 3, rot(0, 1)), Err(Error::InvalidForm(_))));
        assert!(matches!(TwistedForm::new(3, 2, 2, rot(0, 1)), Err(Error::InvalidForm(_))));
        assert!(matches!(TwistedForm::new(2, 1, 2, rot(0, 1)), Err(Error::AmbientMismatch(2, 3))));
        assert!(TwistedForm::zero(3, 1, 1).is_zero());
    }

    #[test]
    fn star_of_integrable_form_vanishes() {
        let w = TwistedForm::new(3, 1, 2, rot(0, 1)).unwrap();
        let s = star(&w, &w).unwrap();
        assert!(s.is_zero());
        assert_eq!((s.k(), s.twist()), (3, 4));
    }

    #[test]
    fn star_of_contact_form() {
        let w = TwistedForm::new(3, 1, 2, &rot(0, 1) + &rot(2, 3)).unwrap();
        let two = rat(2);
        let expected = &rot(0, 1).wedge(&dx(2)).unwrap().wedge(&dx(3)).unwrap().scale(&two)
            + &rot(2, 3).wedge(&dx(0)).unwrap().wedge(&dx(1)).unwrap().scale(&two);
        assert_eq!(star(&w, &w).unwrap().form(), &expected);
        let direct = w.form().wedge(&w.form().ext_d()).unwrap();
        assert_eq!(direct, expected);
    }

    #[test]
    fn star_rejects_zero_total_twist() {
        let f = TwistedForm::new(3, 0, 1, x(0)).unwrap();
        let g = TwistedForm::zero(3, 0, -1);
        assert_eq!(star(&f, &g), Err(Error::DegenerateTwist { left: 1, right: -1 }));
        let other = TwistedForm::zero(4, 0, 1);
        assert_eq!(star(&f, &other), Err(Error::AmbientMismatch(3, 4)));
    }

    #[test]
    fn star_with_a_function() {
        // w * f = d/(d+1) w^df + 1/(d+1) f dw for a 1-form w of twist d and f of degree 1.
        let w = TwistedForm::new(3, 1, 2, rot(0, 1)).unwrap();
        let f = TwistedForm::new(3, 0, 1, x(2)).unwrap();
        let expected = &rot(0, 1).wedge(&dx(2)).unwrap().scale(&crate::linalg::ratio(2, 3))
            + &x(2).wedge(&dx(0)).unwrap().wedge(&dx(1)).unwrap().scale(&crate::linalg::ratio(2, 3));
        let got = star(&w, &f).unwrap();
        assert_eq!(got.form(), &expected);
        // (1+1)(0+1) is even, so f * w = w * f.
        assert_eq!(star(&f, &w).unwrap(), got);
    }

    #[test]
    fn euler_identity() {
        let w = TwistedForm::new(3, 1, 2, &rot(0, 1) + &rot(2, 3)).unwrap();
        assert!(w.euler_identity_holds());
    }

    #[test]
    fn json_round_trip() {
        let w = TwistedForm::new(3, 1, 2, rot(0, 1)).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(
            s,
            r#"{"r":3,"k":1,"twist":2,"terms":[{"exp":[0,1,0,0],"dx":[0],"coeff":"-1"},{"exp":[1,0,0,0],"dx":[1],"coeff":"1"}]}"#
        );
        assert_eq!(serde_json::from_str::<TwistedForm>(&s).unwrap(), w);
        let bad = r#"{"r":3,"k":1,"twist":2,"terms":[{"exp":[1,0,0,0],"dx":[1],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<TwistedForm>(bad).is_err());
    }
}
