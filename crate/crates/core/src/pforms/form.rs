//! Polynomial differential forms on affine space `K^{r+1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, format_rational, Rational, SparseVec};

/// The monomial form `x^exp dx_{dx[0]} ^ ... ^ dx_{dx[k-1]}`; `dx` is strictly increasing.
///
/// The derived order (exponents lexicographically, then index sets) is the
/// canonical term order used for bases and serialization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub exp: Vec<u32>,
    pub dx: Vec<usize>,
}

impl TermKey {
    pub fn poly_degree(&self) -> u32 {
        self.exp.iter().sum()
    }

    pub fn form_degree(&self) -> usize {
        self.dx.len()
    }
}

/// Sign of sorting `dx`, or `None` if an index repeats.
fn sort_sign(dx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..dx.len() {
        let mut j = i;
        while j > 0 && dx[j - 1] > dx[j] {
            dx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if dx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// Merges two increasing index sets, returning the union and whether the
/// shuffle is odd, or `None` if they intersect.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining entries of a.
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, inversions % 2 == 1))
}

/// A differential form with polynomial coefficients in `nvars` variables.
///
/// Nothing forces homogeneity or descent to projective space here; that is the
/// job of [`super::TwistedForm`].
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    nvars: usize,
    terms: SparseVec<TermKey>,
}

impl PolyForm {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    /// `coeff * x^exp dx_I`, reordering `dx` with the appropriate sign.
    pub fn monomial(nvars: usize, exp: Vec<u32>, dx: Vec<usize>, coeff: Rational) -> Result<Self> {
        let mut f = Self::zero(nvars);
        f.add_term(exp, dx, coeff)?;
        Ok(f)
    }

    /// The coordinate function `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::monomial(nvars, exp, vec![], Rational::one()).expect("valid variable")
    }

    /// The constant 1-form `dx_i`.
    pub fn differential(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], vec![i], Rational::one()).expect("valid differential")
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], vec![], c).expect("valid constant")
    }

    pub(crate) fn from_sparse(nvars: usize, terms: SparseVec<TermKey>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self { nvars, terms }
    }

    pub fn add_term(&mut self, exp: Vec<u32>, mut dx: Vec<usize>, coeff: Rational) -> Result<()> {
        if exp.len() != self.nvars {
            return Err(Error::InvalidForm(format!(
                "exponent vector of length {} in {} variables",
                exp.len(),
                self.nvars
            )));
        }
        if let Some(&bad) = dx.iter().find(|&&i| i >= self.nvars) {
            return Err(Error::InvalidForm(format!("dx_{bad} out of range for {} variables", self.nvars)));
        }
        let Some(negative) = sort_sign(&mut dx) else {
            return Ok(());
        };
        let coeff = if negative { -coeff } else { coeff };
        axpy(&mut self.terms, &coeff, &BTreeMap::from([(TermKey { exp, dx }, Rational::one())]));
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &SparseVec<TermKey> {
        &self.terms
    }

    pub fn coefficient(&self, key: &TermKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common form degree of all terms; `None` for zero or mixed forms.
    pub fn form_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(TermKey::form_degree);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// Common coefficient degree of all terms; `None` for zero or inhomogeneous forms.
    pub fn poly_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(TermKey::poly_degree);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(self.nvars.saturating_sub(1), other.nvars.saturating_sub(1)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut terms = self.terms.clone();
        axpy(&mut terms, &Rational::one(), &other.terms);
        Ok(Self { nvars: self.nvars, terms })
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = SparseVec::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let Some((dx, negative)) = merge_sign(&ka.dx, &kb.dx) else {
                    continue;
                };
                let exp = ka.exp.iter().zip(&kb.exp).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                let entry = out.entry(TermKey { exp, dx }).or_insert_with(Rational::zero);
                if negative {
                    *entry -= c;
                } else {
                    *entry += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self { nvars: self.nvars, terms: out })
    }

    /// Exterior derivative: `d(x^a dx_I) = sum_j a_j x^{a - e_j} dx_j ^ dx_I`.
    pub fn ext_d(&self) -> Self {
        let mut out = SparseVec::new();
        for (key, c) in &self.terms {
            for j in 0..self.nvars {
                let a = key.exp[j];
                if a == 0 || key.dx.contains(&j) {
                    continue;
                }
                let mut exp = key.exp.clone();
                exp[j] -= 1;
                let pos = key.dx.partition_point(|&i| i < j);
                let mut dx = key.dx.clone();
                dx.insert(pos, j);
                let term = c * Rational::from_integer(a.into());
                let entry = out.entry(TermKey { exp, dx }).or_insert_with(Rational::zero);
                if pos % 2 == 1 {
                    *entry -= term;
                } else {
                    *entry += term;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { nvars: self.nvars, terms: out }
    }

    /// Contraction with the radial field `R = sum_i x_i d/dx_i`.
    pub fn radial_contract(&self) -> Self {
        let mut out = SparseVec::new();
        for (key, c) in &self.terms {
            for (s, &i) in key.dx.iter().enumerate() {
                let (exp, dx) = radial_term(key, s, i);
                let entry = out.entry(TermKey { exp, dx }).or_insert_with(Rational::zero);
                if s % 2 == 1 {
                    *entry -= c;
                } else {
                    *entry += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { nvars: self.nvars, terms: out }
    }
}

fn radial_term(key: &TermKey, s: usize, i: usize) -> (Vec<u32>, Vec<usize>) {
    let mut exp = key.exp.clone();
    exp[i] += 1;
    let mut dx = key.dx.clone();
    dx.remove(s);
    (exp, dx)
}

/// `i_R` of a single monomial form, as a sparse vector.
pub(crate) fn radial_image(key: &TermKey) -> SparseVec<TermKey> {
    key.dx
        .iter()
        .enumerate()
        .map(|(s, &i)| {
            let (exp, dx) = radial_term(key, s, i);
            let c = if s % 2 == 1 { -Rational::one() } else { Rational::one() };
            (TermKey { exp, dx }, c)
        })
        .collect()
}

impl Add for &PolyForm {
    type Output = PolyForm;

    fn add(self, rhs: &PolyForm) -> PolyForm {
        self.checked_add(rhs).expect("forms live in different ambient spaces")
    }
}

impl Sub for &PolyForm {
    type Output = PolyForm;

    fn sub(self, rhs: &PolyForm) -> PolyForm {
        self + &(-rhs)
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;

    fn neg(self) -> PolyForm {
        PolyForm { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (key, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            let abs = c.abs();
            if !abs.is_one() {
                parts.push(format_rational(&abs));
            }
            let mono: Vec<String> = key
                .exp
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{i}") } else { format!("x{i}^{a}") })
                .collect();
            if !mono.is_empty() {
                parts.push(mono.join("*"));
            }
            if !key.dx.is_empty() {
                let dx: Vec<String> = key.dx.iter().map(|i| format!("dx{i}")).collect();
                parts.push(dx.join("^"));
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyForm({self})")
    }
}

/// All exponent vectors of length `nvars` and total degree `degree`, ascending.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(nvars: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=remaining {
            prefix.push(a);
            go(nvars, remaining - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    } else if degree == 0 {
        out.push(Vec::new());
    }
    out
}

/// All strictly increasing index sets of size `k` from `0..n`, ascending.
pub fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in start..n {
            prefix.push(i);
            go(n, k, i + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Every monomial form `x^a dx_I` with `|a| = degree` and `|I| = k`, in canonical order.
pub fn monomial_forms(nvars: usize, k: usize, degree: u32) -> Vec<TermKey> {
    let mut out = Vec::new();
    for exp in monomials(nvars, degree) {
        for dx in index_sets(nvars, k) {
            out.push(TermKey { exp: exp.clone(), dx });
        }
    }
    out
}
