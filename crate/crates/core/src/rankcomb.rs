//! Integer combinatorics of the rank stratification of a variety of complexes
//! `V_0 -> V_1 -> ... -> V_n`.
//!
//! Conventions shared by every formula here: `d = (d_0, ..., d_n)`,
//! `r = (r_1, ..., r_n)` with `r_0 = r_{n+1} = 0`, and `h_i = d_i - r_i - r_{i+1}`.
//! All dimension counts are returned as [`BigInt`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensions `(d_0, ..., d_n)` of the spaces of a complex; at least two entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DimVector(Vec<u64>);

impl DimVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooShort(entries.len()));
        }
        Ok(Self(entries))
    }

    /// Number of maps `n`.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `d_i`, zero outside `0..=n`.
    pub fn at(&self, i: isize) -> u64 {
        if i < 0 {
            0
        } else {
            self.0.get(i as usize).copied().unwrap_or(0)
        }
    }
}

impl TryFrom<Vec<u64>> for DimVector {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DimVector> for Vec<u64> {
    fn from(d: DimVector) -> Self {
        d.0
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Ranks `(r_1, ..., r_n)` of the maps of a complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankVector(Vec<u64>);

impl RankVector {
    pub fn new(entries: Vec<u64>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `r_i` with the boundary convention `r_0 = r_{n+1} = 0`; `i` is 1-based.
    pub fn at(&self, i: isize) -> u64 {
        if i < 1 {
            0
        } else {
            self.0.get(i as usize - 1).copied().unwrap_or(0)
        }
    }
}

impl From<Vec<u64>> for RankVector {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Boundary, cycle and homology dimensions of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    /// `h_0, ..., h_n`
    pub h: Vec<u64>,
    /// `b_0, ..., b_{n+1}` with `b_0 = b_{n+1} = 0`
    pub b: Vec<u64>,
    /// `z_0, ..., z_n`
    pub z: Vec<u64>,
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn check_len(d: &DimVector, r: &RankVector) -> Result<()> {
    if r.len() != d.n() {
        return Err(Error::LengthMismatch { expected: d.n(), found: r.len() });
    }
    Ok(())
}

/// `(-1)^j * sum_{i<=j} (-1)^i e_i`.
pub fn euler_chi(e: &[u64], j: usize) -> Result<BigInt> {
    if j >= e.len() {
        return Err(Error::IndexOutOfRange { index: j, len: e.len() });
    }
    // The outer sign flips every term, so the sum is e_j - e_{j-1} + e_{j-2} - ...
    Ok(e[..=j].iter().rev().enumerate().map(|(t, &x)| if t % 2 == 0 { big(x) } else { -big(x) }).sum())
}

/// First `i` in `0..=n` with `r_i + r_{i+1} > d_i`.
fn first_violation(d: &DimVector, r: &RankVector) -> Option<usize> {
    (0..=d.n()).find(|&i| {
        let i = i as isize;
        r.at(i) + r.at(i + 1) > d.at(i)
    })
}

pub(crate) fn require_admissible(d: &DimVector, r: &RankVector) -> Result<()> {
    check_len(d, r)?;
    match first_violation(d, r) {
        Some(index) => Err(Error::Inadmissible { dims: d.as_slice().to_vec(), ranks: r.as_slice().to_vec(), index }),
        None => Ok(()),
    }
}

/// Whether some complex with dimensions `d` has ranks exactly `r`.
pub fn is_admissible(d: &DimVector, r: &RankVector) -> Result<bool> {
    check_len(d, r)?;
    Ok(first_violation(d, r).is_none())
}

pub fn homology_from_ranks(d: &DimVector, r: &RankVector) -> Result<HomologyProfile> {
    require_admissible(d, r)?;
    let n = d.n() as isize;
    let h = (0..=n).map(|i| d.at(i) - r.at(i) - r.at(i + 1)).collect();
    let b = (0..=n + 1).map(|i| r.at(i)).collect();
    let z = (0..=n).map(|i| d.at(i) - r.at(i + 1)).collect();
    Ok(HomologyProfile { h, b, z })
}

/// Inverts [`homology_from_ranks`] via `b_{j+1} = chi_j(d) - chi_j(h)`.
pub fn ranks_from_homology(d: &DimVector, h: &[u64]) -> Result<RankVector> {
    if h.len() != d.n() + 1 {
        return Err(Error::LengthMismatch { expected: d.n() + 1, found: h.len() });
    }
    let n = d.n();
    let mut ranks = Vec::with_capacity(n);
    for j in 0..=n {
        let chi_d = euler_chi(d.as_slice(), j)?;
        let chi_h = euler_chi(h, j)?;
        let b_next = &chi_d - &chi_h;
        let feasible = if j == n { b_next.is_zero() } else { !b_next.is_negative() };
        if !feasible {
            return Err(Error::InfeasibleHomology { index: j, homology: chi_h, dims: chi_d });
        }
        if j < n {
            ranks.push(u64::try_from(b_next).expect("rank fits in u64"));
        }
    }
    let r = RankVector(ranks);
    debug_assert!(first_violation(d, &r).is_none());
    Ok(r)
}

/// `dim C_r = sum_i (d_i - r_i)(r_{i+1} + r_i)`.
pub fn stratum_dim(d: &DimVector, r: &RankVector) -> Result<BigInt> {
    require_admissible(d, r)?;
    Ok((0..=d.n() as isize).map(|i| (big(d.at(i)) - big(r.at(i))) * (big(r.at(i + 1)) + big(r.at(i)))).sum())
}

/// The three closed forms for `dim C_r`: via ranks, via `(d_i - r_i)(d_i - h_i)`,
/// and `(1/2) sum (d_i^2 - h_i^2)`.
pub fn stratum_dim_expressions(d: &DimVector, r: &RankVector) -> Result<[BigInt; 3]> {
    let by_ranks = stratum_dim(d, r)?;
    let hp = homology_from_ranks(d, r)?;
    let mut by_homology = BigInt::zero();
    let mut twice_squares = BigInt::zero();
    for i in 0..=d.n() {
        let di = big(d.at(i as isize));
        let hi = big(hp.h[i]);
        by_homology += (&di - big(r.at(i as isize))) * (&di - &hi);
        twice_squares += &di * &di - &hi * &hi;
    }
    assert!((&twice_squares % 2u32).is_zero(), "sum of d_i^2 - h_i^2 is odd for d={d}, r={r}");
    Ok([by_ranks, by_homology, twice_squares / 2u32])
}

/// Dimension of the rank-bounded locus as fiber plus Grassmannian base:
/// `sum (d_i - r_i) r_i + sum (d_i - r_i) r_{i+1}`.
pub fn closure_dim_by_resolution(d: &DimVector, r: &RankVector) -> Result<BigInt> {
    require_admissible(d, r)?;
    let mut base = BigInt::zero();
    let mut fiber = BigInt::zero();
    for i in 0..=d.n() as isize {
        let corank = big(d.at(i)) - big(r.at(i));
        base += &corank * big(r.at(i));
        fiber += corank * big(r.at(i + 1));
    }
    Ok(base + fiber)
}

/// Zariski tangent dimension of the variety of complexes at any point of `C_r`:
/// `sum_i h_i (h_{i+1} + r_{i+1}) + r_i d_i`.
pub fn tangent_dim(d: &DimVector, r: &RankVector) -> Result<BigInt> {
    let hp = homology_from_ranks(d, r)?;
    let h = |i: usize| hp.h.get(i).copied().unwrap_or(0);
    Ok((0..=d.n())
        .map(|i| {
            let ii = i as isize;
            big(h(i)) * (big(h(i + 1)) + big(r.at(ii + 1))) + big(r.at(ii)) * big(d.at(ii))
        })
        .sum())
}

/// The same tangent dimension written purely in `d` and `r`:
/// `sum_i (d_i - r_i - r_{i+1})(d_{i+1} - r_{i+2}) + r_i d_i`.
pub fn tangent_dim_expanded(d: &DimVector, r: &RankVector) -> Result<BigInt> {
    require_admissible(d, r)?;
    Ok((0..=d.n() as isize)
        .map(|i| {
            let hi = big(d.at(i)) - big(r.at(i)) - big(r.at(i + 1));
            hi * (big(d.at(i + 1)) - big(r.at(i + 2))) + big(r.at(i)) * big(d.at(i))
        })
        .sum())
}

/// Dimension of `Hom(f, f')` for complexes of ranks `r`, `r2`:
/// `sum_i h_i (h'_i + r'_i) + r_i d'_{i-1}`.
pub fn hom_dim(d: &DimVector, r: &RankVector, d2: &DimVector, r2: &RankVector) -> Result<BigInt> {
    if d.n() != d2.n() {
        return Err(Error::LengthMismatch { expected: d.n(), found: d2.n() });
    }
    let hp = homology_from_ranks(d, r)?;
    let hp2 = homology_from_ranks(d2, r2)?;
    Ok((0..=d.n())
        .map(|i| {
            let ii = i as isize;
            big(hp.h[i]) * (big(hp2.h[i]) + big(r2.at(ii))) + big(r.at(ii)) * big(d2.at(ii - 1))
        })
        .sum())
}

/// All admissible rank vectors, in lexicographic order.
pub fn enumerate_r(d: &DimVector) -> Vec<RankVector> {
    fn extend(d: &DimVector, prefix: &mut Vec<u64>, out: &mut Vec<RankVector>) {
        let i = prefix.len() + 1;
        if i > d.n() {
            out.push(RankVector(prefix.clone()));
            return;
        }
        let prev = prefix.last().copied().unwrap_or(0);
        // r_{i-1} + r_i <= d_{i-1} and r_i + r_{i+1} <= d_i with r_{i+1} >= 0.
        let bound = (d.at(i as isize - 1) - prev).min(d.at(i as isize));
        for ri in 0..=bound {
            prefix.push(ri);
            extend(d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(d, &mut Vec::with_capacity(d.n()), &mut out);
    out
}

/// Maximal elements of `R(d)` under the componentwise order, in lexicographic order.
///
/// `R(d)` is a down-set, so `r` is maximal iff no single coordinate can be raised by one.
pub fn maximal_elements(d: &DimVector) -> Vec<RankVector> {
    enumerate_r(d)
        .into_iter()
        .filter(|r| {
            (0..r.len()).all(|i| {
                let mut up = r.clone();
                up.0[i] += 1;
                first_violation(d, &up).is_some()
            })
        })
        .collect()
}

/// Componentwise `r <= s`.
pub fn poset_leq(r: &RankVector, s: &RankVector) -> Result<bool> {
    if r.len() != s.len() {
        return Err(Error::LengthMismatch { expected: r.len(), found: s.len() });
    }
    Ok(r.0.iter().zip(&s.0).all(|(a, b)| a <= b))
}

/// Componentwise minimum; indexes the intersection of two closed strata.
pub fn poset_meet(r: &RankVector, s: &RankVector) -> Result<RankVector> {
    if r.len() != s.len() {
        return Err(Error::LengthMismatch { expected: r.len(), found: s.len() });
    }
    Ok(RankVector(r.0.iter().zip(&s.0).map(|(a, b)| *a.min(b)).collect()))
}

/// Ranks of an exact complex with dimensions `d`: `r_{j+1} = chi_j(d)`.
///
/// Requires `chi_j(d) >= 0` for `1 <= j < n` and `chi_n(d) = 0`.
pub fn exact_rank_vector(d: &DimVector) -> Result<RankVector> {
    let n = d.n();
    let mut ranks = Vec::with_capacity(n);
    for j in 0..=n {
        let chi = euler_chi(d.as_slice(), j)?;
        let ok = if j == n { chi.is_zero() } else { !chi.is_negative() };
        if !ok {
            return Err(Error::ExactHypothesis { index: j, value: chi });
        }
        if j < n {
            ranks.push(u64::try_from(chi).expect("chi fits in u64"));
        }
    }
    let chi = RankVector(ranks);
    debug_assert!(maximal_elements_contains(d, &chi));
    Ok(chi)
}

fn maximal_elements_contains(d: &DimVector, r: &RankVector) -> bool {
    first_violation(d, r).is_none()
        && (0..r.len()).all(|i| {
            let mut up = r.clone();
            up.0[i] += 1;
            first_violation(d, &up).is_some()
        })
}

/// Rank vectors `chi - e_i` of the rank-drop divisors in the exact stratum.
/// Entries that would go negative are skipped (the divisor is empty).
pub fn delta_divisors(d: &DimVector) -> Result<Vec<RankVector>> {
    let chi = exact_rank_vector(d)?;
    Ok((0..chi.len())
        .filter(|&i| chi.0[i] > 0)
        .map(|i| {
            let mut s = chi.clone();
            s.0[i] -= 1;
            s
        })
        .collect())
}

/// The exact stratum with its dimension and the rank-drop divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactStratum {
    pub chi: RankVector,
    pub dim: BigInt,
    pub half_sum_squares: BigInt,
    /// Each divisor with the dimension of its closure.
    pub divisors: Vec<(RankVector, BigInt)>,
}

impl ExactStratum {
    pub fn codimensions(&self) -> impl Iterator<Item = BigInt> + '_ {
        self.divisors.iter().map(move |(_, dim)| &self.dim - dim)
    }
}

pub fn exact_stratum(d: &DimVector) -> Result<ExactStratum> {
    let chi = exact_rank_vector(d)?;
    let dim = stratum_dim(d, &chi)?;
    let sum_squares: BigInt = d.as_slice().iter().map(|&x| big(x) * big(x)).sum();
    let divisors = delta_divisors(d)?
        .into_iter()
        .map(|s| {
            let dim = closure_dim_by_resolution(d, &s)?;
            Ok((s, dim))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactStratum { chi, dim, half_sum_squares: sum_squares / 2u32, divisors })
}
