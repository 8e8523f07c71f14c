//! Explicit complexes of rational matrices.
//!
//! A [`ComplexInstance`] over dimensions `(d_0, ..., d_n)` stores matrices
//! `M_1, ..., M_n` where `M_i` is `d_i x d_{i-1}` and acts on column vectors,
//! so `M_i` represents `f_i: V_{i-1} -> V_i`. Storage is 0-based:
//! `maps()[i - 1]` is `M_i`.
//!
//! Besides witnesses and rank measurement this module computes Hom spaces and
//! tangent spaces by solving the defining linear systems directly. Those
//! dimensions are the oracles against which the closed forms in
//! [`crate::rankcomb`] are checked.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, rat, Matrix, Rational, SparseEchelon, SparseVec};
use crate::rankcomb::{self, DimVector, HomologyProfile, RankVector};

/// Entries of sampled blocks are drawn uniformly from `-ENTRY_BOUND..=ENTRY_BOUND`.
pub const ENTRY_BOUND: i64 = 3;
/// Resampling budget for one invertible block.
pub const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInstance {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl ComplexInstance {
    /// Checks shapes only; use [`verify_complex`] for the composition condition.
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a complex needs at least one space".into()));
        }
        if maps.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} spaces need {} maps, got {}",
                dims.len(),
                dims.len() - 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Shape(format!(
                    "M_{} is {}x{}, expected {}x{}",
                    i + 1,
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(Self { dims, maps })
    }

    pub fn zero(dims: Vec<usize>) -> Result<Self> {
        let maps = dims.windows(2).map(|w| Matrix::zeros(w[1], w[0])).collect();
        Self::new(dims, maps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Number of maps.
    pub fn n(&self) -> usize {
        self.maps.len()
    }

    pub fn dim_vector(&self) -> Result<DimVector> {
        DimVector::new(self.dims.iter().map(|&d| d as u64).collect())
    }

    /// `M_{i+1} M_i` for `i = 1..n-1`.
    pub fn compositions(&self) -> Vec<Matrix> {
        self.maps.windows(2).map(|w| &w[1] * &w[0]).collect()
    }

    /// The same complex followed by a zero space.
    pub fn append_zero_space(&self) -> Self {
        let mut dims = self.dims.clone();
        let mut maps = self.maps.clone();
        maps.push(Matrix::zeros(0, *dims.last().unwrap()));
        dims.push(0);
        Self { dims, maps }
    }

    fn require_complex(&self) -> Result<()> {
        match self.compositions().iter().position(|m| !m.is_zero()) {
            Some(i) => Err(Error::NotAComplex { index: i + 1 }),
            None => Ok(()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<String>>>,
}

impl Serialize for ComplexInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let maps = self
            .maps
            .iter()
            .map(|m| m.to_rows().iter().map(|row| row.iter().map(format_rational).collect()).collect())
            .collect();
        ComplexJson { dims: self.dims.clone(), maps }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ComplexJson::deserialize(d)?;
        if raw.dims.len() != raw.maps.len() + 1 {
            return Err(D::Error::custom("dims must have exactly one more entry than maps"));
        }
        let maps = raw
            .maps
            .into_iter()
            .enumerate()
            .map(|(i, rows)| {
                let rows = rows
                    .iter()
                    .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(raw.dims[i], rows)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ComplexInstance::new(raw.dims, maps).map_err(D::Error::custom)
    }
}

/// Whether every composition `M_{i+1} M_i` vanishes.
pub fn verify_complex(c: &ComplexInstance) -> bool {
    c.require_complex().is_ok()
}

pub fn ranks(c: &ComplexInstance) -> Result<RankVector> {
    c.require_complex()?;
    Ok(RankVector::new(c.maps.iter().map(|m| m.rank() as u64).collect()))
}

/// Boundary, cycle and homology dimensions measured from the matrices.
pub fn homology(c: &ComplexInstance) -> Result<HomologyProfile> {
    let r = ranks(c)?;
    let n = c.n();
    let b: Vec<u64> = (0..=n + 1).map(|i| r.at(i as isize)).collect();
    let z: Vec<u64> =
        (0..=n).map(|i| if i < n { (c.dims[i] - c.maps[i].rank()) as u64 } else { c.dims[n] as u64 }).collect();
    let h = (0..=n).map(|i| z[i] - b[i]).collect();
    Ok(HomologyProfile { h, b, z })
}

/// Whether every map has rank at most `r_i`, i.e. the complex lies in the closed stratum of `r`.
pub fn closure_membership(c: &ComplexInstance, r: &RankVector) -> Result<bool> {
    if r.len() != c.n() {
        return Err(Error::LengthMismatch { expected: c.n(), found: r.len() });
    }
    let actual = ranks(c)?;
    rankcomb::poset_leq(&actual, r)
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)))
}

fn random_invertible(rng: &mut impl Rng, n: usize) -> Result<Matrix> {
    for _ in 0..MAX_ATTEMPTS {
        let m = random_matrix(rng, n, n);
        if m.is_invertible() {
            return Ok(m);
        }
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}

fn to_usize(d: &DimVector) -> Vec<usize> {
    d.as_slice().iter().map(|&x| usize::try_from(x).expect("dimension fits in memory")).collect()
}

/// The block matrix that sends the last `rank` coordinates of `V_{i-1}` onto the
/// first `rank` coordinates of `V_i` through `block`.
fn adapted_map(rows: usize, cols: usize, block: &Matrix) -> Matrix {
    let rank = block.rows();
    let mut m = Matrix::zeros(rows, cols);
    for a in 0..rank {
        for b in 0..rank {
            m[(a, cols - rank + b)] = block[(a, b)].clone();
        }
    }
    m
}

/// A complex with dimensions `d` and ranks exactly `r`, reproducible from `seed`.
///
/// In a random basis `P_i` of each `V_i` the first `r_i` vectors span the
/// boundaries, the last `r_{i+1}` a complement of the cycles, and `f_i`
/// sends that complement in `V_{i-1}` onto the boundaries of `V_i` by a random
/// invertible block.
pub fn construct_with_ranks(d: &DimVector, r: &RankVector, seed: u64) -> Result<ComplexInstance> {
    rankcomb::require_admissible(d, r)?;
    let dims = to_usize(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = dims.iter().map(|&di| random_invertible(&mut rng, di)).collect::<Result<Vec<_>>>()?;
    let inverses: Vec<Matrix> = bases.iter().map(|p| p.inverse().expect("sampled invertible")).collect();
    let mut maps = Vec::with_capacity(d.n());
    for i in 1..=d.n() {
        let block = random_invertible(&mut rng, r.at(i as isize) as usize)?;
        let adapted = adapted_map(dims[i], dims[i - 1], &block);
        maps.push(&(&bases[i] * &adapted) * &inverses[i - 1]);
    }
    ComplexInstance::new(dims, maps)
}

/// An element `(g_0, ..., g_n)` of the product of general linear groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    blocks: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl GroupElement {
    pub fn new(blocks: Vec<Matrix>) -> Result<Self> {
        let inverses = blocks
            .iter()
            .enumerate()
            .map(|(i, g)| g.inverse().ok_or(Error::Singular(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks, inverses })
    }

    pub fn identity(dims: &[usize]) -> Self {
        let blocks: Vec<Matrix> = dims.iter().map(|&d| Matrix::identity(d)).collect();
        Self { inverses: blocks.clone(), blocks }
    }

    pub fn random(dims: &[usize], seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new(dims.iter().map(|&d| random_invertible(&mut rng, d)).collect::<Result<_>>()?)
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn inverse(&self) -> Self {
        Self { blocks: self.inverses.clone(), inverses: self.blocks.clone() }
    }
}

/// `M_i -> g_i M_i g_{i-1}^{-1}`.
pub fn group_act(g: &GroupElement, c: &ComplexInstance) -> Result<ComplexInstance> {
    if g.blocks.len() != c.dims.len() {
        return Err(Error::LengthMismatch { expected: c.dims.len(), found: g.blocks.len() });
    }
    for (i, block) in g.blocks.iter().enumerate() {
        if block.shape() != (c.dims[i], c.dims[i]) {
            return Err(Error::Shape(format!(
                "g_{i} is {}x{}, expected {d}x{d}",
                block.rows(),
                block.cols(),
                d = c.dims[i]
            )));
        }
    }
    let maps = c.maps.iter().enumerate().map(|(k, m)| &(&g.blocks[k + 1] * m) * &g.inverses[k]).collect();
    ComplexInstance::new(c.dims.clone(), maps)
}

/// A splitting `V_i = B_i + H_i' + B_i'` of every space of a complex.
///
/// `boundary_complements[i]` (`B_i'`) is mapped isomorphically onto
/// `boundaries[i + 1]` by `f_{i+1}`; the boundary basis is chosen as exactly
/// that image, so in the adapted basis every `f_i` is an identity block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecomposition {
    dims: Vec<usize>,
    /// Columns span `B_i = im f_i`.
    pub boundaries: Vec<Matrix>,
    /// Columns span a complement of `B_i` in `Z_i = ker f_{i+1}`.
    pub homology_complements: Vec<Matrix>,
    /// Columns span a complement of `Z_i` in `V_i`.
    pub boundary_complements: Vec<Matrix>,
}

impl ComplexDecomposition {
    /// `P_i = [B_i | H_i' | B_i']`.
    pub fn change_of_basis(&self) -> Result<GroupElement> {
        let blocks = (0..self.dims.len())
            .map(|i| self.boundaries[i].hstack(&self.homology_complements[i])?.hstack(&self.boundary_complements[i]))
            .collect::<Result<Vec<_>>>()?;
        GroupElement::new(blocks)
    }

    /// Homology dimensions `h_i`.
    pub fn homology_dims(&self) -> Vec<usize> {
        self.homology_complements.iter().map(Matrix::cols).collect()
    }

    /// Dimensions of `B_i'`, equal to `r_{i+1}`.
    pub fn complement_dims(&self) -> Vec<usize> {
        self.boundary_complements.iter().map(Matrix::cols).collect()
    }

    /// Direct sum of the elementary summands in the adapted basis: one
    /// length-zero complex per homology vector and one `K -> K` identity
    /// complex per rank.
    pub fn canonical_complex(&self) -> Result<ComplexInstance> {
        let maps = (1..self.dims.len())
            .map(|i| {
                let rank = self.boundaries[i].cols();
                adapted_map(self.dims[i], self.dims[i - 1], &Matrix::identity(rank))
            })
            .collect();
        ComplexInstance::new(self.dims.clone(), maps)
    }

    /// Conjugates the canonical complex back into the original coordinates.
    pub fn reassemble(&self) -> Result<ComplexInstance> {
        group_act(&self.change_of_basis()?, &self.canonical_complex()?)
    }
}

fn to_sparse(v: &[Rational]) -> SparseVec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn unit(dim: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[j] = Rational::one();
    v
}

/// Greedily picks the candidates that are independent of `span` and of each other.
fn extend_basis(span: &[Vec<Rational>], candidates: impl IntoIterator<Item = Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut ech = SparseEchelon::new();
    for v in span {
        ech.insert(to_sparse(v));
    }
    candidates.into_iter().filter(|v| ech.insert(to_sparse(v))).collect()
}

pub fn split(c: &ComplexInstance) -> Result<ComplexDecomposition> {
    c.require_complex()?;
    let n = c.n();
    let dims = c.dims.clone();
    let mut boundaries = Vec::with_capacity(n + 1);
    let mut homology_complements = Vec::with_capacity(n + 1);
    let mut boundary_complements = Vec::with_capacity(n + 1);
    let mut previous_complement: Vec<Vec<Rational>> = Vec::new();
    for (i, &di) in dims.iter().enumerate() {
        let cycles: Vec<Vec<Rational>> =
            if i < n { c.maps[i].nullspace() } else { (0..di).map(|j| unit(di, j)).collect() };
        let boundary: Vec<Vec<Rational>> =
            if i == 0 { Vec::new() } else { previous_complement.iter().map(|v| c.maps[i - 1].mul_vec(v)).collect() };
        let homology = extend_basis(&boundary, cycles.iter().cloned());
        let complement = extend_basis(&cycles, (0..di).map(|j| unit(di, j)));
        boundaries.push(Matrix::from_columns(di, &boundary));
        homology_complements.push(Matrix::from_columns(di, &homology));
        boundary_complements.push(Matrix::from_columns(di, &complement));
        previous_complement = complement;
    }
    Ok(ComplexDecomposition { dims, boundaries, homology_complements, boundary_complements })
}

/// Homogeneous linear equations over `num_unknowns` unknowns, one sparse row each.
struct LinearSystem {
    num_unknowns: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl LinearSystem {
    fn solutions(&self) -> Vec<Vec<Rational>> {
        let mut m = Matrix::zeros(self.rows.len(), self.num_unknowns);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row {
                m[(i, *j)] += c;
            }
        }
        m.nullspace()
    }
}

/// Flat index of entry `(a, b)` of a `rows x cols` block starting at `offset`.
fn slot(offset: usize, cols: usize, a: usize, b: usize) -> usize {
    offset + a * cols + b
}

fn offsets(shapes: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let mut out = Vec::with_capacity(shapes.len());
    let mut total = 0;
    for &(r, c) in shapes {
        out.push(total);
        total += r * c;
    }
    (out, total)
}

fn unflatten(v: &[Rational], shapes: &[(usize, usize)], offsets: &[usize]) -> Vec<Matrix> {
    shapes
        .iter()
        .zip(offsets)
        .map(|(&(r, c), &off)| Matrix::from_fn(r, c, |a, b| v[slot(off, c, a, b)].clone()))
        .collect()
}

/// Morphisms of complexes `f -> f'`: a basis of solutions `(g_0, ..., g_n)` of
/// `g_i M_i = M'_i g_{i-1}`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub dim: usize,
    pub basis: Vec<Vec<Matrix>>,
}

pub fn hom_space(c: &ComplexInstance, c2: &ComplexInstance) -> Result<HomSpace> {
    if c.n() != c2.n() {
        return Err(Error::LengthMismatch { expected: c.n(), found: c2.n() });
    }
    // g_i: V_i -> V'_i is d'_i x d_i.
    let shapes: Vec<(usize, usize)> = c.dims.iter().zip(&c2.dims).map(|(&d, &d2)| (d2, d)).collect();
    let (offs, num_unknowns) = offsets(&shapes);
    let mut rows = Vec::new();
    for i in 1..=c.n() {
        let (m, m2) = (&c.maps[i - 1], &c2.maps[i - 1]);
        let (src, mid, tgt) = (c.dims[i - 1], c.dims[i], c2.dims[i]);
        let src2 = c2.dims[i - 1];
        for a in 0..tgt {
            for col in 0..src {
                let mut row = Vec::new();
                for b in 0..mid {
                    if !m[(b, col)].is_zero() {
                        row.push((slot(offs[i], mid, a, b), m[(b, col)].clone()));
                    }
                }
                for b in 0..src2 {
                    if !m2[(a, b)].is_zero() {
                        row.push((slot(offs[i - 1], src, b, col), -m2[(a, b)].clone()));
                    }
                }
                rows.push(row);
            }
        }
    }
    let basis: Vec<Vec<Matrix>> =
        LinearSystem { num_unknowns, rows }.solutions().iter().map(|v| unflatten(v, &shapes, &offs)).collect();
    Ok(HomSpace { dim: basis.len(), basis })
}

/// The shifted complex over `(d_1, ..., d_n)` with maps `(-1)^i M_{i+1}`, `i = 1..n-1`.
pub fn shift(c: &ComplexInstance) -> Result<ComplexInstance> {
    c.require_complex()?;
    let dims = c.dims[1..].to_vec();
    let maps = (1..c.n()).map(|i| if i % 2 == 1 { -&c.maps[i] } else { c.maps[i].clone() }).collect();
    ComplexInstance::new(dims, maps)
}

/// Dimension of the Zariski tangent space of the variety of complexes at `c`:
/// solutions `(g_1, ..., g_n)` of `M_{i+1} g_i + g_{i+1} M_i = 0`.
pub fn tangent_space(c: &ComplexInstance) -> Result<usize> {
    c.require_complex()?;
    let n = c.n();
    // g_i has the shape of M_i.
    let shapes: Vec<(usize, usize)> = c.maps.iter().map(Matrix::shape).collect();
    let (offs, num_unknowns) = offsets(&shapes);
    let mut rows = Vec::new();
    for i in 1..n {
        let (m_i, m_next) = (&c.maps[i - 1], &c.maps[i]);
        let (src, mid, tgt) = (c.dims[i - 1], c.dims[i], c.dims[i + 1]);
        for a in 0..tgt {
            for col in 0..src {
                let mut row = Vec::new();
                // (M_{i+1} g_i)_{a,col}
                for b in 0..mid {
                    if !m_next[(a, b)].is_zero() {
                        row.push((slot(offs[i - 1], src, b, col), m_next[(a, b)].clone()));
                    }
                }
                // (g_{i+1} M_i)_{a,col}
                for b in 0..mid {
                    if !m_i[(b, col)].is_zero() {
                        row.push((slot(offs[i], mid, a, b), m_i[(b, col)].clone()));
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(LinearSystem { num_unknowns, rows }.solutions().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn dv(xs: &[u64]) -> DimVector {
        DimVector::new(xs.to_vec()).unwrap()
    }

    fn rv(xs: &[u64]) -> RankVector {
        RankVector::new(xs.to_vec())
    }

    fn m(rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(rows, cols, e)
    }

    #[test]
    fn shape_checks() {
        assert!(ComplexInstance::new(vec![1, 2], vec![m(1, 2, &[1, 0])]).is_err());
        assert!(ComplexInstance::new(vec![1, 2], vec![]).is_err());
        assert!(ComplexInstance::new(vec![], vec![]).is_err());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_complex(&ComplexInstance::zero(vec![2, 2, 2]).unwrap()));
        let ok = ComplexInstance::new(vec![1, 1, 1], vec![m(1, 1, &[1]), m(1, 1, &[0])]).unwrap();
        assert!(verify_complex(&ok));
        let bad = ComplexInstance::new(vec![1, 1, 1], vec![m(1, 1, &[1]), m(1, 1, &[1])]).unwrap();
        assert!(!verify_complex(&bad));
        assert_eq!(ranks(&bad), Err(Error::NotAComplex { index: 1 }));
    }

    #[test]
    fn rank_and_homology_examples() {
        let z = ComplexInstance::zero(vec![2, 2]).unwrap();
        assert_eq!(ranks(&z).unwrap(), rv(&[0]));
        assert_eq!(homology(&z).unwrap().h, vec![2, 2]);

        let c = ComplexInstance::new(vec![1, 2, 1], vec![m(2, 1, &[1, 0]), m(1, 2, &[0, 1])]).unwrap();
        assert_eq!(ranks(&c).unwrap(), rv(&[1, 1]));
        assert_eq!(homology(&c).unwrap().h, vec![0, 0, 0]);
    }

    #[test]
    fn witness_examples() {
        let c = construct_with_ranks(&dv(&[1, 1, 1]), &rv(&[1, 0]), 3).unwrap();
        assert!(!c.maps()[0][(0, 0)].is_zero());
        assert!(c.maps()[1].is_zero());

        for seed in 0..5 {
            let c = construct_with_ranks(&dv(&[2, 2, 2]), &rv(&[1, 1]), seed).unwrap();
            assert!(verify_complex(&c));
            assert_eq!(ranks(&c).unwrap(), rv(&[1, 1]));
        }

        let z = construct_with_ranks(&dv(&[3, 2, 4]), &rv(&[0, 0]), 9).unwrap();
        assert!(z.maps().iter().all(Matrix::is_zero));

        assert!(matches!(construct_with_ranks(&dv(&[1, 1, 1]), &rv(&[1, 1]), 0), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn witnesses_are_reproducible() {
        let d = dv(&[2, 3, 2]);
        let r = rv(&[1, 2]);
        assert_eq!(construct_with_ranks(&d, &r, 11).unwrap(), construct_with_ranks(&d, &r, 11).unwrap());
    }

    #[test]
    fn group_action_examples() {
        let c = construct_with_ranks(&dv(&[2, 3, 2]), &rv(&[1, 2]), 5).unwrap();
        assert_eq!(group_act(&GroupElement::identity(c.dims()), &c).unwrap(), c);

        let two = GroupElement::new(c.dims().iter().map(|&d| Matrix::identity(d).scale(&rat(2))).collect()).unwrap();
        assert_eq!(ranks(&group_act(&two, &c).unwrap()).unwrap(), rv(&[1, 2]));

        let singular = GroupElement::new(vec![Matrix::zeros(1, 1)]);
        assert_eq!(singular, Err(Error::Singular(0)));
        assert!(group_act(&GroupElement::identity(&[1, 1]), &c).is_err());
    }

    #[test]
    fn split_examples() {
        let z = ComplexInstance::zero(vec![2, 3]).unwrap();
        let s = split(&z).unwrap();
        assert_eq!(s.homology_dims(), vec![2, 3]);
        assert_eq!(s.complement_dims(), vec![0, 0]);

        let exact = ComplexInstance::new(vec![1, 2, 1], vec![m(2, 1, &[1, 0]), m(1, 2, &[0, 1])]).unwrap();
        let s = split(&exact).unwrap();
        assert_eq!(s.homology_dims(), vec![0, 0, 0]);
        assert_eq!(s.reassemble().unwrap(), exact);

        let c = construct_with_ranks(&dv(&[2, 2, 2]), &rv(&[1, 1]), 1).unwrap();
        let s = split(&c).unwrap();
        assert_eq!(s.homology_dims(), vec![1, 0, 1]);
        assert_eq!(s.complement_dims(), vec![1, 1, 0]);
        assert_eq!(s.reassemble().unwrap(), c);
    }

    #[test]
    fn split_summands_satisfy_invariants() {
        let c = construct_with_ranks(&dv(&[3, 4, 3, 1]), &rv(&[2, 1, 1]), 4).unwrap();
        let s = split(&c).unwrap();
        assert!(s.change_of_basis().is_ok());
        for i in 0..c.n() {
            // f_{i+1} carries B_i' onto B_{i+1}.
            assert_eq!(&c.maps()[i] * &s.boundary_complements[i], s.boundaries[i + 1]);
            // H_i' lies in the cycles.
            assert!((&c.maps()[i] * &s.homology_complements[i]).is_zero());
        }
    }

    #[test]
    fn hom_space_examples() {
        let z = ComplexInstance::zero(vec![1, 1]).unwrap();
        assert_eq!(hom_space(&z, &z).unwrap().dim, 2);

        let e = ComplexInstance::new(vec![1, 1], vec![m(1, 1, &[1])]).unwrap();
        let hs = hom_space(&e, &e).unwrap();
        assert_eq!(hs.dim, 1);
        assert_eq!(hs.basis[0][0], hs.basis[0][1]);

        assert!(hom_space(&z, &ComplexInstance::zero(vec![1, 1, 1]).unwrap()).is_err());
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let c = construct_with_ranks(&dv(&[2, 3, 2]), &rv(&[1, 1]), 2).unwrap();
        let c2 = construct_with_ranks(&dv(&[1, 3, 2]), &rv(&[1, 2]), 3).unwrap();
        let hs = hom_space(&c, &c2).unwrap();
        for g in &hs.basis {
            for i in 1..=c.n() {
                assert_eq!(&g[i] * &c.maps()[i - 1], &c2.maps()[i - 1] * &g[i - 1]);
            }
        }
    }

    #[test]
    fn shift_examples() {
        let z = ComplexInstance::zero(vec![1, 2, 3]).unwrap();
        let s = shift(&z).unwrap();
        assert_eq!(s.dims(), &[2, 3]);
        assert!(s.maps()[0].is_zero());

        let c = ComplexInstance::new(vec![1, 1, 1], vec![m(1, 1, &[5]), m(1, 1, &[0])]).unwrap();
        let s = shift(&c).unwrap();
        assert_eq!(s.dims(), &[1, 1]);
        assert_eq!(s.maps(), &[m(1, 1, &[0])]);

        let c = ComplexInstance::new(vec![1, 2, 1], vec![m(2, 1, &[1, 0]), m(1, 2, &[0, 1])]).unwrap();
        let s = shift(&c).unwrap();
        assert_eq!(s.maps(), &[m(1, 2, &[0, -1])]);
        assert!(verify_complex(&s));

        let one = ComplexInstance::new(vec![2, 1], vec![m(1, 2, &[1, 1])]).unwrap();
        let s = shift(&one).unwrap();
        assert_eq!(s.dims(), &[1]);
        assert!(s.maps().is_empty());
    }

    #[test]
    fn tangent_examples() {
        assert_eq!(tangent_space(&ComplexInstance::zero(vec![2, 2]).unwrap()).unwrap(), 4);
        let one = ComplexInstance::new(vec![2, 3], vec![Matrix::from_i64(3, 2, &[1, 0, 0, 1, 0, 0])]).unwrap();
        assert_eq!(tangent_space(&one).unwrap(), 6);

        let exact = ComplexInstance::new(vec![1, 2, 1], vec![m(2, 1, &[1, 0]), m(1, 2, &[0, 1])]).unwrap();
        assert_eq!(tangent_space(&exact).unwrap(), 3);

        let c = construct_with_ranks(&dv(&[2, 2, 2]), &rv(&[1, 1]), 8).unwrap();
        assert_eq!(tangent_space(&c).unwrap(), 5);
    }

    #[test]
    fn membership_examples() {
        let z = ComplexInstance::zero(vec![2, 2, 2]).unwrap();
        assert!(closure_membership(&z, &rv(&[0, 0])).unwrap());
        let c = construct_with_ranks(&dv(&[2, 2, 2]), &rv(&[1, 1]), 0).unwrap();
        assert!(!closure_membership(&c, &rv(&[1, 0])).unwrap());
        assert!(closure_membership(&c, &rv(&[1, 1])).unwrap());
        assert!(closure_membership(&c, &rv(&[1])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = construct_with_ranks(&dv(&[2, 3, 1]), &rv(&[2, 1]), 6).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ComplexInstance>(&s).unwrap(), c);

        let z = ComplexInstance::zero(vec![0, 2, 0]).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"dims":[0,2,0],"maps":[[[],[]],[]]}"#);
        assert_eq!(serde_json::from_str::<ComplexInstance>(&s).unwrap(), z);

        let half = r#"{"dims":[1,1],"maps":[[["1/2"]]]}"#;
        let c: ComplexInstance = serde_json::from_str(half).unwrap();
        assert_eq!(c.maps()[0][(0, 0)], crate::linalg::ratio(1, 2));
        assert!(serde_json::from_str::<ComplexInstance>(r#"{"dims":[1,1],"maps":[[["1","2"]]]}"#).is_err());
    }

    fn small_case() -> impl Strategy<Value = (DimVector, RankVector, u64)> {
        prop::collection::vec(0u64..=3, 2..=4).prop_flat_map(|d| {
            let d = DimVector::new(d).unwrap();
            let all = rankcomb::enumerate_r(&d);
            (Just(d), prop::sample::select(all), any::<u64>())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn witness_ranks_and_group_invariance((d, r, seed) in small_case()) {
            let c = construct_with_ranks(&d, &r, seed).unwrap();
            prop_assert!(verify_complex(&c));
            prop_assert_eq!(ranks(&c).unwrap(), r.clone());
            prop_assert_eq!(homology(&c).unwrap(), rankcomb::homology_from_ranks(&d, &r).unwrap());

            let g = GroupElement::random(c.dims(), seed ^ 0x5eed).unwrap();
            let moved = group_act(&g, &c).unwrap();
            prop_assert!(verify_complex(&moved));
            prop_assert_eq!(ranks(&moved).unwrap(), r);
            prop_assert_eq!(group_act(&g.inverse(), &moved).unwrap(), c);
        }

        #[test]
        fn tangent_matches_formula_and_shifted_hom((d, r, seed) in small_case()) {
            let c = construct_with_ranks(&d, &r, seed).unwrap();
            let t = tangent_space(&c).unwrap();
            prop_assert_eq!(BigInt::from(t), rankcomb::tangent_dim(&d, &r).unwrap());
            let shifted = shift(&c).unwrap().append_zero_space();
            prop_assert_eq!(hom_space(&c, &shifted).unwrap().dim, t);
        }

        #[test]
        fn split_round_trip((d, r, seed) in small_case()) {
            let c = construct_with_ranks(&d, &r, seed).unwrap();
            prop_assert_eq!(split(&c).unwrap().reassemble().unwrap(), c);
        }
    }
}
