//! Report builders behind the subcommands.

use num_bigint::BigInt;
use serde::Serialize;
use stratcx_core::cxlin::{self, ComplexInstance};
use stratcx_core::folan::{self, FoliationReport, Variant};
use stratcx_core::json::big_int;
use stratcx_core::pforms::{self, DimensionReport, TwistedForm};
use stratcx_core::rankcomb::{self, DimVector, HomologyProfile, RankVector};
use stratcx_core::Result;

use crate::output::{tuple, Report, Table};

#[derive(Clone, Debug, Serialize)]
pub struct StrataRow {
    pub ranks: RankVector,
    pub homology: Vec<u64>,
    pub admissible: bool,
    pub maximal: bool,
    #[serde(serialize_with = "big_int")]
    pub stratum_dim: BigInt,
    #[serde(serialize_with = "big_int")]
    pub tangent_dim: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataReport {
    pub dims: DimVector,
    pub count: usize,
    pub maximal: Vec<RankVector>,
    pub rows: Vec<StrataRow>,
}

pub fn strata(d: &DimVector) -> Result<StrataReport> {
    let maximal = rankcomb::maximal_elements(d);
    let rows = rankcomb::enumerate_r(d)
        .into_iter()
        .map(|r| {
            Ok(StrataRow {
                homology: rankcomb::homology_from_ranks(d, &r)?.h,
                admissible: rankcomb::is_admissible(d, &r)?,
                maximal: maximal.contains(&r),
                stratum_dim: rankcomb::stratum_dim(d, &r)?,
                tangent_dim: rankcomb::tangent_dim(d, &r)?,
                ranks: r,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StrataReport { dims: d.clone(), count: rows.len(), maximal, rows })
}

impl Report for StrataReport {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(&["ranks", "homology", "stratum_dim", "tangent_dim", "maximal"]).titled(format!(
            "R{}: {} strata, {} maximal",
            self.dims,
            self.count,
            self.maximal.len()
        ));
        for row in &self.rows {
            t.push(vec![
                tuple(row.ranks.as_slice()),
                tuple(&row.homology),
                row.stratum_dim.to_string(),
                row.tangent_dim.to_string(),
                if row.maximal { "yes".into() } else { String::new() },
            ]);
        }
        vec![t]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Divisor {
    pub ranks: RankVector,
    #[serde(serialize_with = "big_int")]
    pub closure_dim: BigInt,
    #[serde(serialize_with = "big_int")]
    pub codim: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactReport {
    pub dims: DimVector,
    pub chi: RankVector,
    #[serde(serialize_with = "big_int")]
    pub dim: BigInt,
    #[serde(serialize_with = "big_int")]
    pub half_sum_squares: BigInt,
    pub divisors: Vec<Divisor>,
    pub divisors_have_codim_one: bool,
}

pub fn exact(d: &DimVector) -> Result<ExactReport> {
    let s = rankcomb::exact_stratum(d)?;
    let divisors: Vec<Divisor> = s
        .divisors
        .iter()
        .map(|(ranks, closure_dim)| Divisor {
            ranks: ranks.clone(),
            closure_dim: closure_dim.clone(),
            codim: &s.dim - closure_dim,
        })
        .collect();
    Ok(ExactReport {
        dims: d.clone(),
        divisors_have_codim_one: divisors.iter().all(|v| v.codim == BigInt::from(1)),
        chi: s.chi,
        dim: s.dim,
        half_sum_squares: s.half_sum_squares,
        divisors,
    })
}

impl Report for ExactReport {
    fn tables(&self) -> Vec<Table> {
        let mut summary = Table::new(&["dims", "chi", "dim", "half_sum_squares"]).titled("exact stratum");
        summary.push(vec![
            self.dims.to_string(),
            tuple(self.chi.as_slice()),
            self.dim.to_string(),
            self.half_sum_squares.to_string(),
        ]);
        let mut divs = Table::new(&["ranks", "closure_dim", "codim"]).titled("rank-drop divisors");
        for v in &self.divisors {
            divs.push(vec![tuple(v.ranks.as_slice()), v.closure_dim.to_string(), v.codim.to_string()]);
        }
        vec![summary, divs]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomComplexReport {
    pub seed: u64,
    pub requested: RankVector,
    pub measured: RankVector,
    pub homology: HomologyProfile,
    pub complex: ComplexInstance,
}

pub fn random_complex(d: &DimVector, r: &RankVector, seed: u64) -> Result<RandomComplexReport> {
    let complex = cxlin::construct_with_ranks(d, r, seed)?;
    Ok(RandomComplexReport {
        seed,
        requested: r.clone(),
        measured: cxlin::ranks(&complex)?,
        homology: cxlin::homology(&complex)?,
        complex,
    })
}

impl Report for RandomComplexReport {
    fn tables(&self) -> Vec<Table> {
        let mut summary = Table::new(&["dims", "ranks", "homology"]).titled(format!("seed {}", self.seed));
        summary.push(vec![tuple(self.complex.dims()), tuple(self.measured.as_slice()), tuple(&self.homology.h)]);
        let mut maps = Table::new(&["map", "row", "entries"]).titled("maps");
        for (i, m) in self.complex.maps().iter().enumerate() {
            for (j, row) in m.to_rows().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(stratcx_core::linalg::format_rational).collect();
                maps.push(vec![format!("M{}", i + 1), j.to_string(), cells.join(" ")]);
            }
        }
        vec![summary, maps]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VariantCheck {
    pub variant: Variant,
    pub stages: Vec<folan::Stage>,
    pub is_complex: bool,
    /// First `i` with `M_{i+1} M_i` nonzero, 1-based.
    pub nonzero_composition: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub r: usize,
    pub d: i64,
    pub e: i64,
    pub integrable: bool,
    pub self_product_zero: bool,
    pub membership: bool,
    pub variants: Vec<VariantCheck>,
    pub profile: Option<FoliationReport>,
}

pub fn analyze(w: &TwistedForm, e: i64, variant: Variant) -> Result<AnalyzeReport> {
    let integrable = pforms::integrable(w)?;
    let variants = Variant::ALL
        .iter()
        .map(|&v| {
            let dc = folan::build_complex(w, e, v)?;
            let nonzero_composition = dc.complex.compositions().iter().position(|m| !m.is_zero()).map(|i| i + 1);
            Ok(VariantCheck {
                variant: v,
                is_complex: nonzero_composition.is_none(),
                nonzero_composition,
                stages: dc.stages,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let profile = if integrable { Some(folan::rank_profile(w, e, variant)?) } else { None };
    Ok(AnalyzeReport {
        r: w.r(),
        d: w.twist(),
        e,
        integrable,
        self_product_zero: pforms::star(w, w)?.is_zero(),
        membership: variants.iter().all(|v| v.is_complex),
        variants,
        profile,
    })
}

impl Report for AnalyzeReport {
    fn tables(&self) -> Vec<Table> {
        let mut summary = Table::new(&["r", "d", "e", "integrable", "self_product_zero", "membership"]).titled("form");
        summary.push(vec![
            self.r.to_string(),
            self.d.to_string(),
            self.e.to_string(),
            self.integrable.to_string(),
            self.self_product_zero.to_string(),
            self.membership.to_string(),
        ]);
        let mut variants =
            Table::new(&["variant", "stages", "dims", "is_complex", "nonzero_composition"]).titled("complexes");
        for v in &self.variants {
            let stages: Vec<String> = v.stages.iter().map(|s| format!("Omega^{}({})", s.k, s.twist)).collect();
            let dims: Vec<usize> = v.stages.iter().map(|s| s.dim).collect();
            variants.push(vec![
                v.variant.to_string(),
                stages.join(" -> "),
                tuple(&dims),
                v.is_complex.to_string(),
                v.nonzero_composition.map(|i| i.to_string()).unwrap_or_default(),
            ]);
        }
        let mut tables = vec![summary, variants];
        if let Some(p) = &self.profile {
            let mut t = Table::new(&[
                "variant",
                "dims",
                "ranks",
                "homology",
                "dominating_maximal",
                "stratum_dim",
                "tangent_dim",
            ])
            .titled("rank profile");
            let maxima: Vec<String> = p.dominating_maximal.iter().map(|m| tuple(m.as_slice())).collect();
            t.push(vec![
                p.variant.to_string(),
                p.dims.to_string(),
                tuple(p.ranks.as_slice()),
                tuple(&p.homology),
                maxima.join(" "),
                p.stratum_dim.to_string(),
                p.tangent_dim.to_string(),
            ]);
            tables.push(t);
        }
        tables
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub dimension: DimensionReport,
    pub elements: Vec<TwistedForm>,
}

pub fn basis(r: usize, k: usize, e: i64, foliation_degree: Option<i64>) -> BasisReport {
    BasisReport {
        dimension: pforms::dimension_report(r, k, e, foliation_degree),
        elements: pforms::basis(r, k, e).elements().to_vec(),
    }
}

impl Report for BasisReport {
    fn tables(&self) -> Vec<Table> {
        let d = &self.dimension;
        let mut summary =
            Table::new(&["r", "k", "e", "basis_dim", "kernel_dim", "bott", "printed"]).titled("dimension");
        summary.push(vec![
            d.r.to_string(),
            d.k.to_string(),
            d.e.to_string(),
            d.basis_dim.to_string(),
            d.kernel_dim.to_string(),
            d.bott.map(|b| b.to_string()).unwrap_or_default(),
            d.printed.as_ref().map(|p| format!("{} (d = {})", p.value, p.d)).unwrap_or_default(),
        ]);
        let mut elements = Table::new(&["index", "form"]).titled("basis");
        for (i, w) in self.elements.iter().enumerate() {
            elements.push(vec![i.to_string(), w.form().to_string()]);
        }
        vec![summary, elements]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StarReport {
    pub left: TwistedForm,
    pub right: TwistedForm,
    pub product: TwistedForm,
}

pub fn star(a: &TwistedForm, b: &TwistedForm) -> Result<StarReport> {
    Ok(StarReport { product: pforms::star(a, b)?, left: a.clone(), right: b.clone() })
}

impl Report for StarReport {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(&["operand", "k", "twist", "form"]);
        for (name, w) in [("left", &self.left), ("right", &self.right), ("product", &self.product)] {
            t.push(vec![name.into(), w.k().to_string(), w.twist().to_string(), w.form().to_string()]);
        }
        vec![t]
    }
}
