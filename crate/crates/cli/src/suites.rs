//! Seeded verification suites comparing closed forms with brute-force oracles.
//!
//! Trial `i` of a suite draws from a ChaCha8 stream `i` keyed by the suite
//! seed, so results do not depend on scheduling.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use stratcx_core::cxlin::{self, ComplexInstance};
use stratcx_core::folan::{self, fixture_pencil, Variant};
use stratcx_core::linalg::rat;
use stratcx_core::pforms::{self, basis, star, TwistedForm};
use stratcx_core::rankcomb::{self, DimVector, RankVector};

use crate::output::{Report, Table};

const MAX_RECORDED_FAILURES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Census,
    Hom,
    Tangent,
    Witness,
    Split,
    StarAssoc,
    BottDims,
    Theorem1,
    Injectivity,
    Exact,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Census,
        Suite::Hom,
        Suite::Tangent,
        Suite::Witness,
        Suite::Split,
        Suite::StarAssoc,
        Suite::BottDims,
        Suite::Theorem1,
        Suite::Injectivity,
        Suite::Exact,
    ];

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Census | Suite::Witness => 20,
            Suite::Hom | Suite::Tangent | Suite::StarAssoc => 100,
            Suite::Split => 50,
            Suite::Theorem1 => 24,
            Suite::Exact => 10,
            Suite::BottDims | Suite::Injectivity | Suite::All => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Census => "census",
            Suite::Hom => "hom",
            Suite::Tangent => "tangent",
            Suite::Witness => "witness",
            Suite::Split => "split",
            Suite::StarAssoc => "star-assoc",
            Suite::BottDims => "bott-dims",
            Suite::Theorem1 => "theorem1",
            Suite::Injectivity => "injectivity",
            Suite::Exact => "exact",
            Suite::All => "all",
        }
    }
}

/// A failed check with enough data to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub trial: Option<usize>,
    pub message: String,
    pub instance: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub checks: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub counters: BTreeMap<String, usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub outcomes: Vec<SuiteOutcome>,
}

impl Report for VerifyReport {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(&["suite", "seed", "trials", "checks", "failures", "status"]);
        let mut notes = Table::new(&["suite", "note"]).titled("notes");
        let mut fails = Table::new(&["suite", "trial", "message", "instance"]).titled("failures");
        for o in &self.outcomes {
            t.push(vec![
                o.suite.name().into(),
                o.seed.to_string(),
                o.trials.to_string(),
                o.checks.to_string(),
                o.failures.len().to_string(),
                if o.passed { "pass" } else { "FAIL" }.into(),
            ]);
            for n in &o.notes {
                notes.push(vec![o.suite.name().into(), n.clone()]);
            }
            for f in &o.failures {
                let trial = f.trial.map(|i| i.to_string()).unwrap_or_default();
                fails.push(vec![o.suite.name().into(), trial, f.message.clone(), f.instance.to_string()]);
            }
        }
        [t, notes, fails].into_iter().filter(|t| t.title.is_none() || !t.rows.is_empty()).collect()
    }
}

type Check = std::result::Result<usize, (String, Value)>;

fn fail<T>(message: impl Into<String>, instance: Value) -> std::result::Result<T, (String, Value)> {
    Err((message.into(), instance))
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<Failure>,
    failed: bool,
    counters: BTreeMap<String, usize>,
    notes: Vec<String>,
}

impl Tally {
    fn record(&mut self, trial: Option<usize>, result: Check) {
        match result {
            Ok(n) => self.checks += n,
            Err((message, instance)) => {
                self.checks += 1;
                self.failed = true;
                if self.failures.len() < MAX_RECORDED_FAILURES {
                    self.failures.push(Failure { trial, message, instance });
                }
            }
        }
    }

    fn finish(self, suite: Suite, seed: u64, trials: usize) -> SuiteOutcome {
        SuiteOutcome {
            suite,
            seed,
            trials,
            checks: self.checks,
            passed: !self.failed,
            failures: self.failures,
            counters: self.counters,
            notes: self.notes,
        }
    }
}

fn run_trials(tally: &mut Tally, seed: u64, trials: usize, f: impl Fn(&mut ChaCha8Rng) -> Check + Sync) {
    let results: Vec<Check> = (0..trials).into_par_iter().map(|i| f(&mut trial_rng(seed, i))).collect();
    for (i, r) in results.into_iter().enumerate() {
        tally.record(Some(i), r);
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run(suite: Suite, seed: u64, trials: Option<usize>) -> VerifyReport {
    let outcomes: Vec<SuiteOutcome> = match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, seed, trials.unwrap_or(s.default_trials()))).collect(),
        s => vec![run_one(s, seed, trials.unwrap_or(s.default_trials()))],
    };
    VerifyReport { passed: outcomes.iter().all(|o| o.passed), outcomes }
}

pub fn run_one(suite: Suite, seed: u64, trials: usize) -> SuiteOutcome {
    let mut tally = Tally::default();
    match suite {
        Suite::Census => census(&mut tally, seed, trials),
        Suite::Hom => run_trials(&mut tally, seed, trials, hom_trial),
        Suite::Tangent => run_trials(&mut tally, seed, trials, tangent_trial),
        Suite::Witness => run_trials(&mut tally, seed, trials, witness_trial),
        Suite::Split => run_trials(&mut tally, seed, trials, split_trial),
        Suite::StarAssoc => run_trials(&mut tally, seed, trials, star_trial),
        Suite::BottDims => bott_dims(&mut tally),
        Suite::Theorem1 => integrability(&mut tally, seed, trials),
        Suite::Injectivity => injectivity(&mut tally),
        Suite::Exact => run_trials(&mut tally, seed, trials, exact_trial),
        Suite::All => unreachable!("expanded by run"),
    }
    tally.finish(suite, seed, trials)
}

fn random_dims(rng: &mut ChaCha8Rng, max_n: usize, max_d: u64) -> DimVector {
    let n = rng.gen_range(1..=max_n);
    DimVector::new((0..=n).map(|_| rng.gen_range(0..=max_d)).collect()).expect("at least two entries")
}

fn random_ranks(rng: &mut ChaCha8Rng, d: &DimVector) -> RankVector {
    let all = rankcomb::enumerate_r(d);
    all[rng.gen_range(0..all.len())].clone()
}

fn witness(d: &DimVector, r: &RankVector, seed: u64) -> std::result::Result<ComplexInstance, (String, Value)> {
    cxlin::construct_with_ranks(d, r, seed)
        .map_err(|e| (format!("construct_with_ranks: {e}"), json!({"dims": d, "ranks": r, "seed": seed})))
}

fn census_check(d: &DimVector) -> Check {
    let instance = || json!({ "dims": d });
    let all = rankcomb::enumerate_r(d);
    let maxima = rankcomb::maximal_elements(d);
    let leq = |a: &RankVector, b: &RankVector| rankcomb::poset_leq(a, b).unwrap_or(false);
    let mut checks = 0;
    for r in &all {
        if !maxima.iter().any(|m| leq(r, m)) {
            return fail(format!("{r:?} is not below any maximal element"), instance());
        }
        let [a, b, c] = rankcomb::stratum_dim_expressions(d, r).map_err(|e| (e.to_string(), instance()))?;
        if a != b || b != c {
            return fail(format!("dimension expressions differ at {r:?}: {a}, {b}, {c}"), instance());
        }
        checks += 2;
    }
    for (i, a) in maxima.iter().enumerate() {
        for b in &maxima[i + 1..] {
            if leq(a, b) || leq(b, a) {
                return fail(format!("maximal elements {a:?} and {b:?} are comparable"), instance());
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn census(tally: &mut Tally, seed: u64, trials: usize) {
    let fixed: [(&[u64], &[&[u64]]); 3] =
        [(&[1, 1, 1], &[&[0, 1], &[1, 0]]), (&[2, 2, 2], &[&[0, 2], &[1, 1], &[2, 0]]), (&[1, 1], &[&[1]])];
    for (d, expected) in fixed {
        let d = DimVector::new(d.to_vec()).expect("fixed dims");
        let mut got: Vec<Vec<u64>> = rankcomb::maximal_elements(&d).iter().map(|r| r.as_slice().to_vec()).collect();
        got.sort();
        let expected: Vec<Vec<u64>> = expected.iter().map(|r| r.to_vec()).collect();
        let result = if got == expected {
            Ok(1)
        } else {
            fail(format!("maximal elements {got:?}, expected {expected:?}"), json!({ "dims": d }))
        };
        tally.record(None, result);
    }
    let sweep = sweep_dims(seed, trials);
    let results: Vec<Check> = sweep.par_iter().map(census_check).collect();
    for (i, r) in results.into_iter().enumerate() {
        tally.record(Some(i), r);
    }
}

/// The dimension vectors of the census sweep: `n <= 4`, `d_i <= 5`.
pub fn sweep_dims(seed: u64, trials: usize) -> Vec<DimVector> {
    (0..trials).map(|i| random_dims(&mut trial_rng(seed, i), 4, 5)).collect()
}

fn hom_trial(rng: &mut ChaCha8Rng) -> Check {
    let d = random_dims(rng, 4, 4);
    let d2 = DimVector::new((0..=d.n()).map(|_| rng.gen_range(0..=4)).collect()).expect("same length");
    let (r, r2) = (random_ranks(rng, &d), random_ranks(rng, &d2));
    let (s, s2) = (rng.gen(), rng.gen());
    let instance = || json!({"dims": d, "ranks": r, "dims2": d2, "ranks2": r2, "seeds": [s, s2]});
    let c = witness(&d, &r, s)?;
    let c2 = witness(&d2, &r2, s2)?;
    let formula = rankcomb::hom_dim(&d, &r, &d2, &r2).map_err(|e| (e.to_string(), instance()))?;
    let computed = cxlin::hom_space(&c, &c2).map_err(|e| (e.to_string(), instance()))?.dim;
    if formula != BigInt::from(computed) {
        return fail(format!("hom_dim = {formula} but hom_space has dimension {computed}"), instance());
    }
    Ok(1)
}

fn tangent_trial(rng: &mut ChaCha8Rng) -> Check {
    let d = random_dims(rng, 4, 4);
    let r = random_ranks(rng, &d);
    let s = rng.gen();
    let instance = || json!({"dims": d, "ranks": r, "seed": s});
    let c = witness(&d, &r, s)?;
    let err = |e: stratcx_core::Error| (e.to_string(), instance());
    let formula = rankcomb::tangent_dim(&d, &r).map_err(err)?;
    let computed = cxlin::tangent_space(&c).map_err(err)?;
    let shifted = cxlin::shift(&c).map_err(err)?.append_zero_space();
    let via_hom = cxlin::hom_space(&c, &shifted).map_err(err)?.dim;
    if formula != BigInt::from(computed) || computed != via_hom {
        return fail(
            format!("tangent_dim = {formula}, tangent_space = {computed}, hom into shift = {via_hom}"),
            instance(),
        );
    }
    Ok(2)
}

fn witness_trial(rng: &mut ChaCha8Rng) -> Check {
    let d = random_dims(rng, 4, 5);
    let s: u64 = rng.gen();
    let mut checks = 0;
    for r in rankcomb::enumerate_r(&d) {
        let instance = || json!({"dims": d, "ranks": r, "seed": s});
        let c = witness(&d, &r, s)?;
        if !cxlin::verify_complex(&c) {
            return fail("witness is not a complex", instance());
        }
        let got = cxlin::ranks(&c).map_err(|e| (e.to_string(), instance()))?;
        if got != r {
            return fail(format!("witness has ranks {got:?}"), instance());
        }
        checks += 1;
    }
    Ok(checks)
}

fn split_trial(rng: &mut ChaCha8Rng) -> Check {
    let d = random_dims(rng, 4, 4);
    let r = random_ranks(rng, &d);
    let s = rng.gen();
    let instance = || json!({"dims": d, "ranks": r, "seed": s});
    let c = witness(&d, &r, s)?;
    let err = |e: stratcx_core::Error| (e.to_string(), instance());
    let parts = cxlin::split(&c).map_err(err)?;
    if parts.reassemble().map_err(err)? != c {
        return fail("reassembled complex differs from the input", instance());
    }
    if parts.homology_dims() != cxlin::homology(&c).map_err(err)?.h.iter().map(|&h| h as usize).collect::<Vec<_>>() {
        return fail("homology complements have the wrong dimensions", instance());
    }
    Ok(2)
}

/// A sparse random section of `Omega^k_r(e)` with `k <= max_k`, `1 <= e <= 4`.
pub fn random_form(rng: &mut ChaCha8Rng, r: usize, max_k: usize) -> TwistedForm {
    loop {
        let k = rng.gen_range(0..=max_k);
        let e = rng.gen_range(if k == 0 { 1 } else { k as i64 + 1 }..=4);
        let b = basis(r, k, e);
        if !b.is_empty() {
            return b.random_combination(rng, 3, 3);
        }
    }
}

fn star_trial(rng: &mut ChaCha8Rng) -> Check {
    let r = rng.gen_range(3..=4);
    let (a, b, c) = (random_form(rng, r, 1), random_form(rng, r, 1), random_form(rng, r, 1));
    let w = basis(r, 1, rng.gen_range(2..=4)).random_combination(rng, 4, 3);
    let instance = || json!({"a": a, "b": b, "c": c, "w": w});
    let err = |e: stratcx_core::Error| (e.to_string(), instance());
    let ab = star(&a, &b).map_err(err)?;
    let bc = star(&b, &c).map_err(err)?;
    if star(&ab, &c).map_err(err)? != star(&a, &bc).map_err(err)? {
        return fail("(a*b)*c != a*(b*c)", instance());
    }
    let sign = if ((a.k() + 1) * (b.k() + 1)).is_multiple_of(2) { 1 } else { -1 };
    if ab != star(&b, &a).map_err(err)?.scale(&rat(sign)) {
        return fail("a*b != (-1)^((ka+1)(kb+1)) b*a", instance());
    }
    let ww = star(&w, &w).map_err(err)?;
    if ww.form() != &w.form().wedge(&w.form().ext_d()).map_err(err)? {
        return fail("w*w != w^dw", instance());
    }
    if !ab.form().radial_contract().is_zero() || !bc.form().radial_contract().is_zero() {
        return fail("product does not descend", instance());
    }
    Ok(4)
}

fn bott_dims(tally: &mut Tally) {
    let mut printed_disagreements = 0usize;
    let mut compared = 0;
    for r in 1..=5usize {
        for k in 0..=r {
            for e in -1..=5i64 {
                let report = pforms::dimension_report(r, k, e, Some(2));
                let result = if report.consistent() {
                    Ok(1)
                } else {
                    fail("basis, kernel and Bott counts disagree", serde_json::to_value(&report).unwrap_or(Value::Null))
                };
                tally.record(None, result);
                if report.bott.is_some() {
                    compared += 1;
                    printed_disagreements += usize::from(!report.printed.is_some_and(|p| p.agrees));
                }
            }
        }
    }
    tally.counters.insert("bott_cases".into(), compared);
    tally.counters.insert("printed_formula_disagreements".into(), printed_disagreements);
    tally.notes.push(format!(
        "binom(r-k+e, r-k)*binom(d-1, k) with foliation degree d = 2 disagrees with the computed dimension in \
         {printed_disagreements} of {compared} cases with e > k >= 1; with d replaced by the twist e it is Bott's count"
    ));
}

fn integrability(tally: &mut Tally, seed: u64, trials: usize) {
    let (r, e) = (5usize, 2i64);
    let mut fixtures = Vec::new();
    for i in 0..=r {
        for j in i + 1..=r {
            let unit = |m: usize| (0..=r).map(|t| u32::from(t == m)).collect::<Vec<_>>();
            fixtures.push(fixture_pencil(r, &unit(i), &unit(j), 1, 1).expect("linear pencil"));
        }
    }
    let fixture_results: Vec<Check> = fixtures
        .par_iter()
        .map(|w| {
            let check = folan::theorem1_check(w, e).map_err(|err| (err.to_string(), json!({ "form": w })))?;
            if check.integrable && check.membership() {
                Ok(1)
            } else {
                fail(format!("pencil fixture gave {check:?}"), json!({ "form": w }))
            }
        })
        .collect();
    for result in fixture_results {
        tally.record(None, result);
    }
    let b = basis(r, 1, 2);
    let results: Vec<(Check, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let w = b.random_element(&mut trial_rng(seed, i), 3);
            let instance = || json!({ "form": w });
            let check = match folan::theorem1_check(&w, e) {
                Ok(c) => c,
                Err(err) => return (fail(err.to_string(), instance()), false),
            };
            let result = if check.agrees() { Ok(1) } else { fail(format!("random form gave {check:?}"), instance()) };
            (result, !check.integrable)
        })
        .collect();
    let mut non_integrable = 0;
    for (i, (result, flag)) in results.into_iter().enumerate() {
        non_integrable += usize::from(flag);
        tally.record(Some(i), result);
    }
    tally.counters.insert("pencil_fixtures".into(), fixtures.len());
    tally.counters.insert("non_integrable".into(), non_integrable);
    tally.notes.push(format!(
        "{} pencil fixtures and {non_integrable} of {trials} random forms non-integrable on P^{r} with d = e = 2",
        fixtures.len()
    ));
    for variant in Variant::ALL {
        let dc = folan::build_complex(&fixtures[0], e, variant);
        if let Ok(dc) = dc {
            tally.notes.push(format!("{variant} complex dims {}", dc.dims()));
        }
    }
}

pub const INJECTIVITY_CASES: [(usize, i64, usize, i64); 3] = [(3, 2, 1, 3), (4, 2, 1, 3), (4, 3, 1, 4)];

fn injectivity(tally: &mut Tally) {
    let results: Vec<Check> = INJECTIVITY_CASES
        .par_iter()
        .map(|&(r, d, k, e)| {
            let instance = || json!({"r": r, "d": d, "k": k, "e": e});
            let rank = pforms::delta_injectivity_rank(r, d, k, e).map_err(|err| (err.to_string(), instance()))?;
            let dim = basis(r, 1, d).dim();
            if rank == dim {
                Ok(1)
            } else {
                fail(format!("rank {rank} but Omega^1({d}) has dimension {dim}"), instance())
            }
        })
        .collect();
    for r in results {
        tally.record(None, r);
    }
}

fn exact_trial(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(1..=4);
    let mut ranks: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
    if ranks.iter().all(|&x| x == 0) {
        ranks[0] = 1;
    }
    let r = RankVector::new(ranks);
    let d = DimVector::new((0..=n as isize).map(|i| r.at(i) + r.at(i + 1)).collect()).expect("n >= 1");
    let instance = || json!({"dims": d});
    let s = rankcomb::exact_stratum(&d).map_err(|e| (e.to_string(), instance()))?;
    if s.chi != r {
        return fail(format!("chi = {:?}, expected {:?}", s.chi, r), instance());
    }
    if s.dim != s.half_sum_squares {
        return fail(format!("exact stratum has dimension {} != {}", s.dim, s.half_sum_squares), instance());
    }
    if let Some(c) = s.codimensions().find(|c| *c != BigInt::from(1)) {
        return fail(format!("divisor of codimension {c}"), instance());
    }
    Ok(2 + s.divisors.len())
}
