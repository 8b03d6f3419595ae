//! Independent verification of the expansions on concrete polynomials.
//!
//! Two routes are compared exactly, in rational arithmetic:
//!   * direct: compose (or multiply) the test polynomials, apply the partial
//!     derivatives one at a time, evaluate;
//!   * expanded: evaluate every term of the symbolic expansion, with each
//!     inner derivative and outer-derivative factor instantiated from the
//!     same polynomials.
//!
//! The module also owns the exhaustive sweep comparing the closed
//! multiplicity formula against brute-force collapse counting for every
//! signature shape up to a given size.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::collapse::{collapse, multiplicity, CollapseMap};
use crate::error::{Error, Result};
use crate::expansion::expand_composition;
use crate::multiset::{Multiset, VarId};
use crate::multiset_partition::{multiset_partitions, MultisetPartition};
use crate::product::expand_product;
use crate::poly::Polynomial;
use crate::set_partition::{bell, set_partitions};

/// Largest |tau| accepted by composition verification; substitution of y
/// into f blows up quickly beyond this.
pub const DEFAULT_COMPOSITION_LIMIT: usize = 6;

/// Largest |tau| swept by brute-force multiplicity counting.
pub const DEFAULT_BRUTEFORCE_LIMIT: usize = 8;

/// Seed for randomized trials when none is given, recorded in the report.
pub const DEFAULT_TRIAL_SEED: u64 = 20260810;

/// Variable id reserved for the argument slot of the outer polynomial f.
pub const F_ARG: u32 = 0;

/// Exact rational evaluation point.
pub type Point = BTreeMap<u32, BigRational>;

/// Test data for a composition check: an outer univariate polynomial f (in
/// the variable [`F_ARG`]), an inner polynomial y over the signature
/// variables, and the point to evaluate at.
#[derive(Debug, Clone)]
pub struct CompositionContext {
    pub f: Polynomial,
    pub y: Polynomial,
    pub point: Point,
}

/// Test data for a product check.
#[derive(Debug, Clone)]
pub struct ProductContext {
    pub u: Polynomial,
    pub v: Polynomial,
    pub point: Point,
}

/// Which identity a report verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationKind {
    Composition,
    Product,
}

impl VerificationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerificationKind::Composition => "composition",
            VerificationKind::Product => "product",
        }
    }
}

/// Outcome of one exact two-route comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: VerificationKind,
    pub signature: Multiset,
    /// Value from iterated differentiation of the composed polynomial.
    pub direct: BigRational,
    /// Value from instantiating the symbolic expansion term by term.
    pub expanded: BigRational,
    pub equal: bool,
}

/// Verify d_tau f(y) on concrete polynomials, under the default size limit.
pub fn verify_composition(tau: &Multiset, ctx: &CompositionContext) -> Result<VerificationReport> {
    verify_composition_with_limit(tau, ctx, DEFAULT_COMPOSITION_LIMIT)
}

/// As [`verify_composition`] with an explicit |tau| limit.
pub fn verify_composition_with_limit(
    tau: &Multiset,
    ctx: &CompositionContext,
    limit: usize,
) -> Result<VerificationReport> {
    if tau.size() > limit as u64 {
        return Err(Error::GuardExceeded {
            size: tau.size() as usize,
            limit,
        });
    }
    // direct route: differentiate the composed polynomial
    let composed = ctx.f.substitute(F_ARG, &ctx.y);
    let direct = composed.partial_by(tau).evaluate(&ctx.point)?;

    // expanded route: instantiate the collected expansion
    let e = expand_composition(tau)?;
    let y_value = ctx.y.evaluate(&ctx.point)?;
    let f_point: Point = [(F_ARG, y_value)].into_iter().collect();
    let max_order = e.terms().iter().map(|t| t.f_order).max().unwrap_or(0);
    let mut f_values = Vec::with_capacity(max_order as usize + 1);
    let mut f_current = ctx.f.clone();
    f_values.push(f_current.evaluate(&f_point)?);
    for _ in 0..max_order {
        f_current = f_current.partial(F_ARG);
        f_values.push(f_current.evaluate(&f_point)?);
    }
    let mut expanded = BigRational::zero();
    for term in e.terms() {
        let mut value = rational_from_biguint(&term.coefficient);
        value *= &f_values[term.f_order as usize];
        for (part, m) in term.shape.parts() {
            let inner = ctx.y.partial_by(part).evaluate(&ctx.point)?;
            value *= inner.pow(*m as i32);
        }
        expanded += value;
    }

    let equal = direct == expanded;
    Ok(VerificationReport {
        kind: VerificationKind::Composition,
        signature: tau.clone(),
        direct,
        expanded,
        equal,
    })
}

/// Verify d_tau (uv) on concrete polynomials.
pub fn verify_product(tau: &Multiset, ctx: &ProductContext) -> Result<VerificationReport> {
    // direct route
    let direct = (&ctx.u * &ctx.v).partial_by(tau).evaluate(&ctx.point)?;

    // expanded route
    let e = expand_product(tau);
    let mut expanded = BigRational::zero();
    for term in e.terms() {
        let mut value = rational_from_biguint(&term.coefficient);
        value *= ctx.u.partial_by(&term.u_part).evaluate(&ctx.point)?;
        value *= ctx.v.partial_by(&term.v_part).evaluate(&ctx.point)?;
        expanded += value;
    }

    let equal = direct == expanded;
    Ok(VerificationReport {
        kind: VerificationKind::Product,
        signature: tau.clone(),
        direct,
        expanded,
        equal,
    })
}

fn rational_from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

// ---------------------------------------------------------------------------
// Randomized trials
// ---------------------------------------------------------------------------

/// Aggregate of a batch of randomized two-route checks.
#[derive(Debug, Clone)]
pub struct TrialsReport {
    pub kind: VerificationKind,
    pub trials: u32,
    pub seed: u64,
    pub max_size: usize,
    pub mismatches: u32,
}

impl TrialsReport {
    pub fn all_equal(&self) -> bool {
        self.mismatches == 0
    }
}

/// A random signature of size 1..=max_size with a random multiplicity shape.
fn random_signature(rng: &mut StdRng, max_size: usize) -> Multiset {
    let size = rng.gen_range(1..=max_size as u32);
    let mut tau = Multiset::new();
    let mut remaining = size;
    let mut var: VarId = 1;
    while remaining > 0 {
        let k = rng.gen_range(1..=remaining);
        tau.insert(var, k);
        var += 1;
        remaining -= k;
    }
    tau
}

fn random_rational(rng: &mut StdRng, max_abs: i64, max_den: i64) -> BigRational {
    let mut numer = 0;
    while numer == 0 {
        numer = rng.gen_range(-max_abs..=max_abs);
    }
    let denom = rng.gen_range(1..=max_den);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Random sparse polynomial over `vars`: per-variable exponents up to
/// `max_exp`, total degree up to `max_degree`, at most `terms` monomials.
fn random_polynomial(
    rng: &mut StdRng,
    vars: &[u32],
    max_exp: u32,
    max_degree: u32,
    terms: usize,
) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let mut budget = max_degree;
        let mono = crate::poly::Monomial::from_powers(vars.iter().filter_map(|&v| {
            if budget == 0 {
                return None;
            }
            let e = rng.gen_range(0..=budget.min(max_exp));
            budget -= e;
            (e > 0).then_some((v, e))
        }));
        p.add_term(mono, random_rational(rng, 3, 2));
    }
    if p.is_zero() {
        p = Polynomial::one();
    }
    p
}

fn random_point(rng: &mut StdRng, vars: &[u32]) -> Point {
    vars.iter()
        .map(|&v| (v, random_rational(rng, 3, 2)))
        .collect()
}

/// Run `trials` randomized composition checks with signatures of size up to
/// `max_size`; the seed is recorded in the report for reproducibility.
pub fn run_composition_trials(trials: u32, max_size: usize, seed: u64) -> Result<TrialsReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..trials {
        let tau = random_signature(&mut rng, max_size);
        let vars: Vec<u32> = tau.vars().collect();
        let f = random_polynomial(&mut rng, &[F_ARG], 4, 4, 3);
        let y = random_polynomial(&mut rng, &vars, 2, 4, 4);
        let point = random_point(&mut rng, &vars);
        let report = verify_composition_with_limit(&tau, &CompositionContext { f, y, point }, max_size)?;
        if !report.equal {
            mismatches += 1;
        }
    }
    Ok(TrialsReport {
        kind: VerificationKind::Composition,
        trials,
        seed,
        max_size,
        mismatches,
    })
}

/// Run `trials` randomized product checks.
pub fn run_product_trials(trials: u32, max_size: usize, seed: u64) -> Result<TrialsReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..trials {
        let tau = random_signature(&mut rng, max_size);
        let vars: Vec<u32> = tau.vars().collect();
        let u = random_polynomial(&mut rng, &vars, 2, 4, 4);
        let v = random_polynomial(&mut rng, &vars, 2, 4, 4);
        let point = random_point(&mut rng, &vars);
        let report = verify_product(&tau, &ProductContext { u, v, point })?;
        if !report.equal {
            mismatches += 1;
        }
    }
    Ok(TrialsReport {
        kind: VerificationKind::Product,
        trials,
        seed,
        max_size,
        mismatches,
    })
}

// ---------------------------------------------------------------------------
// Exhaustive multiplicity sweep
// ---------------------------------------------------------------------------

/// Outcome of the formula-vs-brute-force sweep.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub max_size: usize,
    /// Signatures visited: every multiplicity shape (composition k-vector)
    /// of every size up to max_size.
    pub signatures: u64,
    /// (signature, partition) pairs compared.
    pub pairs: u64,
    /// Pairs where the formula and the brute-force count disagreed.
    pub mismatches: u64,
    /// Signatures whose multiplicity sum missed the Bell number.
    pub bell_mismatches: u64,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.mismatches == 0 && self.bell_mismatches == 0
    }
}

/// Every composition (ordered k-vector of positive parts) of `size`.
fn compositions(size: u32) -> Vec<Vec<u32>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=size {
        for mut rest in compositions(size - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// For every signature tau with |tau| <= max_size (all multiplicity shapes)
/// and every multiset partition of tau, compare the closed multiplicity
/// formula against brute-force collapse counting, and check that the
/// multiplicities of each tau sum to B_|tau|.
pub fn sweep_multiplicity_agreement(max_size: usize) -> Result<SweepReport> {
    let mut report = SweepReport {
        max_size,
        signatures: 0,
        pairs: 0,
        mismatches: 0,
        bell_mismatches: 0,
    };
    for size in 0..=max_size as u32 {
        for shape in compositions(size) {
            let tau = Multiset::from_entries(
                shape
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| (i as VarId + 1, k)),
            );
            report.signatures += 1;

            // one pass of brute-force tallying over all set partitions
            let cmap = CollapseMap::induced_by(&tau);
            let mut tally: BTreeMap<MultisetPartition, u64> = BTreeMap::new();
            for pi in set_partitions(size as usize)? {
                *tally.entry(collapse(&pi, &cmap)).or_insert(0) += 1;
            }

            let mut sum = BigUint::zero();
            let mut seen = 0usize;
            for mp in multiset_partitions(&tau)? {
                let formula = multiplicity(&tau, &mp)?;
                let brute = BigUint::from(tally.get(&mp).copied().unwrap_or(0));
                report.pairs += 1;
                seen += 1;
                if formula != brute {
                    report.mismatches += 1;
                }
                sum += formula;
            }
            // collapse must be onto the enumerated partitions and vice versa
            if seen != tally.len() {
                report.mismatches += 1;
            }
            if sum != bell(size as usize) {
                report.bell_mismatches += 1;
            }
        }
    }
    Ok(report)
}
