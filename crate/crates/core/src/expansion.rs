//! Collected expansions of mixed partial derivatives of a composition f(y).
//!
//! The expansion of d_tau f(y) has one term per multiset partition of tau:
//! for the partition tau_1 + tau_2 + ... the term is
//! M * f^(b)(y) * prod_i (d_{tau_i} y), where b is the number of parts and
//! the coefficient M is the collapsing-partition multiplicity. With all
//! variables distinct every M is 1; with all variables identified the M are
//! the classical Faa di Bruno coefficients.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::collapse::{multiplicity, CollapseMap};
use crate::error::{Error, Result};
use crate::multiset::{factorial, Multiset, VarId};
use crate::multiset_partition::{multiset_partitions_with_limit, MultisetPartition};
use crate::DEFAULT_ENUMERATION_LIMIT;

/// One collected term of a composition expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionTerm {
    /// Order of the outer derivative f^(f_order); equals the part count of
    /// `shape` with repetition.
    pub f_order: u64,
    /// The multiset partition of the signature: one part per inner
    /// derivative factor d_{tau_i} y.
    pub shape: MultisetPartition,
    /// Collapsing-partition multiplicity of the shape; always >= 1.
    pub coefficient: BigUint,
}

/// The fully collected expansion of d_tau f(y).
///
/// Terms are sorted by ascending f_order, then by the canonical partition
/// order, and shapes are pairwise distinct. The coefficients always sum to
/// the Bell number B_|tau|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionExpansion {
    signature: Multiset,
    terms: Vec<CompositionTerm>,
}

impl CompositionExpansion {
    /// The expansion of the zeroth derivative: the single term f(y).
    pub fn identity() -> Self {
        Self {
            signature: Multiset::new(),
            terms: vec![CompositionTerm {
                f_order: 0,
                shape: MultisetPartition::empty(),
                coefficient: BigUint::one(),
            }],
        }
    }

    fn from_term_map(signature: Multiset, map: BTreeMap<MultisetPartition, BigUint>) -> Self {
        let mut terms: Vec<CompositionTerm> = map
            .into_iter()
            .map(|(shape, coefficient)| CompositionTerm {
                f_order: shape.part_count(),
                shape,
                coefficient,
            })
            .collect();
        terms.sort_by(|a, b| a.f_order.cmp(&b.f_order).then_with(|| a.shape.cmp(&b.shape)));
        Self { signature, terms }
    }

    /// Rebuild an expansion from terms already in canonical order, as when
    /// decoding a serialized document. Returns `None` when the term order,
    /// the shape totals or a coefficient violate the invariants.
    pub fn from_sorted_terms(signature: Multiset, terms: Vec<CompositionTerm>) -> Option<Self> {
        use std::cmp::Ordering;
        for w in terms.windows(2) {
            let ord = w[0]
                .f_order
                .cmp(&w[1].f_order)
                .then_with(|| w[0].shape.cmp(&w[1].shape));
            if ord != Ordering::Less {
                return None;
            }
        }
        let valid = terms.iter().all(|t| {
            t.shape.total() == signature
                && t.shape.part_count() == t.f_order
                && t.coefficient >= BigUint::one()
        });
        valid.then_some(Self { signature, terms })
    }

    /// The derivative signature tau.
    pub fn signature(&self) -> &Multiset {
        &self.signature
    }

    pub fn terms(&self) -> &[CompositionTerm] {
        &self.terms
    }

    /// Sum of all coefficients; B_|tau| by conservation.
    pub fn coefficient_sum(&self) -> BigUint {
        self.terms.iter().map(|t| &t.coefficient).sum()
    }

    /// The coefficient attached to a given term shape, if present.
    pub fn coefficient_of(&self, shape: &MultisetPartition) -> Option<&BigUint> {
        self.terms
            .iter()
            .find(|t| &t.shape == shape)
            .map(|t| &t.coefficient)
    }

    /// Identify variables: collapse every term shape under `cmap` and
    /// re-collect, adding the coefficients of newly indistinguishable terms.
    /// Nothing else changes; the result equals the expansion of the
    /// collapsed signature.
    pub fn collapse(&self, cmap: &CollapseMap) -> CompositionExpansion {
        let mut acc: BTreeMap<MultisetPartition, BigUint> = BTreeMap::new();
        for term in &self.terms {
            let shape = cmap.apply_partition(&term.shape);
            *acc.entry(shape).or_default() += &term.coefficient;
        }
        Self::from_term_map(cmap.apply_multiset(&self.signature), acc)
    }
}

/// Expand d_tau f(y) as a collected sum over the multiset partitions of tau,
/// computing each coefficient with the closed multiplicity formula (no set
/// partitions are enumerated). The empty signature yields the identity
/// expansion f(y).
pub fn expand_composition(tau: &Multiset) -> Result<CompositionExpansion> {
    expand_composition_with_limit(tau, DEFAULT_ENUMERATION_LIMIT)
}

/// As [`expand_composition`] with an explicit enumeration limit.
pub fn expand_composition_with_limit(tau: &Multiset, limit: usize) -> Result<CompositionExpansion> {
    let mut map = BTreeMap::new();
    for shape in multiset_partitions_with_limit(tau, limit)? {
        let coefficient = multiplicity(tau, &shape)?;
        map.insert(shape, coefficient);
    }
    Ok(CompositionExpansion::from_term_map(tau.clone(), map))
}

/// Expand d_tau e^y. Term shapes and coefficients are those of
/// [`expand_composition`]; every outer derivative of the exponential is the
/// common factor e^y, which renderers pull out front instead of printing
/// f-derivative factors.
pub fn expand_exponential(tau: &Multiset) -> Result<CompositionExpansion> {
    expand_composition(tau)
}

/// The classical coefficient of f^(m_1+...+m_k)(y) * prod_j (y^(j))^(m_j) in
/// the k-th derivative of f(y), for the integer partition of k with m_j
/// parts of size j (k is the length of `m`):
///
/// ```text
///            k!
/// -------------------------------
/// 1!^m_1 ... k!^m_k  m_1! ... m_k!
/// ```
///
/// Equals the multiplicity of the matching partition of the fully collapsed
/// signature of size k. Fails unless sum(j * m_j) = k.
pub fn faa_di_bruno_coefficient(m: &[u64]) -> Result<BigUint> {
    let k = m.len() as u64;
    let weighted: u128 = m
        .iter()
        .enumerate()
        .map(|(i, &mj)| (i as u128 + 1) * u128::from(mj))
        .sum();
    if weighted != u128::from(k) {
        return Err(Error::InvalidSignature {
            got: weighted as u64,
            expected: k,
        });
    }
    let mut denominator = BigUint::one();
    for (i, &mj) in m.iter().enumerate() {
        if mj == 0 {
            continue;
        }
        let j = i as u64 + 1;
        denominator *= factorial(j).pow(u32::try_from(mj).expect("part count fits u32"));
        denominator *= factorial(mj);
    }
    let (quotient, remainder) = factorial(k).div_rem(&denominator);
    assert!(
        remainder == BigUint::ZERO,
        "partition count must divide exactly"
    );
    Ok(quotient)
}

/// Differentiate a collected expansion by one more variable.
///
/// Each term spawns the term with {var} as a new singleton part (raising the
/// outer order by one) plus, for every distinct part, the term with `var`
/// inserted into one of its m_i copies (contributing m_i times the
/// coefficient). Like terms are merged by adding coefficients. Iterating
/// this from the identity expansion reproduces [`expand_composition`] for
/// any ordering of the variables.
pub fn differentiate_expansion(e: &CompositionExpansion, var: VarId) -> CompositionExpansion {
    let mut acc: BTreeMap<MultisetPartition, BigUint> = BTreeMap::new();
    for term in e.terms() {
        let with_singleton = term.shape.with_part_added(Multiset::singleton(var));
        *acc.entry(with_singleton).or_default() += &term.coefficient;
        for (index, (_, m)) in term.shape.parts().iter().enumerate() {
            let grown = term.shape.with_part_grown(index, var);
            *acc.entry(grown).or_default() += &term.coefficient * BigUint::from(*m);
        }
    }
    let signature = &e.signature().clone() + &Multiset::singleton(var);
    CompositionExpansion::from_term_map(signature, acc)
}
