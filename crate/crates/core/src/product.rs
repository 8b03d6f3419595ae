//! Collected expansions of mixed partial derivatives of a product u*v.
//!
//! Here the combinatorial problem is simpler than for compositions: the
//! distinct-variable expansion of d^n/dx1..dxn (uv) has one coefficient-1
//! term per subset of {1..n}, and identification of variables collects those
//! terms into binomial-product coefficients.

use num_bigint::BigUint;
use num_integer::binomial;

use crate::multiset::Multiset;

/// One collected term: u differentiated by `u_part`, v by `v_part`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTerm {
    pub u_part: Multiset,
    pub v_part: Multiset,
    /// prod_i C(k_i, l_i) where l is `u_part` inside the signature k.
    pub coefficient: BigUint,
}

/// The fully collected expansion of d_tau (uv).
///
/// One term per sub-multiset l <= tau, sorted by ascending |u_part| and then
/// lexicographically; u_part + v_part = tau in every term. The coefficients
/// sum to 2^|tau| and the term count is prod (k_i + 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductExpansion {
    signature: Multiset,
    terms: Vec<ProductTerm>,
}

impl ProductExpansion {
    /// Rebuild an expansion from terms already in canonical order, as when
    /// decoding a serialized document. Returns `None` when the order or the
    /// part sums violate the invariants.
    pub fn from_sorted_terms(signature: Multiset, terms: Vec<ProductTerm>) -> Option<Self> {
        use std::cmp::Ordering;
        for w in terms.windows(2) {
            let ord = w[0]
                .u_part
                .size()
                .cmp(&w[1].u_part.size())
                .then_with(|| w[0].u_part.cmp(&w[1].u_part));
            if ord != Ordering::Less {
                return None;
            }
        }
        let valid = terms
            .iter()
            .all(|t| &t.u_part + &t.v_part == signature);
        valid.then_some(Self { signature, terms })
    }

    pub fn signature(&self) -> &Multiset {
        &self.signature
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    /// Sum of all coefficients; 2^|tau|.
    pub fn coefficient_sum(&self) -> BigUint {
        self.terms.iter().map(|t| &t.coefficient).sum()
    }

    /// The coefficient of the term with the given u-side, if present.
    pub fn coefficient_of(&self, u_part: &Multiset) -> Option<&BigUint> {
        self.terms
            .iter()
            .find(|t| &t.u_part == u_part)
            .map(|t| &t.coefficient)
    }
}

/// Expand d_tau (uv): one term per componentwise sub-multiset of tau, with
/// the binomial-product coefficient. The empty signature gives the single
/// term u*v.
pub fn expand_product(tau: &Multiset) -> ProductExpansion {
    let mut terms: Vec<ProductTerm> = tau
        .sub_multisets()
        .map(|u_part| {
            let v_part = tau
                .checked_sub(&u_part)
                .expect("sub-multiset stays below tau");
            let coefficient = u_part
                .iter()
                .map(|(var, l)| binomial(BigUint::from(tau.count(var)), BigUint::from(l)))
                .product::<BigUint>();
            ProductTerm {
                u_part,
                v_part,
                coefficient,
            }
        })
        .collect();
    terms.sort_by(|a, b| {
        a.u_part
            .size()
            .cmp(&b.u_part.size())
            .then_with(|| a.u_part.cmp(&b.u_part))
    });
    ProductExpansion {
        signature: tau.clone(),
        terms,
    }
}
