//! Multisets of variable identifiers.
//!
//! A derivative signature such as d^8/dx1^4 dx5^2 dx7 dx8 is encoded as the
//! multiset {1,1,1,1,5,5,7,8}: variable id to multiplicity. Blocks of
//! collapsed partitions are multisets over the same ids.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// Identifier of an independent variable; rendered as `x<id>`. Always >= 1.
pub type VarId = u32;

/// A set with positive multiplicities, stored as an ordered id -> count map.
///
/// Equality is structural; the map ordering makes the stored form canonical,
/// so two multisets built in any insertion order compare equal iff they have
/// the same members with the same multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset {
    entries: BTreeMap<VarId, u32>,
}

impl Multiset {
    /// The empty multiset.
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiset with a single member of multiplicity 1.
    pub fn singleton(var: VarId) -> Self {
        let mut ms = Self::new();
        ms.insert(var, 1);
        ms
    }

    /// Build from (id, multiplicity) pairs; repeated ids accumulate, zero
    /// multiplicities are dropped.
    pub fn from_entries<I: IntoIterator<Item = (VarId, u32)>>(entries: I) -> Self {
        let mut ms = Self::new();
        for (var, count) in entries {
            ms.insert(var, count);
        }
        ms
    }

    /// Build from individual members, each contributing multiplicity 1.
    pub fn from_elements<I: IntoIterator<Item = VarId>>(elements: I) -> Self {
        let mut ms = Self::new();
        for var in elements {
            ms.insert(var, 1);
        }
        ms
    }

    /// Add `count` occurrences of `var`.
    pub fn insert(&mut self, var: VarId, count: u32) {
        assert!(var >= 1, "variable ids are positive");
        if count > 0 {
            *self.entries.entry(var).or_insert(0) += count;
        }
    }

    /// Multiplicity of `var` (0 when absent).
    pub fn count(&self, var: VarId) -> u32 {
        self.entries.get(&var).copied().unwrap_or(0)
    }

    /// Size: the sum of all multiplicities.
    pub fn size(&self) -> u64 {
        self.entries.values().map(|&c| u64::from(c)).sum()
    }

    /// Number of distinct members.
    pub fn distinct_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// (id, multiplicity) pairs in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.entries.iter().map(|(&v, &c)| (v, c))
    }

    /// Distinct member ids in ascending order.
    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.entries.keys().copied()
    }

    /// Members with repetition, ascending.
    pub fn elements(&self) -> impl Iterator<Item = VarId> + '_ {
        self.iter()
            .flat_map(|(v, c)| std::iter::repeat(v).take(c as usize))
    }

    /// Componentwise `self <= other`.
    pub fn is_subset_of(&self, other: &Multiset) -> bool {
        self.iter().all(|(v, c)| c <= other.count(v))
    }

    /// Componentwise difference, `None` if `other` is not a sub-multiset.
    pub fn checked_sub(&self, other: &Multiset) -> Option<Multiset> {
        let mut out = Multiset::new();
        for (v, c) in self.iter() {
            match c.checked_sub(other.count(v)) {
                Some(rest) => out.insert(v, rest),
                None => return None,
            }
        }
        if other.iter().all(|(v, _)| self.count(v) >= other.count(v)) {
            Some(out)
        } else {
            None
        }
    }

    /// All sub-multisets (componentwise `0 <= l_i <= k_i`), the empty one and
    /// `self` included. There are `prod (k_i + 1)` of them.
    pub fn sub_multisets(&self) -> SubMultisets {
        SubMultisets {
            entries: self.iter().collect(),
            counters: vec![0; self.distinct_len()],
            done: false,
        }
    }

    /// Canonical ordering used for parts of a multiset partition: larger
    /// parts first, ties broken lexicographically on the (id, multiplicity)
    /// entry list.
    pub fn part_cmp(&self, other: &Multiset) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl std::ops::Add<&Multiset> for &Multiset {
    type Output = Multiset;

    /// Multiset sum: componentwise addition of multiplicities.
    fn add(self, rhs: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (v, c) in rhs.iter() {
            out.insert(v, c);
        }
        out
    }
}

impl fmt::Display for Multiset {
    /// Signature form: `x1^4 x5^2 x7 x8`; the empty multiset prints `(empty)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        let mut first = true;
        for (v, c) in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{c}")?;
            }
        }
        Ok(())
    }
}

/// Odometer over the componentwise sub-multisets of a multiset.
pub struct SubMultisets {
    entries: Vec<(VarId, u32)>,
    counters: Vec<u32>,
    done: bool,
}

impl Iterator for SubMultisets {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        if self.done {
            return None;
        }
        let current = Multiset::from_entries(
            self.entries
                .iter()
                .zip(&self.counters)
                .map(|(&(v, _), &c)| (v, c)),
        );
        // advance the odometer, least-significant position first
        let mut i = 0;
        loop {
            if i == self.counters.len() {
                self.done = true;
                break;
            }
            if self.counters[i] < self.entries[i].1 {
                self.counters[i] += 1;
                break;
            }
            self.counters[i] = 0;
            i += 1;
        }
        Some(current)
    }
}

/// n! as an exact big integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// The `!!` convention: the product of the factorials of the multiplicities.
///
/// For example {1,1,1,1,2,2,2}!! = 4! * 3! = 144. Any plain set (all
/// multiplicities 1) has `!!` equal to 1, as does the empty multiset.
pub fn multiset_factorial(sigma: &Multiset) -> BigUint {
    let mut acc = BigUint::one();
    for (_, count) in sigma.iter() {
        acc *= factorial(u64::from(count));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_order_independent() {
        let a = Multiset::from_entries([(2, 2), (1, 1)]);
        let b = Multiset::from_elements([1, 2, 2]);
        assert_eq!(a, b);
        assert_eq!(a.size(), 3);
        assert_eq!(a.count(2), 2);
        assert_eq!(a.count(7), 0);
    }

    #[test]
    fn empty_multiset_has_size_zero() {
        let e = Multiset::new();
        assert!(e.is_empty());
        assert_eq!(e.size(), 0);
        assert_eq!(multiset_factorial(&e), BigUint::one());
    }

    #[test]
    fn multiset_factorial_paper_value() {
        // {1,1,1,1,2,2,2}!! = 4!3! = 144
        let sigma = Multiset::from_entries([(1, 4), (2, 3)]);
        assert_eq!(multiset_factorial(&sigma), BigUint::from(144u32));
    }

    #[test]
    fn multiset_factorial_set_is_one() {
        let sigma = Multiset::from_elements([3, 5, 9]);
        assert_eq!(multiset_factorial(&sigma), BigUint::one());
    }

    #[test]
    fn multiset_factorial_mixed() {
        // {1,1,5}!! = 2! * 1! = 2
        let sigma = Multiset::from_entries([(1, 2), (5, 1)]);
        assert_eq!(multiset_factorial(&sigma), BigUint::from(2u32));
    }

    #[test]
    fn sub_multisets_count_and_bounds() {
        let tau = Multiset::from_entries([(1, 1), (2, 2)]);
        let subs: Vec<_> = tau.sub_multisets().collect();
        assert_eq!(subs.len(), (1 + 1) * (2 + 1));
        assert!(subs.iter().all(|s| s.is_subset_of(&tau)));
        assert!(subs.contains(&Multiset::new()));
        assert!(subs.contains(&tau));
    }

    #[test]
    fn checked_sub_roundtrip() {
        let tau = Multiset::from_entries([(1, 4), (5, 2), (7, 1), (8, 1)]);
        let part = Multiset::from_entries([(1, 2), (5, 1)]);
        let rest = tau.checked_sub(&part).unwrap();
        assert_eq!(&rest + &part, tau);
        assert_eq!(tau.checked_sub(&Multiset::singleton(9)), None);
    }

    #[test]
    fn part_cmp_orders_by_size_then_lex() {
        let big = Multiset::from_entries([(1, 1), (2, 1)]);
        let small = Multiset::singleton(1);
        assert_eq!(big.part_cmp(&small), Ordering::Less);
        let a = Multiset::from_entries([(1, 1), (2, 1)]);
        let b = Multiset::from_entries([(2, 2)]);
        // same size 2; [(1,1),(2,1)] precedes [(2,2)] lexicographically
        assert_eq!(a.part_cmp(&b), Ordering::Less);
    }

    #[test]
    fn display_signature_form() {
        let tau = Multiset::from_entries([(1, 4), (5, 2), (7, 1), (8, 1)]);
        assert_eq!(tau.to_string(), "x1^4 x5^2 x7 x8");
        assert_eq!(Multiset::new().to_string(), "(empty)");
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(8), BigUint::from(40320u32));
    }
}
