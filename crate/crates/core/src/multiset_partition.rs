//! Partitions of a multiset: expressions of a multiset as a sum of
//! non-empty multisets, enumerated without repetition.
//!
//! Set partitions are the special case where every multiplicity is 1, and
//! integer partitions are the special case of a single repeated member.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::DEFAULT_ENUMERATION_LIMIT;

/// A partition of a multiset, stored as distinct parts with repeat counts.
///
/// Canonical form: parts sorted by the part order (larger size first, then
/// lexicographic on the entry list), with equal parts merged into an explicit
/// repeat count m_i >= 1. Equality and hashing are structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MultisetPartition {
    parts: Vec<(Multiset, u32)>,
}

impl MultisetPartition {
    /// The unique partition of the empty multiset: no parts.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build from part occurrences (repetition listed explicitly). Empty
    /// parts are rejected as `None`.
    pub fn from_parts<I: IntoIterator<Item = Multiset>>(parts: I) -> Option<Self> {
        Self::from_counted_parts(parts.into_iter().map(|p| (p, 1)))
    }

    /// Build from (part, count) pairs, merging duplicates and dropping zero
    /// counts. Empty parts are rejected as `None`.
    pub fn from_counted_parts<I: IntoIterator<Item = (Multiset, u32)>>(parts: I) -> Option<Self> {
        let mut collected: Vec<(Multiset, u32)> =
            parts.into_iter().filter(|(_, m)| *m > 0).collect();
        if collected.iter().any(|(p, _)| p.is_empty()) {
            return None;
        }
        collected.sort_by(|(a, _), (b, _)| a.part_cmp(b));
        let mut merged: Vec<(Multiset, u32)> = Vec::with_capacity(collected.len());
        for (part, m) in collected {
            match merged.last_mut() {
                Some((prev, count)) if *prev == part => *count += m,
                _ => merged.push((part, m)),
            }
        }
        Some(Self { parts: merged })
    }

    /// Distinct parts with their repeat counts, in canonical order.
    pub fn parts(&self) -> &[(Multiset, u32)] {
        &self.parts
    }

    /// Number of parts counted with repetition: sum of the m_i. This is the
    /// block count |pi| of any set partition collapsing here, hence the order
    /// of the outer derivative in an expansion term.
    pub fn part_count(&self) -> u64 {
        self.parts.iter().map(|(_, m)| u64::from(*m)).sum()
    }

    pub fn distinct_part_count(&self) -> usize {
        self.parts.len()
    }

    /// The multiset this partitions: the sum of all parts with repetition.
    pub fn total(&self) -> Multiset {
        let mut total = Multiset::new();
        for (part, m) in &self.parts {
            for _ in 0..*m {
                for (v, c) in part.iter() {
                    total.insert(v, c);
                }
            }
        }
        total
    }

    /// Parts with repetition, in canonical order.
    pub fn iter_with_repetition(&self) -> impl Iterator<Item = &Multiset> + '_ {
        self.parts
            .iter()
            .flat_map(|(p, m)| std::iter::repeat(p).take(*m as usize))
    }

    /// This partition plus one extra part.
    pub fn with_part_added(&self, part: Multiset) -> Self {
        Self::from_counted_parts(
            self.parts
                .iter()
                .cloned()
                .chain(std::iter::once((part, 1))),
        )
        .expect("existing parts are non-empty")
    }

    /// Replace one occurrence of the distinct part at `index` with a copy
    /// grown by one occurrence of `var`.
    pub fn with_part_grown(&self, index: usize, var: crate::multiset::VarId) -> Self {
        let grown = &self.parts[index].0 + &Multiset::singleton(var);
        let replaced = self.parts.iter().enumerate().map(|(i, (p, m))| {
            if i == index {
                (p.clone(), m - 1)
            } else {
                (p.clone(), *m)
            }
        });
        Self::from_counted_parts(replaced.chain(std::iter::once((grown, 1))))
            .expect("grown part is non-empty")
    }

    /// True when this is the single-part partition {tau} of its own total.
    pub fn is_trivial(&self) -> bool {
        self.part_count() == 1
    }
}

impl PartialOrd for MultisetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultisetPartition {
    /// Lexicographic on the canonical (part, count) sequence, parts compared
    /// by the part order. A deterministic total order for term sorting.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.parts.iter();
        let mut b = other.parts.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((pa, ma)), Some((pb, mb))) => {
                    let ord = pa.part_cmp(pb).then(ma.cmp(mb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl fmt::Display for MultisetPartition {
    /// Bracketed block form with repetition: `[x1^2 x5][x1^2 x5][x7 x8]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "[]");
        }
        for part in self.iter_with_repetition() {
            write!(f, "[{part}]")?;
        }
        Ok(())
    }
}

/// Stream every partition of `tau` exactly once, under the default
/// enumeration limit on |tau|.
///
/// Emission order is depth-first on the leading part: each partition is
/// produced with its parts already in canonical order, and partitions sharing
/// a prefix of parts are emitted consecutively.
pub fn multiset_partitions(tau: &Multiset) -> Result<MultisetPartitions> {
    multiset_partitions_with_limit(tau, DEFAULT_ENUMERATION_LIMIT)
}

/// As [`multiset_partitions`] with an explicit limit.
pub fn multiset_partitions_with_limit(tau: &Multiset, limit: usize) -> Result<MultisetPartitions> {
    let size = tau.size();
    if size > limit as u64 {
        return Err(Error::GuardExceeded {
            size: size as usize,
            limit,
        });
    }
    Ok(MultisetPartitions::new(tau.clone()))
}

/// Iterator over all partitions of a multiset; see [`multiset_partitions`].
#[derive(Debug)]
pub struct MultisetPartitions {
    stack: Vec<Frame>,
    chosen: Vec<Multiset>,
    emitted_empty: bool,
    empty_input: bool,
}

#[derive(Debug)]
struct Frame {
    remaining: Multiset,
    candidates: Vec<Multiset>,
    next: usize,
}

impl Frame {
    /// Candidate leading parts of `remaining`: non-empty sub-multisets not
    /// preceding `floor` in the part order, iterated in part order so larger
    /// parts come first.
    fn new(remaining: Multiset, floor: Option<&Multiset>) -> Self {
        let mut candidates: Vec<Multiset> = remaining
            .sub_multisets()
            .filter(|s| !s.is_empty())
            .filter(|s| floor.map_or(true, |f| s.part_cmp(f) != Ordering::Less))
            .collect();
        candidates.sort_by(|a, b| a.part_cmp(b));
        Self {
            remaining,
            candidates,
            next: 0,
        }
    }
}

impl MultisetPartitions {
    fn new(tau: Multiset) -> Self {
        let empty_input = tau.is_empty();
        let stack = if empty_input {
            Vec::new()
        } else {
            vec![Frame::new(tau, None)]
        };
        Self {
            stack,
            chosen: Vec::new(),
            emitted_empty: false,
            empty_input,
        }
    }
}

impl Iterator for MultisetPartitions {
    type Item = MultisetPartition;

    fn next(&mut self) -> Option<MultisetPartition> {
        if self.empty_input {
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(MultisetPartition::empty());
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next >= frame.candidates.len() {
                self.stack.pop();
                self.chosen.pop();
                continue;
            }
            let part = frame.candidates[frame.next].clone();
            frame.next += 1;
            let rest = frame
                .remaining
                .checked_sub(&part)
                .expect("candidate is a sub-multiset");
            if rest.is_empty() {
                let mut parts = self.chosen.clone();
                parts.push(part);
                return Some(
                    MultisetPartition::from_parts(parts).expect("parts are non-empty"),
                );
            }
            let child = Frame::new(rest, Some(&part));
            self.chosen.push(part);
            self.stack.push(child);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_partition::bell;
    use num_bigint::BigUint;

    fn parts_of(tau: &Multiset) -> Vec<MultisetPartition> {
        multiset_partitions(tau).unwrap().collect()
    }

    #[test]
    fn empty_multiset_has_one_partition() {
        let all = parts_of(&Multiset::new());
        assert_eq!(all, vec![MultisetPartition::empty()]);
        assert_eq!(all[0].part_count(), 0);
    }

    #[test]
    fn example_two_term_shapes() {
        // {1,2,2} has exactly 4 partitions
        let tau = Multiset::from_entries([(1, 1), (2, 2)]);
        let all = parts_of(&tau);
        let rendered: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            rendered,
            vec![
                "[x1 x2^2]",
                "[x1 x2][x2]",
                "[x2^2][x1]",
                "[x1][x2][x2]",
            ]
        );
        for p in &all {
            assert_eq!(p.total(), tau);
        }
    }

    #[test]
    fn single_repeated_member_matches_integer_partitions() {
        // {a,a,a}: 3 partitions, one per integer partition of 3
        let tau = Multiset::from_entries([(1, 3)]);
        let all = parts_of(&tau);
        assert_eq!(all.len(), 3);
        let shapes: Vec<Vec<u64>> = all
            .iter()
            .map(|p| p.iter_with_repetition().map(|m| m.size()).collect())
            .collect();
        assert_eq!(shapes, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn set_input_is_in_bijection_with_set_partitions() {
        for n in 0..=6u32 {
            let tau = Multiset::from_elements(1..=n);
            let count = multiset_partitions(&tau).unwrap().count();
            assert_eq!(BigUint::from(count), bell(n as usize));
        }
    }

    #[test]
    fn partitions_are_distinct_and_sum_to_total() {
        let tau = Multiset::from_entries([(1, 2), (2, 2)]);
        let all = parts_of(&tau);
        assert_eq!(all.len(), 9);
        for p in &all {
            assert_eq!(p.total(), tau);
            // distinct parts are pairwise unequal
            for i in 0..p.parts().len() {
                for j in i + 1..p.parts().len() {
                    assert_ne!(p.parts()[i].0, p.parts()[j].0);
                }
            }
        }
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn canonical_order_groups_equal_parts() {
        let a = Multiset::singleton(1);
        let b = Multiset::singleton(2);
        let mp =
            MultisetPartition::from_parts(vec![b.clone(), a.clone(), b.clone()]).unwrap();
        assert_eq!(mp.parts(), &[(a, 1), (b, 2)]);
        assert_eq!(mp.part_count(), 3);
        assert_eq!(mp.distinct_part_count(), 2);
    }

    #[test]
    fn grow_and_add_helpers() {
        let tau = Multiset::from_entries([(2, 1)]);
        let mp = MultisetPartition::from_parts(vec![tau]).unwrap();
        let grown = mp.with_part_grown(0, 2);
        assert_eq!(grown.to_string(), "[x2^2]");
        let added = mp.with_part_added(Multiset::singleton(1));
        assert_eq!(added.to_string(), "[x1][x2]");
        assert!(mp.is_trivial());
        assert!(!added.is_trivial());
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let tau = Multiset::from_entries([(1, 9)]);
        let err = multiset_partitions_with_limit(&tau, 8).unwrap_err();
        assert_eq!(err, Error::GuardExceeded { size: 9, limit: 8 });
    }
}
