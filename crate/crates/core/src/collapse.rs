//! Collapsing partitions: identification of variables and the multiplicity
//! count.
//!
//! When members of the ground set {1..n} are made indistinguishable, the set
//! collapses to a multiset tau and every set partition collapses to a
//! multiset partition of tau. The multiplicity of a multiset partition is the
//! number of set partitions collapsing to it; those counts are the
//! coefficients of the collected derivative expansions.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::multiset::{factorial, multiset_factorial, Multiset, VarId};
use crate::multiset_partition::MultisetPartition;
use crate::set_partition::{set_partitions_with_limit, SetPartition};
use crate::DEFAULT_ENUMERATION_LIMIT;

/// A total map from ground-set elements {1..n} to representative variable
/// ids, one representative per indistinguishability class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseMap {
    targets: Vec<VarId>,
}

impl CollapseMap {
    /// Build from the image of each element 1..n in order.
    pub fn new(targets: Vec<VarId>) -> Self {
        assert!(targets.iter().all(|&t| t >= 1), "variable ids are positive");
        Self { targets }
    }

    /// The identity collapse: nothing is identified.
    pub fn identity(n: usize) -> Self {
        Self::new((1..=n as VarId).collect())
    }

    /// The canonical collapse onto `tau`: the first k_1 elements map to
    /// tau's first member, the next k_2 to its second, and so on.
    pub fn induced_by(tau: &Multiset) -> Self {
        let mut targets = Vec::with_capacity(tau.size() as usize);
        for (var, count) in tau.iter() {
            targets.extend(std::iter::repeat(var).take(count as usize));
        }
        Self { targets }
    }

    /// Ground-set size n.
    pub fn ground_size(&self) -> usize {
        self.targets.len()
    }

    /// Image of element `i` (1-based).
    pub fn target(&self, i: u32) -> VarId {
        self.targets[i as usize - 1]
    }

    /// Image of the whole ground set {1..n}: the multiset tau.
    pub fn collapsed_ground_set(&self) -> Multiset {
        Multiset::from_elements(self.targets.iter().copied())
    }

    /// Collapse a multiset whose members are ground-set elements.
    pub fn apply_multiset(&self, ms: &Multiset) -> Multiset {
        Multiset::from_entries(ms.iter().map(|(v, c)| (self.target(v), c)))
    }

    /// Collapse every part of a multiset partition and re-collect.
    pub fn apply_partition(&self, mp: &MultisetPartition) -> MultisetPartition {
        MultisetPartition::from_counted_parts(
            mp.parts()
                .iter()
                .map(|(part, m)| (self.apply_multiset(part), *m)),
        )
        .expect("collapsed parts are non-empty")
    }
}

/// Collapse a set partition: each block maps to the multiset of its images,
/// and blocks with equal images merge into part repeat counts.
pub fn collapse(pi: &SetPartition, cmap: &CollapseMap) -> MultisetPartition {
    MultisetPartition::from_parts(
        pi.blocks()
            .iter()
            .map(|block| Multiset::from_elements(block.iter().map(|&e| cmap.target(e)))),
    )
    .expect("set partition blocks are non-empty")
}

fn check_is_partition_of(tau: &Multiset, mp: &MultisetPartition) -> Result<()> {
    let total = mp.total();
    if &total != tau {
        return Err(Error::InvalidPartition {
            expected: tau.clone(),
            found: total,
        });
    }
    Ok(())
}

/// The number of set partitions of {1..|tau|} that collapse to `mp` when the
/// ground set collapses to `tau`.
///
/// With tau = {1,...,1, ..., n,...,n} (multiplicities k_1..k_n) and
/// mp = m_1*tau_1 + m_2*tau_2 + ... (distinct parts tau_i repeated m_i
/// times), the count is
///
/// ```text
///            k_1! ... k_n!
/// ---------------------------------------
/// tau_1!!^m_1 tau_2!!^m_2 ... m_1! m_2! ...
/// ```
///
/// The division is always exact; this is checked. Unlike the brute-force
/// counter below, the formula has no size cap.
pub fn multiplicity(tau: &Multiset, mp: &MultisetPartition) -> Result<BigUint> {
    check_is_partition_of(tau, mp)?;
    let mut numerator = BigUint::one();
    for (_, k) in tau.iter() {
        numerator *= factorial(u64::from(k));
    }
    let mut denominator = BigUint::one();
    for (part, m) in mp.parts() {
        denominator *= multiset_factorial(part).pow(*m);
        denominator *= factorial(u64::from(*m));
    }
    let (quotient, remainder) = numerator.div_rem(&denominator);
    assert!(
        remainder == BigUint::ZERO,
        "collapsing-partition count must divide exactly"
    );
    Ok(quotient)
}

/// Count the same quantity by direct enumeration: walk every partition of
/// {1..|tau|}, collapse it under the canonical map induced by tau, and count
/// the ones equal to `mp`. Independent of the closed formula; capped by the
/// default enumeration limit.
pub fn multiplicity_bruteforce(tau: &Multiset, mp: &MultisetPartition) -> Result<BigUint> {
    multiplicity_bruteforce_with_limit(tau, mp, DEFAULT_ENUMERATION_LIMIT)
}

/// As [`multiplicity_bruteforce`] with an explicit enumeration limit.
pub fn multiplicity_bruteforce_with_limit(
    tau: &Multiset,
    mp: &MultisetPartition,
    limit: usize,
) -> Result<BigUint> {
    check_is_partition_of(tau, mp)?;
    let n = tau.size() as usize;
    let cmap = CollapseMap::induced_by(tau);
    let mut count: u64 = 0;
    for pi in set_partitions_with_limit(n, limit)? {
        if collapse(&pi, &cmap) == *mp {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset_partition::multiset_partitions;
    use crate::set_partition::bell;

    fn ms(entries: &[(VarId, u32)]) -> Multiset {
        Multiset::from_entries(entries.iter().copied())
    }

    fn mp(parts: &[&[(VarId, u32)]]) -> MultisetPartition {
        MultisetPartition::from_parts(parts.iter().map(|p| ms(p))).unwrap()
    }

    #[test]
    fn collapse_merges_indistinguishable_blocks() {
        // cmap 1->1, 2->2, 3->2; both {2}+{1,3} and {3}+{1,2} land on {2}+{1,2}
        let cmap = CollapseMap::new(vec![1, 2, 2]);
        let expected = mp(&[&[(2, 1)], &[(1, 1), (2, 1)]]);
        let a = SetPartition::from_blocks(3, vec![vec![2], vec![1, 3]]).unwrap();
        let b = SetPartition::from_blocks(3, vec![vec![3], vec![1, 2]]).unwrap();
        assert_eq!(collapse(&a, &cmap), expected);
        assert_eq!(collapse(&b, &cmap), expected);
    }

    #[test]
    fn identity_collapse_preserves_partitions() {
        let cmap = CollapseMap::identity(4);
        for pi in crate::set_partition::set_partitions(4).unwrap() {
            let collapsed = collapse(&pi, &cmap);
            assert_eq!(collapsed.part_count() as usize, pi.block_count());
            assert!(collapsed.parts().iter().all(|(_, m)| *m == 1));
            assert_eq!(collapsed.total(), Multiset::from_elements(1..=4));
        }
    }

    #[test]
    fn induced_map_covers_tau() {
        let tau = ms(&[(1, 4), (5, 2), (7, 1), (8, 1)]);
        let cmap = CollapseMap::induced_by(&tau);
        assert_eq!(cmap.ground_size(), 8);
        assert_eq!(cmap.collapsed_ground_set(), tau);
        assert_eq!(cmap.target(1), 1);
        assert_eq!(cmap.target(4), 1);
        assert_eq!(cmap.target(5), 5);
        assert_eq!(cmap.target(7), 7);
    }

    #[test]
    fn worked_answer_six() {
        // tau = {1,1,1,1,5,5,7,8}, mp = {1,1,5}+{1,1,5}+{7,8}: 6 partitions
        let tau = ms(&[(1, 4), (5, 2), (7, 1), (8, 1)]);
        let part = ms(&[(1, 2), (5, 1)]);
        let mp = MultisetPartition::from_counted_parts(vec![
            (part, 2),
            (ms(&[(7, 1), (8, 1)]), 1),
        ])
        .unwrap();
        assert_eq!(multiplicity(&tau, &mp).unwrap(), BigUint::from(6u32));
        assert_eq!(
            multiplicity_bruteforce(&tau, &mp).unwrap(),
            BigUint::from(6u32)
        );
    }

    #[test]
    fn worked_answer_280() {
        // 8 fully collapsed members, integer partition 3+3+2: 280 partitions
        let tau = ms(&[(1, 8)]);
        let mp = MultisetPartition::from_counted_parts(vec![
            (ms(&[(1, 3)]), 2),
            (ms(&[(1, 2)]), 1),
        ])
        .unwrap();
        assert_eq!(multiplicity(&tau, &mp).unwrap(), BigUint::from(280u32));
        assert_eq!(
            multiplicity_bruteforce(&tau, &mp).unwrap(),
            BigUint::from(280u32)
        );
    }

    #[test]
    fn example_two_multiplicity() {
        // tau = {1,2,2}, mp = {2}+{1,2}: multiplicity 2
        let tau = ms(&[(1, 1), (2, 2)]);
        let target = mp(&[&[(2, 1)], &[(1, 1), (2, 1)]]);
        assert_eq!(multiplicity(&tau, &target).unwrap(), BigUint::from(2u32));
        assert_eq!(
            multiplicity_bruteforce(&tau, &target).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn distinct_variables_give_multiplicity_one() {
        let tau = Multiset::from_elements([1, 2, 3]);
        for p in multiset_partitions(&tau).unwrap() {
            assert_eq!(multiplicity(&tau, &p).unwrap(), BigUint::one());
            assert_eq!(multiplicity_bruteforce(&tau, &p).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn all_singletons_of_collapsed_tau() {
        // {x,x,x} into singletons: 3!/(1 * 3!) = 1
        let tau = ms(&[(1, 3)]);
        let target =
            MultisetPartition::from_counted_parts(vec![(ms(&[(1, 1)]), 3)]).unwrap();
        assert_eq!(multiplicity(&tau, &target).unwrap(), BigUint::one());
    }

    #[test]
    fn invalid_partition_is_rejected() {
        let tau = ms(&[(1, 2)]);
        let wrong = mp(&[&[(1, 1)]]);
        let err = multiplicity(&tau, &wrong).unwrap_err();
        assert!(matches!(err, Error::InvalidPartition { .. }));
        assert!(multiplicity_bruteforce(&tau, &wrong).is_err());
    }

    #[test]
    fn multiplicities_sum_to_bell() {
        // conservation for a mixed signature
        let tau = ms(&[(1, 2), (2, 1), (3, 1)]);
        let mut total = BigUint::ZERO;
        for p in multiset_partitions(&tau).unwrap() {
            total += multiplicity(&tau, &p).unwrap();
        }
        assert_eq!(total, bell(4));
    }

    #[test]
    fn collapse_is_surjective_onto_multiset_partitions() {
        let tau = ms(&[(1, 2), (2, 2)]);
        for p in multiset_partitions(&tau).unwrap() {
            let hits = multiplicity_bruteforce(&tau, &p).unwrap();
            assert!(hits >= BigUint::one(), "partition {p} unreachable");
        }
    }
}
