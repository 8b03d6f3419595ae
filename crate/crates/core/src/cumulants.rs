//! The moment/cumulant partition calculus.
//!
//! The n-th raw moment E(X^n) is the sum over set partitions of products of
//! cumulants, one factor kappa_|B| per block; the joint version sums over
//! partitions of the index set with joint-cumulant factors. Identifying
//! random variables collapses both identities the same way derivative
//! expansions collapse: the sum runs over multiset partitions of the index
//! multiset and every term is weighted by its collapsing-partition
//! multiplicity. Everything here is exact rational identity pushing; no
//! distributions are modelled.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::collapse::multiplicity;
use crate::error::{Error, Result};
use crate::multiset::{Multiset, VarId};
use crate::multiset_partition::multiset_partitions;

/// Joint cumulant values keyed by index multisets: the key {i} with
/// multiplicity m contributes kappa applied to m copies of X_i. The
/// univariate kappa_n(X) is the key with a single member of multiplicity n.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CumulantAssignment {
    values: BTreeMap<Multiset, BigRational>,
}

/// Raw moment values E(prod X_i) keyed the same way.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MomentAssignment {
    values: BTreeMap<Multiset, BigRational>,
}

macro_rules! assignment_impl {
    ($name:ident) => {
        impl $name {
            pub fn new() -> Self {
                Self::default()
            }

            /// Set the value for an index multiset.
            pub fn set(&mut self, key: Multiset, value: BigRational) {
                assert!(!key.is_empty(), "index multisets are non-empty");
                self.values.insert(key, value);
            }

            /// Set the univariate value of order `n` for variable `id`.
            pub fn set_univariate(&mut self, id: VarId, n: u32, value: BigRational) {
                self.set(Multiset::from_entries([(id, n)]), value);
            }

            pub fn get(&self, key: &Multiset) -> Option<&BigRational> {
                self.values.get(key)
            }

            pub fn keys(&self) -> impl Iterator<Item = &Multiset> + '_ {
                self.values.keys()
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }
        }
    };
}

assignment_impl!(CumulantAssignment);
assignment_impl!(MomentAssignment);

/// The raw moment of `target` from its cumulants:
///
/// E = sum over multiset partitions mp of target of
///     multiplicity(target, mp) * prod over parts kappa(part)^m.
///
/// For a target with all members distinct every multiplicity is 1 (the joint
/// identity); for n copies of one member this is the univariate identity
/// with the classical coefficients. The empty target yields 1.
pub fn moment_from_cumulants(target: &Multiset, kappa: &CumulantAssignment) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for mp in multiset_partitions(target)? {
        let weight = multiplicity(target, &mp)?;
        let mut term = BigRational::from_integer(BigInt::from(weight));
        for (part, m) in mp.parts() {
            let value = kappa
                .get(part)
                .ok_or_else(|| Error::MissingCumulant(part.clone()))?;
            term *= value.pow(*m as i32);
        }
        total += term;
    }
    Ok(total)
}

/// The joint cumulant of `target` from raw moments, by inverting the
/// triangular system: kappa(target) is E(target) minus the multiplicity-
/// weighted cumulant products of every non-trivial partition, with the
/// smaller cumulants resolved recursively (memoized per call).
pub fn cumulants_from_moments(target: &Multiset, mu: &MomentAssignment) -> Result<BigRational> {
    let mut memo: BTreeMap<Multiset, BigRational> = BTreeMap::new();
    kappa_of(target, mu, &mut memo)
}

fn kappa_of(
    target: &Multiset,
    mu: &MomentAssignment,
    memo: &mut BTreeMap<Multiset, BigRational>,
) -> Result<BigRational> {
    if let Some(v) = memo.get(target) {
        return Ok(v.clone());
    }
    let moment = mu
        .get(target)
        .ok_or_else(|| Error::MissingMoment(target.clone()))?;
    let mut rest = BigRational::zero();
    for mp in multiset_partitions(target)? {
        if mp.is_trivial() {
            // the single-part partition {target} carries kappa(target) itself
            continue;
        }
        let weight = multiplicity(target, &mp)?;
        let mut term = BigRational::from_integer(BigInt::from(weight));
        for (part, m) in mp.parts() {
            // every part of a non-trivial partition is strictly smaller
            let value = kappa_of(part, mu, memo)?;
            term *= value.pow(*m as i32);
        }
        rest += term;
    }
    let result = moment - rest;
    memo.insert(target.clone(), result.clone());
    Ok(result)
}

/// Report of the two-path identification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseIdentityReport {
    pub n: u32,
    /// E(X_1...X_n) over n distinct indices whose joint cumulants are read
    /// off the collapsed assignment (kappa of any j-subset = kappa_j).
    pub distinct_path: BigRational,
    /// E(X^n) computed directly on the collapsed index multiset.
    pub collapsed_path: BigRational,
    pub equal: bool,
}

/// Check that identifying all n random variables commutes with the moment
/// identity: evaluating the joint identity over n distinct indices, with
/// every joint cumulant of a j-subset set to kappa_j(X), equals evaluating
/// the collapsed identity on n copies of X directly.
///
/// `kappa` must supply the univariate values kappa_1..kappa_n for variable
/// `id`. n = 0 is trivially equal (both paths give the empty product 1).
pub fn collapse_cumulant_identity_check(
    n: u32,
    kappa: &CumulantAssignment,
    id: VarId,
) -> Result<CollapseIdentityReport> {
    // collapsed path: n copies of one variable
    let collapsed_target = Multiset::from_entries([(id, n)]);
    let collapsed_path = moment_from_cumulants(&collapsed_target, kappa)?;

    // distinct path: fresh indices 1..n, joint cumulants from the collapsed
    // values (any j of the copies have joint cumulant kappa_j)
    let distinct_target = Multiset::from_elements(1..=n);
    let mut joint = CumulantAssignment::new();
    for subset in distinct_target.sub_multisets() {
        if subset.is_empty() {
            continue;
        }
        let j = subset.size() as u32;
        let value = kappa
            .get(&Multiset::from_entries([(id, j)]))
            .ok_or_else(|| Error::MissingCumulant(Multiset::from_entries([(id, j)])))?;
        joint.set(subset, value.clone());
    }
    let distinct_path = moment_from_cumulants(&distinct_target, &joint)?;

    let equal = distinct_path == collapsed_path;
    Ok(CollapseIdentityReport {
        n,
        distinct_path,
        collapsed_path,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_partition::bell;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn univariate(values: &[(u32, (i64, i64))]) -> CumulantAssignment {
        let mut kappa = CumulantAssignment::new();
        for &(order, (n, d)) in values {
            kappa.set_univariate(1, order, rat(n, d));
        }
        kappa
    }

    #[test]
    fn third_moment_formula() {
        // E(X^3) = kappa_3 + 3 kappa_1 kappa_2 + kappa_1^3, probed at
        // rational points that distinguish the coefficients
        for probe in [
            [(2i64, 1i64), (3, 1), (5, 1)],
            [(1, 2), (-2, 3), (7, 5)],
            [(-1, 1), (1, 7), (2, 9)],
        ] {
            let kappa = univariate(&[(1, probe[0]), (2, probe[1]), (3, probe[2])]);
            let k1 = rat(probe[0].0, probe[0].1);
            let k2 = rat(probe[1].0, probe[1].1);
            let k3 = rat(probe[2].0, probe[2].1);
            let target = Multiset::from_entries([(1, 3)]);
            let got = moment_from_cumulants(&target, &kappa).unwrap();
            let expected = &k3 + rat(3, 1) * &k1 * &k2 + k1.pow(3);
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn unit_cumulants_give_bell_numbers() {
        // with every kappa = 1 each partition contributes 1
        let mut kappa = CumulantAssignment::new();
        for n in 1..=8 {
            kappa.set_univariate(1, n, BigRational::one());
        }
        for n in 1..=8u32 {
            let target = Multiset::from_entries([(1, n)]);
            let moment = moment_from_cumulants(&target, &kappa).unwrap();
            let bell_n = BigRational::from_integer(BigInt::from(bell(n as usize)));
            assert_eq!(moment, bell_n);
        }
    }

    #[test]
    fn covariance_decomposition_of_joint_moment() {
        // E(X1 X2) = kappa(X1,X2) + kappa(X1) kappa(X2)
        let mut kappa = CumulantAssignment::new();
        kappa.set(Multiset::singleton(1), rat(2, 3));
        kappa.set(Multiset::singleton(2), rat(-1, 2));
        kappa.set(Multiset::from_elements([1, 2]), rat(5, 7));
        let target = Multiset::from_elements([1, 2]);
        let got = moment_from_cumulants(&target, &kappa).unwrap();
        assert_eq!(got, rat(5, 7) + rat(2, 3) * rat(-1, 2));
    }

    #[test]
    fn missing_cumulant_names_the_key() {
        let kappa = univariate(&[(1, (1, 1))]);
        let target = Multiset::from_entries([(1, 2)]);
        let err = moment_from_cumulants(&target, &kappa).unwrap_err();
        assert_eq!(
            err,
            Error::MissingCumulant(Multiset::from_entries([(1, 2)]))
        );
    }

    #[test]
    fn first_cumulant_is_the_expected_value() {
        let mut mu = MomentAssignment::new();
        mu.set_univariate(1, 1, rat(9, 4));
        let target = Multiset::singleton(1);
        assert_eq!(cumulants_from_moments(&target, &mu).unwrap(), rat(9, 4));
    }

    #[test]
    fn centered_variance() {
        // E(X) = 0, E(X^2) = v: kappa_2 = v
        let mut mu = MomentAssignment::new();
        mu.set_univariate(1, 1, rat(0, 1));
        mu.set_univariate(1, 2, rat(11, 3));
        let target = Multiset::from_entries([(1, 2)]);
        assert_eq!(cumulants_from_moments(&target, &mu).unwrap(), rat(11, 3));
    }

    #[test]
    fn moment_cumulant_round_trip() {
        // univariate, through order 5, with awkward rationals
        let kappa = univariate(&[
            (1, (1, 2)),
            (2, (-3, 4)),
            (3, (5, 1)),
            (4, (-2, 7)),
            (5, (9, 5)),
        ]);
        let mut mu = MomentAssignment::new();
        for n in 1..=5u32 {
            let target = Multiset::from_entries([(1, n)]);
            let m = moment_from_cumulants(&target, &kappa).unwrap();
            mu.set(target, m);
        }
        for n in 1..=5u32 {
            let target = Multiset::from_entries([(1, n)]);
            let back = cumulants_from_moments(&target, &mu).unwrap();
            assert_eq!(Some(&back), kappa.get(&target), "order {n}");
        }
    }

    #[test]
    fn joint_round_trip_with_mixed_multiplicities() {
        // target {1,1,2}: all sub-multisets carry distinct cumulant values
        let mut kappa = CumulantAssignment::new();
        let target = Multiset::from_entries([(1, 2), (2, 1)]);
        let mut next = 2i64;
        for subset in target.sub_multisets() {
            if subset.is_empty() {
                continue;
            }
            kappa.set(subset, rat(next, next + 3));
            next += 1;
        }
        let mut mu = MomentAssignment::new();
        for subset in target.sub_multisets() {
            if subset.is_empty() {
                continue;
            }
            let m = moment_from_cumulants(&subset, &kappa).unwrap();
            mu.set(subset, m);
        }
        for subset in target.sub_multisets() {
            if subset.is_empty() {
                continue;
            }
            let back = cumulants_from_moments(&subset, &mu).unwrap();
            assert_eq!(Some(&back), kappa.get(&subset));
        }
    }

    #[test]
    fn collapse_identity_small_orders() {
        let kappa = univariate(&[(1, (3, 2)), (2, (-1, 3)), (3, (4, 7))]);
        for n in 1..=3 {
            let report = collapse_cumulant_identity_check(n, &kappa, 1).unwrap();
            assert!(report.equal, "n = {n}");
        }
        // n = 2 explicitly: both paths are kappa_2 + kappa_1^2
        let report = collapse_cumulant_identity_check(2, &kappa, 1).unwrap();
        let expected = rat(-1, 3) + rat(3, 2).pow(2);
        assert_eq!(report.collapsed_path, expected);
        assert_eq!(report.distinct_path, expected);
    }

    #[test]
    fn scaling_cumulants_by_part_size_scales_moment_homogeneously() {
        // replacing kappa_s by c^s kappa_s multiplies the degree-n moment by c^n
        let kappa = univariate(&[(1, (1, 3)), (2, (2, 1)), (3, (-1, 2)), (4, (5, 4))]);
        let c = rat(3, 2);
        let mut scaled = CumulantAssignment::new();
        for s in 1..=4u32 {
            let key = Multiset::from_entries([(1, s)]);
            scaled.set(key.clone(), c.pow(s as i32) * kappa.get(&key).unwrap());
        }
        for n in 1..=4u32 {
            let target = Multiset::from_entries([(1, n)]);
            let base = moment_from_cumulants(&target, &kappa).unwrap();
            let scaled_moment = moment_from_cumulants(&target, &scaled).unwrap();
            assert_eq!(scaled_moment, c.pow(n as i32) * base, "degree {n}");
        }
    }

    #[test]
    fn multiplicity_weights_appear_in_collapsed_sums() {
        // E(X^4) includes 3 kappa_2^2 from the partition 2+2 of 4
        let kappa = univariate(&[(1, (0, 1)), (2, (1, 1)), (3, (0, 1)), (4, (0, 1))]);
        let target = Multiset::from_entries([(1, 4)]);
        // only partitions into blocks of size 2 survive: 2+2 with weight 3
        let got = moment_from_cumulants(&target, &kappa).unwrap();
        assert_eq!(got, BigRational::from_integer(BigInt::from(3)));
    }
}
