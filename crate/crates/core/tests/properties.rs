//! Property tests for the partition and expansion invariants.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use faadibruno::collapse::{multiplicity, multiplicity_bruteforce, CollapseMap};
use faadibruno::cumulants::{cumulants_from_moments, moment_from_cumulants, CumulantAssignment, MomentAssignment};
use faadibruno::expansion::{differentiate_expansion, expand_composition, CompositionExpansion};
use faadibruno::json::ExpansionDoc;
use faadibruno::multiset::{Multiset, VarId};
use faadibruno::multiset_partition::multiset_partitions;
use faadibruno::poly::{Monomial, Polynomial};
use faadibruno::product::expand_product;
use faadibruno::set_partition::bell;

/// Random signature with bounded size and up to four distinct variables.
fn tau_strategy(max_size: u64) -> impl Strategy<Value = Multiset> {
    prop::collection::vec(1u32..=4, 0..=4).prop_map(move |multiplicities| {
        let mut tau = Multiset::new();
        let mut total = 0u64;
        for (i, k) in multiplicities.into_iter().enumerate() {
            if total + u64::from(k) > max_size {
                break;
            }
            tau.insert(i as VarId + 1, k);
            total += u64::from(k);
        }
        tau
    })
}

/// All integer partitions of n as descending part lists; the independent
/// reference for the single-member bijection.
fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The closed formula agrees with brute-force collapse counting on every
    /// partition of every signature.
    #[test]
    fn formula_matches_bruteforce(tau in tau_strategy(6)) {
        for mp in multiset_partitions(&tau).unwrap() {
            let formula = multiplicity(&tau, &mp).unwrap();
            let brute = multiplicity_bruteforce(&tau, &mp).unwrap();
            prop_assert_eq!(formula, brute);
        }
    }

    /// Multiplicities of a signature sum to the Bell number of its size,
    /// and every multiplicity is at least 1 (collapse is onto).
    #[test]
    fn multiplicities_conserve_bell(tau in tau_strategy(7)) {
        let mut sum = BigUint::from(0u32);
        for mp in multiset_partitions(&tau).unwrap() {
            let m = multiplicity(&tau, &mp).unwrap();
            prop_assert!(m >= BigUint::one());
            sum += m;
        }
        prop_assert_eq!(sum, bell(tau.size() as usize));
    }

    /// Iterated single-variable differentiation reproduces the direct
    /// expansion for any ordering of the differentiation steps.
    #[test]
    fn differentiation_order_is_immaterial(
        tau in tau_strategy(6),
        seed in any::<u64>(),
    ) {
        let mut order: Vec<VarId> = tau.elements().collect();
        // deterministic shuffle from the seed
        let mut state = seed | 1;
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        let mut e = CompositionExpansion::identity();
        for var in order {
            e = differentiate_expansion(&e, var);
        }
        prop_assert_eq!(e, expand_composition(&tau).unwrap());
    }

    /// Collapsing the term shapes of a distinct-variable expansion and
    /// re-collecting equals expanding the collapsed signature directly.
    #[test]
    fn collapse_commutes_with_expansion(
        n in 1usize..=6,
        targets in prop::collection::vec(1u32..=3, 6),
    ) {
        let distinct = Multiset::from_elements(1..=n as VarId);
        let cmap = CollapseMap::new(targets[..n].to_vec());
        let collapsed_expansion = expand_composition(&distinct).unwrap().collapse(&cmap);
        let collapsed_signature = cmap.apply_multiset(&distinct);
        prop_assert_eq!(
            collapsed_expansion,
            expand_composition(&collapsed_signature).unwrap()
        );
    }

    /// Product expansions: coefficient sum 2^|tau|, term count prod(k_i + 1),
    /// and swapping the two sides is a coefficient-preserving involution.
    #[test]
    fn product_expansion_invariants(tau in tau_strategy(8)) {
        let e = expand_product(&tau);
        let expected_terms: u64 = tau.iter().map(|(_, k)| u64::from(k) + 1).product();
        prop_assert_eq!(e.terms().len() as u64, expected_terms);
        prop_assert_eq!(
            e.coefficient_sum(),
            BigUint::from(2u32).pow(tau.size() as u32)
        );
        for t in e.terms() {
            prop_assert_eq!(Some(&t.coefficient), e.coefficient_of(&t.v_part));
        }
    }

    /// A single repeated member: partitions are in size-preserving bijection
    /// with the integer partitions of the size.
    #[test]
    fn single_member_matches_integer_partitions(n in 1u32..=9) {
        let tau = Multiset::from_entries([(1, n)]);
        let got: Vec<Vec<u32>> = multiset_partitions(&tau)
            .unwrap()
            .map(|mp| {
                mp.iter_with_repetition()
                    .map(|part| part.size() as u32)
                    .collect()
            })
            .collect();
        let mut expected = integer_partitions(n);
        // both are complete and duplicate-free, so sorted forms must agree
        let mut got_sorted = got.clone();
        got_sorted.sort();
        expected.sort();
        prop_assert_eq!(got_sorted, expected);
    }

    /// JSON documents round-trip expansions losslessly.
    #[test]
    fn expansion_json_round_trips(tau in tau_strategy(6)) {
        let e = expand_composition(&tau).unwrap();
        let doc = ExpansionDoc::from(&e);
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: ExpansionDoc = serde_json::from_str(&json).unwrap();
        let back = CompositionExpansion::try_from(&parsed).unwrap();
        prop_assert_eq!(back, e);
    }

    /// Mixed partials of polynomials commute, and differentiation is linear
    /// over addition.
    #[test]
    fn polynomial_partials_commute(p in poly_strategy(), q in poly_strategy()) {
        prop_assert_eq!(p.partial(1).partial(2), p.partial(2).partial(1));
        let sum = &p + &q;
        prop_assert_eq!(sum.partial(1), &p.partial(1) + &q.partial(1));
    }

    /// Substituting then evaluating agrees with evaluating the substituted
    /// variable first.
    #[test]
    fn substitution_evaluation_compatibility(
        f in poly_strategy(),
        g in poly_strategy(),
        x1 in -3i64..=3,
        x2 in -3i64..=3,
    ) {
        let mut point = std::collections::BTreeMap::new();
        point.insert(1u32, BigRational::from_integer(BigInt::from(x1)));
        point.insert(2u32, BigRational::from_integer(BigInt::from(x2)));
        let g_value = g.evaluate(&point).unwrap();
        let composed = f.substitute(1, &g);
        let direct = composed.evaluate(&point).unwrap();
        let mut shifted = point.clone();
        shifted.insert(1u32, g_value);
        prop_assert_eq!(direct, f.evaluate(&shifted).unwrap());
    }

    /// Moments computed from random cumulants invert back exactly.
    #[test]
    fn moment_cumulant_round_trip(
        tau in tau_strategy(5),
        raw_values in prop::collection::vec((-6i64..=6, 1i64..=4), 64),
    ) {
        prop_assume!(!tau.is_empty());
        let mut kappa = CumulantAssignment::new();
        let mut index = 0;
        for subset in tau.sub_multisets() {
            if subset.is_empty() {
                continue;
            }
            let (n, d) = raw_values[index % raw_values.len()];
            index += 1;
            let numer = if n == 0 { 1 } else { n };
            kappa.set(subset, BigRational::new(BigInt::from(numer), BigInt::from(d)));
        }
        let mut mu = MomentAssignment::new();
        for subset in tau.sub_multisets() {
            if subset.is_empty() {
                continue;
            }
            let m = moment_from_cumulants(&subset, &kappa).unwrap();
            mu.set(subset, m);
        }
        for subset in tau.sub_multisets() {
            if subset.is_empty() {
                continue;
            }
            let back = cumulants_from_moments(&subset, &mu).unwrap();
            prop_assert_eq!(Some(&back), kappa.get(&subset));
        }
    }
}

/// Random sparse polynomial in x1, x2 with small rational coefficients.
fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    let term = (0u32..=2, 0u32..=2, -3i64..=3, 1i64..=2);
    prop::collection::vec(term, 0..=4).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (e1, e2, numer, denom) in terms {
            p.add_term(
                Monomial::from_powers([(1, e1), (2, e2)]),
                BigRational::new(BigInt::from(numer), BigInt::from(denom)),
            );
        }
        p
    })
}
