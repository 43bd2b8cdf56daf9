mod common;

use bfree_core::arith::{crt, IntSet};
use bfree_core::bset::BitWindow;
use bfree_core::complexity::rho_of_bits;
use bfree_core::holes::{minimal_period, GcdClassSet};
use bfree_core::oracle::{naive_min_period, naive_rho};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn singleton_formula_matches_search((a, c) in common::singleton_input()) {
        prop_assert_eq!(common::singleton_agrees(a, &c), Ok(()));
    }

    #[test]
    fn primitivize_preserves_multiples(a in common::set_input()) {
        prop_assert_eq!(common::primitivize_agrees(&a, 1500), Ok(()));
    }

    #[test]
    fn progression_gcd_identity((r, l, s, m) in common::progression_input()) {
        prop_assert_eq!(common::progression_agrees(r, l, s, m), Ok(()));
    }

    #[test]
    fn crt_solves_every_congruence(rs in prop::collection::vec((-1000i64..1000, 1u64..60), 1..4)) {
        let system: Vec<(BigInt, BigUint)> = rs.iter().map(|&(r, m)| (BigInt::from(r), BigUint::from(m))).collect();
        let brute_l = rs.iter().fold(1u64, |l, &(_, m)| l.lcm(&m));
        let brute = (0..brute_l).find(|&x| rs.iter().all(|&(r, m)| (x as i64 - r).rem_euclid(m as i64) == 0));
        match crt(&system) {
            Some((x, l)) => {
                prop_assert_eq!(l, BigUint::from(brute_l));
                prop_assert_eq!(Some(x), brute.map(BigUint::from));
            }
            None => prop_assert_eq!(brute, None),
        }
    }

    #[test]
    fn gcd_class_period_matches_residue_period(p in 1u64..400, seed in any::<u64>()) {
        let set = GcdClassSet::from_predicate(&BigUint::from(p), |g| ((g.clone() * 2654435761u64) ^ BigUint::from(seed)).bit(0));
        let res = set.to_residue_set(10_000).unwrap();
        prop_assert_eq!(set.minimal_period().tau, BigUint::from(naive_min_period(&res)));
        prop_assert_eq!(minimal_period(&res).tau, BigUint::from(naive_min_period(&res)));
        prop_assert_eq!(set.count(), BigUint::from(res.len()));
    }

    #[test]
    fn rho_matches_substring_count(bits in prop::collection::vec(any::<bool>(), 1..300), n in 1usize..70) {
        let w = BitWindow::new(0, bits.clone());
        prop_assert_eq!(rho_of_bits(&bits, n), naive_rho(&w, n));
    }

    #[test]
    fn intset_is_sorted_and_deduplicated(v in prop::collection::vec(1u64..1000, 0..20)) {
        let s = IntSet::from_u64s(&v).unwrap();
        let mut want = v.clone();
        want.sort_unstable();
        want.dedup();
        prop_assert_eq!(s.to_u64s().unwrap(), want);
    }
}
