use bfree_core::bset::{BSetSpec, Family};
use bfree_core::filtration::{default_filtration, FiltrationOptions};
use bfree_core::holes::{essential_holes_iterative, holes_level};
use bfree_core::oracle::{naive_essential_holes, naive_holes, naive_min_period};
use bfree_core::specfile::{SpecFile, SpecKind, BUNDLED};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Main path vs brute force for holes, their periods and essential holes.
fn agree(spec: &BSetSpec, n_max: usize) {
    let levels = default_filtration(spec, n_max, &FiltrationOptions::default()).unwrap();
    let mut naive = Vec::new();
    for n in 1..=n_max {
        let Ok(o) = naive_holes(spec, n) else { break };
        let h = holes_level(&levels[n - 1]).unwrap();
        assert_eq!(h.to_residue_set(5_000_000).unwrap(), o, "holes at n={n} for {spec:?}");
        assert_eq!(h.minimal_period().tau, BigUint::from(naive_min_period(&o)), "τ at n={n}");
        naive.push(o);
    }
    for n in 1..naive.len() {
        // a window longer than the range disables early stopping
        let through = essential_holes_iterative(&levels, n, naive.len(), usize::MAX).unwrap().set;
        let o = naive_essential_holes(&naive, n, naive.len()).unwrap();
        assert_eq!(through.to_residue_set(5_000_000).unwrap(), o, "essential holes at n={n}");
    }
}

#[test]
fn bundled_specs() {
    for (name, _) in BUNDLED {
        if let SpecKind::BFree(spec) = SpecFile::bundled(name).unwrap().kind {
            if spec.is_bfree_family() {
                agree(&spec, 3);
            }
        }
    }
}

#[test]
fn explicit_specs_match_full_scan() {
    for elements in [vec![6, 10, 15], vec![4, 6, 9], vec![12, 18, 20, 45]] {
        let len = elements.len();
        let spec = BSetSpec::new(Family::Explicit { elements }, len, 100).unwrap();
        for n in 1..=len {
            let levels = default_filtration(&spec, n, &FiltrationOptions::default()).unwrap();
            let h = holes_level(&levels[n - 1]).unwrap();
            assert_eq!(h.to_residue_set(1_000_000).unwrap(), naive_holes(&spec, n).unwrap());
        }
    }
}

fn distinct_primes() -> impl Strategy<Value = Vec<u64>> {
    Just(vec![3u64, 5, 7, 11, 13, 17, 19, 23]).prop_shuffle().prop_map(|mut v| {
        v.truncate(5);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_b1(c in distinct_primes()) {
        agree(&BSetSpec::new(Family::B1 { c }, 5, 100).unwrap(), 2);
    }

    #[test]
    fn random_b1n(c in distinct_primes(), big_n in 1u64..3) {
        agree(&BSetSpec::new(Family::B1N { c, n: Some(big_n) }, 5, 100).unwrap(), 2);
    }
}
