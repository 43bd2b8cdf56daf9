//! Generators and brute-force comparisons shared by the integration tests.

#![allow(dead_code)]

use bfree_core::arith::{self, primitivize, progression_intersect, IntSet};
use bfree_core::holes::{period_formula_singleton, sieve_multiples_difference, ResidueSet};
use bfree_core::oracle::naive_min_period;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

/// (a, C) with lcm(a, C) ≤ 10⁵.
pub fn singleton_input() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (1u64..=60, prop::collection::vec(2u64..=60, 1..5))
        .prop_filter("lcm ≤ 1e5", |(a, c)| c.iter().try_fold(*a, |l, &x| Some(l.lcm(&x)).filter(|&l| l <= 100_000)).is_some())
}

/// Formula vs direct search; an empty aℤ ∖ ℳ_C must be reported as an error.
pub fn singleton_agrees(a: u64, c: &[u64]) -> Result<(), String> {
    let l = c.iter().fold(a, |l, x| l.lcm(x));
    let set = sieve_multiples_difference(l, &[a], c);
    let c_set = IntSet::from_u64s(c).map_err(|e| e.to_string())?;
    match period_formula_singleton(&BigUint::from(a), &c_set) {
        Ok(t) if set.is_empty() => Err(format!("formula gave {t} for an empty set")),
        Ok(t) => {
            let direct = naive_min_period(&set);
            (t == BigUint::from(direct)).then_some(()).ok_or(format!("a={a} C={c:?}: formula {t}, direct {direct}"))
        }
        Err(_) if set.is_empty() => Ok(()),
        Err(e) => Err(format!("a={a} C={c:?}: {e}")),
    }
}

pub fn set_input() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=120, 1..7)
}

/// ℳ_A and ℳ_{A^prim} agree on [−W, W], and A^prim is primitive.
pub fn primitivize_agrees(a: &[u64], w: i64) -> Result<(), String> {
    let set = IntSet::from_u64s(a).map_err(|e| e.to_string())?;
    let prim = primitivize(&set);
    if let Some((x, y)) = arith::is_primitive_set(&prim) {
        return Err(format!("{x} | {y} after primitivizing {a:?}"));
    }
    let p = prim.to_u64s().expect("small");
    for k in -w..=w {
        let in_a = a.iter().any(|&x| k % x as i64 == 0);
        let in_p = p.iter().any(|&x| k % x as i64 == 0);
        if in_a != in_p {
            return Err(format!("{a:?} vs {p:?} differ at {k}"));
        }
    }
    Ok(())
}

pub fn progression_input() -> impl Strategy<Value = (i64, u64, i64, u64)> {
    (-500i64..500, 1u64..200, -500i64..500, 1u64..200)
}

/// The intersection, when nonempty, is x + lcm(l, m)ℤ with gcd(x, L) = lcm(gcd(r, l), gcd(s, m));
/// emptiness matches gcd(l, m) ∤ r − s; membership is replayed on one period.
pub fn progression_agrees(r: i64, l: u64, s: i64, m: u64) -> Result<(), String> {
    let got = progression_intersect(&BigInt::from(r), &BigUint::from(l), &BigInt::from(s), &BigUint::from(m));
    let solvable = (r - s).rem_euclid(l.gcd(&m) as i64) == 0;
    match got {
        None if !solvable => Ok(()),
        None => Err(format!("({r}, {l}, {s}, {m}) reported empty")),
        Some(_) if !solvable => Err(format!("({r}, {l}, {s}, {m}) reported nonempty")),
        Some(p) => {
            let big_l = l.lcm(&m);
            if p.modulus != BigUint::from(big_l) {
                return Err(format!("modulus {} ≠ {big_l}", p.modulus));
            }
            let x: u64 = p.x.try_into().map_err(|_| "x overflow".to_string())?;
            let members: Vec<u64> = (0..big_l).filter(|&k| (k as i64 - r).rem_euclid(l as i64) == 0 && (k as i64 - s).rem_euclid(m as i64) == 0).collect();
            if members != [x] {
                return Err(format!("members {members:?}, x = {x}"));
            }
            let g_r = (r.rem_euclid(l as i64) as u64).gcd(&l);
            let g_s = (s.rem_euclid(m as i64) as u64).gcd(&m);
            let want = g_r.lcm(&g_s);
            (p.g == BigUint::from(want) && x.gcd(&big_l) == want).then_some(()).ok_or(format!("g = {}, lcm(gcd(r,l), gcd(s,m)) = {want}", p.g))
        }
    }
}

pub fn residues(m: u64, r: &[u64]) -> ResidueSet {
    ResidueSet::new(m, r.iter().copied()).unwrap()
}
