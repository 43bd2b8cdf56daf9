//! Exact integer arithmetic: set transforms, progressions, CRT, densities.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite set of positive integers, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntSet(#[serde(with = "crate::numfmt::vec")] Vec<BigUint>);

impl IntSet {
    pub fn new<I: IntoIterator<Item = BigUint>>(items: I) -> Result<Self> {
        let set: BTreeSet<BigUint> = items.into_iter().collect();
        if set.contains(&BigUint::zero()) {
            return Err(Error::InvalidInput("sets of positive integers cannot contain 0".into()));
        }
        Ok(IntSet(set.into_iter().collect()))
    }

    pub fn empty() -> Self {
        IntSet(Vec::new())
    }

    pub fn from_u64s(items: &[u64]) -> Result<Self> {
        Self::new(items.iter().map(|&x| BigUint::from(x)))
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigUint> {
        self.0.iter()
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.iter().chain(other.0.iter()).cloned().collect::<BTreeSet<_>>().into_iter().collect())
    }

    pub fn lcm(&self) -> BigUint {
        lcm_all(self.0.iter())
    }

    /// True iff some element divides `k` (k = 0 is a multiple of everything).
    pub fn divides_some_multiple(&self, k: &BigUint) -> bool {
        self.0.iter().any(|a| (k % a).is_zero())
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|x| x.to_u64()).collect()
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = &'a BigUint;
    type IntoIter = std::slice::Iter<'a, BigUint>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigUint>>(items: I) -> BigUint {
    items.into_iter().fold(BigUint::one(), |acc, x| acc.lcm(x))
}

/// `{a / gcd(a, k) : a ∈ A}`.
pub fn div_transform(a: &IntSet, k: &BigUint) -> IntSet {
    IntSet(a.iter().map(|x| x / x.gcd(k)).collect::<BTreeSet<_>>().into_iter().collect())
}

/// Elements of `A` coprime to `k`.
pub fn perp_subset(a: &IntSet, k: &BigUint) -> IntSet {
    IntSet(a.iter().filter(|x| x.gcd(k).is_one()).cloned().collect())
}

/// Divisibility-minimal elements of `A`.
pub fn primitivize(a: &IntSet) -> IntSet {
    let mut out: Vec<BigUint> = Vec::new();
    // ascending order: a divisor always precedes its multiples
    for x in a.iter() {
        if !out.iter().any(|d| (x % d).is_zero()) {
            out.push(x.clone());
        }
    }
    IntSet(out)
}

pub fn is_primitive_set(a: &IntSet) -> Option<(BigUint, BigUint)> {
    let s = a.as_slice();
    for i in 0..s.len() {
        for j in (i + 1)..s.len() {
            if (&s[j] % &s[i]).is_zero() {
                return Some((s[i].clone(), s[j].clone()));
            }
        }
    }
    None
}

/// Nonnegative representative of `r mod m`.
pub fn mod_floor(r: &BigInt, m: &BigUint) -> BigUint {
    let m_i = BigInt::from_biguint(Sign::Plus, m.clone());
    r.mod_floor(&m_i).to_biguint().expect("mod_floor of positive modulus is nonnegative")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    #[serde(with = "crate::numfmt::num")]
    pub x: BigUint,
    #[serde(with = "crate::numfmt::num")]
    pub modulus: BigUint,
    #[serde(with = "crate::numfmt::num")]
    pub g: BigUint,
}

/// `(r + lℤ) ∩ (s + mℤ)` as `x + Lℤ`, with `g = gcd(x, L)`.
pub fn progression_intersect(r: &BigInt, l: &BigUint, s: &BigInt, m: &BigUint) -> Option<Progression> {
    let (x, big_l) = crt(&[(r.clone(), l.clone()), (s.clone(), m.clone())])?;
    let g = x.gcd(&big_l);
    let g_r = mod_floor(r, l).gcd(l);
    let g_s = mod_floor(s, m).gcd(m);
    debug_assert_eq!(g, g_r.lcm(&g_s));
    Some(Progression { x, modulus: big_l, g })
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Smallest nonnegative solution of the system together with the lcm of the moduli.
pub fn crt(congruences: &[(BigInt, BigUint)]) -> Option<(BigUint, BigUint)> {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for (r, m) in congruences {
        assert!(!m.is_zero(), "crt modulus must be positive");
        let r = mod_floor(r, m);
        let g = modulus.gcd(m);
        let diff = BigInt::from(r.clone()) - BigInt::from(x.clone());
        let g_i = BigInt::from(g.clone());
        if !(&diff % &g_i).is_zero() {
            return None;
        }
        // x + modulus * t ≡ r (mod m)  ⇔  (modulus/g) t ≡ diff/g (mod m/g)
        let m_g = BigInt::from(m / &g);
        let mod_g = BigInt::from(&modulus / &g);
        let (_, inv, _) = ext_gcd(&mod_g, &m_g);
        let t = ((diff / &g_i) * inv).mod_floor(&m_g);
        let new_mod = modulus.lcm(m);
        let t = t.to_biguint().expect("nonnegative");
        x = (x + &modulus * t) % &new_mod;
        modulus = new_mod;
    }
    Some((x, modulus))
}

/// Caps for exact densities of finite sets of multiples.
#[derive(Debug, Clone, Copy)]
pub struct DensityCaps {
    pub max_subset_size: usize,
    pub sieve_bound: u64,
}

impl Default for DensityCaps {
    fn default() -> Self {
        DensityCaps { max_subset_size: 20, sieve_bound: 10_000_000 }
    }
}

/// Exact density of ℳ_A (default caps).
pub fn density_of_multiples(a: &IntSet) -> Result<BigRational> {
    density_of_multiples_with(a, DensityCaps::default())
}

pub fn density_of_multiples_with(a: &IntSet, caps: DensityCaps) -> Result<BigRational> {
    let prim = primitivize(a);
    if prim.is_empty() {
        return Ok(BigRational::zero());
    }
    if prim.len() <= caps.max_subset_size {
        let elems = prim.as_slice();
        let mut num = BigInt::zero();
        let total = prim.lcm();
        // depth-first inclusion–exclusion; terms are total/lcm(subset)
        let mut stack: Vec<(usize, BigUint, bool)> = vec![(0, BigUint::one(), false)];
        while let Some((start, cur, odd)) = stack.pop() {
            for (i, e) in elems.iter().enumerate().skip(start) {
                let l = cur.lcm(e);
                let term = BigInt::from(&total / &l);
                if !odd {
                    num += &term;
                } else {
                    num -= &term;
                }
                stack.push((i + 1, l, !odd));
            }
        }
        return Ok(BigRational::new(num, BigInt::from(total)));
    }
    let total = prim.lcm();
    match total.to_u64() {
        Some(t) if t <= caps.sieve_bound => {
            let mut hit = vec![false; t as usize];
            for e in prim.iter() {
                let e = e.to_u64().expect("divides a u64");
                let mut k = 0;
                while k < t {
                    hit[k as usize] = true;
                    k += e;
                }
            }
            let count = hit.iter().filter(|&&h| h).count();
            Ok(BigRational::new(BigInt::from(count), BigInt::from(t)))
        }
        _ => Err(Error::DensityCap { size: prim.len() }),
    }
}

/// Trial-division factorization (n ≥ 1).
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    if let Some(mut m) = n.to_u64() {
        let mut p = 2u64;
        while p.saturating_mul(p) <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                out.push((BigUint::from(p), e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((BigUint::from(m), 1));
        }
        return out;
    }
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            let mut e = 0;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1u32;
    }
    if m > BigUint::one() {
        out.push((m, 1));
    }
    out
}

/// Factorization of `n` using a set of candidate primes; `None` if a cofactor remains.
pub fn factorize_over(n: &BigUint, primes: &[BigUint]) -> Option<Vec<(BigUint, u32)>> {
    let mut m = n.clone();
    let mut out = Vec::new();
    for p in primes {
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
    }
    if m.is_one() {
        Some(out)
    } else {
        None
    }
}

pub fn divisors_from_factorization(f: &[(BigUint, u32)]) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in f {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    divisors_from_factorization(&factorize(n))
}

pub fn totient_from_factorization(f: &[(BigUint, u32)]) -> BigUint {
    let mut t = BigUint::one();
    for (p, e) in f {
        t *= p.pow(e - 1) * (p - 1u32);
    }
    t
}

/// Euler's φ(n).
pub fn totient(n: &BigUint) -> BigUint {
    assert!(!n.is_zero(), "totient of 0 is undefined");
    totient_from_factorization(&factorize(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u64]) -> IntSet {
        IntSet::from_u64s(v).unwrap()
    }
    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }
    fn i(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn transforms() {
        assert_eq!(div_transform(&s(&[10, 15]), &b(2)), s(&[5, 15]));
        assert_eq!(div_transform(&s(&[6, 9]), &b(4)), s(&[3, 9]));
        assert_eq!(div_transform(&s(&[7]), &b(1)), s(&[7]));
        assert_eq!(perp_subset(&s(&[5, 15]), &b(3)), s(&[5]));
        assert_eq!(perp_subset(&s(&[]), &b(7)), s(&[]));
        assert_eq!(perp_subset(&s(&[2, 3, 4]), &b(1)), s(&[2, 3, 4]));
        assert_eq!(primitivize(&s(&[2, 4, 6, 3])), s(&[2, 3]));
        assert_eq!(primitivize(&s(&[5, 15])), s(&[5]));
        assert_eq!(primitivize(&s(&[6, 9])), s(&[6, 9]));
    }

    #[test]
    fn zero_rejected() {
        assert!(IntSet::from_u64s(&[0, 3]).is_err());
    }

    #[test]
    fn progressions() {
        let p = progression_intersect(&i(2), &b(6), &i(0), &b(4)).unwrap();
        assert_eq!((p.x, p.modulus, p.g), (b(8), b(12), b(4)));
        let p = progression_intersect(&i(1), &b(3), &i(2), &b(5)).unwrap();
        assert_eq!((p.x, p.modulus, p.g), (b(7), b(15), b(1)));
        assert!(progression_intersect(&i(1), &b(2), &i(0), &b(2)).is_none());
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(i(1), b(3)), (i(2), b(5))]), Some((b(7), b(15))));
        assert_eq!(crt(&[(i(0), b(840)), (i(6), b(18))]), Some((b(1680), b(2520))));
        assert_eq!(crt(&[(i(0), b(2)), (i(1), b(2))]), None);
        assert_eq!(crt(&[]), Some((b(0), b(1))));
        assert_eq!(crt(&[(i(-1), b(4))]), Some((b(3), b(4))));
    }

    #[test]
    fn densities() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(density_of_multiples(&s(&[2, 3])).unwrap(), r(2, 3));
        assert_eq!(density_of_multiples(&s(&[10, 15])).unwrap(), r(2, 15));
        assert_eq!(density_of_multiples(&s(&[])).unwrap(), r(0, 1));
        let caps = DensityCaps { max_subset_size: 1, sieve_bound: 1000 };
        assert_eq!(density_of_multiples_with(&s(&[2, 3]), caps).unwrap(), r(2, 3));
        let caps = DensityCaps { max_subset_size: 1, sieve_bound: 5 };
        assert!(density_of_multiples_with(&s(&[2, 3]), caps).is_err());
    }

    #[test]
    fn totients() {
        assert_eq!(totient(&b(9)), b(6));
        assert_eq!(totient(&b(1)), b(1));
        assert_eq!(totient(&b(30)), b(8));
        assert_eq!(divisors(&b(12)), vec![b(1), b(2), b(3), b(4), b(6), b(12)]);
        let big = BigUint::from(u64::MAX) * 2u32;
        assert_eq!(factorize(&big).iter().map(|(p, e)| p.pow(*e)).product::<BigUint>(), big);
    }
}
