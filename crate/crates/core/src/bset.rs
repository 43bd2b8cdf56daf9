//! ℬ-set specifications, exact η windows, primitivity/tautness and the coding function φ.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, IntSet};
use crate::error::{Error, Result};

/// Builtin parametric families and explicit lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// Explicit finite ℬ, listed in filtration order.
    Explicit { elements: Vec<u64> },
    /// {2^k c_k}.
    B1 { c: Vec<u64> },
    /// {2^k c_k} ∪ {2^{k−1} c_k² : k < N}; `n = None` means N = ∞.
    B1N { c: Vec<u64>, n: Option<u64> },
    /// {2^k c_k, 3^k d_k}.
    B2 { c: Vec<u64>, d: Vec<u64> },
    /// b_m = q_1⋯q_{m−2} q_m c_m.
    NotAllHoles { q: Vec<u64>, c: Vec<u64> },
    /// {2^i q_i c_i, 2^i q_i d_i, 2^{i+1} q_i}.
    TwoFiltrations { q: Vec<u64>, c: Vec<u64>, d: Vec<u64> },
}

/// Which filtration a family uses (only `TwoFiltrations` has the primed one).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationChoice {
    #[default]
    Standard,
    Primed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BSetSpec {
    pub family: Family,
    /// Largest realized generator index.
    pub horizon: usize,
    /// Largest |position| for η windows requested by default.
    pub window: u64,
    #[serde(default)]
    pub filtration: FiltrationChoice,
}

/// A realized generator with its family index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    #[serde(with = "crate::numfmt::num")]
    pub value: BigUint,
    pub index: usize,
    pub label: String,
}

fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

fn pow3(k: usize) -> BigUint {
    BigUint::from(3u32).pow(k as u32)
}

fn gcd64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn check_pairwise_coprime(name: &str, xs: &[u64]) -> Result<()> {
    for (i, &a) in xs.iter().enumerate() {
        if a <= 1 {
            return Err(Error::Spec(format!("{name}: parameters must be > 1, got {a}")));
        }
        for &b in &xs[i + 1..] {
            if gcd64(a, b) != 1 {
                return Err(Error::Spec(format!("{name}: parameters {a} and {b} are not coprime")));
            }
        }
    }
    Ok(())
}

impl Family {
    /// Number of generator indices the parameter lists support.
    pub fn max_index(&self) -> usize {
        match self {
            Family::Explicit { elements } => elements.len(),
            Family::B1 { c } | Family::B1N { c, .. } => c.len(),
            Family::B2 { c, d } => c.len().min(d.len()),
            Family::NotAllHoles { q, c } => q.len().min(c.len()),
            Family::TwoFiltrations { q, c, d } => q.len().min(c.len()).min(d.len()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Explicit { .. } => "explicit",
            Family::B1 { .. } => "b1",
            Family::B1N { .. } => "b1n",
            Family::B2 { .. } => "b2",
            Family::NotAllHoles { .. } => "not_all_holes",
            Family::TwoFiltrations { .. } => "two_filtrations",
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Family::Explicit { elements } => {
                if elements.contains(&0) {
                    return Err(Error::Spec("explicit elements must be positive".into()));
                }
                let distinct: BTreeSet<_> = elements.iter().collect();
                if distinct.len() != elements.len() {
                    return Err(Error::Spec("explicit elements must be distinct".into()));
                }
            }
            Family::B1 { c } | Family::B1N { c, .. } => {
                if let Some(x) = c.iter().find(|&&x| x % 2 == 0) {
                    return Err(Error::Spec(format!("c must be odd, got {x}")));
                }
                check_pairwise_coprime("c", c)?;
                if let Family::B1N { n: Some(0), .. } = self {
                    return Err(Error::Spec("N must be positive".into()));
                }
            }
            Family::B2 { c, d } => {
                if let Some(x) = c.iter().chain(d.iter()).find(|&&x| gcd64(x, 6) != 1) {
                    return Err(Error::Spec(format!("c, d must be coprime to 6, got {x}")));
                }
                let joint: Vec<u64> = c.iter().zip(d.iter()).map(|(&a, &b)| a / gcd64(a, b) * b).collect();
                check_pairwise_coprime("lcm(c_n, d_n)", &joint)?;
                if let Some(x) = c.iter().chain(d.iter()).find(|&&x| x <= 1) {
                    return Err(Error::Spec(format!("c, d must be > 1, got {x}")));
                }
            }
            Family::NotAllHoles { q, c } => {
                let all: Vec<u64> = q.iter().chain(c.iter()).copied().collect();
                check_pairwise_coprime("q ∪ c", &all)?;
            }
            Family::TwoFiltrations { q, c, d } => {
                let all: Vec<u64> = q.iter().chain(c.iter()).chain(d.iter()).copied().collect();
                if let Some(x) = all.iter().find(|&&x| x % 2 == 0) {
                    return Err(Error::Spec(format!("q, c, d must be odd, got {x}")));
                }
                check_pairwise_coprime("q ∪ c ∪ d", &all)?;
            }
        }
        Ok(())
    }

    /// Generators with family index ≤ h (h ≤ max_index).
    pub fn generators_up_to(&self, h: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        let g = |value: BigUint, index: usize, label: String| Generator { value, index, label };
        match self {
            Family::Explicit { elements } => {
                for (i, &e) in elements.iter().take(h).enumerate() {
                    out.push(g(BigUint::from(e), i + 1, format!("b_{}", i + 1)));
                }
            }
            Family::B1 { c } => {
                for k in 1..=h {
                    out.push(g(pow2(k) * c[k - 1], k, format!("2^{k}·c_{k}")));
                }
            }
            Family::B1N { c, n } => {
                for k in 1..=h {
                    out.push(g(pow2(k) * c[k - 1], k, format!("2^{k}·c_{k}")));
                    if n.is_none_or(|nn| (k as u64) < nn) {
                        let ck = BigUint::from(c[k - 1]);
                        out.push(g(pow2(k - 1) * &ck * &ck, k, format!("2^{}·c_{k}²", k - 1)));
                    }
                }
            }
            Family::B2 { c, d } => {
                for k in 1..=h {
                    out.push(g(pow2(k) * c[k - 1], k, format!("2^{k}·c_{k}")));
                    out.push(g(pow3(k) * d[k - 1], k, format!("3^{k}·d_{k}")));
                }
            }
            Family::NotAllHoles { q, c } => {
                for m in 1..=h {
                    let mut v = BigUint::from(q[m - 1]) * c[m - 1];
                    for &qi in q.iter().take(m.saturating_sub(2)) {
                        v *= qi;
                    }
                    out.push(g(v, m, format!("b_{m}")));
                }
            }
            Family::TwoFiltrations { q, c, d } => {
                for i in 1..=h {
                    let base = pow2(i) * q[i - 1];
                    out.push(g(&base * c[i - 1], i, format!("2^{i}·q_{i}·c_{i}")));
                    out.push(g(&base * d[i - 1], i, format!("2^{i}·q_{i}·d_{i}")));
                    out.push(g(base * 2u32, i, format!("2^{}·q_{i}", i + 1)));
                }
            }
        }
        out
    }

    /// Lower bound for every generator of index > h (`None`: there is none).
    pub fn unrealized_lower_bound(&self, h: usize) -> Option<BigUint> {
        match self {
            Family::Explicit { elements } => {
                if h >= elements.len() {
                    None
                } else {
                    elements[h..].iter().min().map(|&m| BigUint::from(m))
                }
            }
            Family::B1 { .. } => Some(pow2(h + 1) * 3u32),
            Family::B1N { n, .. } => {
                let a = pow2(h + 1) * 3u32;
                if n.is_none_or(|nn| (h as u64 + 1) < nn) {
                    Some(a.min(pow2(h) * 9u32))
                } else {
                    Some(a)
                }
            }
            Family::B2 { .. } => Some(pow2(h + 1) * 5u32),
            Family::NotAllHoles { q, .. } => {
                let mut v = BigUint::from(4u32);
                for &qi in q.iter().take(h.saturating_sub(1)) {
                    v *= qi;
                }
                Some(v)
            }
            Family::TwoFiltrations { .. } => Some(pow2(h + 2) * 3u32),
        }
    }

    /// Primes such that any integer supported on them has no divisor among
    /// generators of index > h (each such generator carries a parameter prime
    /// coprime to every realized parameter).
    pub fn safe_primes(&self, h: usize) -> Vec<BigUint> {
        let mut params: Vec<u64> = Vec::new();
        let mut extra: Vec<u64> = Vec::new();
        match self {
            Family::Explicit { .. } => return Vec::new(),
            Family::B1 { c } | Family::B1N { c, .. } => {
                params.extend(&c[..h]);
                extra.push(2);
            }
            Family::B2 { c, d } => {
                params.extend(&c[..h]);
                params.extend(&d[..h]);
                extra.extend([2, 3]);
            }
            Family::NotAllHoles { q, c } => {
                params.extend(&q[..h]);
                params.extend(&c[..h]);
            }
            Family::TwoFiltrations { q, c, d } => {
                params.extend(&q[..h]);
                params.extend(&c[..h]);
                params.extend(&d[..h]);
                extra.push(2);
            }
        }
        let mut primes: BTreeSet<BigUint> = extra.into_iter().map(BigUint::from).collect();
        for p in params {
            for (f, _) in factorize(&BigUint::from(p)) {
                primes.insert(f);
            }
        }
        primes.into_iter().collect()
    }
}

impl BSetSpec {
    pub fn new(family: Family, horizon: usize, window: u64) -> Result<Self> {
        let spec = BSetSpec { family, horizon, window, filtration: FiltrationChoice::Standard };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_filtration(mut self, f: FiltrationChoice) -> Result<Self> {
        self.filtration = f;
        self.validate()?;
        Ok(self)
    }

    /// Same family at a different realized horizon.
    pub fn with_horizon(&self, horizon: usize) -> Result<Self> {
        let mut s = self.clone();
        s.horizon = horizon;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if self.horizon == 0 && self.is_bfree_family() {
            return Err(Error::Spec("horizon must be positive".into()));
        }
        if self.horizon > self.family.max_index() {
            return Err(Error::Spec(format!("horizon {} exceeds the {} parameter entries supplied", self.horizon, self.family.max_index())));
        }
        if self.filtration == FiltrationChoice::Primed && !matches!(self.family, Family::TwoFiltrations { .. }) {
            return Err(Error::Spec("the primed filtration exists only for two_filtrations".into()));
        }
        if let Some((a, b)) = is_primitive(self) {
            return Err(Error::Spec(format!("realized truncation is not primitive: {a} | {b}")));
        }
        Ok(())
    }

    pub fn is_bfree_family(&self) -> bool {
        !matches!(self.family, Family::Explicit { .. })
    }

    /// Realized generators, ordered by index.
    pub fn generators(&self) -> Vec<Generator> {
        self.family.generators_up_to(self.horizon)
    }

    pub fn generator_set(&self) -> IntSet {
        IntSet::new(self.generators().into_iter().map(|g| g.value)).expect("generators are positive")
    }

    pub fn unrealized_lower_bound(&self) -> Option<BigUint> {
        self.family.unrealized_lower_bound(self.horizon)
    }

    /// True when no unrealized generator can divide `x` (x ≠ 0).
    pub fn excludes_unrealized_divisor(&self, x: &BigUint) -> bool {
        match self.unrealized_lower_bound() {
            None => true,
            Some(bound) => {
                if x < &bound {
                    return true;
                }
                let primes = self.family.safe_primes(self.horizon);
                !primes.is_empty() && arith::factorize_over(x, &primes).is_some()
            }
        }
    }

    /// True when positions with |k| ≤ m are all decided by the realized generators.
    pub fn certifies_radius(&self, m: &BigUint) -> bool {
        self.unrealized_lower_bound().is_none_or(|b| m < &b)
    }

    /// The filtration set S_n.
    pub fn level_set(&self, n: usize) -> Result<IntSet> {
        let need = match self.filtration {
            FiltrationChoice::Standard => n,
            FiltrationChoice::Primed => n + 1,
        };
        if n == 0 {
            return Err(Error::InvalidInput("levels start at 1".into()));
        }
        if need > self.horizon {
            return Err(Error::InsufficientHorizon { position: format!("level {n} needs generator index {need}") });
        }
        let gens = self.family.generators_up_to(need);
        let primed = self.filtration == FiltrationChoice::Primed;
        let vals = gens.into_iter().filter(|g| g.index <= n || (primed && is_primed_extra(g, n)));
        IntSet::new(vals.map(|g| g.value))
    }

    /// Parameter value c_k when the family has a `c` list.
    pub fn c(&self, k: usize) -> Option<u64> {
        match &self.family {
            Family::B1 { c } | Family::B1N { c, .. } | Family::B2 { c, .. } | Family::NotAllHoles { c, .. } | Family::TwoFiltrations { c, .. } => {
                c.get(k.checked_sub(1)?).copied()
            }
            Family::Explicit { .. } => None,
        }
    }
}

fn is_primed_extra(g: &Generator, n: usize) -> bool {
    g.index == n + 1 && g.label == format!("2^{}·q_{}·c_{}", n + 1, n + 1, n + 1)
}

/// Finite 0/1 window starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitWindow {
    pub start: i64,
    pub bits: Vec<bool>,
}

impl BitWindow {
    pub fn new(start: i64, bits: Vec<bool>) -> Self {
        BitWindow { start, bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Exclusive right end.
    pub fn end(&self) -> i64 {
        self.start + self.bits.len() as i64
    }

    pub fn get(&self, pos: i64) -> Option<bool> {
        if pos < self.start {
            return None;
        }
        self.bits.get((pos - self.start) as usize).copied()
    }

    /// Sub-window on [lo, hi] (inclusive); `None` if not covered.
    pub fn slice(&self, lo: i64, hi: i64) -> Option<BitWindow> {
        if lo < self.start || hi >= self.end() || hi < lo {
            return None;
        }
        let a = (lo - self.start) as usize;
        let b = (hi - self.start) as usize;
        Some(BitWindow::new(lo, self.bits[a..=b].to_vec()))
    }
}

impl fmt::Display for BitWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn window_radius(lo: i64, hi: i64) -> BigUint {
    BigUint::from(lo.unsigned_abs().max(hi.unsigned_abs()))
}

/// Sieve [lo, hi] by the given moduli with offsets: bit s is 0 iff b | s + y_b for some (b, y_b).
fn sieve(lo: i64, hi: i64, moduli: &[(u64, u64)]) -> Vec<bool> {
    let len = (hi - lo + 1) as usize;
    let mut bits = vec![true; len];
    for &(b, y) in moduli {
        let b_i = b as i128;
        // first s ≥ lo with s + y ≡ 0 (mod b)
        let target = (-(y as i128)).rem_euclid(b_i);
        let off = (target - lo as i128).rem_euclid(b_i);
        let mut idx = off as usize;
        while idx < len {
            bits[idx] = false;
            idx += b as usize;
        }
    }
    bits
}

/// η on [lo, hi]: bit k is 1 iff no b ∈ ℬ divides k.
pub fn eta_segment(spec: &BSetSpec, lo: i64, hi: i64) -> Result<BitWindow> {
    if hi < lo {
        return Err(Error::InvalidInput(format!("empty range {lo}..{hi}")));
    }
    if let Some(bound) = spec.unrealized_lower_bound() {
        let bound_i = bound.to_i128().unwrap_or(i128::MAX);
        if window_radius(lo, hi) >= bound {
            // first position (left to right) with |k| ≥ bound
            let first = (lo as i128..=hi as i128).find(|k| k.abs() >= bound_i).unwrap_or(lo as i128);
            return Err(Error::InsufficientHorizon { position: first.to_string() });
        }
    }
    let radius = lo.unsigned_abs().max(hi.unsigned_abs());
    let moduli: Vec<(u64, u64)> = spec.generators().iter().filter_map(|g| g.value.to_u64()).filter(|&b| b <= radius.max(1)).map(|b| (b, 0)).collect();
    let mut bits = sieve(lo, hi, &moduli);
    if lo <= 0 && hi >= 0 && !spec.generators().is_empty() {
        bits[(-lo) as usize] = false;
    }
    Ok(BitWindow::new(lo, bits))
}

/// A point of the odometer restricted to realized generators: y_b = overrides[b],
/// or `base mod b` for generators without an override (so `Δ(n)` has base n).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OdometerVec {
    #[serde(with = "crate::numfmt::num")]
    pub base: BigInt,
    #[serde(with = "crate::numfmt::map")]
    pub overrides: BTreeMap<BigUint, BigUint>,
}

impl OdometerVec {
    /// Δ(n) = (n mod b)_b.
    pub fn delta(n: i64) -> Self {
        OdometerVec { base: BigInt::from(n), overrides: BTreeMap::new() }
    }

    pub fn with_override(mut self, b: u64, y: u64) -> Self {
        self.overrides.insert(BigUint::from(b), BigUint::from(y) % b);
        self
    }

    pub fn residue(&self, b: &BigUint) -> BigUint {
        match self.overrides.get(b) {
            Some(y) => y % b,
            None => arith::mod_floor(&self.base, b),
        }
    }

    /// Largest modulus with an explicit override (0 if none).
    pub fn support_modulus(&self) -> BigUint {
        self.overrides.keys().max().cloned().unwrap_or_default()
    }

    /// First pair (b, b') with y_b ≢ y_{b'} (mod gcd(b, b')).
    pub fn incoherence(&self, gens: &IntSet) -> Option<(BigUint, BigUint)> {
        let v = gens.as_slice();
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                let g = v[i].gcd(&v[j]);
                if self.residue(&v[i]) % &g != self.residue(&v[j]) % &g {
                    return Some((v[i].clone(), v[j].clone()));
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiWindow {
    pub window: BitWindow,
    /// Whether the conservative truncation rule certifies every bit.
    pub certified: bool,
}

/// φ(y) on [lo, hi] over realized generators.
pub fn phi_code(spec: &BSetSpec, y: &OdometerVec, lo: i64, hi: i64) -> Result<PhiWindow> {
    if hi < lo {
        return Err(Error::InvalidInput(format!("empty range {lo}..{hi}")));
    }
    let shift = y.base.abs().to_biguint().expect("abs is nonnegative");
    let radius = window_radius(lo, hi);
    if !spec.certifies_radius(&(&radius + &shift)) {
        return Err(Error::InsufficientHorizon { position: format!("{lo}..{hi} shifted by {}", y.base) });
    }
    let certified = spec.certifies_radius(&(&radius + &shift + y.support_modulus()));
    let mut moduli = Vec::new();
    for g in spec.generators() {
        let Some(b) = g.value.to_u64() else { continue };
        moduli.push((b, y.residue(&g.value).to_u64().expect("residue below b")));
    }
    Ok(PhiWindow { window: BitWindow::new(lo, sieve(lo, hi, &moduli)), certified })
}

/// First realized pair (a, b) with a | b, if any.
pub fn is_primitive(spec: &BSetSpec) -> Option<(BigUint, BigUint)> {
    let gens = spec.generators();
    let mut vals: Vec<BigUint> = gens.into_iter().map(|g| g.value).collect();
    vals.sort();
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            if (&vals[j] % &vals[i]).is_zero() {
                return Some((vals[i].clone(), vals[j].clone()));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TautVerdict {
    pub taut: bool,
    /// An element whose removal leaves the density unchanged.
    #[serde(with = "crate::numfmt::opt")]
    pub witness: Option<BigUint>,
}

/// Tautness of a finite set: removing any element strictly lowers the density of multiples.
pub fn is_taut_truncation(set: &IntSet) -> Result<TautVerdict> {
    let full = arith::density_of_multiples(set)?;
    for b in set.iter() {
        let rest = IntSet::new(set.iter().filter(|x| *x != b).cloned()).expect("subset");
        if arith::density_of_multiples(&rest)? >= full {
            return Ok(TautVerdict { taut: false, witness: Some(b.clone()) });
        }
    }
    Ok(TautVerdict { taut: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b1(c: &[u64]) -> BSetSpec {
        BSetSpec::new(Family::B1 { c: c.to_vec() }, c.len(), 100).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect()
    }

    #[test]
    fn eta_examples() {
        let spec = b1(&[3, 5, 7, 11]);
        assert_eq!(eta_segment(&spec, 0, 7).unwrap().bits, bits("0 1 1 1 1 1 0 1"));
        let empty = BSetSpec::new(Family::Explicit { elements: vec![] }, 0, 10).unwrap();
        assert_eq!(eta_segment(&empty, 0, 3).unwrap().bits, bits("1111"));
        assert!(BSetSpec::new(Family::Explicit { elements: vec![] }, 1, 10).is_err());
        let b2 = BSetSpec::new(Family::B2 { c: vec![5, 7, 11], d: vec![5, 7, 11] }, 3, 100).unwrap();
        assert_eq!(eta_segment(&b2, 10, 10).unwrap().bits, vec![false]);
    }

    #[test]
    fn eta_requires_horizon() {
        let spec = b1(&[3]);
        // generators of index ≥ 2 are at least 2^2·3 = 12
        assert!(eta_segment(&spec, -11, 11).is_ok());
        match eta_segment(&spec, 0, 12) {
            Err(Error::InsufficientHorizon { position }) => assert_eq!(position, "12"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&b1(&[3, 5, 7])).is_none());
        let bad = BSetSpec { family: Family::Explicit { elements: vec![6, 12] }, horizon: 2, window: 10, filtration: FiltrationChoice::Standard };
        assert_eq!(is_primitive(&bad), Some((BigUint::from(6u32), BigUint::from(12u32))));
        let ok = BSetSpec::new(Family::Explicit { elements: vec![9, 6] }, 2, 10).unwrap();
        assert!(is_primitive(&ok).is_none());
    }

    #[test]
    fn tautness() {
        let t = |v: &[u64]| is_taut_truncation(&IntSet::from_u64s(v).unwrap()).unwrap();
        assert!(t(&[6, 20, 56]).taut);
        assert_eq!(t(&[2, 3, 6]).witness, Some(BigUint::from(6u32)));
        assert!(t(&[2]).taut);
    }

    #[test]
    fn phi_examples() {
        let spec = b1(&[3, 5, 7, 11]);
        let w = phi_code(&spec, &OdometerVec::delta(0), 0, 7).unwrap();
        assert_eq!(w.window.bits, eta_segment(&spec, 0, 7).unwrap().bits);
        let w = phi_code(&spec, &OdometerVec::delta(3), 0, 4).unwrap();
        assert_eq!(w.window.bits, eta_segment(&spec, 3, 7).unwrap().bits);
        let b1n = BSetSpec::new(Family::B1N { c: vec![3, 5, 7, 11], n: Some(2) }, 4, 100).unwrap();
        let y = OdometerVec::default().with_override(9, 6);
        // 3 + 6 ≡ 0 (mod 9): position 3 lies in 9ℤ − 6
        assert_eq!(phi_code(&b1n, &y, 3, 3).unwrap().window.bits, vec![false]);
    }

    #[test]
    fn family_validation() {
        assert!(BSetSpec::new(Family::B1 { c: vec![3, 9] }, 2, 10).is_err());
        assert!(BSetSpec::new(Family::B2 { c: vec![5, 9], d: vec![5, 7] }, 2, 10).is_err());
        assert!(BSetSpec::new(Family::B1 { c: vec![3, 5] }, 3, 10).is_err());
    }

    #[test]
    fn family_generators() {
        let b1n = BSetSpec::new(Family::B1N { c: vec![3, 5, 7], n: Some(2) }, 3, 10).unwrap();
        let v: Vec<u64> = b1n.generators().iter().map(|g| g.value.to_u64().unwrap()).collect();
        assert_eq!(v, vec![6, 9, 20, 56]);
        let nah = BSetSpec::new(Family::NotAllHoles { q: vec![5, 7, 11], c: vec![3, 17, 19] }, 3, 10).unwrap();
        let v: Vec<u64> = nah.generators().iter().map(|g| g.value.to_u64().unwrap()).collect();
        assert_eq!(v, vec![15, 7 * 17, 5 * 11 * 19]);
        let tf = BSetSpec::new(Family::TwoFiltrations { q: vec![3, 11], c: vec![5, 13], d: vec![7, 17] }, 2, 10)
            .unwrap()
            .with_filtration(FiltrationChoice::Primed)
            .unwrap();
        let s1: Vec<u64> = tf.level_set(1).unwrap().iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(s1, vec![12, 30, 42, 4 * 11 * 13]);
    }

    #[test]
    fn unrealized_exclusion() {
        let spec = b1(&[3, 5, 7]);
        // 2^10·3·5 has only safe primes even though it exceeds the size bound
        assert!(spec.excludes_unrealized_divisor(&BigUint::from(1024u32 * 15)));
        assert!(!spec.excludes_unrealized_divisor(&BigUint::from(2u32 * 11 * 1000)));
    }
}
