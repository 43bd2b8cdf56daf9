//! Hole sets, essential holes, minimal periods and the closed-form period formulas.
//!
//! Two representations of periodic sets are used. `ResidueSet` lists residues
//! explicitly (Toeplitz inputs, small moduli). `GcdClassSet` stores a union of
//! gcd-classes `{k : gcd(k, p) ∈ D}`; every ℬ-free hole set and essential-hole
//! set is of this form, so huge moduli stay tractable.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, div_transform, divisors_from_factorization, factorize, primitivize, IntSet};
use crate::error::{Error, Result};
use crate::filtration::LevelData;

/// A p-periodic subset of ℤ given by its residues in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueSet {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl ResidueSet {
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let set: BTreeSet<u64> = residues.into_iter().map(|r| r % modulus).collect();
        Ok(ResidueSet { modulus, residues: set.into_iter().collect() })
    }

    pub fn empty(modulus: u64) -> Self {
        ResidueSet { modulus, residues: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        let r = k.rem_euclid(self.modulus as i64) as u64;
        self.residues.binary_search(&r).is_ok()
    }

    pub fn contains_residue(&self, r: u64) -> bool {
        self.residues.binary_search(&(r % self.modulus)).is_ok()
    }

    /// Residues mod a divisor `m` of the modulus.
    pub fn reduce(&self, m: u64) -> Result<ResidueSet> {
        if m == 0 || !self.modulus.is_multiple_of(m) {
            return Err(Error::InvalidInput(format!("{m} does not divide {}", self.modulus)));
        }
        ResidueSet::new(m, self.residues.iter().copied())
    }

    /// The same set written modulo a multiple `m` of the modulus.
    pub fn lift(&self, m: u64) -> Result<ResidueSet> {
        if !m.is_multiple_of(self.modulus) {
            return Err(Error::InvalidInput(format!("{} does not divide {m}", self.modulus)));
        }
        let reps = m / self.modulus;
        Ok(ResidueSet {
            modulus: m,
            residues: (0..reps).flat_map(|j| self.residues.iter().map(move |&r| r + j * self.modulus)).collect::<BTreeSet<_>>().into_iter().collect(),
        })
    }

    pub fn is_subset_of(&self, other: &ResidueSet) -> bool {
        let m = self.modulus.lcm(&other.modulus);
        let a = self.lift(m).expect("lcm");
        let b = other.lift(m).expect("lcm");
        a.residues.iter().all(|r| b.residues.binary_search(r).is_ok())
    }

    /// Same integer set (moduli may differ).
    pub fn same_set(&self, other: &ResidueSet) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("modulus,residue\n");
        for r in &self.residues {
            let _ = writeln!(s, "{},{}", self.modulus, r);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodMethod {
    DirectSearch,
    DivisorLattice,
    FormulaSingleton,
    FormulaUnion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    #[serde(with = "crate::numfmt::num")]
    pub tau: BigUint,
    pub certified_by: PeriodMethod,
}

/// Smallest divisor t of the modulus with (residues + t) mod p = residues.
pub fn minimal_period(set: &ResidueSet) -> PeriodReport {
    let p = set.modulus;
    if set.is_empty() {
        return PeriodReport { tau: BigUint::one(), certified_by: PeriodMethod::DirectSearch };
    }
    for t in arith::divisors(&BigUint::from(p)) {
        let t = t.to_u64().expect("divisor of u64");
        if set.residues.iter().all(|&r| set.contains_residue((r + t) % p)) {
            return PeriodReport { tau: BigUint::from(t), certified_by: PeriodMethod::DirectSearch };
        }
    }
    unreachable!("the modulus itself is a period")
}

/// Union of gcd-classes: `{k ∈ ℤ : gcd(k, p) ∈ D}` with D a set of divisors of p
/// (gcd(0, p) = p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdClassSet {
    #[serde(with = "crate::numfmt::num")]
    pub modulus: BigUint,
    #[serde(with = "crate::numfmt::set")]
    pub classes: BTreeSet<BigUint>,
    #[serde(skip)]
    factorization: Vec<(BigUint, u32)>,
}

impl GcdClassSet {
    /// Builds the set from a membership predicate on divisors of `p`.
    pub fn from_predicate(p: &BigUint, mut member: impl FnMut(&BigUint) -> bool) -> Self {
        let factorization = factorize(p);
        let classes = divisors_from_factorization(&factorization).into_iter().filter(|g| member(g)).collect();
        GcdClassSet { modulus: p.clone(), classes, factorization }
    }

    fn with_classes(&self, classes: BTreeSet<BigUint>) -> Self {
        GcdClassSet { modulus: self.modulus.clone(), classes, factorization: self.factorization.clone() }
    }

    fn factorization(&self) -> Vec<(BigUint, u32)> {
        if self.factorization.is_empty() && !self.modulus.is_one() {
            factorize(&self.modulus)
        } else {
            self.factorization.clone()
        }
    }

    /// ℳ_A ∖ ℳ_C modulo p, for A, C consisting of divisors of p.
    pub fn multiples_difference(p: &BigUint, a: &IntSet, c: &IntSet) -> Self {
        Self::from_predicate(p, |g| a.iter().any(|x| (g % x).is_zero()) && !c.iter().any(|x| (g % x).is_zero()))
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, k: &BigInt) -> bool {
        let g = arith::mod_floor(k, &self.modulus).gcd(&self.modulus);
        self.classes.contains(&g)
    }

    pub fn contains_class(&self, g: &BigUint) -> bool {
        self.classes.contains(g)
    }

    /// Number of residues in [0, p): Σ φ(p/g).
    pub fn count(&self) -> BigUint {
        self.classes.iter().map(|g| arith::totient(&(&self.modulus / g))).sum()
    }

    pub fn union(&self, other: &GcdClassSet) -> Result<GcdClassSet> {
        self.same_modulus(other)?;
        Ok(self.with_classes(self.classes.union(&other.classes).cloned().collect()))
    }

    pub fn is_subset_of(&self, other: &GcdClassSet) -> Result<bool> {
        self.same_modulus(other)?;
        Ok(self.classes.is_subset(&other.classes))
    }

    fn same_modulus(&self, other: &GcdClassSet) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidInput(format!("moduli differ: {} vs {}", self.modulus, other.modulus)));
        }
        Ok(())
    }

    /// Residues reduced modulo a divisor `m` of the modulus.
    pub fn reduce(&self, m: &BigUint) -> Result<GcdClassSet> {
        if m.is_zero() || !(&self.modulus % m).is_zero() {
            return Err(Error::InvalidInput(format!("{m} does not divide {}", self.modulus)));
        }
        let factorization = factorize(m);
        Ok(GcdClassSet { modulus: m.clone(), classes: self.classes.iter().map(|g| g.gcd(m)).collect(), factorization })
    }

    /// Minimal period via the divisor lattice: per prime, the least exponent f
    /// such that membership is invariant under truncating v_p(g) at f.
    pub fn minimal_period(&self) -> PeriodReport {
        if self.is_empty() {
            return PeriodReport { tau: BigUint::one(), certified_by: PeriodMethod::DivisorLattice };
        }
        let fact = self.factorization();
        let divs = divisors_from_factorization(&fact);
        let mut tau = BigUint::one();
        for (p, e) in &fact {
            let mut f_min = *e;
            for f in 0..*e {
                let pf = p.pow(f);
                let ok = divs.iter().all(|g| {
                    let v_full = g.gcd(&p.pow(*e));
                    let truncated = if v_full > pf { g / &v_full * &pf } else { g.clone() };
                    self.classes.contains(g) == self.classes.contains(&truncated)
                });
                if ok {
                    f_min = f;
                    break;
                }
            }
            tau *= p.pow(f_min);
        }
        PeriodReport { tau, certified_by: PeriodMethod::DivisorLattice }
    }

    /// Explicit residues, if the modulus fits under `cap`.
    pub fn to_residue_set(&self, cap: u64) -> Result<ResidueSet> {
        let p =
            self.modulus.to_u64().filter(|&p| p <= cap).ok_or_else(|| Error::CapExceeded(format!("modulus {} exceeds the residue cap {cap}", self.modulus)))?;
        let classes: HashSet<u64> = self.classes.iter().map(|g| g.to_u64().expect("divides p")).collect();
        let residues = (0..p).filter(|&k| classes.contains(&(if k == 0 { p } else { k.gcd(&p) })));
        ResidueSet::new(p, residues)
    }
}

/// Default cap for materializing explicit residue lists.
pub const RESIDUE_CAP: u64 = 20_000_000;

/// ℋ_n = ℳ_{𝒜_{S_n}} ∖ ℳ_{S_n} modulo ℓ_{S_n}.
pub fn holes_level(level: &LevelData) -> Result<GcdClassSet> {
    if !level.saturated {
        return Err(Error::Unsaturated(level.n));
    }
    Ok(GcdClassSet::multiples_difference(&level.ell, &level.a_set(), &level.s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StabilityCertificate {
    /// Unchanged from level `at` through level `through`.
    Stabilized { at: usize, through: usize },
    /// Still changing (or not enough levels) up to `through`.
    Truncated { through: usize },
}

impl StabilityCertificate {
    pub fn is_stabilized(&self) -> bool {
        matches!(self, StabilityCertificate::Stabilized { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialResult<T> {
    pub set: T,
    pub certificate: StabilityCertificate,
}

/// Iterates `step(n, current)` for n = N+1..=n_max until the set is unchanged
/// for `window` consecutive levels.
fn stabilize<T: PartialEq>(start: T, n_start: usize, n_max: usize, window: usize, mut step: impl FnMut(usize, &T) -> Result<T>) -> Result<EssentialResult<T>> {
    let mut cur = start;
    let mut last_change = n_start;
    if window == 0 {
        return Ok(EssentialResult { set: cur, certificate: StabilityCertificate::Stabilized { at: n_start, through: n_start } });
    }
    for n in (n_start + 1)..=n_max {
        let next = step(n, &cur)?;
        if next != cur {
            last_change = n;
        }
        cur = next;
        if n - last_change >= window {
            return Ok(EssentialResult { set: cur, certificate: StabilityCertificate::Stabilized { at: last_change, through: n } });
        }
    }
    Ok(EssentialResult { set: cur, certificate: StabilityCertificate::Truncated { through: n_max } })
}

/// Does (k + p_N ℤ) meet ℳ_{𝒜_{S_n}} ∖ ℳ_{S_n}, where g = gcd(k, p_N)?
/// The progression meets aℤ iff gcd(a, p_N) | g, in a progression with gcd
/// lcm(g, a); that progression lies in ℳ_{S_n} iff some b ∈ S_n divides lcm(g, a).
pub fn class_lifts(g: &BigUint, p_n_small: &BigUint, level: &LevelData) -> bool {
    let a_vals = level.a_set();
    a_vals.iter().any(|a| {
        (g % a.gcd(p_n_small)).is_zero() && {
            let l = g.lcm(a);
            !level.s.iter().any(|b| (&l % b).is_zero())
        }
    })
}

/// Essential holes at level N by the defining lift iteration (ℬ-free levels).
pub fn essential_holes_iterative(levels: &[LevelData], n: usize, n_max: usize, stab_window: usize) -> Result<EssentialResult<GcdClassSet>> {
    check_range(levels.len(), n, n_max)?;
    let base = &levels[n - 1];
    let start = holes_level(base)?;
    stabilize(start, n, n_max, stab_window, |m, cur| {
        let lvl = &levels[m - 1];
        if !lvl.saturated {
            return Err(Error::Unsaturated(m));
        }
        let kept = cur.classes.iter().filter(|g| class_lifts(g, &base.ell, lvl)).cloned().collect();
        Ok(cur.with_classes(kept))
    })
}

fn check_range(available: usize, n: usize, n_max: usize) -> Result<()> {
    if n == 0 || n > n_max || n_max > available {
        return Err(Error::InvalidInput(format!("need 1 ≤ N={n} ≤ n_max={n_max} ≤ {available} available levels")));
    }
    Ok(())
}

/// Essential holes at level N from explicit hole sets (`holes[i]` is level i+1).
pub fn essential_holes_iterative_residues(holes: &[ResidueSet], n: usize, n_max: usize, stab_window: usize) -> Result<EssentialResult<ResidueSet>> {
    check_range(holes.len(), n, n_max)?;
    let p_n = holes[n - 1].modulus;
    stabilize(holes[n - 1].clone(), n, n_max, stab_window, |m, cur| {
        let reduced = holes[m - 1].reduce(p_n)?;
        Ok(ResidueSet { modulus: p_n, residues: cur.residues.iter().copied().filter(|r| reduced.contains_residue(*r)).collect() })
    })
}

/// a · lcm((C^{÷a})^{prim}), the minimal period of aℤ ∖ ℳ_C.
pub fn period_formula_singleton(a: &BigUint, c: &IntSet) -> Result<BigUint> {
    if c.iter().any(|x| (a % x).is_zero()) {
        return Err(Error::EmptySet(format!("{a} ∈ ℳ_C, so aℤ ∖ ℳ_C is empty")));
    }
    Ok(a * primitivize(&div_transform(c, a)).lcm())
}

/// lcm(A ∪ C), the minimal period of ℳ_A ∖ ℳ_C when each C^{÷a} is primitive without 1.
pub fn period_formula_union(a: &IntSet, c: &IntSet) -> Result<BigUint> {
    if let Some((x, y)) = arith::is_primitive_set(a) {
        return Err(Error::HypothesisViolated { a: x.to_string(), reason: format!("A is not primitive ({x} | {y})") });
    }
    for x in a.iter() {
        let t = div_transform(c, x);
        if t.contains(&BigUint::one()) {
            return Err(Error::HypothesisViolated { a: x.to_string(), reason: "C^{÷a} contains 1".into() });
        }
        if let Some((u, v)) = arith::is_primitive_set(&t) {
            return Err(Error::HypothesisViolated { a: x.to_string(), reason: format!("C^{{÷a}} is not primitive ({u} | {v})") });
        }
    }
    Ok(a.union(c).lcm())
}

/// Explicit residues of ℳ_A ∖ ℳ_C modulo `p` (small moduli).
pub fn sieve_multiples_difference(p: u64, a: &[u64], c: &[u64]) -> ResidueSet {
    let res = (0..p).filter(|&k| a.iter().any(|&x| k % x == 0) && !c.iter().any(|&x| k % x == 0));
    ResidueSet::new(p, res).expect("positive modulus")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }
    fn s(v: &[u64]) -> IntSet {
        IntSet::from_u64s(v).unwrap()
    }

    #[test]
    fn minimal_periods() {
        assert_eq!(minimal_period(&ResidueSet::new(6, [2, 4]).unwrap()).tau, b(6));
        assert_eq!(minimal_period(&ResidueSet::new(8, [3, 7]).unwrap()).tau, b(4));
        assert_eq!(minimal_period(&ResidueSet::new(5, 0..5).unwrap()).tau, b(1));
        assert_eq!(minimal_period(&ResidueSet::empty(12)).tau, b(1));
    }

    #[test]
    fn gcd_class_sets() {
        // 2ℤ ∖ (6ℤ ∪ 9ℤ) mod 18
        let set = GcdClassSet::multiples_difference(&b(18), &s(&[2]), &s(&[6, 9]));
        let rs = set.to_residue_set(RESIDUE_CAP).unwrap();
        assert_eq!(rs.residues, vec![2, 4, 8, 10, 14, 16]);
        assert_eq!(set.count(), b(6));
        assert_eq!(set.minimal_period().tau, b(6));
        assert_eq!(minimal_period(&rs).tau, b(6));
        let red = set.reduce(&b(6)).unwrap();
        assert_eq!(red.to_residue_set(100).unwrap().residues, vec![2, 4]);
        assert!(set.contains(&BigInt::from(-2)));
        assert!(!set.contains(&BigInt::from(0)));
    }

    #[test]
    fn singleton_formula() {
        assert_eq!(period_formula_singleton(&b(4), &s(&[6, 9])).unwrap(), b(12));
        assert_eq!(period_formula_singleton(&b(2), &s(&[6])).unwrap(), b(6));
        assert_eq!(period_formula_singleton(&b(1), &s(&[2])).unwrap(), b(2));
        assert!(period_formula_singleton(&b(6), &s(&[3])).is_err());
        let rs = sieve_multiples_difference(36, &[4], &[6, 9]);
        assert_eq!(minimal_period(&rs).tau, b(12));
    }

    #[test]
    fn union_formula() {
        assert!(matches!(period_formula_union(&s(&[2, 3]), &s(&[10, 15])), Err(Error::HypothesisViolated { .. })));
        assert_eq!(period_formula_union(&s(&[2]), &s(&[6])).unwrap(), b(6));
        assert_eq!(period_formula_union(&s(&[2, 3]), &s(&[4])).unwrap(), b(12));
        assert_eq!(minimal_period(&sieve_multiples_difference(12, &[2, 3], &[4])).tau, b(12));
        assert_eq!(period_formula_union(&s(&[2, 3]), &s(&[10, 39])).unwrap(), b(390));
        assert_eq!(minimal_period(&sieve_multiples_difference(390, &[2, 3], &[10, 39])).tau, b(390));
        // d = c: the hypothesis fails, yet the period is still lcm
        assert_eq!(minimal_period(&sieve_multiples_difference(30, &[2, 3], &[10, 15])).tau, b(30));
    }

    #[test]
    fn residue_essential_gh() {
        let h1 = ResidueSet::new(8, [3, 7]).unwrap();
        let h2 = ResidueSet::new(32, [11, 27]).unwrap();
        let h3 = ResidueSet::new(128, [43, 107]).unwrap();
        let h4 = ResidueSet::new(512, [171, 427]).unwrap();
        let r = essential_holes_iterative_residues(&[h1, h2, h3, h4], 1, 4, 2).unwrap();
        assert_eq!(r.set.residues, vec![3]);
        assert_eq!(r.certificate, StabilityCertificate::Stabilized { at: 2, through: 4 });
    }
}
