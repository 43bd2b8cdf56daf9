//! Arithmetic description of essential holes via (a,𝒜)-sequences.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{primitivize, IntSet};
use crate::bset::BSetSpec;
use crate::error::{Error, Result};
use crate::filtration::LevelData;
use crate::holes::GcdClassSet;

/// Combination cap for S_N(a).
pub const COMBINATION_CAP: usize = 100_000;

/// a_N, a_{N+1}, …, a_{N+depth}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AASequence {
    pub start_level: usize,
    #[serde(with = "crate::numfmt::vec")]
    pub values: Vec<BigUint>,
}

impl AASequence {
    pub fn depth(&self) -> usize {
        self.values.len() - 1
    }
}

fn level(levels: &[LevelData], n: usize) -> Result<&LevelData> {
    levels.get(n.wrapping_sub(1)).ok_or_else(|| Error::InvalidInput(format!("level {n} not computed")))
}

/// All (a,𝒜)-sequences of the given depth. Branches only through values
/// classified infinite-source: a value with finitely many sources cannot
/// continue an infinite sequence (its sources are eventually absorbed into S_n).
pub fn enumerate_aa_sequences(levels: &[LevelData], n: usize, a: &BigUint, depth: usize) -> Result<Vec<AASequence>> {
    let base = level(levels, n)?;
    if !base.a_infinity().contains(a) {
        return Err(Error::Precondition(format!("{a} is not classified in 𝒜^∞ at level {n}")));
    }
    level(levels, n + depth)?;
    let mut paths: Vec<Vec<BigUint>> = vec![vec![a.clone()]];
    for m in (n + 1)..=(n + depth) {
        let prev_ell = &level(levels, m - 1)?.ell;
        let cands = level(levels, m)?.a_infinity();
        let mut next = Vec::new();
        for p in &paths {
            let last = p.last().expect("nonempty");
            for c in cands.iter().filter(|c| &c.gcd(prev_ell) == last) {
                let mut q = p.clone();
                q.push(c.clone());
                next.push(q);
            }
        }
        paths = next;
    }
    Ok(paths.into_iter().map(|values| AASequence { start_level: n, values }).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SOfSequence {
    pub set: IntSet,
    /// The defining quantifier over all n ≥ N was cut at the sequence depth.
    pub truncated: bool,
}

/// {gcd(b, ℓ_{S_N}) : b ∈ ℬ, b | a_n ∨ ℓ_{S_N} for some n}.
pub fn s_of_sequence(seq: &AASequence, levels: &[LevelData], spec: &BSetSpec) -> Result<SOfSequence> {
    let ell = &level(levels, seq.start_level)?.ell;
    let gens = spec.generators();
    let mut out = BTreeSet::new();
    for a_n in &seq.values {
        let x = a_n.lcm(ell);
        if !spec.excludes_unrealized_divisor(&x) {
            return Err(Error::InsufficientHorizon { position: format!("divisor bound {x}") });
        }
        for g in gens.iter().filter(|g| (&x % &g.value).is_zero()) {
            out.insert(g.value.gcd(ell));
        }
    }
    Ok(SOfSequence { set: IntSet::new(out)?, truncated: true })
}

/// S_N(a): primitivization of all lcm-combinations c_1 ∨ … ∨ c_r, c_i ∈ S_N((a_n)^{(i)}).
pub fn s_of_a(levels: &[LevelData], n: usize, a: &BigUint, depth: usize, spec: &BSetSpec) -> Result<(IntSet, Vec<AASequence>)> {
    let seqs = enumerate_aa_sequences(levels, n, a, depth)?;
    if seqs.is_empty() {
        return Err(Error::EmptyComponent { a: a.to_string() });
    }
    let rs: Vec<IntSet> = seqs.iter().map(|s| s_of_sequence(s, levels, spec).map(|r| r.set)).collect::<Result<_>>()?;
    let total: usize = rs
        .iter()
        .try_fold(1usize, |acc, r| acc.checked_mul(r.len()).filter(|&t| t <= COMBINATION_CAP))
        .ok_or_else(|| Error::CapExceeded(format!("more than {COMBINATION_CAP} lcm combinations for a = {a}")))?;
    let mut combos: BTreeSet<BigUint> = BTreeSet::new();
    let mut idx = vec![0usize; rs.len()];
    for _ in 0..total {
        let l = idx.iter().zip(&rs).fold(BigUint::from(1u32), |acc, (&i, r)| acc.lcm(&r.as_slice()[i]));
        combos.insert(l);
        for (k, r) in idx.iter_mut().zip(&rs) {
            *k += 1;
            if *k < r.len() {
                break;
            }
            *k = 0;
        }
    }
    Ok((primitivize(&IntSet::new(combos)?), seqs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(with = "crate::numfmt::num")]
    pub a: BigUint,
    pub s_of_a: IntSet,
    pub sequences: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticEssential {
    pub set: GcdClassSet,
    pub components: Vec<Component>,
    pub depth: usize,
    /// Same set at depth − 1 (the depth budget was not binding).
    pub depth_stable: bool,
}

fn assemble(levels: &[LevelData], n: usize, depth: usize, spec: &BSetSpec) -> Result<(GcdClassSet, Vec<Component>)> {
    let base = level(levels, n)?;
    let p = &base.ell;
    let mut comps = Vec::new();
    let mut classes: Option<GcdClassSet> = None;
    for a in base.a_infinity().iter() {
        let (sa, seqs) = s_of_a(levels, n, a, depth, spec)?;
        if sa.iter().any(|c| (a % c).is_zero()) {
            return Err(Error::EmptyComponent { a: a.to_string() });
        }
        let part = GcdClassSet::multiples_difference(p, &IntSet::new([a.clone()])?, &sa);
        classes = Some(match classes {
            None => part,
            Some(acc) => acc.union(&part)?,
        });
        comps.push(Component { a: a.clone(), s_of_a: sa, sequences: seqs.len() });
    }
    let set = classes.unwrap_or_else(|| GcdClassSet::from_predicate(p, |_| false));
    Ok((set, comps))
}

/// ⋃_{a ∈ 𝒜^∞_{S_N}} aℤ ∖ ℳ_{S_N(a)} modulo p_N.
pub fn essential_holes_arithmetic(levels: &[LevelData], n: usize, depth: usize, spec: &BSetSpec) -> Result<ArithmeticEssential> {
    let (set, components) = assemble(levels, n, depth, spec)?;
    let depth_stable = if depth >= 1 { assemble(levels, n, depth - 1, spec)?.0 == set } else { false };
    Ok(ArithmeticEssential { set, components, depth, depth_stable })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortcutWitness {
    pub n: usize,
    #[serde(with = "crate::numfmt::num")]
    pub a_prime: BigUint,
    #[serde(with = "crate::numfmt::num")]
    pub b: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortcutVerdict {
    pub holds: bool,
    pub witness: Option<ShortcutWitness>,
    /// Every divisor bound ℓ_{S_N} ∨ a' was provably covered by realized generators.
    pub certified: bool,
}

/// Checks that no b ∈ ℬ ∖ S_N divides ℓ_{S_N} ∨ a' for a' ∈ 𝒜^∞_{S_n}, N < n ≤ n_max.
pub fn gh_shortcut_check(levels: &[LevelData], n: usize, n_max: usize, spec: &BSetSpec) -> Result<ShortcutVerdict> {
    let base = level(levels, n)?;
    let gens = spec.generators();
    let mut certified = true;
    for m in (n + 1)..=n_max {
        let lvl = level(levels, m)?;
        if !lvl.saturated {
            return Err(Error::Unsaturated(m));
        }
        for a in lvl.a_infinity().iter() {
            let x = base.ell.lcm(a);
            certified &= spec.excludes_unrealized_divisor(&x);
            if let Some(g) = gens.iter().find(|g| !base.s.contains(&g.value) && (&x % &g.value).is_zero()) {
                return Ok(ShortcutVerdict { holds: false, witness: Some(ShortcutWitness { n: m, a_prime: a.clone(), b: g.value.clone() }), certified: true });
            }
        }
    }
    Ok(ShortcutVerdict { holds: true, witness: None, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bset::Family;
    use crate::filtration::{default_filtration, FiltrationOptions};
    use crate::holes::{essential_holes_iterative, holes_level};
    use num_traits::ToPrimitive;

    fn vals(s: &IntSet) -> Vec<u64> {
        s.iter().map(|x| x.to_u64().unwrap()).collect()
    }
    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }
    fn primes(k: usize) -> Vec<u64> {
        (5u64..).filter(|p| (2..*p).all(|d| p % d != 0)).take(k).collect()
    }

    #[test]
    fn b1_sequences() {
        let spec = BSetSpec::new(Family::B1 { c: vec![3, 5, 7, 11, 13, 17, 19, 23] }, 8, 100).unwrap();
        let levels = default_filtration(&spec, 4, &FiltrationOptions::default()).unwrap();
        let seqs = enumerate_aa_sequences(&levels, 1, &b(2), 2).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].values, vec![b(2), b(4), b(8)]);
        let r = s_of_sequence(&seqs[0], &levels, &spec).unwrap();
        assert_eq!(vals(&r.set), vec![6]);
        let (sa, _) = s_of_a(&levels, 1, &b(2), 2, &spec).unwrap();
        assert_eq!(vals(&sa), vec![6]);
        let ar = essential_holes_arithmetic(&levels, 1, 2, &spec).unwrap();
        assert_eq!(ar.set.to_residue_set(100).unwrap().residues, vec![2, 4]);
        assert!(gh_shortcut_check(&levels, 1, 3, &spec).unwrap().holds);
    }

    #[test]
    fn b2_sequences() {
        let c = primes(8);
        let spec = BSetSpec::new(Family::B2 { c: c.clone(), d: c }, 8, 100).unwrap();
        let levels = default_filtration(&spec, 4, &FiltrationOptions::default()).unwrap();
        let seqs = enumerate_aa_sequences(&levels, 1, &b(2), 2).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].values, vec![b(2), b(4), b(8)]);
        let seqs = enumerate_aa_sequences(&levels, 1, &b(3), 1).unwrap();
        assert_eq!(seqs[0].values, vec![b(3), b(9)]);
        let (sa, _) = s_of_a(&levels, 1, &b(2), 2, &spec).unwrap();
        assert_eq!(vals(&sa), vec![10, 15]);
        assert!(gh_shortcut_check(&levels, 1, 3, &spec).unwrap().holds);
        let ar = essential_holes_arithmetic(&levels, 1, 2, &spec).unwrap();
        let it = essential_holes_iterative(&levels, 1, 4, 2).unwrap();
        assert_eq!(ar.set, it.set);
        assert_eq!(ar.set, holes_level(&levels[0]).unwrap());
        assert_eq!(ar.set.count(), b(16));
    }
}
