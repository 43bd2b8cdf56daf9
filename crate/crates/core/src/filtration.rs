//! Filtration levels S_n, ℓ_S, 𝒜_S with source classification, saturation.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{primitivize, IntSet};
use crate::bset::BSetSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceClass {
    MemberOfS,
    FiniteSource,
    InfiniteSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AEntry {
    #[serde(with = "crate::numfmt::num")]
    pub value: BigUint,
    pub class: SourceClass,
    /// Generators outside S realizing this value within the probe horizon.
    pub sources: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelData {
    pub n: usize,
    pub s: IntSet,
    #[serde(with = "crate::numfmt::num")]
    pub ell: BigUint,
    pub a: Vec<AEntry>,
    pub saturated: bool,
    /// Classification agrees with the one obtained from one fewer probe index.
    pub stable: bool,
    /// No structural guarantee backs the classification (explicit specs).
    pub heuristic: bool,
}

impl LevelData {
    pub fn a_set(&self) -> IntSet {
        IntSet::new(self.a.iter().map(|e| e.value.clone())).expect("positive")
    }

    /// 𝒜_S^∞.
    pub fn a_infinity(&self) -> IntSet {
        IntSet::new(self.a.iter().filter(|e| e.class == SourceClass::InfiniteSource).map(|e| e.value.clone())).expect("positive")
    }

    /// 𝒜_S^{∞,p}.
    pub fn a_infinity_prim(&self) -> IntSet {
        primitivize(&self.a_infinity())
    }

    /// 𝒜_S ∖ S.
    pub fn a_minus_s(&self) -> IntSet {
        IntSet::new(self.a.iter().filter(|e| e.class != SourceClass::MemberOfS).map(|e| e.value.clone())).expect("positive")
    }

    pub fn class_of(&self, a: &BigUint) -> Option<SourceClass> {
        self.a.iter().find(|e| &e.value == a).map(|e| e.class)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationOptions {
    pub stab_threshold: usize,
    /// Generator index used for source counting (defaults to the spec's horizon).
    pub probe_horizon: Option<usize>,
    pub level_cap: usize,
    pub saturate: bool,
}

impl Default for FiltrationOptions {
    fn default() -> Self {
        FiltrationOptions { stab_threshold: 3, probe_horizon: None, level_cap: 12, saturate: true }
    }
}

fn classify_counts(s: &IntSet, ell: &BigUint, gens: &[BigUint]) -> BTreeMap<BigUint, usize> {
    let mut counts: BTreeMap<BigUint, usize> = s.iter().map(|b| (b.clone(), 0)).collect();
    for b in gens {
        if s.contains(b) {
            continue;
        }
        *counts.entry(b.gcd(ell)).or_insert(0) += 1;
    }
    counts
}

fn entries(s: &IntSet, counts: &BTreeMap<BigUint, usize>, threshold: usize) -> Vec<AEntry> {
    counts
        .iter()
        .map(|(v, &c)| {
            let class = if s.contains(v) {
                SourceClass::MemberOfS
            } else if c >= threshold {
                SourceClass::InfiniteSource
            } else {
                SourceClass::FiniteSource
            };
            AEntry { value: v.clone(), class, sources: c }
        })
        .collect()
}

fn probe(spec: &BSetSpec, opts: &FiltrationOptions) -> Result<usize> {
    let h = opts.probe_horizon.unwrap_or(spec.horizon);
    if h < spec.horizon {
        return Err(Error::InvalidInput(format!("probe horizon {h} is below the spec horizon {}", spec.horizon)));
    }
    if h > spec.family.max_index() {
        return Err(Error::InvalidInput(format!("probe horizon {h} exceeds the supplied parameters")));
    }
    Ok(h)
}

fn gen_values(spec: &BSetSpec, h: usize) -> Vec<BigUint> {
    spec.family.generators_up_to(h).into_iter().map(|g| g.value).collect()
}

/// Tag 𝒜_S ∖ S by source counts within the probe horizon.
pub fn classify_a_infinity(level: &LevelData, spec: &BSetSpec, opts: &FiltrationOptions) -> Result<LevelData> {
    let h = probe(spec, opts)?;
    let counts = classify_counts(&level.s, &level.ell, &gen_values(spec, h));
    let a = entries(&level.s, &counts, opts.stab_threshold);
    let stable = if h > 1 {
        let prev = classify_counts(&level.s, &level.ell, &gen_values(spec, h - 1));
        let prev_a = entries(&level.s, &prev, opts.stab_threshold);
        let classes = |v: &[AEntry]| v.iter().map(|e| (e.value.clone(), e.class)).collect::<Vec<_>>();
        classes(&prev_a) == classes(&a)
    } else {
        false
    };
    Ok(LevelData { a, stable, heuristic: !spec.is_bfree_family(), ..level.clone() })
}

/// S^sat = 𝒜_S ∩ ℬ = {b ∈ ℬ : b | ℓ_S}.
pub fn saturate(level: &LevelData, spec: &BSetSpec, opts: &FiltrationOptions) -> Result<LevelData> {
    if !spec.excludes_unrealized_divisor(&level.ell) {
        return Err(Error::InsufficientHorizon { position: format!("ℓ_S = {}", level.ell) });
    }
    let sat = IntSet::new(spec.generators().into_iter().map(|g| g.value).filter(|b| (&level.ell % b) == BigUint::ZERO)).expect("positive");
    let base = LevelData { s: sat, saturated: true, ..level.clone() };
    classify_a_infinity(&base, spec, opts)
}

/// Plain level n of the spec's filtration, classified but not saturated.
pub fn raw_level(spec: &BSetSpec, n: usize, opts: &FiltrationOptions) -> Result<LevelData> {
    let s = spec.level_set(n)?;
    let ell = s.lcm();
    let level = LevelData { n, s, ell, a: Vec::new(), saturated: false, stable: false, heuristic: true };
    let mut level = classify_a_infinity(&level, spec, opts)?;
    // saturated means S already equals {b ∈ ℬ : b | ℓ_S}
    if spec.excludes_unrealized_divisor(&level.ell) {
        let sat_size = spec.generators().iter().filter(|g| (&level.ell % &g.value) == BigUint::ZERO).count();
        level.saturated = sat_size == level.s.len();
    }
    Ok(level)
}

/// Levels 1..=n_max of the spec's filtration (each saturated when requested).
pub fn default_filtration(spec: &BSetSpec, n_max: usize, opts: &FiltrationOptions) -> Result<Vec<LevelData>> {
    if n_max > opts.level_cap {
        return Err(Error::LevelCap { level: n_max, cap: opts.level_cap });
    }
    (1..=n_max)
        .map(|n| {
            let lvl = raw_level(spec, n, opts)?;
            if opts.saturate && !lvl.saturated {
                saturate(&lvl, spec, opts)
            } else {
                Ok(lvl)
            }
        })
        .collect()
}

/// Largest level whose 𝒜-classification can use `extra` generator indices beyond it.
pub fn max_level_with_slack(spec: &BSetSpec, extra: usize) -> usize {
    let primed = usize::from(spec.filtration == crate::bset::FiltrationChoice::Primed);
    spec.horizon.saturating_sub(extra + primed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bset::Family;
    use num_traits::ToPrimitive;

    fn vals(s: &IntSet) -> Vec<u64> {
        s.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    fn b1() -> BSetSpec {
        BSetSpec::new(Family::B1 { c: vec![3, 5, 7, 11, 13, 17, 19, 23] }, 8, 1000).unwrap()
    }

    #[test]
    fn levels_and_lcm() {
        let opts = FiltrationOptions::default();
        let l = default_filtration(&b1(), 2, &opts).unwrap();
        assert_eq!(vals(&l[1].s), vec![6, 20]);
        assert_eq!(l[1].ell, BigUint::from(60u32));
        let b1n = BSetSpec::new(Family::B1N { c: vec![3, 5, 7, 11, 13, 17], n: Some(2) }, 6, 100).unwrap();
        let l = default_filtration(&b1n, 1, &opts).unwrap();
        assert_eq!(vals(&l[0].s), vec![6, 9]);
        assert_eq!(l[0].ell, BigUint::from(18u32));
        let b2 = BSetSpec::new(Family::B2 { c: vec![5, 7, 11, 13, 17, 19], d: vec![5, 7, 11, 13, 17, 19] }, 6, 100).unwrap();
        let l = default_filtration(&b2, 1, &opts).unwrap();
        assert_eq!(vals(&l[0].s), vec![10, 15]);
        assert_eq!(l[0].ell, BigUint::from(30u32));
        assert!(l[0].saturated);
        assert_eq!(vals(&l[0].a_infinity()), vec![2, 3]);
    }

    #[test]
    fn classification_b1() {
        let l = default_filtration(&b1(), 2, &FiltrationOptions::default()).unwrap();
        assert_eq!(vals(&l[1].a_infinity()), vec![4]);
        assert_eq!(vals(&l[1].a_infinity_prim()), vec![4]);
        assert!(l[1].stable);
    }

    #[test]
    fn saturation_examples() {
        let opts = FiltrationOptions::default();
        let spec = BSetSpec::new(Family::Explicit { elements: vec![6, 9, 20] }, 3, 100).unwrap();
        let lvl = raw_level(&spec, 1, &opts).unwrap();
        let sat = saturate(&lvl, &spec, &opts).unwrap();
        assert_eq!(vals(&sat.s), vec![6]);
        assert_eq!(saturate(&sat, &spec, &opts).unwrap().s, sat.s);
        let lvl = raw_level(&b1(), 1, &opts).unwrap();
        assert_eq!(vals(&saturate(&lvl, &b1(), &opts).unwrap().s), vec![6]);
        // {4, 6} truncated at 4: S = {4} has ℓ = 4 and no other divisor in ℬ
        let spec = BSetSpec::new(Family::Explicit { elements: vec![12, 4, 6] }, 3, 100);
        assert!(spec.is_err(), "not primitive");
        let spec = BSetSpec::new(Family::Explicit { elements: vec![12, 8, 9] }, 3, 100).unwrap();
        let lvl = raw_level(&spec, 1, &opts).unwrap();
        assert!(lvl.saturated);
        assert_eq!(lvl.ell, BigUint::from(12u32));
        let spec = BSetSpec::new(Family::Explicit { elements: vec![6, 10, 15] }, 3, 100).unwrap();
        let lvl = raw_level(&spec, 2, &opts).unwrap();
        assert!(!lvl.saturated);
        let sat = saturate(&lvl, &spec, &opts).unwrap();
        assert_eq!(vals(&sat.s), vec![6, 10, 15]);
        assert_eq!(sat.ell, lvl.ell);
    }
}
