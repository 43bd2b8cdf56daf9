//! Brute-force reference implementations. They deliberately share no code
//! with the main path beyond spec parsing and the generator lists.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::bset::{BSetSpec, BitWindow, Family};
use crate::error::{Error, Result};
use crate::holes::ResidueSet;
use crate::toeplitz::DirectToeplitzSpec;

/// Largest modulus the oracles scan.
pub const ORACLE_CAP: u64 = 5_000_000;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

fn realized(spec: &BSetSpec) -> Result<Vec<u64>> {
    spec.generators().iter().map(|g| g.value.to_u64().ok_or_else(|| Error::CapExceeded(format!("generator {} exceeds 64 bits", g.value)))).collect()
}

fn level_modulus(spec: &BSetSpec, n: usize) -> Result<u64> {
    let s = spec.level_set(n)?;
    let mut p = 1u64;
    for b in s.iter() {
        let b = b.to_u64().ok_or_else(|| Error::CapExceeded(format!("{b} exceeds 64 bits")))?;
        p = lcm(p, b).ok_or_else(|| Error::CapExceeded("lcm overflow".into()))?;
    }
    if p > ORACLE_CAP {
        return Err(Error::CapExceeded(format!("p_{n} = {p} exceeds the oracle cap {ORACLE_CAP}")));
    }
    Ok(p)
}

/// ℋ_n by deciding each class k + p_nℤ: constant 0 iff a generator dividing p_n
/// divides k; constant 1 iff no gcd(b, p_n) divides k. For explicit specs listing
/// all of ℬ the classes are scanned over one full period of η instead.
pub fn naive_holes(spec: &BSetSpec, n: usize) -> Result<ResidueSet> {
    let p = level_modulus(spec, n)?;
    let gens = realized(spec)?;
    if let Family::Explicit { elements } = &spec.family {
        if spec.horizon == elements.len() {
            return scan_explicit(&gens, p);
        }
    }
    if spec.horizon <= n + usize::from(spec.filtration == crate::bset::FiltrationChoice::Primed) {
        return Err(Error::InsufficientHorizon { position: format!("oracle needs generators beyond level {n}") });
    }
    let zero_mods: Vec<u64> = gens.iter().copied().filter(|b| p % b == 0).collect();
    let mut gcds: Vec<u64> = gens.iter().map(|&b| gcd(b, p)).collect();
    gcds.sort_unstable();
    gcds.dedup();
    let holes = (0..p).filter(|&k| {
        let const0 = zero_mods.iter().any(|&b| k % b == 0);
        let const1 = gcds.iter().all(|&g| k % g != 0);
        !const0 && !const1
    });
    ResidueSet::new(p, holes)
}

fn scan_explicit(gens: &[u64], p: u64) -> Result<ResidueSet> {
    let mut period = p;
    for &b in gens {
        period = lcm(period, b).ok_or_else(|| Error::CapExceeded("lcm overflow".into()))?;
    }
    if period > ORACLE_CAP {
        return Err(Error::CapExceeded(format!("period {period} exceeds the oracle cap")));
    }
    let eta: Vec<bool> = (0..period).map(|k| gens.iter().all(|&b| k % b != 0)).collect();
    let holes = (0..p).filter(|&k| {
        let first = eta[k as usize];
        (k..period).step_by(p as usize).any(|j| eta[j as usize] != first)
    });
    ResidueSet::new(p, holes)
}

/// Smallest d | m with the set invariant under +d (∅ has period 1).
pub fn naive_min_period(set: &ResidueSet) -> u64 {
    let m = set.modulus;
    let mut member = vec![false; m as usize];
    for &r in &set.residues {
        member[r as usize] = true;
    }
    (1..=m).filter(|d| m.is_multiple_of(*d)).find(|&d| (0..m).all(|r| member[r as usize] == member[((r + d) % m) as usize])).unwrap_or(m)
}

/// Distinct length-n substrings of the window.
pub fn naive_rho(bits: &BitWindow, n: usize) -> usize {
    let s: String = bits.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
    if n == 0 || n > s.len() {
        return usize::from(n == 0);
    }
    (0..=s.len() - n).map(|i| &s[i..i + n]).collect::<HashSet<_>>().len()
}

/// Residues k mod p_N whose class meets ℋ_n for every N ≤ n ≤ n_max.
pub fn naive_essential_holes(holes: &[ResidueSet], big_n: usize, n_max: usize) -> Result<ResidueSet> {
    if big_n == 0 || n_max < big_n || n_max > holes.len() {
        return Err(Error::InvalidInput(format!("levels {big_n}..={n_max} not available")));
    }
    let base = &holes[big_n - 1];
    let p = base.modulus;
    let mut keep: Vec<bool> = (0..p).map(|k| base.contains_residue(k)).collect();
    for h in &holes[big_n..n_max] {
        let mut hit = vec![false; p as usize];
        for &r in &h.residues {
            hit[(r % p) as usize] = true;
        }
        for (k, flag) in keep.iter_mut().enumerate() {
            *flag &= hit[k];
        }
    }
    ResidueSet::new(p, (0..p).filter(|&k| keep[k as usize]))
}

/// Holes of a directly specified sequence at level n by sampling each class at
/// `samples` positions resolved with a generous level budget.
pub fn naive_toeplitz_holes(spec: &DirectToeplitzSpec, n: usize, samples: u64) -> Result<ResidueSet> {
    let p = spec.period(n)?;
    if p > ORACLE_CAP {
        return Err(Error::CapExceeded(format!("p_{n} = {p} exceeds the oracle cap")));
    }
    let budget = spec.max_level();
    let mut holes = Vec::new();
    for r in 0..p {
        let mut seen = [false, false];
        let mut unresolved = false;
        for j in 0..samples {
            let x = (r + j * p) as i64;
            match spec.resolve(x, budget) {
                Some((b, _)) => seen[usize::from(b)] = true,
                None => unresolved = true,
            }
        }
        if (seen[0] && seen[1]) || unresolved {
            holes.push(r);
        }
    }
    ResidueSet::new(p, holes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holes_examples() {
        let b1 = BSetSpec::new(Family::B1 { c: vec![3, 5, 7, 11] }, 4, 100).unwrap();
        assert_eq!(naive_holes(&b1, 1).unwrap().residues, vec![2, 4]);
        let b1n = BSetSpec::new(Family::B1N { c: vec![3, 5, 7, 11], n: Some(2) }, 4, 100).unwrap();
        assert_eq!(naive_holes(&b1n, 1).unwrap().residues, vec![2, 4, 8, 10, 14, 16]);
        let c = vec![5, 7, 11, 13];
        let b2 = BSetSpec::new(Family::B2 { c: c.clone(), d: c }, 4, 100).unwrap();
        assert_eq!(naive_holes(&b2, 1).unwrap().len(), 16);
    }

    #[test]
    fn explicit_scan() {
        let spec = BSetSpec::new(Family::Explicit { elements: vec![4, 6] }, 2, 100).unwrap();
        // p_1 = 4: class 2 mod 4 holds 2 (free) and 6 (not)
        assert_eq!(naive_holes(&spec, 1).unwrap().residues, vec![2]);
    }

    #[test]
    fn periods() {
        assert_eq!(naive_min_period(&ResidueSet::new(6, [2, 4]).unwrap()), 6);
        assert_eq!(naive_min_period(&ResidueSet::new(6, [0, 3]).unwrap()), 3);
        assert_eq!(naive_min_period(&ResidueSet::empty(12)), 1);
    }

    #[test]
    fn rho() {
        let w = BitWindow::new(0, "0101010".chars().map(|c| c == '1').collect());
        assert_eq!(naive_rho(&w, 2), 2);
        assert_eq!(naive_rho(&BitWindow::new(0, vec![true; 9]), 4), 1);
    }

    #[test]
    fn gh_sampling() {
        let gh = DirectToeplitzSpec::GhVariant;
        assert_eq!(naive_toeplitz_holes(&gh, 1, 64).unwrap().residues, vec![3, 7]);
    }
}
