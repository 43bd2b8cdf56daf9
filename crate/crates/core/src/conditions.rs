//! Finite-level checks of the hole conditions, (TI), totient sums and the
//! centralizer report.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, crt, factorize, IntSet};
use crate::error::Result;
use crate::holes::{GcdClassSet, ResidueSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsUpToBudget,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// x and x + k both lie in ℋ_n.
    ShiftedHoles {
        k: i64,
        n: usize,
        #[serde(with = "crate::numfmt::num")]
        x: BigInt,
    },
    /// ∅ ≠ (r + p_Nℤ) ∩ ℋ̃_n ⊆ ℋ̃_n − k for all checked n.
    Progression { k: i64, level: usize, r: u64, through: usize },
    /// Same with the β-twisted sets, β_n listed per level.
    TwistedProgression { k: i64, level: usize, r: u64, betas: Vec<u64> },
    /// Block s of length p_n breaks the dichotomy of condition (*).
    StarBlock { n: usize, s: u64 },
    /// gcd(A_n) has stopped growing.
    GcdPlateau {
        from_level: usize,
        #[serde(with = "crate::numfmt::num")]
        gcd: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub k_max: Option<i64>,
    pub level_max: Option<usize>,
    pub n_max: usize,
    pub beta_nodes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub budget: Budget,
    pub notes: Vec<String>,
}

/// A level's hole set in either representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HoleSet {
    Residues(ResidueSet),
    Classes(GcdClassSet),
}

impl HoleSet {
    pub fn modulus(&self) -> BigUint {
        match self {
            HoleSet::Residues(r) => BigUint::from(r.modulus),
            HoleSet::Classes(c) => c.modulus.clone(),
        }
    }

    pub fn contains(&self, k: &BigInt) -> bool {
        match self {
            HoleSet::Residues(r) => r.contains_residue(arith::mod_floor(k, &BigUint::from(r.modulus)).to_u64().expect("below modulus")),
            HoleSet::Classes(c) => c.contains(k),
        }
    }

    pub fn to_residues(&self, cap: u64) -> Result<ResidueSet> {
        match self {
            HoleSet::Residues(r) => Ok(r.clone()),
            HoleSet::Classes(c) => c.to_residue_set(cap),
        }
    }

    /// Some x with x ∈ H and x + k ∈ H.
    pub fn shift_witness(&self, k: i64) -> Option<BigInt> {
        match self {
            HoleSet::Residues(r) => r.residues.iter().find(|&&x| r.contains(x as i64 + k)).map(|&x| BigInt::from(x)),
            HoleSet::Classes(c) => class_shift_witness(c, k),
        }
    }
}

fn valuation(x: &BigUint, p: &BigUint, e: u32) -> u32 {
    let mut v = 0;
    let mut y = x.clone();
    while v < e && !y.is_zero() && (&y % p).is_zero() {
        y /= p;
        v += 1;
    }
    if y.is_zero() {
        e
    } else {
        v
    }
}

/// Exact search for x with gcd(x, p), gcd(x + k, p) both in the class set:
/// per prime power p_i^{e_i} ∥ p, the feasible valuation pairs (v(x), v(x+k))
/// (capped at e_i) are enumerated with a representative residue; a pair of
/// classes is realizable iff every prime admits its valuation pair, and CRT
/// assembles the witness.
fn class_shift_witness(set: &GcdClassSet, k: i64) -> Option<BigInt> {
    let p = &set.modulus;
    let fact = factorize(p);
    let mut feasible: Vec<BTreeMap<(u32, u32), BigUint>> = Vec::new();
    for (q, e) in &fact {
        let pe = q.pow(*e);
        let pe_u = pe.to_u64().expect("prime powers in scope fit in u64");
        let mut map = BTreeMap::new();
        for x in 0..pe_u {
            let xk = BigUint::from((x as i128 + k as i128).rem_euclid(pe_u as i128) as u64);
            let key = (valuation(&BigUint::from(x), q, *e), valuation(&xk, q, *e));
            map.entry(key).or_insert_with(|| BigUint::from(x));
            if map.len() as u32 == (e + 1) * (e + 1) {
                break;
            }
        }
        feasible.push(map);
    }
    let vals = |g: &BigUint| -> Vec<u32> { fact.iter().map(|(q, e)| valuation(g, q, *e)).collect() };
    let classes: Vec<(BigUint, Vec<u32>)> = set.classes.iter().map(|g| (g.clone(), vals(g))).collect();
    for (_, v1) in &classes {
        for (_, v2) in &classes {
            let reps: Option<Vec<&BigUint>> = feasible.iter().zip(v1.iter().zip(v2)).map(|(m, (&a, &b))| m.get(&(a, b))).collect();
            if let Some(reps) = reps {
                let system: Vec<(BigInt, BigUint)> = reps.iter().zip(&fact).map(|(r, (q, e))| (BigInt::from((*r).clone()), q.pow(*e))).collect();
                let (x, _) = crt(&system).expect("coprime prime powers");
                return Some(BigInt::from(x));
            }
        }
    }
    None
}

/// (Sh): ℋ_n ∩ (ℋ_n − k) = ∅ from some level on (checked up to n_max).
/// `holes[i]` is level i+1.
pub fn check_sh(holes: &[HoleSet], k_max: i64, n_max: usize) -> ConditionVerdict {
    let n_max = n_max.min(holes.len());
    let mut witnesses = Vec::new();
    let mut notes = Vec::new();
    // symmetric in k: x, x+k ∈ ℋ ⇔ y = x+k, y−k ∈ ℋ
    for k in 1..=k_max {
        let per_level: Vec<Option<BigInt>> = holes[..n_max].iter().map(|h| h.shift_witness(k)).collect();
        let last_bad = per_level.iter().rposition(|w| w.is_some());
        match last_bad {
            None => notes.push(format!("k=±{k}: empty from level 1")),
            Some(i) if i + 1 < n_max => notes.push(format!("k=±{k}: empty from level {}", i + 2)),
            Some(_) => {
                notes.push(format!("k=±{k}: nonempty at level {n_max}"));
                for (i, w) in per_level.into_iter().enumerate() {
                    if let Some(x) = w {
                        witnesses.push(Witness::ShiftedHoles { k, n: i + 1, x });
                    }
                }
            }
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::HoldsUpToBudget } else { Verdict::Violated };
    ConditionVerdict { condition: "Sh".into(), verdict, witnesses, budget: Budget { k_max: Some(k_max), level_max: None, n_max, beta_nodes: None }, notes }
}

/// How β is searched in the twisted check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaMode {
    Zero,
    Enumerate { node_budget: usize },
}

/// Residues y ∈ ℋ̃_n with y ≡ r (mod p_N), grouped by r.
fn fibers(ess: &ResidueSet, p_small: u64) -> BTreeMap<u64, Vec<u64>> {
    let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &y in &ess.residues {
        out.entry(y % p_small).or_default().push(y);
    }
    out
}

fn twisted_ok(ess: &ResidueSet, ys: &[u64], beta: u64, k: i64) -> bool {
    ys.iter().all(|&y| {
        let p = ess.modulus as i128;
        let a = (y as i128 + beta as i128).rem_euclid(p) as u64;
        let b = (y as i128 + 2 * beta as i128 + k as i128).rem_euclid(p) as u64;
        ess.contains_residue(a) && ess.contains_residue(b)
    })
}

/// (DSeh') violation search; `BetaMode::Zero` reduces it to (Seh').
/// `ess[i]` is ℋ̃_{i+1} as explicit residues.
pub fn check_dseh_prime(ess: &[ResidueSet], k_max: i64, level_max: usize, n_max: usize, mode: BetaMode) -> ConditionVerdict {
    let n_max = n_max.min(ess.len());
    let level_max = level_max.min(n_max);
    let mut witnesses = Vec::new();
    let mut nodes = 0usize;
    let mut exhausted = false;
    'outer: for level in 1..=level_max {
        let p_small = ess[level - 1].modulus;
        let fib: Vec<BTreeMap<u64, Vec<u64>>> = (level..=n_max).map(|n| fibers(&ess[n - 1], p_small)).collect();
        for k in (-k_max..=k_max).filter(|&k| k != 0) {
            for &r in &ess[level - 1].residues {
                // nonemptiness of each fiber does not depend on β
                let ys: Option<Vec<&Vec<u64>>> = fib.iter().map(|f| f.get(&r)).collect();
                let Some(ys) = ys else { continue };
                let found = match mode {
                    BetaMode::Zero => {
                        let ok = ys.iter().zip(level..=n_max).all(|(y, n)| twisted_ok(&ess[n - 1], y, 0, k));
                        ok.then(Vec::new)
                    }
                    BetaMode::Enumerate { node_budget } => match beta_search(ess, &ys, level, n_max, k, &mut nodes, node_budget) {
                        Ok(found) => found,
                        Err(()) => {
                            exhausted = true;
                            break 'outer;
                        }
                    },
                };
                if let Some(betas) = found {
                    witnesses.push(match mode {
                        BetaMode::Zero => Witness::Progression { k, level, r, through: n_max },
                        BetaMode::Enumerate { .. } => Witness::TwistedProgression { k, level, r, betas },
                    });
                }
            }
        }
    }
    let (name, beta_nodes) = match mode {
        BetaMode::Zero => ("Seh'", None),
        BetaMode::Enumerate { node_budget } => ("DSeh'", Some(node_budget)),
    };
    let verdict = if !witnesses.is_empty() {
        Verdict::Violated
    } else if exhausted {
        Verdict::Inconclusive
    } else {
        Verdict::HoldsUpToBudget
    };
    let mut notes = vec!["violations are finite-level candidates only".to_string()];
    if exhausted {
        notes.push(format!("β search stopped after {nodes} nodes"));
    }
    ConditionVerdict { condition: name.into(), verdict, witnesses, budget: Budget { k_max: Some(k_max), level_max: Some(level_max), n_max, beta_nodes }, notes }
}

/// DFS over coherent β tuples; Ok(Some(betas)) on a full chain, Err on budget exhaustion.
fn beta_search(
    ess: &[ResidueSet],
    ys: &[&Vec<u64>],
    level: usize,
    n_max: usize,
    k: i64,
    nodes: &mut usize,
    budget: usize,
) -> std::result::Result<Option<Vec<u64>>, ()> {
    let mut stack: Vec<Vec<u64>> = (0..ess[level - 1].modulus).rev().map(|b| vec![b]).collect();
    while let Some(betas) = stack.pop() {
        *nodes += 1;
        if *nodes > budget {
            return Err(());
        }
        let n = level + betas.len() - 1;
        let beta = *betas.last().expect("nonempty");
        if !twisted_ok(&ess[n - 1], ys[betas.len() - 1], beta, k) {
            continue;
        }
        if n == n_max {
            return Ok(Some(betas));
        }
        let (p_cur, p_next) = (ess[n - 1].modulus, ess[n].modulus);
        for j in (0..p_next / p_cur).rev() {
            let mut next = betas.clone();
            next.push(beta + j * p_cur);
            stack.push(next);
        }
    }
    Ok(None)
}

/// (Seh') on explicit essential-hole residues.
pub fn check_seh_prime(ess: &[ResidueSet], k_max: i64, level_max: usize, n_max: usize) -> ConditionVerdict {
    check_dseh_prime(ess, k_max, level_max, n_max, BetaMode::Zero)
}

/// Condition (*): each length-p_n block keeps all its level-n holes at level n+1
/// or contains no level-(n+1) hole.
pub fn check_condition_star(holes: &[ResidueSet], n_max: usize) -> ConditionVerdict {
    let n_max = n_max.min(holes.len());
    let mut witnesses = Vec::new();
    for n in 1..n_max {
        let (h, h1) = (&holes[n - 1], &holes[n]);
        let (p, p1) = (h.modulus, h1.modulus);
        for s in 0..p1 / p {
            let lo = s * p;
            let kept = h.residues.iter().all(|&r| h1.contains_residue(lo + r));
            let none = !h1.residues.iter().any(|&r| r >= lo && r < lo + p);
            if !kept && !none {
                witnesses.push(Witness::StarBlock { n, s });
                break;
            }
        }
    }
    ConditionVerdict {
        condition: "*".into(),
        verdict: if witnesses.is_empty() { Verdict::HoldsUpToBudget } else { Verdict::Violated },
        witnesses,
        budget: Budget { k_max: None, level_max: None, n_max, beta_nodes: None },
        notes: Vec::new(),
    }
}

fn set_gcd(a: &IntSet) -> BigUint {
    a.iter().fold(BigUint::zero(), |g, x| g.gcd(x))
}

/// (TI) through the chain gcd(A_n): `a_sets[i]` is A_{i+1}, `ess` the matching
/// essential holes used to confirm ℋ̃_n ⊆ ℳ_{A_n}.
pub fn check_ti(a_sets: &[IntSet], ess: &[GcdClassSet], threshold: &BigUint) -> ConditionVerdict {
    let n_max = a_sets.len();
    let gcds: Vec<BigUint> = a_sets.iter().map(set_gcd).collect();
    let budget = Budget { k_max: None, level_max: None, n_max, beta_nodes: None };
    let mut notes = vec![format!("gcd(A_n) = {}", gcds.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))];
    let chain = gcds.windows(2).all(|w| !w[0].is_zero() && (&w[1] % &w[0]).is_zero() && w[1] > w[0]);
    if n_max >= 2 && chain && gcds.last().is_some_and(|g| g >= threshold) {
        return ConditionVerdict { condition: "TI".into(), verdict: Verdict::HoldsUpToBudget, witnesses: Vec::new(), budget, notes };
    }
    if n_max >= 2 && gcds[n_max - 1] == gcds[n_max - 2] && !gcds[n_max - 1].is_zero() {
        let from = gcds.iter().position(|g| g == &gcds[n_max - 1]).expect("present") + 1;
        let inside = ess.iter().zip(a_sets).all(|(e, a)| e.classes.iter().all(|g| a.iter().any(|x| (g % x).is_zero())));
        if inside {
            return ConditionVerdict {
                condition: "TI".into(),
                verdict: Verdict::Violated,
                witnesses: vec![Witness::GcdPlateau { from_level: from, gcd: gcds[n_max - 1].clone() }],
                budget,
                notes,
            };
        }
        notes.push("gcd plateau, but ℋ̃_n ⊆ ℳ_{A_n} was not confirmed".into());
    }
    ConditionVerdict { condition: "TI".into(), verdict: Verdict::Inconclusive, witnesses: Vec::new(), budget, notes }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotientSums {
    /// Σ_{a' ∈ A} 1/φ(a').
    #[serde(with = "crate::numfmt::num")]
    pub total: BigRational,
    /// For each a: Σ_{a' ∈ A∖{a}} 1/φ(a'^{÷a}).
    #[serde(with = "crate::numfmt::pairs")]
    pub per_a: Vec<(BigUint, BigRational)>,
}

pub fn totient_sums(a: &IntSet) -> TotientSums {
    let inv_phi = |x: &BigUint| BigRational::new(BigInt::one(), BigInt::from(arith::totient(x)));
    let total = a.iter().map(inv_phi).fold(BigRational::zero(), |s, t| s + t);
    let per_a = a
        .iter()
        .map(|x| {
            let sum = a.iter().filter(|y| *y != x).map(|y| inv_phi(&(y / y.gcd(x)))).fold(BigRational::zero(), |s, t| s + t);
            (x.clone(), sum)
        })
        .collect();
    TotientSums { total, per_a }
}

/// 1 − ∏_{a ∈ A}(1 − 1/a), an upper bound for the Haar measure of ∂W.
pub fn heilbronn_rohrbach_bound(a_prim: &IntSet) -> BigRational {
    let prod = a_prim.iter().fold(BigRational::one(), |acc, a| {
        let a = BigInt::from(a.clone());
        acc * BigRational::new(&a - 1, a)
    });
    BigRational::one() - prod
}

/// Connected components of the gcd graph on A (edge iff gcd > 2m).
pub fn gcd_graph_components(a: &IntSet, m: u64) -> usize {
    let v = a.as_slice();
    let mut parent: Vec<usize> = (0..v.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let bound = BigUint::from(2 * m);
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if v[i].gcd(&v[j]) > bound {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..v.len()).map(|i| find(&mut parent, i)).collect::<HashSet<_>>().len()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralizerRow {
    pub n: usize,
    #[serde(with = "crate::numfmt::num")]
    pub p_n: BigUint,
    #[serde(with = "crate::numfmt::num")]
    pub tau_tilde: BigUint,
    #[serde(with = "crate::numfmt::num")]
    pub ratio: BigUint,
    #[serde(with = "crate::numfmt::num")]
    pub essential_count: BigUint,
    /// (|ℋ̃_n ∩ [0,p_n)| / p_n) · √p_n, the density criterion's normalized value.
    pub density_vs_sqrt: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CentralizerConclusion {
    Trivial {
        conditional_on: Vec<String>,
    },
    TorsionDivides {
        #[serde(with = "crate::numfmt::num")]
        m: BigUint,
        conditional_on: Vec<String>,
    },
    Undetermined {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub rows: Vec<CentralizerRow>,
    /// Minimum of p_n/τ̃_n over computed levels (a proxy for the liminf).
    #[serde(with = "crate::numfmt::num")]
    pub m_hat: BigUint,
    pub ti: Option<ConditionVerdict>,
    pub totient_trend_ok: Option<bool>,
    pub graph_components: Option<usize>,
    pub conclusion: CentralizerConclusion,
    pub notes: Vec<String>,
}

/// Inputs per level n = 1, 2, …
pub struct CentralizerInput {
    pub periods: Vec<BigUint>,
    pub tau_tilde: Vec<BigUint>,
    pub essential_counts: Vec<BigUint>,
    /// Classified A_n = 𝒜^∞_{S_n} with ℋ̃_n as class sets (ℬ-free inputs only).
    pub arithmetic: Option<(Vec<IntSet>, Vec<GcdClassSet>)>,
    /// Block-code radius for the gcd-graph criterion.
    pub radius: u64,
}

/// The largest per-a totient sum decreases strictly across levels (or is identically 0).
pub fn totient_trend(a_sets: &[IntSet]) -> bool {
    let maxima: Vec<BigRational> = a_sets.iter().map(|a| totient_sums(a).per_a.into_iter().map(|(_, s)| s).max().unwrap_or_else(BigRational::zero)).collect();
    let all_zero = maxima.iter().all(|m| m.is_zero());
    let decreasing = maxima.windows(2).all(|w| w[1] < w[0]);
    all_zero || (maxima.len() >= 2 && decreasing)
}

pub fn centralizer_report(input: &CentralizerInput) -> CentralizerReport {
    let rows: Vec<CentralizerRow> = input
        .periods
        .iter()
        .zip(&input.tau_tilde)
        .zip(&input.essential_counts)
        .enumerate()
        .map(|(i, ((p, t), c))| {
            let dens = c.to_f64().unwrap_or(f64::INFINITY) / p.to_f64().unwrap_or(f64::INFINITY);
            CentralizerRow {
                n: i + 1,
                p_n: p.clone(),
                tau_tilde: t.clone(),
                ratio: p / t,
                essential_count: c.clone(),
                density_vs_sqrt: dens * p.to_f64().unwrap_or(f64::INFINITY).sqrt(),
            }
        })
        .collect();
    let m_hat = rows.iter().map(|r| r.ratio.clone()).min().unwrap_or_else(BigUint::one);
    let all_full = rows.iter().all(|r| r.ratio.is_one());
    let mut notes = vec![format!("M̂ = {m_hat} is the minimum over {} computed levels", rows.len())];
    let mut conditional = vec!["classification and essential holes are certified only over the computed levels".to_string()];

    let (ti, trend, comps, hypothesis) = match &input.arithmetic {
        Some((a_sets, ess)) => {
            let ti = check_ti(a_sets, ess, &BigUint::from(2u32));
            let trend = totient_trend(a_sets);
            let comps = a_sets.last().map(|a| gcd_graph_components(a, input.radius)).unwrap_or(0);
            let hypothesis = if ti.verdict == Verdict::HoldsUpToBudget {
                Ok(())
            } else if trend {
                if comps <= 1 {
                    Ok(())
                } else {
                    conditional.push(format!("|K| = 1 (the gcd-graph criterion with m = {} is inconclusive: {comps} components)", input.radius));
                    Ok(())
                }
            } else {
                Err("neither (TI) nor the totient-sum hypothesis holds over the computed levels".to_string())
            };
            (Some(ti), Some(trend), Some(comps), hypothesis)
        }
        None => {
            let decreasing = rows.windows(2).all(|w| w[1].density_vs_sqrt < w[0].density_vs_sqrt);
            notes.push("density route: |ℋ̃_n|/p_n compared with 1/√p_n".into());
            if decreasing && rows.len() >= 2 {
                conditional.push("𝛅(ℋ̃_n) = o(1/√p_n), evidenced by a decreasing normalized density".into());
                (None, None, None, Ok(()))
            } else {
                (None, None, None, Err("density criterion not evidenced".to_string()))
            }
        }
    };
    let conclusion = match hypothesis {
        Err(reason) => CentralizerConclusion::Undetermined { reason },
        Ok(()) if all_full => CentralizerConclusion::Trivial { conditional_on: conditional },
        Ok(()) => CentralizerConclusion::TorsionDivides { m: m_hat.clone(), conditional_on: conditional },
    };
    CentralizerReport { rows, m_hat, ti, totient_trend_ok: trend, graph_components: comps, conclusion, notes }
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
    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn totients() {
        let t = totient_sums(&s(&[4, 9]));
        assert_eq!(t.per_a[0], (b(4), q(1, 6)));
        assert_eq!(totient_sums(&s(&[2, 3])).total, q(3, 2));
        assert_eq!(totient_sums(&s(&[8])).per_a[0].1, q(0, 1));
    }

    #[test]
    fn hr_bound() {
        assert_eq!(heilbronn_rohrbach_bound(&s(&[8])), q(1, 8));
        assert_eq!(heilbronn_rohrbach_bound(&s(&[4, 9])), q(1, 3));
        assert_eq!(heilbronn_rohrbach_bound(&s(&[])), q(0, 1));
    }

    #[test]
    fn class_shift_witness_matches_scan() {
        // (2ℤ ∪ 3ℤ) ∖ (10ℤ ∪ 15ℤ) mod 30 has the adjacent pair 2, 3
        let set = GcdClassSet::multiples_difference(&b(30), &s(&[2, 3]), &s(&[10, 15]));
        let h = HoleSet::Classes(set.clone());
        let x = h.shift_witness(1).unwrap();
        assert!(h.contains(&x) && h.contains(&(&x + 1)));
        let rs = HoleSet::Residues(set.to_residue_set(100).unwrap());
        assert_eq!(rs.shift_witness(1), Some(BigInt::from(2)));
        // 2ℤ ∖ 6ℤ has no odd gaps
        let even = HoleSet::Classes(GcdClassSet::multiples_difference(&b(6), &s(&[2]), &s(&[6])));
        assert!(even.shift_witness(1).is_none());
        assert!(even.shift_witness(2).is_some());
    }

    #[test]
    fn star_on_gh_shape() {
        let h1 = ResidueSet::new(8, [3, 7]).unwrap();
        let h2 = ResidueSet::new(32, [11, 27]).unwrap();
        let v = check_condition_star(&[h1, h2], 2);
        assert_eq!(v.verdict, Verdict::Violated);
        assert_eq!(v.witnesses, vec![Witness::StarBlock { n: 1, s: 1 }]);
    }

    #[test]
    fn gcd_graph() {
        assert_eq!(gcd_graph_components(&s(&[4, 9]), 1), 2);
        assert_eq!(gcd_graph_components(&s(&[12, 18]), 1), 1);
    }
}
