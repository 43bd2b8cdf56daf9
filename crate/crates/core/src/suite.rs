//! Replayable example checks over the bundled specs, one group per criterion.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, AnalyzeOptions};
use crate::automorphism::{rotation_point, verify_commutation, verify_family_orders, verify_order, verify_rotation, verify_window_shift, BlockMap};
use crate::bset::{eta_segment, BSetSpec};
use crate::complexity::{crt_witnesses, first_qualifying_n, rho_of_bits};
use crate::conditions::{
    check_condition_star, check_dseh_prime, check_seh_prime, check_sh, totient_trend, BetaMode, CentralizerConclusion, HoleSet, Verdict, Witness,
};
use crate::error::Result;
use crate::essential::essential_holes_arithmetic;
use crate::filtration::{default_filtration, FiltrationOptions, LevelData};
use crate::holes::{essential_holes_iterative, essential_holes_iterative_residues, holes_level, minimal_period, period_formula_union, GcdClassSet, ResidueSet};
use crate::oracle;
use crate::specfile::{SpecFile, SpecKind, BUNDLED};
use crate::toeplitz::DirectToeplitzSpec;

const CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl CriterionOutcome {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass) && self.elapsed_ms <= self.budget_ms
    }

    /// One line: `criterion 4 PASS (12/12 checks, 0.41 s) ℬ₁² …`.
    pub fn line(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.pass).count();
        let mut s = format!(
            "criterion {} {} ({}/{} checks, {:.2} s) {}",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            ok,
            self.checks.len(),
            self.elapsed_ms as f64 / 1000.0,
            self.title
        );
        if let Some(c) = self.checks.iter().find(|c| !c.pass) {
            s.push_str(&format!(" — first failure: {}: {}", c.name, c.detail));
        } else if self.elapsed_ms > self.budget_ms {
            s.push_str(&format!(" — over the {} ms budget", self.budget_ms));
        }
        s
    }
}

struct Recorder(Vec<Check>);

impl Recorder {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    /// Records an error as a failed check instead of aborting the group.
    fn attempt<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, e.to_string());
                None
            }
        }
    }
}

pub const CRITERIA: &[(u8, &str, u64)] = &[
    (1, "ℬ₁: holes = essential holes by every method, τ̃_n = p_n, trivial centralizer", 10),
    (2, "GH variant: essential holes, τ̃_N = p_N = 2τ_N, condition (*) violated", 5),
    (3, "ℬ₂: 𝒜^{∞,p} = {2^n, 3^n}, τ̃_n = lcm(S_n), (Sh) violated at k = 1", 30),
    (4, "ℬ₁²: τ̃_n = p_n/3 and F_1 commutation, order, rotation, window shift", 10),
    (5, "ℬ₁^∞: F_1, F_2, F_3 of orders 3, 5, 7", 60),
    (6, "not-all-holes family: ℋ_N ⊋ ℋ̃_N and both periods equal p_n", 60),
    (7, "two filtrations: ℋ̃ = ℋ under S_n, strict with τ̃' = τ'/c_{N+1} under S'_n", 60),
    (8, "properties: (Seh') ≡ (DSeh') at β = 0, oracle equivalence on bundled specs", 120),
    (9, "complexity: CRT witnesses certify ρ(n) ≥ c_1; ρ monotone and subadditive", 120),
];

/// Runs one criterion's checks.
pub fn run_criterion(id: u8) -> Option<CriterionOutcome> {
    let &(_, title, budget_s) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let mut r = Recorder(Vec::new());
    match id {
        1 => b1_checks(&mut r),
        2 => gh_checks(&mut r),
        3 => b2_checks(&mut r),
        4 => b1n_checks(&mut r),
        5 => b1inf_checks(&mut r),
        6 => not_all_holes_checks(&mut r),
        7 => two_filtrations_checks(&mut r),
        8 => property_checks(&mut r),
        9 => complexity_checks(&mut r),
        _ => unreachable!(),
    }
    Some(CriterionOutcome {
        id,
        title: title.into(),
        checks: r.0,
        elapsed_ms: start.elapsed().as_millis(),
        budget_ms: Duration::from_secs(budget_s).as_millis(),
    })
}

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0)).collect()
}

/// Example names accepted by `run_example`, with their criterion.
pub const EXAMPLES: &[(&str, u8)] =
    &[("b1", 1), ("gh", 2), ("b2", 3), ("b1n", 4), ("b1inf", 5), ("not-all-holes", 6), ("two-filtrations", 7), ("properties", 8), ("complexity", 9)];

pub fn run_example(name: &str) -> Option<CriterionOutcome> {
    EXAMPLES.iter().find(|(n, _)| *n == name).and_then(|(_, id)| run_criterion(*id))
}

fn bundled_bfree(name: &str) -> BSetSpec {
    SpecFile::bundled(name).and_then(|s| s.bfree().cloned()).expect("bundled spec")
}

fn residues(set: &GcdClassSet) -> Result<ResidueSet> {
    set.to_residue_set(CAP)
}

fn filtration(r: &mut Recorder, spec: &BSetSpec, n_max: usize) -> Option<Vec<LevelData>> {
    r.attempt("filtration", default_filtration(spec, n_max, &FiltrationOptions::default()))
}

fn b1_checks(r: &mut Recorder) {
    let spec = bundled_bfree("b1");
    let Some(levels) = filtration(r, &spec, 6) else { return };
    for n in 1..=4 {
        let lvl = &levels[n - 1];
        let Some(h) = r.attempt("holes", holes_level(lvl).and_then(|h| residues(&h))) else { return };
        let Some(naive) = r.attempt("oracle", oracle::naive_holes(&spec, n)) else { return };
        let Some(it) = r.attempt("iterative", essential_holes_iterative(&levels, n, 6, 2)) else { return };
        let Some(ar) = r.attempt("arithmetic", essential_holes_arithmetic(&levels, n, 2, &spec)) else { return };
        let (it_r, ar_r) = (residues(&it.set).ok(), residues(&ar.set).ok());
        let all_eq = Some(&h) == it_r.as_ref() && Some(&h) == ar_r.as_ref() && h == naive;
        r.check(format!("n={n} holes = oracle = iterative = arithmetic"), all_eq, format!("{} residues mod {}", h.len(), h.modulus));
        let tau_t = it.set.minimal_period().tau;
        r.check(format!("n={n} τ̃ = p"), tau_t == lvl.ell, format!("τ̃ = {tau_t}, p = {}", lvl.ell));
    }
    let opts = AnalyzeOptions { n_max: 4, ..Default::default() };
    if let Some(rep) = r.attempt("analyze", analyze(&SpecFile::bundled("b1").expect("bundled"), &opts)) {
        let trivial = matches!(rep.centralizer.conclusion, CentralizerConclusion::Trivial { .. });
        r.check("centralizer trivial (conditional)", trivial, format!("{:?}", rep.centralizer.conclusion));
    }
}

fn gh_checks(r: &mut Recorder) {
    let gh = DirectToeplitzSpec::GhVariant;
    let total = 6;
    let Some(holes) = r.attempt("holes", (1..=total).map(|n| gh.direct_holes(n)).collect::<Result<Vec<_>>>()) else { return };
    for big_n in 1..=4usize {
        let Some(it) = r.attempt("iterative", essential_holes_iterative_residues(&holes, big_n, total, 2)) else { return };
        let p = gh.period(big_n).expect("level");
        let q = 1u64 << (2 * big_n);
        let r_n = (q - 1) / 3;
        let expected = ResidueSet::new(p, (0..p).filter(|k| (k + r_n).is_multiple_of(q) && ((k + r_n) / q) % 2 == 1)).expect("residues");
        r.check(format!("N={big_n} ℋ̃ = 2^(2N)(2ℤ+1) − r_N"), it.set == expected, format!("{:?} mod {p}", it.set.residues));
        let tau_t = minimal_period(&it.set).tau;
        let tau = minimal_period(&holes[big_n - 1]).tau;
        let ok = tau_t == BigUint::from(p) && BigUint::from(p) == &tau * 2u32;
        r.check(format!("N={big_n} τ̃ = p = 2τ"), ok, format!("τ̃ = {tau_t}, τ = {tau}, p = {p}"));
        if let Some(o) = r.attempt("oracle", oracle::naive_toeplitz_holes(&gh, big_n, 64)) {
            r.check(format!("N={big_n} holes = sampled oracle"), o == holes[big_n - 1], format!("{} residues", o.len()));
        }
    }
    let star = check_condition_star(&holes[..4], 4);
    let replay = star.witnesses.iter().any(|w| match w {
        Witness::StarBlock { n, s } => replay_star(&gh, *n, *s),
        _ => false,
    });
    r.check("condition (*) violated", star.verdict == Verdict::Violated, format!("{:?}", star.witnesses.first()));
    r.check("(*) witness replays on η", replay, "block bits at the witness start differ from both alternatives");
}

/// Replays a (*) witness by resolving η directly: inside the block of length
/// p_n starting at s·p_n, some level-n hole is resolved at level n+1 while
/// another position stays a hole.
fn replay_star(spec: &DirectToeplitzSpec, n: usize, s: u64) -> bool {
    let Ok(p) = spec.period(n) else { return false };
    let block = (s * p) as i64..((s + 1) * p) as i64;
    let hole = |x: i64, m: usize| spec.resolve(x, m).is_none();
    let lost = block.clone().any(|x| hole(x, n) && !hole(x, n + 1));
    let kept = block.clone().any(|x| hole(x, n + 1));
    lost && kept
}

fn b2_checks(r: &mut Recorder) {
    let spec = bundled_bfree("b2");
    let Some(levels) = filtration(r, &spec, 5) else { return };
    let mut holes = Vec::new();
    for n in 1..=3usize {
        let lvl = &levels[n - 1];
        let a_prim = lvl.a_infinity_prim();
        let expected = crate::arith::IntSet::new([BigUint::from(2u32).pow(n as u32), BigUint::from(3u32).pow(n as u32)]).expect("set");
        r.check(format!("n={n} 𝒜^(∞,p) = {{2^n, 3^n}}"), a_prim == expected, format!("{:?}", a_prim.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
        match period_formula_union(&a_prim, &lvl.s) {
            Ok(t) => r.check(format!("n={n} union formula hypotheses and value"), t == lvl.ell, format!("lcm(A ∪ S_n) = {t}")),
            Err(e) => r.check(format!("n={n} union formula hypotheses"), false, e.to_string()),
        }
        if let Some(it) = r.attempt("iterative", essential_holes_iterative(&levels, n, 5, 2)) {
            let tau_t = it.set.minimal_period().tau;
            r.check(format!("n={n} τ̃ = lcm(S_n)"), tau_t == lvl.ell, format!("τ̃ = {tau_t}"));
        }
        let Some(h) = r.attempt("holes", holes_level(lvl)) else { return };
        holes.push(HoleSet::Classes(h));
        let sh = check_sh(&holes[n - 1..n], 1, 1);
        let adjacent = sh.witnesses.iter().find_map(|w| match w {
            Witness::ShiftedHoles { k: 1, x, .. } => Some(x.clone()),
            _ => None,
        });
        let replayed = adjacent.as_ref().is_some_and(|x| holes[n - 1].contains(x) && holes[n - 1].contains(&(x + BigInt::from(1))));
        r.check(
            format!("n={n} (Sh) violated at k = 1"),
            sh.verdict == Verdict::Violated && replayed,
            format!("adjacent holes at {}", adjacent.map(|x| x.to_string()).unwrap_or_default()),
        );
    }
    let a_sets: Vec<_> = levels[..3].iter().map(LevelData::a_infinity).collect();
    r.check("per-a totient sums decrease", totient_trend(&a_sets), "max over a of Σ 1/φ(a'^{÷a}), levels 1..3");
}

fn b1n_checks(r: &mut Recorder) {
    let spec = bundled_bfree("b1n");
    let Some(levels) = filtration(r, &spec, 6) else { return };
    for n in 1..=4usize {
        if let Some(it) = r.attempt("iterative", essential_holes_iterative(&levels, n, 6, 2)) {
            let tau_t = it.set.minimal_period().tau;
            let want = &levels[n - 1].ell / 3u32;
            r.check(format!("n={n} τ̃ = lcm(S_n)/3"), tau_t == want, format!("τ̃ = {tau_t}, lcm/3 = {want}"));
        }
    }
    let Some(map) = r.attempt("F_1", BlockMap::f_ell(&spec, 1)) else { return };
    let verdict = |r: &mut Recorder, name: &str, v: Result<crate::automorphism::MapVerdict>| {
        if let Some(v) = r.attempt(name, v) {
            r.check(name, v.confirmed, format!("window {:?}, mismatch {:?}", v.window, v.mismatch));
            Some(v)
        } else {
            None
        }
    };
    verdict(r, "F_1 commutes with σ^k, k ∈ [−20, 20]", verify_commutation(&map, &spec, (-20, 20), 200));
    if let Some(v) = verdict(r, "F_1 has order 3", verify_order(&map, &spec, 3, 200)) {
        let refuted = v.notes.iter().filter(|s| s.contains("≠ id")).count();
        r.check("orders 1 and 2 refuted", refuted == 2, v.notes.join("; "));
    }
    if let Some(y) = r.attempt("rotation point", rotation_point(&map)) {
        verdict(r, "F_1 acts as a rotation on [−50, 50]", verify_rotation(&map, &spec, &y, -50, 50));
    }
    if let Some(v) = verdict(r, "window shift n = 7, t = 3", verify_window_shift(&map, &spec, 7, 3)) {
        r.check("z = 1680", v.z == Some(BigUint::from(1680u32)), format!("z = {:?}", v.z));
    }
}

fn b1inf_checks(r: &mut Recorder) {
    let spec = bundled_bfree("b1inf");
    if let Some((rows, product)) = r.attempt("orders", verify_family_orders(&spec, &[1, 2, 3])) {
        for row in &rows {
            r.check(
                format!("F_{} has order {}", row.ell, row.c_ell),
                row.confirmed && row.proper_divisors_refuted,
                format!("smaller orders refuted: {}", row.proper_divisors_refuted),
            );
        }
        r.check("⟨F_1, F_2, F_3⟩ order 105", product == BigUint::from(105u32), format!("product {product}"));
    }
}

fn not_all_holes_checks(r: &mut Recorder) {
    let spec = bundled_bfree("not-all-holes");
    let total = 5;
    let Some(levels) = filtration(r, &spec, total) else { return };
    let big_n = 1;
    let Some(h) = r.attempt("holes", holes_level(&levels[big_n - 1])) else { return };
    let Some(it) = r.attempt("iterative", essential_holes_iterative(&levels, big_n, total, 2)) else { return };
    let witness = BigInt::from(1);
    r.check(
        format!("N={big_n} witness k = 1 ∈ ℋ_N ∖ ℋ̃_N"),
        h.contains(&witness) && !it.set.contains(&witness),
        format!("|ℋ_N| = {}, |ℋ̃_N| = {} mod {}", h.count(), it.set.count(), levels[0].ell),
    );
    if let Some(ar) = r.attempt("arithmetic", essential_holes_arithmetic(&levels, big_n, 2, &spec)) {
        r.check(format!("N={big_n} arithmetic method agrees"), ar.set == it.set, "");
    }
    if let (Ok(o), Ok(m)) = (oracle::naive_holes(&spec, big_n), residues(&h)) {
        r.check(format!("N={big_n} holes = oracle"), o == m, "");
    }
    for n in 1..=3usize {
        let lvl = &levels[n - 1];
        let (Some(h), Some(it)) = (r.attempt("holes", holes_level(lvl)), r.attempt("iterative", essential_holes_iterative(&levels, n, total, 2))) else {
            return;
        };
        let (t, tt) = (h.minimal_period().tau, it.set.minimal_period().tau);
        r.check(format!("n={n} τ = τ̃ = p"), t == lvl.ell && tt == lvl.ell, format!("τ = {t}, τ̃ = {tt}, p = {}", lvl.ell));
    }
}

fn two_filtrations_checks(r: &mut Recorder) {
    let total = 4;
    let std = bundled_bfree("two-filtrations");
    if let Some(levels) = filtration(r, &std, total) {
        for n in 1..=2usize {
            let (Some(h), Some(it)) =
                (r.attempt("holes", holes_level(&levels[n - 1])), r.attempt("iterative", essential_holes_iterative(&levels, n, total, 2)))
            else {
                return;
            };
            r.check(format!("S_n, n={n}: ℋ̃ = ℋ"), h == it.set, format!("{} classes mod {}", h.classes.len(), levels[n - 1].ell));
        }
    }
    let primed = bundled_bfree("two-filtrations-primed");
    let c = |k: usize| primed.c(k).unwrap_or(0);
    if let Some(levels) = filtration(r, &primed, total) {
        for n in 1..=2usize {
            let (Some(h), Some(it)) =
                (r.attempt("holes", holes_level(&levels[n - 1])), r.attempt("iterative", essential_holes_iterative(&levels, n, total, 2)))
            else {
                return;
            };
            let strict = it.set.is_subset_of(&h).unwrap_or(false) && it.set != h;
            r.check(format!("S'_n, N={n}: ℋ̃' ⊊ ℋ'"), strict, format!("|ℋ̃'| = {}, |ℋ'| = {}", it.set.count(), h.count()));
            let (t, tt) = (h.minimal_period().tau, it.set.minimal_period().tau);
            let ok = (&t % c(n + 1)) == BigUint::from(0u32) && tt == &t / c(n + 1);
            r.check(format!("S'_n, N={n}: τ̃' = τ'/c_(N+1)"), ok, format!("τ' = {t}, τ̃' = {tt}, c = {}", c(n + 1)));
        }
    }
}

/// (Seh') ≡ (DSeh') with β = 0 and main-path ≡ oracle on every bundled spec.
fn property_checks(r: &mut Recorder) {
    for (name, _) in BUNDLED {
        let spec = SpecFile::bundled(name).expect("bundled");
        let opts = AnalyzeOptions { n_max: 2, oracle: true, ..Default::default() };
        let Some(rep) = r.attempt(name, analyze(&spec, &opts)) else { continue };
        for o in &rep.oracle {
            if let Some(agree) = o.agree {
                r.check(format!("{name}: {} n={} = oracle", o.what, o.n), agree, o.note.clone().unwrap_or_default());
            }
        }
        let ess: Option<Vec<ResidueSet>> = match &spec.kind {
            SpecKind::BFree(s) => (|| {
                let levels = default_filtration(s, rep.levels_computed, &FiltrationOptions::default()).ok()?;
                (1..=rep.levels.len()).map(|n| essential_holes_iterative(&levels, n, rep.levels_computed, 2).ok().and_then(|e| residues(&e.set).ok())).collect()
            })(),
            SpecKind::Toeplitz(t) => (|| {
                let holes: Vec<ResidueSet> = (1..=rep.levels_computed).map(|n| t.direct_holes(n).ok()).collect::<Option<_>>()?;
                (1..=rep.levels.len()).map(|n| essential_holes_iterative_residues(&holes, n, rep.levels_computed, 2).ok().map(|e| e.set)).collect()
            })(),
        };
        if let Some(ess) = ess {
            let n = ess.len();
            let lm = n.saturating_sub(1).max(1);
            let a = check_seh_prime(&ess, 4, lm, n);
            let b = check_dseh_prime(&ess, 4, lm, n, BetaMode::Zero);
            r.check(format!("{name}: (DSeh') at β = 0 ≡ (Seh')"), a.verdict == b.verdict && a.witnesses.len() == b.witnesses.len(), format!("{:?}", a.verdict));
        }
    }
}

fn complexity_checks(r: &mut Recorder) {
    let spec = bundled_bfree("b2-complexity");
    match r.attempt("first qualifying n", first_qualifying_n(&spec, None, 100_000)) {
        Some(Some(n)) => {
            if let Some(cert) = r.attempt("crt witnesses", crt_witnesses(&spec, n, None, 10_000)) {
                let c1 = BigUint::from(spec.c(1).unwrap_or(0));
                r.check(format!("n={n} certificate"), cert.certified(), format!("{} distinct blocks", cert.distinct_blocks));
                r.check("bound ≥ c_1", cert.bound >= c1, format!("ρ({n}) ≥ {}", cert.bound));
                r.check("pairwise-distinct CRT blocks", cert.pairwise_distinct && cert.congruences_hold, "");
            }
        }
        Some(None) => r.check("first qualifying n", false, "no n with j_n ≥ 1"),
        None => {}
    }
    let l: i64 = 100_000;
    let Some(w) = r.attempt("window", eta_segment(&spec, -l, l + 11)) else { return };
    let rho: Vec<usize> = (0..=12).map(|n| if n == 0 { 1 } else { rho_of_bits(&w.bits, n) }).collect();
    let mono = (1..12).all(|n| rho[n] <= rho[n + 1]);
    r.check("ρ monotone, n = 1..12", mono, format!("{:?}", &rho[1..]));
    let sub = (1..=12).all(|m| (1..=12 - m).all(|n| rho[m + n] <= rho[m] * rho[n]));
    r.check("ρ subadditive (log), n = 1..12", sub, "ρ(m+n) ≤ ρ(m)ρ(n)");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria() {
        for id in [1, 2, 4] {
            let out = run_criterion(id).unwrap();
            assert!(out.checks.iter().all(|c| c.pass), "{}", out.line());
        }
    }
}
