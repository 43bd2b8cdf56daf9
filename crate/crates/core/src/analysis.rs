//! Full per-level reports: filtration, holes, essential holes (both methods),
//! minimal periods, condition verdicts and the centralizer conclusion.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bset::BSetSpec;
use crate::conditions::{
    centralizer_report, check_condition_star, check_dseh_prime, check_seh_prime, check_sh, BetaMode, Budget, CentralizerInput, CentralizerReport,
    ConditionVerdict, HoleSet, Verdict,
};
use crate::error::{Error, Result};
use crate::essential::{essential_holes_arithmetic, gh_shortcut_check, ShortcutVerdict};
use crate::filtration::{default_filtration, max_level_with_slack, FiltrationOptions, LevelData, SourceClass};
use crate::holes::{
    essential_holes_iterative, essential_holes_iterative_residues, holes_level, minimal_period, GcdClassSet, PeriodMethod, ResidueSet, StabilityCertificate,
};
use crate::oracle;
use crate::specfile::{SpecFile, SpecKind};
use crate::toeplitz::DirectToeplitzSpec;

/// Residue lists are materialized (for conditions and display) up to this modulus.
pub const EXPLICIT_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    pub n_max: usize,
    pub k_max: i64,
    pub depth: usize,
    pub stab_window: usize,
    pub beta_budget: usize,
    pub filtration: FiltrationOptions,
    pub oracle: bool,
    /// Block-code radius used by the centralizer's gcd-graph criterion.
    pub radius: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { n_max: 3, k_max: 4, depth: 2, stab_window: 2, beta_budget: 20_000, filtration: FiltrationOptions::default(), oracle: false, radius: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AValue {
    pub value: String,
    pub class: SourceClass,
    pub sources: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub n: usize,
    pub p_n: String,
    /// S_n (ℬ-free specs).
    pub s: Vec<String>,
    pub a: Vec<AValue>,
    pub saturated: Option<bool>,
    pub classification_stable: Option<bool>,
    pub holes_count: String,
    /// gcd classes D with ℋ_n = {k : gcd(k, p_n) ∈ D} (ℬ-free specs).
    pub holes_classes: Vec<String>,
    /// Explicit residues when p_n ≤ the display cap.
    pub holes_residues: Option<Vec<u64>>,
    pub essential_count: String,
    pub essential_classes: Vec<String>,
    pub essential_residues: Option<Vec<u64>>,
    pub essential_certificate: StabilityCertificate,
    /// Agreement of the iterative and arithmetic descriptions (None: arithmetic not run).
    pub methods_agree: Option<bool>,
    pub arithmetic_note: Option<String>,
    pub tau: String,
    pub tau_method: PeriodMethod,
    pub tau_tilde: String,
    pub tau_tilde_method: PeriodMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub what: String,
    pub n: usize,
    pub agree: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: String,
    pub kind: String,
    pub options: AnalyzeOptions,
    /// Levels computed (beyond n_max for the essential-hole iteration).
    pub levels_computed: usize,
    pub levels: Vec<LevelReport>,
    pub conditions: Vec<ConditionVerdict>,
    pub shortcut: Option<ShortcutVerdict>,
    pub centralizer: CentralizerReport,
    pub oracle: Vec<OracleCheck>,
    pub warnings: Vec<String>,
}

fn strs<'a>(it: impl IntoIterator<Item = &'a BigUint>) -> Vec<String> {
    it.into_iter().map(|x| x.to_string()).collect()
}

fn explicit(set: &GcdClassSet) -> Option<ResidueSet> {
    set.to_residue_set(EXPLICIT_CAP).ok()
}

pub fn analyze(spec: &SpecFile, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    if opts.n_max == 0 || opts.k_max <= 0 {
        return Err(Error::InvalidInput("n_max and k_max must be positive".into()));
    }
    match &spec.kind {
        SpecKind::BFree(s) => analyze_bfree(&spec.name, s, opts),
        SpecKind::Toeplitz(t) => analyze_toeplitz(&spec.name, t, opts),
    }
}

fn analyze_bfree(name: &str, spec: &BSetSpec, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let mut warnings = Vec::new();
    let feasible = if spec.is_bfree_family() { max_level_with_slack(spec, opts.filtration.stab_threshold) } else { spec.horizon };
    if feasible == 0 {
        return Err(Error::InsufficientHorizon { position: "no level has enough realized generators".into() });
    }
    let n_max = opts.n_max.min(feasible);
    if n_max < opts.n_max {
        warnings.push(format!("n_max lowered to {n_max}: the horizon supports no more classified levels"));
    }
    let total = (n_max + opts.stab_window.max(opts.depth)).min(feasible);
    let levels = default_filtration(spec, total, &opts.filtration)?;
    if !spec.is_bfree_family() {
        warnings.push("explicit spec: source classification is heuristic".into());
    }
    if levels.iter().any(|l| !l.stable) {
        warnings.push("classification changed against one fewer probe index at some level".into());
    }
    let mut reports = Vec::new();
    let mut hole_sets = Vec::new();
    let mut ess_sets = Vec::new();
    for n in 1..=n_max {
        let lvl = &levels[n - 1];
        let holes = holes_level(lvl)?;
        let it = essential_holes_iterative(&levels, n, total, opts.stab_window)?;
        let (agree, note) = if n + opts.depth <= total {
            match essential_holes_arithmetic(&levels, n, opts.depth, spec) {
                Ok(ar) => (Some(ar.set == it.set), (!ar.depth_stable).then(|| "arithmetic set changed at the last depth".into())),
                Err(e) => (None, Some(e.to_string())),
            }
        } else {
            (None, Some("not enough levels for the requested depth".into()))
        };
        let tau = holes.minimal_period();
        let tau_t = it.set.minimal_period();
        reports.push(level_report_bfree(lvl, &holes, &it.set, it.certificate.clone(), agree, note, &tau, &tau_t));
        hole_sets.push(holes);
        ess_sets.push(it.set);
    }
    let conditions = conditions_for(
        &hole_sets.iter().cloned().map(HoleSet::Classes).collect::<Vec<_>>(),
        &ess_sets.iter().map(explicit).collect::<Option<Vec<_>>>(),
        opts,
        &mut warnings,
    );
    let shortcut = if total > 1 { gh_shortcut_check(&levels, 1, total, spec).ok() } else { None };
    let a_sets = levels[..n_max].iter().map(LevelData::a_infinity).collect();
    let centralizer = centralizer_report(&CentralizerInput {
        periods: levels[..n_max].iter().map(|l| l.ell.clone()).collect(),
        tau_tilde: ess_sets.iter().map(|e| e.minimal_period().tau).collect(),
        essential_counts: ess_sets.iter().map(GcdClassSet::count).collect(),
        arithmetic: Some((a_sets, ess_sets.clone())),
        radius: opts.radius,
    });
    let oracle = if opts.oracle { oracle_bfree(spec, &hole_sets, &ess_sets) } else { Vec::new() };
    Ok(AnalysisReport {
        name: name.into(),
        kind: spec.family.name().into(),
        options: AnalyzeOptions { n_max, ..opts.clone() },
        levels_computed: total,
        levels: reports,
        conditions,
        shortcut,
        centralizer,
        oracle,
        warnings,
    })
}

#[allow(clippy::too_many_arguments)]
fn level_report_bfree(
    lvl: &LevelData,
    holes: &GcdClassSet,
    ess: &GcdClassSet,
    cert: StabilityCertificate,
    agree: Option<bool>,
    note: Option<String>,
    tau: &crate::holes::PeriodReport,
    tau_t: &crate::holes::PeriodReport,
) -> LevelReport {
    LevelReport {
        n: lvl.n,
        p_n: lvl.ell.to_string(),
        s: strs(lvl.s.iter()),
        a: lvl.a.iter().map(|e| AValue { value: e.value.to_string(), class: e.class, sources: e.sources }).collect(),
        saturated: Some(lvl.saturated),
        classification_stable: Some(lvl.stable),
        holes_count: holes.count().to_string(),
        holes_classes: strs(&holes.classes),
        holes_residues: small_residues(holes),
        essential_count: ess.count().to_string(),
        essential_classes: strs(&ess.classes),
        essential_residues: small_residues(ess),
        essential_certificate: cert,
        methods_agree: agree,
        arithmetic_note: note,
        tau: tau.tau.to_string(),
        tau_method: tau.certified_by,
        tau_tilde: tau_t.tau.to_string(),
        tau_tilde_method: tau_t.certified_by,
    }
}

/// Residue lists for display are kept short.
const DISPLAY_CAP: u64 = 4096;

fn small_residues(set: &GcdClassSet) -> Option<Vec<u64>> {
    set.to_residue_set(DISPLAY_CAP).ok().map(|r| r.residues)
}

fn conditions_for(holes: &[HoleSet], ess: &Option<Vec<ResidueSet>>, opts: &AnalyzeOptions, warnings: &mut Vec<String>) -> Vec<ConditionVerdict> {
    let n = holes.len();
    let mut out = vec![check_sh(holes, opts.k_max, n)];
    match ess {
        Some(ess) => {
            let level_max = n.saturating_sub(1).max(1);
            out.push(check_seh_prime(ess, opts.k_max, level_max, n));
            out.push(check_dseh_prime(ess, opts.k_max, level_max, n, BetaMode::Enumerate { node_budget: opts.beta_budget }));
        }
        None => {
            for c in ["Seh'", "DSeh'"] {
                out.push(skipped(c, n, Some(opts.k_max), format!("essential holes exceed {EXPLICIT_CAP} residues")));
            }
            warnings.push(format!("essential holes exceed {EXPLICIT_CAP} residues; (Seh') and (DSeh') are inconclusive"));
        }
    }
    let explicit_holes: Option<Vec<ResidueSet>> = holes.iter().map(|h| h.to_residues(EXPLICIT_CAP).ok()).collect();
    match explicit_holes {
        Some(h) => out.push(check_condition_star(&h, n)),
        None => {
            out.push(skipped("*", n, None, format!("holes exceed {EXPLICIT_CAP} residues")));
            warnings.push(format!("holes exceed {EXPLICIT_CAP} residues; condition (*) is inconclusive"));
        }
    }
    out
}

fn skipped(condition: &str, n_max: usize, k_max: Option<i64>, why: String) -> ConditionVerdict {
    ConditionVerdict {
        condition: condition.into(),
        verdict: Verdict::Inconclusive,
        witnesses: Vec::new(),
        budget: Budget { k_max, level_max: None, n_max, beta_nodes: None },
        notes: vec![why],
    }
}

fn oracle_bfree(spec: &BSetSpec, holes: &[GcdClassSet], ess: &[GcdClassSet]) -> Vec<OracleCheck> {
    let mut out = Vec::new();
    let mut naive = Vec::new();
    for (i, h) in holes.iter().enumerate() {
        let n = i + 1;
        match (oracle::naive_holes(spec, n), h.to_residue_set(oracle::ORACLE_CAP)) {
            (Ok(o), Ok(m)) => {
                out.push(OracleCheck { what: "holes".into(), n, agree: Some(o == m), note: None });
                out.push(OracleCheck {
                    what: "minimal period of holes".into(),
                    n,
                    agree: Some(BigUint::from(oracle::naive_min_period(&o)) == h.minimal_period().tau),
                    note: None,
                });
                naive.push(o);
            }
            (Err(e), _) | (_, Err(e)) => {
                out.push(OracleCheck { what: "holes".into(), n, agree: None, note: Some(e.to_string()) });
                break;
            }
        }
    }
    // essential holes through the levels the oracle could scan
    for (i, e) in ess.iter().enumerate().take(naive.len().saturating_sub(1)) {
        let n = i + 1;
        let agree = oracle::naive_essential_holes(&naive, n, naive.len()).ok().zip(e.to_residue_set(oracle::ORACLE_CAP).ok()).map(|(o, m)| o == m);
        out.push(OracleCheck { what: "essential holes".into(), n, agree, note: Some(format!("definitional lift through level {}", naive.len())) });
    }
    out
}

fn analyze_toeplitz(name: &str, spec: &DirectToeplitzSpec, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let mut warnings = Vec::new();
    let feasible = spec.max_level();
    let n_max = opts.n_max.min(feasible);
    if n_max < opts.n_max {
        warnings.push(format!("n_max lowered to {n_max}: the spec has {feasible} levels"));
    }
    let total = (n_max + opts.stab_window).min(feasible);
    let holes: Vec<ResidueSet> = (1..=total).map(|n| spec.direct_holes(n)).collect::<Result<_>>()?;
    let mut reports = Vec::new();
    let mut ess_sets = Vec::new();
    for n in 1..=n_max {
        let it = essential_holes_iterative_residues(&holes, n, total, opts.stab_window)?;
        let tau = minimal_period(&holes[n - 1]);
        let tau_t = minimal_period(&it.set);
        let p = holes[n - 1].modulus;
        reports.push(LevelReport {
            n,
            p_n: p.to_string(),
            s: Vec::new(),
            a: Vec::new(),
            saturated: None,
            classification_stable: None,
            holes_count: holes[n - 1].len().to_string(),
            holes_classes: Vec::new(),
            holes_residues: (p <= DISPLAY_CAP).then(|| holes[n - 1].residues.clone()),
            essential_count: it.set.len().to_string(),
            essential_classes: Vec::new(),
            essential_residues: (p <= DISPLAY_CAP).then(|| it.set.residues.clone()),
            essential_certificate: it.certificate.clone(),
            methods_agree: None,
            arithmetic_note: Some("direct specification: only the iterative method applies".into()),
            tau: tau.tau.to_string(),
            tau_method: tau.certified_by,
            tau_tilde: tau_t.tau.to_string(),
            tau_tilde_method: tau_t.certified_by,
        });
        ess_sets.push(it.set);
    }
    let hs: Vec<HoleSet> = holes[..n_max].iter().cloned().map(HoleSet::Residues).collect();
    let conditions = conditions_for(&hs, &Some(ess_sets.clone()), opts, &mut warnings);
    let centralizer = centralizer_report(&CentralizerInput {
        periods: ess_sets.iter().map(|e| BigUint::from(e.modulus)).collect(),
        tau_tilde: ess_sets.iter().map(|e| minimal_period(e).tau).collect(),
        essential_counts: ess_sets.iter().map(|e| BigUint::from(e.len())).collect(),
        arithmetic: None,
        radius: opts.radius,
    });
    let mut oracle_checks = Vec::new();
    if opts.oracle {
        for n in 1..=n_max {
            let samples = (spec.period(total)? / spec.period(n)?).max(4) * 4;
            let check = match oracle::naive_toeplitz_holes(spec, n, samples) {
                Ok(o) => OracleCheck { what: "holes (sampled)".into(), n, agree: Some(o == holes[n - 1]), note: None },
                Err(e) => OracleCheck { what: "holes (sampled)".into(), n, agree: None, note: Some(e.to_string()) },
            };
            oracle_checks.push(check);
        }
    }
    let kind = match spec {
        DirectToeplitzSpec::GhVariant => "gh_variant",
        DirectToeplitzSpec::Skeleton { .. } => "skeleton",
    };
    Ok(AnalysisReport {
        name: name.into(),
        kind: kind.into(),
        options: AnalyzeOptions { n_max, ..opts.clone() },
        levels_computed: total,
        levels: reports,
        conditions,
        shortcut: None,
        centralizer,
        oracle: oracle_checks,
        warnings,
    })
}

/// ℋ_n as explicit residues for either spec kind (small moduli).
pub fn explicit_holes(spec: &SpecFile, n: usize, opts: &FiltrationOptions) -> Result<ResidueSet> {
    match &spec.kind {
        SpecKind::BFree(s) => {
            let levels = default_filtration(s, n, opts)?;
            holes_level(&levels[n - 1])?.to_residue_set(EXPLICIT_CAP)
        }
        SpecKind::Toeplitz(t) => t.direct_holes(n),
    }
}

/// p_n/τ̃_n summary per level, used by the text renderer.
pub fn ratio_line(level: &LevelReport) -> String {
    let p: BigUint = level.p_n.parse().expect("decimal");
    let t: BigUint = level.tau_tilde.parse().expect("decimal");
    let r = &p / &t;
    format!("p_{}/τ̃_{} = {}", level.n, level.n, r.to_u64().map(|v| v.to_string()).unwrap_or_else(|| r.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b1_report() {
        let spec = SpecFile::bundled("b1").unwrap();
        let r = analyze(&spec, &AnalyzeOptions { n_max: 2, oracle: true, ..Default::default() }).unwrap();
        assert_eq!(r.levels.len(), 2);
        assert_eq!(r.levels[0].holes_residues, Some(vec![2, 4]));
        assert!(r.levels.iter().all(|l| l.methods_agree == Some(true)));
        assert!(r.levels.iter().all(|l| l.tau_tilde == l.p_n));
        assert!(r.oracle.iter().all(|o| o.agree == Some(true)), "{:?}", r.oracle);
        assert!(matches!(r.centralizer.conclusion, crate::conditions::CentralizerConclusion::Trivial { .. }));
    }

    #[test]
    fn gh_report() {
        let spec = SpecFile::bundled("gh").unwrap();
        let r = analyze(&spec, &AnalyzeOptions { n_max: 3, oracle: true, ..Default::default() }).unwrap();
        for l in &r.levels {
            assert_eq!(l.tau_tilde, l.p_n);
        }
        assert!(r.oracle.iter().all(|o| o.agree == Some(true)), "{:?}", r.oracle);
    }
}
