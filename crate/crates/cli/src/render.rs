//! Text and CSV renderings; JSON goes straight through serde.

use std::fmt::Write as _;

use anyhow::Result;
use bfree_core::analysis::AnalysisReport;
use bfree_core::automorphism::MapVerdict;
use bfree_core::complexity::{CrtCertificate, SuperpolyReport};
use bfree_core::conditions::CentralizerConclusion;
use bfree_core::holes::StabilityCertificate;
use bfree_core::suite::CriterionOutcome;
use serde::Serialize;

/// serde's name for a unit-like enum value (e.g. `holds_up_to_budget`).
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn certificate(c: &StabilityCertificate) -> String {
    match c {
        StabilityCertificate::Stabilized { at, through } => format!("stable from level {at} through {through}"),
        StabilityCertificate::Truncated { through } => format!("truncated at level {through}"),
    }
}

fn list(v: &[String], max: usize) -> String {
    if v.len() <= max {
        format!("{{{}}}", v.join(", "))
    } else {
        format!("{{{}, … ({} total)}}", v[..max].join(", "), v.len())
    }
}

fn csv_string(records: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} ({}), levels 1..={} (computed through {})", r.name, r.kind, r.options.n_max, r.levels_computed);
    for l in &r.levels {
        let _ = writeln!(s, "\nlevel {}: p = {}", l.n, l.p_n);
        if !l.s.is_empty() {
            let _ = writeln!(s, "  S = {}", list(&l.s, 12));
        }
        if !l.a.is_empty() {
            let a: Vec<String> = l.a.iter().map(|e| format!("{} [{}, {}]", e.value, tag(&e.class), e.sources)).collect();
            let _ = writeln!(s, "  𝒜 = {}", list(&a, 12));
        }
        let residues =
            |v: &Option<Vec<u64>>| v.as_ref().map(|r| format!(" = {}", list(&r.iter().map(u64::to_string).collect::<Vec<_>>(), 16))).unwrap_or_default();
        let _ = writeln!(s, "  holes: {} residues{}", l.holes_count, residues(&l.holes_residues));
        let _ = writeln!(s, "  essential holes: {} residues{} ({})", l.essential_count, residues(&l.essential_residues), certificate(&l.essential_certificate));
        match l.methods_agree {
            Some(true) => s.push_str("  iterative and arithmetic methods agree\n"),
            Some(false) => s.push_str("  iterative and arithmetic methods DISAGREE\n"),
            None => {}
        }
        if let Some(note) = &l.arithmetic_note {
            let _ = writeln!(s, "  note: {note}");
        }
        let _ = writeln!(s, "  τ = {} ({}), τ̃ = {} ({})", l.tau, tag(&l.tau_method), l.tau_tilde, tag(&l.tau_tilde_method));
    }
    s.push_str("\nconditions:\n");
    for c in &r.conditions {
        let _ = write!(s, "  ({}) {}", c.condition, tag(&c.verdict));
        let mut budget = vec![format!("n ≤ {}", c.budget.n_max)];
        if let Some(k) = c.budget.k_max {
            budget.push(format!("|k| ≤ {k}"));
        }
        if let Some(l) = c.budget.level_max {
            budget.push(format!("N ≤ {l}"));
        }
        if let Some(b) = c.budget.beta_nodes {
            budget.push(format!("β nodes ≤ {b}"));
        }
        let _ = write!(s, " [{}]", budget.join(", "));
        if let Some(w) = c.witnesses.first() {
            let _ = write!(s, " witness {}", serde_json::to_string(w).unwrap_or_default());
        }
        s.push('\n');
    }
    if let Some(sc) = &r.shortcut {
        let _ = writeln!(s, "  essential-hole shortcut: {}{}", if sc.holds { "holds" } else { "fails" }, if sc.certified { "" } else { " (uncertified)" });
    }
    let c = &r.centralizer;
    s.push_str("\ncentralizer:\n");
    for row in &c.rows {
        let _ = writeln!(s, "  n={}: p/τ̃ = {}, |ℋ̃|·√p/p = {:.4}", row.n, row.ratio, row.density_vs_sqrt);
    }
    if let Some(ti) = &c.ti {
        let _ = writeln!(s, "  (TI) {}", tag(&ti.verdict));
    }
    if let Some(t) = c.totient_trend_ok {
        let _ = writeln!(s, "  totient-sum trend: {}", if t { "decreasing" } else { "not decreasing" });
    }
    if let Some(g) = c.graph_components {
        let _ = writeln!(s, "  gcd-graph components (radius {}): {g}", r.options.radius);
    }
    let (label, caveats) = match &c.conclusion {
        CentralizerConclusion::Trivial { conditional_on } => ("trivial (conditional)".to_string(), conditional_on.clone()),
        CentralizerConclusion::TorsionDivides { m, conditional_on } => (format!("torsion of C(σ)/⟨σ⟩ divides {m} (conditional)"), conditional_on.clone()),
        CentralizerConclusion::Undetermined { reason } => (format!("undetermined: {reason}"), Vec::new()),
    };
    let _ = writeln!(s, "  conclusion: {label}");
    for cav in caveats {
        let _ = writeln!(s, "    given: {cav}");
    }
    for n in &c.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    if !r.oracle.is_empty() {
        s.push_str("\noracle audit:\n");
        for o in &r.oracle {
            let v = match o.agree {
                Some(true) => "agrees",
                Some(false) => "DISAGREES",
                None => "skipped",
            };
            let _ = writeln!(s, "  n={} {}: {v}{}", o.n, o.what, o.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default());
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

/// One row per level.
pub fn analysis_csv(r: &AnalysisReport) -> Result<String> {
    let mut rows = vec![["n", "p_n", "holes", "essential_holes", "tau", "tau_tilde", "methods_agree", "stabilized"].map(String::from).to_vec()];
    for l in &r.levels {
        rows.push(vec![
            l.n.to_string(),
            l.p_n.clone(),
            l.holes_count.clone(),
            l.essential_count.clone(),
            l.tau.clone(),
            l.tau_tilde.clone(),
            l.methods_agree.map(|b| b.to_string()).unwrap_or_default(),
            l.essential_certificate.is_stabilized().to_string(),
        ]);
    }
    csv_string(rows)
}

pub fn outcomes_text(outcomes: &[CriterionOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        let _ = writeln!(s, "{}", o.line());
        for c in &o.checks {
            let _ = writeln!(
                s,
                "  [{}] {}{}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
            );
        }
    }
    s
}

pub fn outcomes_csv(outcomes: &[CriterionOutcome]) -> Result<String> {
    let mut rows = vec![["criterion", "check", "pass", "detail"].map(String::from).to_vec()];
    for o in outcomes {
        for c in &o.checks {
            rows.push(vec![o.id.to_string(), c.name.clone(), c.pass.to_string(), c.detail.clone()]);
        }
    }
    csv_string(rows)
}

pub fn trend_csv(t: &SuperpolyReport) -> Result<String> {
    let mut rows = vec![["n", "rho", "log_rho_over_log_n"].map(String::from).to_vec()];
    for r in &t.rows {
        rows.push(vec![r.n.to_string(), r.rho.to_string(), r.exponent.map(|e| format!("{e:.6}")).unwrap_or_default()]);
    }
    csv_string(rows)
}

pub fn complexity_text(t: &SuperpolyReport, cert: Option<&CrtCertificate>) -> String {
    let mut s = format!("window [−{0}, {0}] ({1})\n", t.l, t.label);
    for r in &t.rows {
        let _ = writeln!(s, "  ρ({}) ≥ {}{}", r.n, r.rho, r.exponent.map(|e| format!("   log ρ/log n = {e:.3}")).unwrap_or_default());
    }
    if let Some(c) = cert {
        let p = &c.params;
        let j = p.j_n.map(|j| j.to_string()).unwrap_or_else(|| "none".into());
        let _ = writeln!(
            s,
            "CRT certificate at n = {}: m_n = {}, j_n = {j}, δ_lower ≈ {:.6} (exact: {})\n  ρ(n) ≥ {} — {} distinct blocks, pairwise distinct: {}, congruences hold: {}, certified: {}",
            p.n,
            p.m_n,
            p.delta_lower_approx(),
            p.delta_lower,
            c.bound,
            c.distinct_blocks,
            c.pairwise_distinct,
            c.congruences_hold,
            c.certified()
        );
    }
    s
}

pub fn map_text(v: &MapVerdict) -> String {
    let mut s = format!("{}: {} on [{}, {}]\n", v.check, if v.confirmed { "confirmed" } else { "REFUTED" }, v.window.0, v.window.1);
    if let Some(z) = &v.z {
        let _ = writeln!(s, "  z = {z}");
    }
    if let Some(m) = &v.mismatch {
        let _ = writeln!(
            s,
            "  mismatch at s = {}{}: expected {}, found {}",
            m.s,
            m.k.map(|k| format!(" (k = {k})")).unwrap_or_default(),
            u8::from(m.expected),
            u8::from(m.found)
        );
    }
    for n in &v.notes {
        let _ = writeln!(s, "  {n}");
    }
    s
}

pub fn map_csv(v: &MapVerdict) -> Result<String> {
    csv_string(vec![
        ["check", "confirmed", "lo", "hi", "z", "mismatch_s"].map(String::from).to_vec(),
        vec![
            v.check.clone(),
            v.confirmed.to_string(),
            v.window.0.to_string(),
            v.window.1.to_string(),
            v.z.as_ref().map(|z| z.to_string()).unwrap_or_default(),
            v.mismatch.as_ref().map(|m| m.s.to_string()).unwrap_or_default(),
        ],
    ])
}
