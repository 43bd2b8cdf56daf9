use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bfree_core::analysis::{analyze, AnalysisReport, AnalyzeOptions};
use bfree_core::automorphism::{
    default_order_window, rotation_point, verify_commutation, verify_order, verify_rotation, verify_window_shift, BlockMap, MapVerdict,
};
use bfree_core::bset::eta_segment;
use bfree_core::complexity::{crt_witnesses, first_qualifying_n, superpoly_report, CrtCertificate, SuperpolyReport};
use bfree_core::conditions::Verdict;
use bfree_core::filtration::FiltrationOptions;
use bfree_core::specfile::{SpecFile, SpecKind, BUNDLED};
use bfree_core::suite::{self, CriterionOutcome};
use bfree_core::toeplitz::direct_eta_segment;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod render;

const LEVEL_CAP_VAR: &str = "BFREE_LEVEL_CAP";
const DEFAULT_LEVEL_CAP: usize = 12;

#[derive(Parser)]
#[command(name = "bfree", version, about = "Holes, essential holes, centralizer checks and complexity certificates for B-free and Toeplitz subshifts")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Per-level report: filtration, holes, essential holes, periods, conditions, centralizer.
    Analyze(AnalyzeArgs),
    /// Bundled example checks.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Bundled spec files.
    Specs {
        #[command(subcommand)]
        action: SpecsAction,
    },
    /// The sequence η on a range of positions.
    Eta {
        /// Inclusive range lo..hi.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: RangeInclusive<i64>,
        spec: String,
    },
    /// Subword-complexity trend and the CRT lower-bound certificate.
    Complexity {
        /// Block lengths lo..hi.
        #[arg(long, value_parser = parse_range, default_value = "1..12")]
        n: RangeInclusive<i64>,
        /// Window half-length.
        #[arg(long = "L", default_value_t = 100_000)]
        l: i64,
        /// Also certify ρ(n) at the first n with j_n ≥ 1 (searching up to this n).
        #[arg(long)]
        certify: Option<u64>,
        spec: String,
    },
    /// Verify the block maps F_ℓ.
    Automorphism {
        #[command(subcommand)]
        check: AutomorphismCheck,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// Run one example (or `all`).
    Run { name: String },
    /// List example names.
    List,
}

#[derive(Subcommand)]
enum SpecsAction {
    List,
    /// Print a bundled spec file.
    Show {
        name: String,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Spec file path or bundled spec name.
    spec: String,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    /// Largest shift tested by (Sh), (Seh'), (DSeh').
    #[arg(long, default_value_t = 4)]
    k_max: i64,
    /// Depth of the (a, 𝒜)-sequence enumeration.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Node budget of the (DSeh') β search.
    #[arg(long, default_value_t = 20_000)]
    beta_budget: usize,
    /// Levels without change that certify essential-hole stabilization.
    #[arg(long, default_value_t = 2)]
    stab_window: usize,
    /// Sources needed to classify a value as infinite.
    #[arg(long, default_value_t = 3)]
    stab_threshold: usize,
    /// Generator index used for source counting.
    #[arg(long)]
    probe_horizon: Option<usize>,
    /// Block-code radius for the gcd-graph criterion.
    #[arg(long, default_value_t = 1)]
    radius: u64,
    /// Cross-check against brute-force oracles.
    #[arg(long)]
    oracle: bool,
    /// Conditions to report and base the exit status on.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ConditionName::Sh, ConditionName::Seh, ConditionName::Dseh, ConditionName::Star])]
    conditions: Vec<ConditionName>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConditionName {
    Sh,
    Seh,
    Dseh,
    Star,
}

impl ConditionName {
    fn label(self) -> &'static str {
        match self {
            ConditionName::Sh => "Sh",
            ConditionName::Seh => "Seh'",
            ConditionName::Dseh => "DSeh'",
            ConditionName::Star => "*",
        }
    }
}

#[derive(Args)]
struct MapArgs {
    #[arg(long, default_value_t = 1)]
    ell: usize,
    spec: String,
}

#[derive(Subcommand)]
#[allow(clippy::enum_variant_names)]
enum AutomorphismCheck {
    VerifyOrder {
        #[command(flatten)]
        map: MapArgs,
        /// Defaults to c_ℓ.
        #[arg(long)]
        order: Option<u64>,
        /// Window half-length (defaults to 4·order·radius).
        #[arg(long)]
        half: Option<i64>,
    },
    VerifyCommutation {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-20..20")]
        k: RangeInclusive<i64>,
        #[arg(long, default_value_t = 200)]
        half: i64,
    },
    VerifyRotation {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-50..50")]
        range: RangeInclusive<i64>,
    },
    VerifyWindowShift {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        t: usize,
    },
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: i64 = hi.trim().trim_start_matches('=').parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if hi < lo {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

/// Exit statuses: holds, violation, inconclusive/over budget, input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Holds = 0,
    Violation = 2,
    Inconclusive = 3,
}

fn level_cap() -> Result<usize> {
    match std::env::var(LEVEL_CAP_VAR) {
        Ok(v) => v.parse().with_context(|| format!("{LEVEL_CAP_VAR}={v:?} is not a level count")),
        Err(_) => Ok(DEFAULT_LEVEL_CAP),
    }
}

fn load_spec(arg: &str) -> Result<SpecFile> {
    let path = PathBuf::from(arg);
    if path.exists() {
        return Ok(SpecFile::load(&path)?);
    }
    if BUNDLED.iter().any(|(n, _)| *n == arg) {
        return Ok(SpecFile::bundled(arg)?);
    }
    bail!("{arg}: no such file and no bundled spec of that name (see `bfree specs list`)")
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String, csv: impl FnOnce() -> Result<String>) -> Result<()> {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => text(),
        Format::Csv => csv()?,
    };
    std::io::stdout().lock().write_all(out.as_bytes())?;
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs, format: Format) -> Result<Status> {
    let cap = level_cap()?;
    if args.n_max == 0 || args.k_max <= 0 || args.stab_threshold == 0 || args.radius == 0 {
        bail!("budgets must be positive");
    }
    if args.n_max > cap {
        bail!("n_max = {} exceeds the level cap {cap} (raise {LEVEL_CAP_VAR} to allow it)", args.n_max);
    }
    let spec = load_spec(&args.spec)?;
    let filtration = FiltrationOptions {
        stab_threshold: args.stab_threshold,
        probe_horizon: args.probe_horizon,
        level_cap: cap.max(args.n_max + args.stab_window.max(args.depth)),
        saturate: true,
    };
    let opts = AnalyzeOptions {
        n_max: args.n_max,
        k_max: args.k_max,
        depth: args.depth,
        stab_window: args.stab_window,
        beta_budget: args.beta_budget,
        filtration,
        oracle: args.oracle,
        radius: args.radius,
    };
    let mut report = analyze(&spec, &opts)?;
    report.conditions.retain(|c| args.conditions.iter().any(|w| w.label() == c.condition));
    emit(format, &report, || render::analysis_text(&report), || render::analysis_csv(&report))?;
    Ok(analysis_status(&report))
}

fn analysis_status(r: &AnalysisReport) -> Status {
    let oracle_bad = r.oracle.iter().any(|o| o.agree == Some(false));
    let disagree = r.levels.iter().any(|l| l.methods_agree == Some(false));
    if oracle_bad || disagree || r.conditions.iter().any(|c| c.verdict == Verdict::Violated) {
        Status::Violation
    } else if r.conditions.iter().any(|c| c.verdict == Verdict::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Holds
    }
}

fn cmd_examples(action: &ExamplesAction, format: Format) -> Result<Status> {
    let outcomes: Vec<CriterionOutcome> = match action {
        ExamplesAction::List => {
            let names: Vec<&str> = suite::EXAMPLES.iter().map(|(n, _)| *n).collect();
            emit(format, &names, || names.join("\n") + "\n", || Ok(format!("name\n{}\n", names.join("\n"))))?;
            return Ok(Status::Holds);
        }
        ExamplesAction::Run { name } if name == "all" => suite::run_all(),
        ExamplesAction::Run { name } => vec![suite::run_example(name).with_context(|| format!("unknown example {name:?} (see `bfree examples list`)"))?],
    };
    emit(format, &outcomes, || render::outcomes_text(&outcomes), || render::outcomes_csv(&outcomes))?;
    Ok(if outcomes.iter().all(CriterionOutcome::pass) { Status::Holds } else { Status::Violation })
}

fn cmd_specs(action: &SpecsAction) -> Result<Status> {
    match action {
        SpecsAction::List => BUNDLED.iter().for_each(|(n, _)| println!("{n}")),
        SpecsAction::Show { name } => {
            let (_, text) = BUNDLED.iter().find(|(n, _)| n == name).with_context(|| format!("no bundled spec {name:?}"))?;
            print!("{text}");
        }
    }
    Ok(Status::Holds)
}

#[derive(Serialize)]
struct EtaOutput {
    start: i64,
    bits: String,
    /// Positions not resolved within the spec's levels (Toeplitz specs), printed as 0.
    unresolved: Vec<i64>,
}

fn cmd_eta(range: &RangeInclusive<i64>, spec: &str, format: Format) -> Result<Status> {
    let spec = load_spec(spec)?;
    let (lo, hi) = (*range.start(), *range.end());
    let (window, unresolved) = match &spec.kind {
        SpecKind::BFree(s) => (eta_segment(s, lo, hi)?, Vec::new()),
        SpecKind::Toeplitz(t) => {
            let r = direct_eta_segment(t, lo, hi, t.max_level())?;
            (r.window, r.unresolved)
        }
    };
    let out = EtaOutput { start: lo, bits: window.to_string(), unresolved };
    emit(
        format,
        &out,
        || format!("{}\n", out.bits),
        || {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["position", "bit"])?;
            for (i, c) in out.bits.chars().enumerate() {
                w.write_record([(lo + i as i64).to_string(), c.to_string()])?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        },
    )?;
    Ok(if out.unresolved.is_empty() { Status::Holds } else { Status::Inconclusive })
}

#[derive(Serialize)]
struct ComplexityOutput {
    trend: SuperpolyReport,
    certificate: Option<CrtCertificate>,
}

fn cmd_complexity(n: &RangeInclusive<i64>, l: i64, certify: Option<u64>, spec: &str, format: Format) -> Result<Status> {
    if *n.start() < 1 || l < 1 {
        bail!("block lengths and L must be positive");
    }
    let spec = load_spec(spec)?;
    let bspec = spec.bfree()?;
    let ns: Vec<usize> = (*n.start() as usize..=*n.end() as usize).collect();
    let trend = superpoly_report(bspec, &ns, l)?;
    let mut status = Status::Holds;
    let certificate = match certify {
        None => None,
        Some(n_max) => match first_qualifying_n(bspec, None, n_max)? {
            Some(n) => {
                let cert = crt_witnesses(bspec, n, None, 10_000)?;
                if !cert.certified() {
                    status = Status::Violation;
                }
                Some(cert)
            }
            None => {
                eprintln!("no n ≤ {n_max} has j_n ≥ 1; nothing to certify");
                status = Status::Inconclusive;
                None
            }
        },
    };
    let out = ComplexityOutput { trend, certificate };
    emit(format, &out, || render::complexity_text(&out.trend, out.certificate.as_ref()), || render::trend_csv(&out.trend))?;
    Ok(status)
}

type MapCheck<'a> = Box<dyn Fn(&BlockMap, &bfree_core::bset::BSetSpec) -> bfree_core::Result<MapVerdict> + 'a>;

fn cmd_automorphism(check: &AutomorphismCheck, format: Format) -> Result<Status> {
    let (map_args, run): (&MapArgs, MapCheck<'_>) = match check {
        AutomorphismCheck::VerifyOrder { map, order, half } => (
            map,
            Box::new(move |m, s| {
                let order = order.unwrap_or_else(|| match m {
                    BlockMap::FEll { c_ell, .. } => *c_ell,
                    _ => 1,
                });
                verify_order(m, s, order, half.unwrap_or_else(|| default_order_window(m, order)))
            }),
        ),
        AutomorphismCheck::VerifyCommutation { map, k, half } => (map, Box::new(move |m, s| verify_commutation(m, s, (*k.start(), *k.end()), *half))),
        AutomorphismCheck::VerifyRotation { map, range } => {
            (map, Box::new(move |m, s| verify_rotation(m, s, &rotation_point(m)?, *range.start(), *range.end())))
        }
        AutomorphismCheck::VerifyWindowShift { map, n, t } => (map, Box::new(move |m, s| verify_window_shift(m, s, *n, *t))),
    };
    let spec = load_spec(&map_args.spec)?;
    let bspec = spec.bfree()?;
    let map = BlockMap::f_ell(bspec, map_args.ell)?;
    let verdict = run(&map, bspec)?;
    emit(format, &verdict, || render::map_text(&verdict), || render::map_csv(&verdict))?;
    Ok(if verdict.confirmed { Status::Holds } else { Status::Violation })
}

fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(a, cli.format),
        Command::Examples { action } => cmd_examples(action, cli.format),
        Command::Specs { action } => cmd_specs(action),
        Command::Eta { range, spec } => cmd_eta(range, spec, cli.format),
        Command::Complexity { n, l, certify, spec } => cmd_complexity(n, *l, *certify, spec, cli.format),
        Command::Automorphism { check } => cmd_automorphism(check, cli.format),
    }
}

/// Budget-type library errors are inconclusive (3); everything else is an input error (4).
fn error_code(e: &anyhow::Error) -> u8 {
    use bfree_core::Error as E;
    match e.downcast_ref::<E>() {
        Some(E::InsufficientHorizon { .. } | E::DensityCap { .. } | E::CapExceeded(_) | E::WindowTooShort { .. }) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
