//! Subcommand definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use framepot::io::{load_configuration, save_configuration};
use framepot::{
    classify_minimizer, coherence, ehler_okoudjou_bound, frame_potential, glazyrin_bound,
    lifted_etf, maximize_m_analytic, maximize_m_brute, minimize_fp, onb_plus_repeats,
    regime_boundaries, sidelnikov_bound, MinimizeOptions, PotentialParams,
};

use crate::output::{emit_record, sig12};

/// Failure classes mapped to exit codes: validation 2, verification 3,
/// internal 1.
pub enum Failure {
    Validation(String),
    Verification(String),
    Internal(anyhow::Error),
}

impl From<framepot::Error> for Failure {
    fn from(e: framepot::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(
    name = "framepot",
    version,
    about = "p-frame potentials of unit-vector configurations: evaluation, constructions, bounds, regime tables, simplex maximization, and minimization campaigns"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the potential, coherence, and lower bounds of a configuration file
    Eval(EvalArgs),
    /// Write a canonical configuration to a file
    Construct(ConstructArgs),
    /// Evaluate the classical lower bounds for given N, d, p
    Bounds(BoundsArgs),
    /// Print the regime table for a dimension
    Regimes(RegimesArgs),
    /// Minimize the potential over d+1 unit vectors with random restarts
    Minimize(MinimizeArgs),
    /// Compare the analytic simplex maximizer with the brute-force oracle
    #[command(name = "lemma-m")]
    LemmaM(LemmaMArgs),
    /// Minimization campaign asserting the closed-form minima
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Configuration file (.json or .csv)
    #[arg(long)]
    config: PathBuf,
    /// Potential exponent
    #[arg(long)]
    p: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    LiftedEtf,
    OnbPlusRepeats,
    /// Alias for lifted-etf with k = d (the regular simplex)
    SimplexEtf,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    d: usize,
    /// Simplex block size for lifted-etf
    #[arg(long)]
    k: Option<usize>,
    /// Repeat count for onb-plus-repeats
    #[arg(long)]
    m: Option<usize>,
    /// Output file (.json or .csv)
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RegimesArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MinimizeArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20_000)]
    max_iters: usize,
    /// Write the full report as JSON to this path
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Write the best configuration to this path
    #[arg(long)]
    config_out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LemmaMArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 200)]
    grid_n: usize,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated dimensions, e.g. 2,3,4
    #[arg(long, default_value = "2,3")]
    d_list: String,
    #[arg(long, default_value_t = 5)]
    samples_per_regime: usize,
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
    /// Corrupts the reference values; exists to exercise the failure path
    #[arg(long, hide = true)]
    sabotage: bool,
}

pub fn run(cli: Cli) -> CmdResult {
    match cli.cmd {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Construct(args) => cmd_construct(args),
        Cmd::Bounds(args) => cmd_bounds(args),
        Cmd::Regimes(args) => cmd_regimes(args),
        Cmd::Minimize(args) => cmd_minimize(args),
        Cmd::LemmaM(args) => cmd_lemma_m(args),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

/// One evaluated lower bound: `{family, d, k, p, value, bound_name, valid}`.
#[derive(Serialize)]
struct BoundRecord {
    family: Option<String>,
    d: usize,
    k: Option<usize>,
    p: f64,
    value: f64,
    bound_name: String,
    valid: bool,
}

fn bound_records(family: Option<String>, n: usize, d: usize, p: f64) -> Vec<BoundRecord> {
    let mut records = Vec::new();

    let half = p / 2.0;
    let k_rounded = half.round().max(1.0);
    let sid_valid = half >= 1.0 - 1e-12 && (half - half.round()).abs() <= 1e-12;
    let k = k_rounded as usize;
    records.push(BoundRecord {
        family: family.clone(),
        d,
        k: Some(k),
        p,
        value: sidelnikov_bound(n, d, k),
        bound_name: "sidelnikov".into(),
        valid: sid_valid,
    });

    if let Ok(value) = ehler_okoudjou_bound(n, d, p) {
        records.push(BoundRecord {
            family: family.clone(),
            d,
            k: None,
            p,
            value,
            bound_name: "ehler_okoudjou".into(),
            valid: p > 2.0,
        });
    }

    records.push(BoundRecord {
        family,
        d,
        k: None,
        p,
        value: glazyrin_bound(n, d, p),
        bound_name: "glazyrin".into(),
        valid: (1.0..=2.0).contains(&p),
    });

    records
}

fn print_bound_records(records: &[BoundRecord]) {
    for r in records {
        let validity = if r.valid { "valid" } else { "outside validity range" };
        println!(
            "  {:<16} {:>18}   ({validity})",
            r.bound_name,
            sig12(r.value)
        );
    }
}

fn cmd_eval(args: EvalArgs) -> CmdResult {
    let x = load_configuration(&args.config)?;
    let params = PotentialParams::new(args.p)?;
    let value = frame_potential(&x, params);
    let mu = coherence(&x)?;
    let family = classify_minimizer(&x, 1e-8).map(|k| format!("L_{k}^{}", x.dim()));
    let records = bound_records(family.clone(), x.n(), x.dim(), args.p);

    if args.json {
        emit_record(
            "eval",
            json!({"config": args.config, "p": args.p}),
            json!({
                "n": x.n(),
                "d": x.dim(),
                "p": args.p,
                "frame_potential": value,
                "coherence": mu,
                "family": family,
                "bounds": records,
            }),
        );
    } else {
        println!(
            "configuration: n = {}, d = {}{}",
            x.n(),
            x.dim(),
            family.map(|f| format!(" ({f})")).unwrap_or_default()
        );
        println!("frame potential (p = {}): {}", args.p, sig12(value));
        println!("coherence: {}", sig12(mu));
        println!("lower bounds:");
        print_bound_records(&records);
    }
    Ok(())
}

fn cmd_construct(args: ConstructArgs) -> CmdResult {
    let (x, label) = match args.family {
        Family::LiftedEtf => {
            let k = args.k.ok_or_else(|| {
                Failure::Validation("lifted-etf requires --k".to_string())
            })?;
            (lifted_etf(args.d, k)?, format!("L_{k}^{}", args.d))
        }
        Family::OnbPlusRepeats => {
            let m = args.m.ok_or_else(|| {
                Failure::Validation("onb-plus-repeats requires --m".to_string())
            })?;
            (onb_plus_repeats(args.d, m)?, format!("ONB+{m} in R^{}", args.d))
        }
        Family::SimplexEtf => (lifted_etf(args.d, args.d)?, format!("L_{0}^{0}", args.d)),
    };
    save_configuration(&x, &args.out)?;

    if args.json {
        emit_record(
            "construct",
            json!({"family": label.clone(), "d": args.d, "k": args.k, "m": args.m, "out": args.out}),
            json!({"path": args.out, "family": label, "n": x.n(), "d": x.dim()}),
        );
    } else {
        println!(
            "wrote {label} (n = {}, d = {}) to {}",
            x.n(),
            x.dim(),
            args.out.display()
        );
    }
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> CmdResult {
    if args.n == 0 || args.d == 0 || !(args.p > 0.0) {
        return Err(Failure::Validation(
            "bounds requires N >= 1, d >= 1, p > 0".to_string(),
        ));
    }
    let records = bound_records(None, args.n, args.d, args.p);
    if args.json {
        emit_record(
            "bounds",
            json!({"n": args.n, "d": args.d, "p": args.p}),
            json!({ "bounds": records }),
        );
    } else {
        println!("lower bounds for N = {}, d = {}, p = {}:", args.n, args.d, args.p);
        print_bound_records(&records);
    }
    Ok(())
}

/// Row of the regime table; interior rows carry the minimizing family and
/// dual alpha interval, boundary rows the degenerate pair.
#[derive(Serialize)]
#[serde(tag = "row_type", rename_all = "snake_case")]
enum RegimeRow {
    Interior {
        k: usize,
        p_lo: f64,
        p_hi: f64,
        minimizer: String,
        value_formula: String,
        alpha_lo: f64,
        /// None encodes the +infinity sentinel of a_0.
        alpha_hi: Option<f64>,
    },
    Boundary {
        p: f64,
        k_pair: [usize; 2],
        minimizers: [String; 2],
        value: f64,
    },
}

fn regime_rows(d: usize) -> Vec<RegimeRow> {
    let table = regime_boundaries(d);
    let mut rows = Vec::new();
    for k in 1..=d {
        rows.push(RegimeRow::Interior {
            k,
            p_lo: table.boundaries[k - 1],
            p_hi: table.boundaries[k],
            minimizer: format!("L_{k}^{d}"),
            value_formula: format!("{}*{}^(1-p)", k + 1, k),
            alpha_lo: table.alpha_thresholds[k],
            alpha_hi: if k == 1 {
                None
            } else {
                Some(table.alpha_thresholds[k - 1])
            },
        });
        if k < d {
            let p = table.boundaries[k];
            rows.push(RegimeRow::Boundary {
                p,
                k_pair: [k, k + 1],
                minimizers: [format!("L_{k}^{d}"), format!("L_{}^{d}", k + 1)],
                value: (k as f64 + 1.0) * (k as f64).powf(1.0 - p),
            });
        }
    }
    rows
}

fn cmd_regimes(args: RegimesArgs) -> CmdResult {
    if args.d < 2 {
        return Err(Failure::Validation("regimes requires d >= 2".to_string()));
    }
    let rows = regime_rows(args.d);
    if args.json {
        emit_record("regimes", json!({"d": args.d}), json!({ "rows": rows }));
    } else {
        println!("p-frame potential regimes for N = d+1, d = {}", args.d);
        for row in &rows {
            match row {
                RegimeRow::Interior {
                    k,
                    p_lo,
                    p_hi,
                    minimizer,
                    value_formula,
                    alpha_lo,
                    alpha_hi,
                } => {
                    let hi = alpha_hi.map_or("inf".to_string(), sig12);
                    println!(
                        "k = {k}: p in ({}, {})  minimizer {minimizer}  value {value_formula}  alpha in ({}, {hi})",
                        sig12(*p_lo),
                        sig12(*p_hi),
                        sig12(*alpha_lo),
                    );
                }
                RegimeRow::Boundary {
                    p,
                    minimizers,
                    value,
                    ..
                } => {
                    println!(
                        "boundary p = {}: minimizers {} and {}  value {}",
                        sig12(*p),
                        minimizers[0],
                        minimizers[1],
                        sig12(*value)
                    );
                }
            }
        }
    }
    Ok(())
}

fn cmd_minimize(args: MinimizeArgs) -> CmdResult {
    let opts = MinimizeOptions {
        restarts: args.restarts,
        max_iters: args.max_iters,
        seed: args.seed,
        ..MinimizeOptions::default()
    };
    let report = minimize_fp(args.d, args.p, &opts)?;

    if let Some(path) = &args.json_out {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Failure::Internal(e.into()))?;
        std::fs::write(path, text + "\n").map_err(|e| Failure::Internal(e.into()))?;
    }
    if let Some(path) = &args.config_out {
        save_configuration(&report.best, path)?;
    }

    if args.json {
        emit_record(
            "minimize",
            json!({
                "d": args.d, "p": args.p, "restarts": args.restarts,
                "seed": args.seed, "max_iters": args.max_iters,
            }),
            &report,
        );
    } else {
        println!("minimize FP over {} unit vectors in R^{}, p = {}", args.d + 1, args.d, args.p);
        println!("  best value:   {}", sig12(report.value));
        println!("  theoretical:  {}", sig12(report.theoretical));
        println!("  rel gap:      {:.3e}", report.rel_gap);
        match report.classified_as {
            Some(k) => println!("  classified:   L_{k}^{}", args.d),
            None => println!("  classified:   (no lifted-ETF pattern)"),
        }
        match report.best_restart {
            Some(r) => println!("  source:       restart {r}"),
            None => println!("  source:       known construction"),
        }
        println!(
            "  restarts converged: {} / {}   iterations: {}",
            report.restarts_converged, args.restarts, report.iterations_total
        );
    }
    Ok(())
}

fn cmd_lemma_m(args: LemmaMArgs) -> CmdResult {
    let analytic = maximize_m_analytic(args.d, args.alpha)?;
    let brute = maximize_m_brute(args.d, args.alpha, args.grid_n, args.restarts)?;
    let agree = (analytic.value - brute.value).abs() <= 1e-8;
    let results = json!({
        "d": args.d,
        "alpha": args.alpha,
        "analytic": {"points": analytic.points, "value": analytic.value},
        "brute": {"point": brute.point, "value": brute.value},
        "agree": agree,
    });
    if args.json {
        emit_record(
            "lemma-m",
            json!({"d": args.d, "alpha": args.alpha, "grid_n": args.grid_n, "restarts": args.restarts}),
            results,
        );
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&results).expect("results serialize")
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct CellReport {
    d: usize,
    p: f64,
    kind: &'static str,
    expected: Vec<usize>,
    theoretical: f64,
    value: f64,
    rel_gap: f64,
    classified: Option<usize>,
    /// |FP(L_k) - FP(L_{k+1})| at the boundary; absent for interior cells.
    construction_gap: Option<f64>,
    pass: bool,
    failures: Vec<String>,
}

fn verify_cell(
    d: usize,
    p: f64,
    kind: &'static str,
    expected: Vec<usize>,
    restarts: usize,
    seed: u64,
    sabotage: bool,
) -> Result<CellReport, Failure> {
    let opts = MinimizeOptions {
        restarts,
        seed,
        ..MinimizeOptions::default()
    };
    let report = minimize_fp(d, p, &opts)?;
    let mut theoretical = report.theoretical;
    if sabotage {
        theoretical *= 1.0001;
    }
    let rel_gap = (report.value - theoretical) / theoretical.max(1e-300);

    let mut failures = Vec::new();
    if rel_gap.abs() > 1e-6 {
        failures.push(format!("rel_gap {rel_gap:.3e} exceeds 1e-6"));
    }
    match report.classified_as {
        Some(k) if expected.contains(&k) => {}
        other => failures.push(format!("classified as {other:?}, expected one of {expected:?}")),
    }

    let mut construction_gap = None;
    if kind == "boundary" {
        let k = expected[0];
        let params = PotentialParams::new(p)?;
        let a = frame_potential(&lifted_etf(d, k)?, params);
        let b = frame_potential(&lifted_etf(d, k + 1)?, params);
        let gap = (a - b).abs();
        if gap > 1e-10 {
            failures.push(format!("boundary constructions differ by {gap:.3e}"));
        }
        construction_gap = Some(gap);
    }

    Ok(CellReport {
        d,
        p,
        kind,
        expected,
        theoretical,
        value: report.value,
        rel_gap,
        classified: report.classified_as,
        construction_gap,
        pass: failures.is_empty(),
        failures,
    })
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let mut dims = Vec::new();
    for part in args.d_list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let d: usize = part
            .parse()
            .map_err(|_| Failure::Validation(format!("bad dimension {part:?} in --d-list")))?;
        if d < 2 {
            return Err(Failure::Validation("verify requires dimensions >= 2".to_string()));
        }
        dims.push(d);
    }
    if dims.is_empty() {
        return Err(Failure::Validation("--d-list is empty".to_string()));
    }
    dims.sort_unstable();
    dims.dedup();
    if args.samples_per_regime == 0 {
        return Err(Failure::Validation("--samples-per-regime must be >= 1".to_string()));
    }

    let mut cells = Vec::new();
    for &d in &dims {
        let table = regime_boundaries(d);
        let mut plan: Vec<(f64, &'static str, Vec<usize>)> = Vec::new();
        for k in 1..=d {
            let lo = table.boundaries[k - 1];
            let hi = table.boundaries[k];
            for i in 1..=args.samples_per_regime {
                let p = lo + (hi - lo) * i as f64 / (args.samples_per_regime + 1) as f64;
                plan.push((p, "interior", vec![k]));
            }
            if k < d {
                plan.push((table.boundaries[k], "boundary", vec![k, k + 1]));
            }
        }
        plan.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (idx, (p, kind, expected)) in plan.into_iter().enumerate() {
            let seed = args.seed.wrapping_add((d * 100_000 + idx) as u64);
            cells.push(verify_cell(
                d,
                p,
                kind,
                expected,
                args.restarts,
                seed,
                args.sabotage,
            )?);
        }
    }

    let failed: Vec<&CellReport> = cells.iter().filter(|c| !c.pass).collect();
    let summary = json!({
        "dims": dims,
        "cells": cells,
        "total": cells.len(),
        "failed": failed.len(),
        "all_pass": failed.is_empty(),
    });

    if args.json {
        emit_record(
            "verify",
            json!({
                "d_list": args.d_list, "samples_per_regime": args.samples_per_regime,
                "restarts": args.restarts, "seed": args.seed,
            }),
            &summary,
        );
    } else {
        for c in &cells {
            println!(
                "d={} p={} [{}] value={} theoretical={} gap={:.3e} class={:?} {}",
                c.d,
                sig12(c.p),
                c.kind,
                sig12(c.value),
                sig12(c.theoretical),
                c.rel_gap,
                c.classified,
                if c.pass { "PASS" } else { "FAIL" }
            );
            for f in &c.failures {
                println!("    {f}");
            }
        }
        println!(
            "verify: {}/{} cells passed",
            cells.len() - failed.len(),
            cells.len()
        );
    }

    if failed.is_empty() {
        Ok(())
    } else {
        let mut msg = format!("{} of {} cells failed:", failed.len(), cells.len());
        for c in failed {
            msg.push_str(&format!(
                "\n  d={} p={} [{}]: {}",
                c.d,
                sig12(c.p),
                c.kind,
                c.failures.join("; ")
            ));
        }
        Err(Failure::Verification(msg))
    }
}
