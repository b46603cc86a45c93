use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use grouptk_core::bounds::{self, BoundInputs, Formula};
use grouptk_core::catalog::{default_catalog, Catalog};
use grouptk_core::checks::{scan_entry, Check, ScanOptions, ScanStatus};
use grouptk_core::cohomology::cohomology_table;
use grouptk_core::dichotomy::{verify_jordan_trichotomy, verify_reduction_theorem};
use grouptk_core::heisenberg::{
    min_abelian_index, sample_points, verify_free_action_s3_model, verify_phi_action,
    verify_psi_is_effective_action, Status, DEFAULT_SEED,
};
use grouptk_core::{group_from_spec, Error, GroupContext, GroupSpec, Guards};

const EXIT_INVARIANT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "grouptk", version, about = "Finite group structure checks")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest group order any command will build.
    #[arg(long, global = true, env = "GTK_GUARD_ORDER")]
    guard_order: Option<u64>,
    /// Largest number of subgroups a lattice enumeration may produce.
    #[arg(long, global = true)]
    guard_subgroups: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Compact single-line JSON instead of pretty-printed output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Structure and dichotomy report for one group.
    Analyze {
        /// Constructor string (`sym:4`), inline JSON spec, or path to a JSON spec.
        #[arg(long)]
        group: String,
        /// Threshold for the dichotomy and trichotomy branches.
        #[arg(long = "T", default_value_t = 2)]
        threshold: u64,
    },
    /// Run checks over a catalog, one JSON line per (group, check).
    Scan {
        /// Path to a catalog file, inline catalog JSON, or `default`.
        #[arg(long, default_value = "default")]
        catalog: String,
        /// Comma-separated check ids, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Worker threads. Output order does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long = "T", default_value_t = 2)]
        threshold: u64,
        /// Add per-check wall time in milliseconds to each line.
        #[arg(long)]
        timings: bool,
    },
    /// Action and abelian-index checks for the Heisenberg group mod n.
    Heisenberg {
        /// Modulus, at least 2.
        #[arg(long)]
        n: u64,
        /// Check the two bundle actions on sample points.
        #[arg(long)]
        verify_actions: bool,
        /// Check freeness of the action on the S^3 model.
        #[arg(long)]
        verify_free: bool,
        /// Find the least index of an abelian subgroup.
        #[arg(long)]
        abelian_index: bool,
        /// Random sample points added to the fixed grid.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Mod-p cohomology dimensions of (Z_p)^r, by resolution and closed form.
    Cohomology {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        /// Highest degree to compute.
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
    },
    /// Evaluate one of the closed-form bounds exactly.
    Bounds {
        /// One of factorial-power, burnside-miller, gillam, binomial-square, jordan.
        #[arg(long)]
        formula: String,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long = "T")]
        big_t: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
    },
    /// Print the built-in catalog.
    #[command(hide = true)]
    Catalog,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::GuardExceeded { .. }) => EXIT_GUARD,
        Some(Error::Internal(_)) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

fn guards(opts: &GlobalOpts) -> Guards {
    let mut g = Guards::default();
    if let Some(order) = opts.guard_order {
        g.max_order = order;
    }
    if let Some(subgroups) = opts.guard_subgroups {
        g.max_subgroups = subgroups;
    }
    g
}

fn emit<T: Serialize>(opts: &GlobalOpts, value: &T) -> Result<()> {
    let text = if opts.json {
        serde_json::to_string(value)?
    } else {
        serde_json::to_string_pretty(value)?
    };
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

/// A file path if one exists, otherwise the text itself.
fn read_arg(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with('{') && path.is_file() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

fn load_catalog(arg: &str) -> Result<Catalog> {
    if arg == "default" {
        return Ok(default_catalog());
    }
    Ok(Catalog::from_json(&read_arg(arg)?)?)
}

fn run(cli: Cli) -> Result<u8> {
    let opts = &cli.global;
    let guards = guards(opts);
    match cli.command {
        Command::Analyze { group, threshold } => analyze(opts, &guards, &group, threshold),
        Command::Scan {
            catalog,
            checks,
            jobs,
            threshold,
            timings,
        } => {
            let catalog = load_catalog(&catalog)?;
            let checks = Check::parse_list(&checks)?;
            let options = ScanOptions {
                threshold,
                seed: opts.seed,
                timings,
            };
            scan(&catalog, &checks, &options, &guards, jobs)
        }
        Command::Heisenberg {
            n,
            verify_actions,
            verify_free,
            abelian_index,
            samples,
        } => {
            let all = !(verify_actions || verify_free || abelian_index);
            heisenberg(
                opts,
                &guards,
                n,
                [
                    all || verify_actions,
                    all || verify_free,
                    all || abelian_index,
                ],
                samples,
            )
        }
        Command::Cohomology { p, r, max_deg } => {
            let table = cohomology_table(p, r, max_deg)?;
            emit(opts, &table)?;
            Ok(if table.matches { 0 } else { EXIT_INVARIANT })
        }
        Command::Bounds {
            formula,
            r,
            big_t,
            d,
            t,
        } => {
            let formula: Formula = formula.parse()?;
            let value = bounds::evaluate(formula, &BoundInputs { r, big_t, d, t })?;
            emit(
                opts,
                &json!({
                    "formula": value.formula,
                    "expression": formula.expression(),
                    "inputs": value.inputs,
                    "value": value.value.to_string(),
                    "symbolic": value.symbolic,
                    "log_base": 2,
                }),
            )?;
            Ok(0)
        }
        Command::Catalog => {
            let mut out = io::stdout().lock();
            writeln!(out, "{}", default_catalog().to_json())?;
            Ok(0)
        }
    }
}

fn analyze(opts: &GlobalOpts, guards: &Guards, group: &str, threshold: u64) -> Result<u8> {
    let spec = GroupSpec::parse_inline(&read_arg(group)?)?;
    let ctx = GroupContext::new(group_from_spec(&spec, guards)?, guards)?;
    let structure = ctx.report()?;
    let mut dichotomy = verify_reduction_theorem(&ctx, threshold)?;
    dichotomy.label = Some(group.to_string());
    let trichotomy = if threshold >= 1 {
        Some(verify_jordan_trichotomy(&ctx, threshold)?)
    } else {
        None
    };
    let consistent = dichotomy.consistent && trichotomy.as_ref().is_none_or(|t| t.consistent);
    emit(
        opts,
        &json!({
            "group": group,
            "structure": structure,
            "dichotomy": dichotomy,
            "trichotomy": trichotomy,
        }),
    )?;
    Ok(if consistent { 0 } else { EXIT_INVARIANT })
}

fn scan(
    catalog: &Catalog,
    checks: &[Check],
    options: &ScanOptions,
    guards: &Guards,
    jobs: usize,
) -> Result<u8> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("building thread pool")?;
    let results: Vec<_> = pool.install(|| {
        catalog
            .groups
            .par_iter()
            .map(|entry| scan_entry(entry, checks, options, guards))
            .collect()
    });
    let mut out = io::stdout().lock();
    let mut failed = false;
    for result in results.iter().flatten() {
        failed |= result.status == ScanStatus::Fail;
        writeln!(out, "{}", serde_json::to_string(result)?)?;
    }
    Ok(if failed { EXIT_INVARIANT } else { 0 })
}

fn heisenberg(
    opts: &GlobalOpts,
    guards: &Guards,
    n: u64,
    [actions, free, abelian]: [bool; 3],
    extra_samples: usize,
) -> Result<u8> {
    if n < 2 {
        return Err(Error::Range(format!("n must be at least 2, got {n}")).into());
    }
    guards.check_order(n.saturating_pow(3))?;
    let mut reports = Vec::new();
    let mut ok = true;
    if actions {
        let samples = sample_points(n, extra_samples, opts.seed);
        for report in [
            verify_phi_action(n, &samples, opts.seed)?,
            verify_psi_is_effective_action(n, &samples, opts.seed)?,
        ] {
            ok &= report.status != Status::Fail;
            reports.push(serde_json::to_value(report)?);
        }
    }
    if free {
        let report = verify_free_action_s3_model(n, guards)?;
        ok &= report.status != Status::Fail;
        reports.push(serde_json::to_value(report)?);
    }
    let abelian_index = if abelian {
        let report = min_abelian_index(n, guards)?;
        ok &= report.bound_holds;
        Some(report)
    } else {
        None
    };
    emit(
        opts,
        &json!({
            "n": n,
            "reports": reports,
            "abelian_index": abelian_index,
            "status": if ok { "pass" } else { "fail" },
        }),
    )?;
    Ok(if ok { 0 } else { EXIT_INVARIANT })
}
