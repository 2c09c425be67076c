//! zeta-region: recompute, verify, and re-optimize the explicit zero-free
//! region constant, and compare every number against its published value.
//!
//! Exit code 0 means every comparison stayed within tolerance, 1 means some
//! comparison or property suite failed, 2 means the run could not start or
//! finish. Output is byte-stable for a fixed configuration. Setting
//! ZETA_REGION_OUT_DIR additionally writes each report under that directory.

mod commands;
mod config;
mod golden;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "zeta-region",
    version,
    about = "Zero-free region constant: recompute, iterate, optimize, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Kernel opening angle in radians, strictly between pi/2 and pi
    #[arg(long, global = true, value_name = "X")]
    theta: Option<f64>,

    /// Comparison polynomial: tuned, rs, or custom:c,c'
    #[arg(long, global = true, value_name = "POLY")]
    polynomial: Option<String>,

    /// How r is chosen per step: replay (published exponents) or auto
    #[arg(long, global = true, value_name = "MODE")]
    schedule: Option<String>,

    /// Output format: text, csv, or json
    #[arg(long, global = true, value_name = "FMT")]
    format: Option<String>,

    /// Flat key=value config file; flags override its entries
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Zero-verification cutoff height T0
    #[arg(long = "t0-cap", global = true, value_name = "HEIGHT")]
    t0_cap: Option<f64>,

    /// Foot height t0 of the region
    #[arg(long, global = true, value_name = "HEIGHT")]
    t0: Option<f64>,

    /// Starting value of the region constant R
    #[arg(long = "r-init", global = true, value_name = "R")]
    r_init: Option<f64>,

    /// Comma-separated replay exponents overriding the built-in six
    #[arg(long = "r-schedule", global = true, value_name = "LIST")]
    r_schedule: Option<String>,

    /// Seed for the randomized property suites
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Absolute tolerance for a single definite integral
    #[arg(long, global = true, value_name = "TOL")]
    quad_abs_tol: Option<f64>,

    /// Bracket width at which bisection stops
    #[arg(long, global = true, value_name = "TOL")]
    root_tol: Option<f64>,

    /// Bracket width at which golden-section search stops
    #[arg(long, global = true, value_name = "TOL")]
    minimize_tol: Option<f64>,

    /// Interval splits one integral may spend
    #[arg(long, global = true, value_name = "N")]
    max_subdivisions: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Recompute the named constants and compare them with their references
    Constants,
    /// Run the (R, r) iteration and emit one record per step
    Iterate,
    /// Replay the angle-optimization table column by column
    OptimizeTheta {
        /// Stop after this many columns
        #[arg(long, value_name = "N")]
        steps: Option<usize>,
    },
    /// Run the property suites and dump counterexamples on failure
    Verify {
        /// Force the discount to this value to demonstrate a failing pairing
        #[arg(long = "inject-kappa", value_name = "K")]
        inject_kappa: Option<f64>,
    },
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    if let Some(v) = cli.theta {
        cfg.theta = v;
    }
    if let Some(poly) = &cli.polynomial {
        config::parse_polynomial(poly, &mut cfg)?;
    }
    if let Some(mode) = &cli.schedule {
        cfg.schedule = config::parse_schedule(mode)?;
    }
    if let Some(fmt) = &cli.format {
        cfg.format = config::parse_format(fmt)?;
    }
    if let Some(v) = cli.t0_cap {
        cfg.t0_cap = v;
    }
    if let Some(v) = cli.t0 {
        cfg.t0 = v;
    }
    if let Some(v) = cli.r_init {
        cfg.r_init = v;
    }
    if let Some(list) = &cli.r_schedule {
        cfg.apply_pair("r_schedule", list)?;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.quad_abs_tol {
        cfg.tol.quad_abs_tol = v;
    }
    if let Some(v) = cli.root_tol {
        cfg.tol.root_tol = v;
    }
    if let Some(v) = cli.minimize_tol {
        cfg.tol.minimize_tol = v;
    }
    if let Some(v) = cli.max_subdivisions {
        cfg.tol.max_subdivisions = v;
    }
    match &cli.command {
        Cmd::OptimizeTheta { steps } => {
            if steps.is_some() {
                cfg.steps = *steps;
            }
        }
        Cmd::Verify { inject_kappa } => {
            if inject_kappa.is_some() {
                cfg.inject_kappa = *inject_kappa;
            }
        }
        _ => {}
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = build_config(cli)?;
    let report = match &cli.command {
        Cmd::Constants => commands::cmd_constants(&cfg)?,
        Cmd::Iterate => commands::cmd_iterate(&cfg)?,
        Cmd::OptimizeTheta { .. } => commands::cmd_optimize_theta(&cfg)?,
        Cmd::Verify { .. } => commands::cmd_verify(&cfg)?,
    };
    report::emit(&report, cfg.format)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
