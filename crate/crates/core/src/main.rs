//! Command-line front end: every experiment as a reproducible batch run with
//! CSV or JSON output.
//!
//! Exit codes: 0 on success, 1 on a numerical failure (divergence, failed
//! checks, insufficient resolution), 2 on usage or domain errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use bergman::bloch::little_bloch_distance;
use bergman::classify::{bounds_product, bounds_single, numeric_lower_bound, DistanceBounds};
use bergman::config::{OutputFormat, RunConfig};
use bergman::error::Error;
use bergman::extremal::{g_n_limit_scan, logniet_experiment, power_norm_closed, power_norm_series};
use bergman::projection::{coefficient_series, compute_tail_bound, project, Factor, PowerSymbol};
use bergman::report::{Cell, Table};
use bergman::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "bergman",
    about = "Bergman projections, Bloch distances and strong-exposedness classification for power symbols on the unit disc",
    version
)]
struct Cli {
    /// Flat key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format (csv or json); overrides the configuration file.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Taylor coefficients of the projected symbol ((1-z)/|1-z|)^beta.
    Project {
        #[arg(long)]
        beta: f64,
        /// Truncation order; defaults to the configured series order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Bergman norm of (1-z)^beta, or the g_n norm scan.
    Norm {
        #[arg(long)]
        beta: Option<f64>,
        /// Comma-separated n values for the g_n scan.
        #[arg(long)]
        gn: Option<String>,
    },
    /// Distance bounds and verdict for a symbol.
    Distance {
        /// Single exponent at base point 1.
        #[arg(long)]
        beta: Option<f64>,
        /// Product symbol: comma-separated beta@angle_degrees factors.
        #[arg(long)]
        factors: Option<String>,
        /// Also compute the measured Bloch-route lower bound (beta >= 0).
        #[arg(long)]
        numeric: bool,
    },
    /// Classification scan over a beta grid.
    Scan {
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        #[arg(long)]
        step: f64,
    },
    /// The exposed-but-not-strongly-exposed experiment.
    Counterexample {
        /// Descending beta grid in (-2, -1.5]; comma separated.
        #[arg(long, default_value = "-1.5,-1.7,-1.9,-1.95")]
        grid: String,
    },
    /// Run a check suite and print one pass/fail line per check.
    Verify {
        /// quadrature, projection, bloch, extremal, classify or all.
        #[arg(default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => return fail(e),
    };
    let result = match &cli.command {
        Command::Project { beta, order } => cmd_project(&cli, &cfg, *beta, *order),
        Command::Norm { beta, gn } => cmd_norm(&cli, &cfg, *beta, gn.as_deref()),
        Command::Distance { beta, factors, numeric } => {
            cmd_distance(&cli, &cfg, *beta, factors.as_deref(), *numeric)
        }
        Command::Scan { beta_min, beta_max, step } => {
            cmd_scan(&cli, &cfg, *beta_min, *beta_max, *step)
        }
        Command::Counterexample { grid } => cmd_counterexample(&cli, &cfg, grid),
        Command::Verify { suite } => return cmd_verify(&cli, &cfg, suite),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Domain(_) | Error::Config(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(fmt) = &cli.format {
        cfg.format = fmt.parse::<OutputFormat>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, cfg: &RunConfig, table: &Table) -> Result<(), Error> {
    match &cli.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Error::config(format!("cannot create {}: {e}", path.display())))?;
            table.write(&mut file, cfg)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock, cfg)
        }
    }
}

fn cmd_project(cli: &Cli, cfg: &RunConfig, beta: f64, order: Option<usize>) -> Result<(), Error> {
    let order = order.unwrap_or(cfg.series_order);
    if order == 0 {
        return Err(Error::domain("order must be positive".to_string()));
    }
    let mut table = Table::new("projection-coefficients", vec!["n", "c_n", "tail_estimate"]);
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let c = coefficient_series(beta, n, cfg.m_max)?;
        coeffs.push(Complex64::new(c.value, 0.0));
        table.push(vec![Cell::Int(n as i64), Cell::Float(c.value), Cell::Float(c.tail_estimate)]);
    }
    let tail_bound = compute_tail_bound(beta, &coeffs);
    table.footers.push(format!("beta={beta}"));
    table.footers.push(format!("tail_bound={tail_bound}"));
    emit(cli, cfg, &table)
}

fn parse_list(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::config(format!("cannot parse number '{s}'")))
        })
        .collect()
}

fn cmd_norm(cli: &Cli, cfg: &RunConfig, beta: Option<f64>, gn: Option<&str>) -> Result<(), Error> {
    match (beta, gn) {
        (Some(beta), None) => {
            let series = power_norm_series(beta, cfg.m_max.max(2_000_000))?;
            let closed = power_norm_closed(beta)?;
            let mut table = Table::new(
                "bergman-norm",
                vec!["beta", "norm", "method", "error_estimate", "closed_form"],
            );
            table.push(vec![
                Cell::Float(beta),
                Cell::Float(series.value),
                Cell::Text(series.method.to_string()),
                Cell::Float(series.error_estimate),
                Cell::Float(closed.value),
            ]);
            emit(cli, cfg, &table)
        }
        (None, Some(list)) => {
            let ns: Vec<u32> = parse_list(list)?
                .into_iter()
                .map(|x| x as u32)
                .collect();
            let rows = g_n_limit_scan(&ns, cfg.m_max.max(2_000_000))?;
            let mut table = Table::new("gn-norm-scan", vec!["n", "norm", "closed_form"]);
            for r in rows {
                table.push(vec![
                    Cell::Int(r.n as i64),
                    Cell::Float(r.norm),
                    Cell::Float(r.closed_form),
                ]);
            }
            emit(cli, cfg, &table)
        }
        _ => Err(Error::config("norm requires exactly one of --beta or --gn".to_string())),
    }
}

fn bounds_row(table: &mut Table, beta_label: &str, b: &DistanceBounds) {
    table.push(vec![
        Cell::Text(beta_label.to_string()),
        Cell::Float(b.lower),
        Cell::Float(b.upper),
        match b.conjectured {
            Some(c) => Cell::Float(c),
            None => Cell::Text(String::new()),
        },
        Cell::Text(b.verdict.to_string()),
        Cell::Text(b.lower_source.to_string()),
        Cell::Text(b.upper_source.to_string()),
    ]);
}

fn parse_factors(text: &str) -> Result<PowerSymbol, Error> {
    let mut factors = Vec::new();
    for part in text.split(',') {
        let (beta, angle) = part
            .trim()
            .split_once('@')
            .ok_or_else(|| Error::config(format!("factor '{part}' must look like beta@angle_degrees")))?;
        let beta: f64 = beta
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("bad exponent '{beta}'")))?;
        let angle: f64 = angle
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("bad angle '{angle}'")))?;
        factors.push(Factor {
            base: Complex64::from_polar(1.0, angle.to_radians()),
            exponent: beta,
        });
    }
    PowerSymbol::new(factors)
}

fn cmd_distance(
    cli: &Cli,
    cfg: &RunConfig,
    beta: Option<f64>,
    factors: Option<&str>,
    numeric: bool,
) -> Result<(), Error> {
    let mut table = Table::new(
        "distance-bounds",
        vec!["beta", "lower", "upper", "conjectured", "verdict", "lower_source", "upper_source"],
    );
    match (beta, factors) {
        (Some(beta), None) => {
            let b = bounds_single(beta)?;
            bounds_row(&mut table, &format!("{beta}"), &b);
            if numeric {
                if beta < 0.0 {
                    return Err(Error::domain(
                        "the numeric lower bound requires beta >= 0".to_string(),
                    ));
                }
                let symbol = PowerSymbol::single_at_one(beta)?;
                let series = project(&symbol, cfg.series_order, cfg.m_max)?;
                let nlb = numeric_lower_bound(beta, &series)?;
                table.footers.push(format!("numeric_lower_bound={nlb}"));
                let d = little_bloch_distance(&series, beta)?;
                table.footers.push(format!("little_bloch_estimate={}", d.estimate));
            }
        }
        (None, Some(text)) => {
            let symbol = parse_factors(text)?;
            let b = bounds_product(&symbol)?;
            bounds_row(&mut table, text, &b);
        }
        _ => {
            return Err(Error::config(
                "distance requires exactly one of --beta or --factors".to_string(),
            ))
        }
    }
    emit(cli, cfg, &table)
}

fn cmd_scan(cli: &Cli, cfg: &RunConfig, beta_min: f64, beta_max: f64, step: f64) -> Result<(), Error> {
    if step <= 0.0 {
        return Err(Error::domain("scan step must be positive".to_string()));
    }
    if beta_max < beta_min {
        return Err(Error::domain("scan range is empty".to_string()));
    }
    let mut table = Table::new(
        "classification-scan",
        vec!["beta", "lower", "upper", "conjectured", "verdict", "lower_source", "upper_source"],
    );
    let mut k = 0usize;
    loop {
        let beta = beta_min + step * k as f64;
        if beta > beta_max + 1e-12 {
            break;
        }
        let b = bounds_single(beta)?;
        bounds_row(&mut table, &format!("{beta}"), &b);
        k += 1;
    }
    emit(cli, cfg, &table)
}

fn cmd_counterexample(cli: &Cli, cfg: &RunConfig, grid: &str) -> Result<(), Error> {
    let grid = parse_list(grid)?;
    let q = cfg.quadrature()?;
    let result = logniet_experiment(&grid, &q)?;
    let mut table = Table::new(
        "counterexample-trend",
        vec![
            "beta",
            "functional",
            "functional_error",
            "norm_diff",
            "norm_diff_witness",
            "off_singularity_sup",
        ],
    );
    for r in &result.rows {
        table.push(vec![
            Cell::Float(r.beta),
            Cell::Float(r.functional),
            Cell::Float(r.functional_error),
            Cell::Float(r.norm_diff),
            Cell::Float(r.norm_diff_witness),
            Cell::Float(r.off_singularity_sup),
        ]);
    }
    table.footers.push(format!("normalizing_c={} (error {})", result.c, result.c_error));
    emit(cli, cfg, &table)
}

fn cmd_verify(cli: &Cli, cfg: &RunConfig, suite: &str) -> ExitCode {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let results = match run_suite(suite, cfg) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut all_ok = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        all_ok &= r.passed;
        println!(
            "{status} {:<38} computed={:<12.6e} expected={:<12.6e} tol={:<9.2e} [{:.2}s] {}",
            r.id, r.computed, r.expected, r.tolerance, r.seconds, r.detail
        );
    }
    println!(
        "{} of {} checks passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    if let Some(path) = &cli.out {
        let mut table = Table::new(
            "verification-report",
            vec!["check", "passed", "computed", "expected", "tolerance", "seconds", "detail"],
        );
        for r in &results {
            table.push(vec![
                Cell::Text(r.id.clone()),
                Cell::Int(r.passed as i64),
                Cell::Float(r.computed),
                Cell::Float(r.expected),
                Cell::Float(r.tolerance),
                Cell::Float(r.seconds),
                Cell::Text(r.detail.replace(',', ";")),
            ]);
        }
        if let Err(e) = (|| -> Result<(), Error> {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Error::config(format!("cannot create {}: {e}", path.display())))?;
            table.write(&mut file, cfg)
        })() {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            return ExitCode::from(1);
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
