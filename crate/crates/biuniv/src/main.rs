use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use biuniv::report::{
    write_rows_csv, BoundsOut, CertificateOut, CompareOut, CorollaryOut, SearchOut,
};
use biuniv::{load_corollary_grid, load_search_grid, parse_phi, parse_rational, series_from_json, series_text, series_to_json};
use biuniv_core::bounds::{corollary_table, ClassParams, CorollaryGrid, ReferenceFamily};
use biuniv_core::membership::{check_membership, Pinning};
use biuniv_core::phi::PhiSpec;
use biuniv_core::search::{SearchConfig, SearchGrid, DEFAULT_DENSITY, MIN_DENSITY};
use biuniv_core::{AnySeries, ExactComplex, ExactSeries};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Coefficient bounds for m-fold symmetric bi-univalent classes: evaluate,
/// certify and stress-test them.
#[derive(Parser, Debug)]
#[command(name = "biuniv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form |a_{m+1}|, |a_{2m+1}| and Fekete-Szego bounds.
    Bounds {
        #[command(flatten)]
        class: ClassArgs,
        /// Fekete-Szego weight; a number or "(m+1)/2".
        #[arg(long, default_value = "0", value_parser = parse_gamma)]
        gamma: GammaArg,
        #[arg(long, value_parser = parse_phi)]
        phi: PhiSpec,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Inverse of f = z + a_{m+1} z^{m+1} + a_{2m+1} z^{2m+1} + ..., exactly.
    Invert {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value = "1")]
        m: u64,
        /// Comma-separated a_{m+1}, a_{2m+1}, ... as integers or p/q.
        #[arg(long, value_delimiter = ',', required_unless_present = "f", conflicts_with = "f")]
        coeffs: Vec<String>,
        /// Series JSON file for f instead of --coeffs.
        #[arg(long)]
        f: Option<PathBuf>,
        /// Print "w - w^2 + ..." instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// m-fold lift (f(z^m))^{1/m} of a normalized f.
    Lift {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Comma-separated a_2, a_3, ... as integers or p/q.
        #[arg(long, value_delimiter = ',', required_unless_present = "f", conflicts_with = "f")]
        coeffs: Vec<String>,
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        text: bool,
    },
    /// Certify the truncated membership conditions for f.
    Check {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_parser = parse_phi)]
        phi: PhiSpec,
        /// Series JSON file for f.
        #[arg(long)]
        f: PathBuf,
        /// Highest order solved for the Schwarz coefficients (at least 2m).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Grid search of the bounds over the Schwarz-parameter set.
    Search {
        /// Grid spec JSON; the built-in default grid when omitted.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DENSITY, value_parser = parse_density)]
        density: usize,
        /// Extra seeded uniform samples per cell.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, value_enum)]
        functional: Option<FunctionalArg>,
        /// Coupling of b_2m + c_2m to b_m; overrides the grid file.
        #[arg(long, value_enum)]
        pinning: Option<PinningArg>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Printed corollary values against the theorems they specialize.
    Corollaries {
        /// Grid spec JSON; m in {1,2,3}, lambda in {0,1/4,1/2}, gamma in
        /// {0,1/2,1,(m+1)/2} and the default majorants when omitted.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[command(flatten)]
        format: TableFormat,
    },
    /// The paper's bounds next to the earlier alpha- and beta-class bounds.
    Compare {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75,1")]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75")]
        beta: Vec<f64>,
        #[command(flatten)]
        format: TableFormat,
    },
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: u64,
    #[arg(long, value_parser = parse_lambda)]
    lambda: f64,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct TableFormat {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, Debug)]
enum GammaArg {
    Value(f64),
    Symmetric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FunctionalArg {
    #[value(name = "abs_a_m1")]
    AbsAm1,
    #[value(name = "abs_a_2m1")]
    AbsA2m1,
    #[value(name = "fekete_szego")]
    FeketeSzego,
}

impl FunctionalArg {
    fn id(self) -> &'static str {
        match self {
            FunctionalArg::AbsAm1 => "abs_a_m1",
            FunctionalArg::AbsA2m1 => "abs_a_2m1",
            FunctionalArg::FeketeSzego => "fekete_szego",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PinningArg {
    Printed,
    Derived,
}

fn parse_lambda(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("must lie in [0, 1), got {v}"))
    }
}

fn parse_gamma(s: &str) -> Result<GammaArg, String> {
    if s.replace(' ', "") == "(m+1)/2" || s == "symmetric" {
        return Ok(GammaArg::Symmetric);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(GammaArg::Value(v)),
        _ => Err(format!("expected a finite number or \"(m+1)/2\", got {s:?}")),
    }
}

fn parse_density(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("not a positive integer: {s:?}"))?;
    if n < MIN_DENSITY {
        return Err(format!("must be at least {MIN_DENSITY}, got {n}"));
    }
    Ok(n)
}

/// A failure the user can fix by changing a flag; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(flag: &str, err: impl std::fmt::Display) -> anyhow::Error {
    Usage(format!("invalid value for --{flag}: {err}")).into()
}

fn read_flag_file(flag: &str, path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| usage(flag, format!("cannot read {}: {e}", path.display())))
}

fn exact_tail(coeffs: &[String]) -> Result<Vec<ExactComplex>> {
    coeffs
        .iter()
        .map(|c| parse_rational(c).map(|r| ExactComplex::new(r, Default::default())))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| usage("coeffs", e))
}

fn series_arg(m: usize, coeffs: &[String], file: Option<&Path>) -> Result<AnySeries> {
    match file {
        Some(path) => series_from_json(&read_flag_file("f", path)?).map_err(|e| usage("f", format!("{e:#}"))),
        None => {
            let tail = exact_tail(coeffs)?;
            Ok(AnySeries::Exact(ExactSeries::mfold_normalized(m, &tail).map_err(|e| usage("m", e))?))
        }
    }
}

fn emit_series(series: &AnySeries, text: bool, var: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    if text {
        writeln!(out, "{}", series_text(series, var))?;
    } else {
        writeln!(out, "{}", series_to_json(series))?;
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn default_corollary_grids() -> Vec<CorollaryGrid> {
    let base = SearchGrid::default_grid();
    base.m
        .iter()
        .map(|&m| CorollaryGrid {
            m: vec![m],
            lambda: base.lambda.clone(),
            gamma: base.gamma.iter().map(|g| g.resolve(m)).collect(),
            phi: base.phi.clone(),
        })
        .collect()
}

/// Exit status 0, or 1 for an infeasible certificate or a bound violation.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Bounds { class, gamma, phi, format } => {
            let m = class.m as usize;
            let gamma = match gamma {
                GammaArg::Value(g) => g,
                GammaArg::Symmetric => (m as f64 + 1.0) / 2.0,
            };
            let p = ClassParams::with_gamma(m, class.lambda, gamma).map_err(|e| usage("gamma", e))?;
            let out = BoundsOut::new(&phi, &p);
            if format.csv {
                out.write_csv(io::stdout().lock())?;
            } else {
                emit_json(&out)?;
            }
            Ok(0)
        }
        Command::Invert { m, coeffs, f, text } => {
            let f = series_arg(m as usize, &coeffs, f.as_deref())?;
            let g = f.revert().map_err(|e| usage(if coeffs.is_empty() { "f" } else { "coeffs" }, e))?;
            emit_series(&g, text, "w")?;
            Ok(0)
        }
        Command::Lift { m, coeffs, f, text } => {
            let f = series_arg(1, &coeffs, f.as_deref())?;
            let lifted = f.mfold_lift(m as usize).map_err(|e| usage(if coeffs.is_empty() { "f" } else { "coeffs" }, e))?;
            emit_series(&lifted, text, "z")?;
            Ok(0)
        }
        Command::Check { class, phi, f, order } => {
            let m = class.m as usize;
            let p = ClassParams::new(m, class.lambda)?;
            let series = series_from_json(&read_flag_file("f", &f)?).map_err(|e| usage("f", format!("{e:#}")))?;
            let order = order.unwrap_or(2 * m);
            if order < 2 * m {
                return Err(usage("order", format!("must be at least 2m = {}, got {order}", 2 * m)));
            }
            let cert = check_membership(&series.to_float(), &phi, &p, order).map_err(|e| usage("f", e))?;
            emit_json(&CertificateOut::new(&cert, &phi, &p))?;
            Ok(if cert.feasible { 0 } else { 1 })
        }
        Command::Search { grid, density, samples, functional, pinning, out, csv } => {
            let mut grid = match grid {
                Some(path) => load_search_grid(&read_flag_file("grid", &path)?).map_err(|e| usage("grid", format!("{e:#}")))?,
                None => SearchGrid::default_grid(),
            };
            if let Some(p) = pinning {
                grid.pinning = match p {
                    PinningArg::Printed => Pinning::Printed,
                    PinningArg::Derived => Pinning::Derived,
                };
            }
            let config = SearchConfig::new(density, samples).map_err(|e| usage("density", e))?;
            let summary = biuniv::validate_parallel(&grid, config, functional.map(FunctionalArg::id))
                .map_err(|e| usage("grid", format!("{e:#}")))?;
            let report = SearchOut::new(&summary, config, grid.pinning);
            let mut buf = Vec::new();
            if csv {
                report.write_csv(&mut buf)?;
            } else {
                serde_json::to_writer_pretty(&mut buf, &report)?;
                buf.push(b'\n');
            }
            match out {
                Some(path) => fs::write(&path, &buf)
                    .map_err(|e| usage("out", format!("cannot write {}: {e}", path.display())))?,
                None => io::stdout().lock().write_all(&buf)?,
            }
            if !summary.violations.is_empty() {
                eprintln!("{} bound violation(s) found", summary.violations.len());
                return Ok(1);
            }
            Ok(0)
        }
        Command::Corollaries { grid, format } => {
            let grids = match grid {
                Some(path) => load_corollary_grid(&read_flag_file("grid", &path)?).map_err(|e| usage("grid", format!("{e:#}")))?,
                None => default_corollary_grids(),
            };
            let mut rows = Vec::new();
            for g in &grids {
                rows.extend(corollary_table(g).map_err(|e| usage("grid", e))?.iter().map(CorollaryOut::from));
            }
            if format.csv {
                write_rows_csv(io::stdout().lock(), &rows)?;
            } else {
                emit_json(&rows)?;
            }
            Ok(0)
        }
        Command::Compare { class, alpha, beta, format } => {
            let p = ClassParams::new(class.m as usize, class.lambda)?;
            let mut rows = Vec::new();
            for &a in &alpha {
                rows.push(CompareOut::new(ReferenceFamily::AlphaClass, a, &p).map_err(|e| usage("alpha", e))?);
            }
            for &b in &beta {
                rows.push(CompareOut::new(ReferenceFamily::BetaClass, b, &p).map_err(|e| usage("beta", e))?);
            }
            if format.csv {
                write_rows_csv(io::stdout().lock(), &rows)?;
            } else {
                emit_json(&rows)?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.chain().any(|c| {
            c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
        }) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
