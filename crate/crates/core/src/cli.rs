//! The `micromorphic` command line.
//!
//! Exit codes: 0 success, 1 output could not be written, 2 configuration
//! error, 3 indefinite parameters, 4 numerical failure.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bandgap::{
    analyze, gap_condition, sample, sweep_mu_c, sweep_mu_c_values, BandGapError, GapInterval,
};
use crate::config::{parse_config, AnalysisConfig, ConfigError, SweepSpec};
use crate::dispersion::{DispersionError, MIN_BRANCH_SAMPLES};
use crate::error::Error;
use crate::exec::Execution;
use crate::material::{characteristic_scales, validate_definiteness, MaterialError};
use crate::output::{emit_curves, gap_report_json, sweep_json, write_json};
use crate::units::{hz_from_rad_per_s, split_quantity, Dimension, Unit};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INDEFINITE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "micromorphic",
    version,
    about = "Dispersion curves and band gaps of the relaxed micromorphic continuum"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print definiteness margins and the band-gap condition.
    Check(Common),
    /// Write dispersion curves as CSV.
    Disperse(Common),
    /// Write the band-gap report as JSON.
    Gaps(Common),
    /// Run the gap analysis for several couple moduli and write JSON.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Multiples of mu_c0, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',')]
        factors: Option<Vec<f64>>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// JSON configuration file.
    config: PathBuf,
    /// Output file, or `-` for standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest wavenumber in rad/m.
    #[arg(long)]
    k_max: Option<f64>,
    /// Number of k samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Override mu_c, e.g. `300MPa` (Pa when no unit is given).
    #[arg(long)]
    mu_c: Option<String>,
    /// Evaluate on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Indefinite(_) => EXIT_INDEFINITE,
        Error::Material(_) | Error::Config(_) => EXIT_CONFIG,
        Error::BandGap(BandGapError::CeilingTooLow { .. }) => EXIT_NUMERICAL,
        Error::BandGap(_) => EXIT_CONFIG,
        Error::Dispersion(
            DispersionError::InvalidGrid
            | DispersionError::InvalidWavenumber(_)
            | DispersionError::InsufficientSamples { .. },
        ) => EXIT_CONFIG,
        Error::Dispersion(_) => EXIT_NUMERICAL,
        Error::Io(_) => EXIT_IO,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("cannot write output: {err}"),
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn parse_mu_c(text: &str) -> Result<f64, Failure> {
    let bad = || Failure::config(format!("--mu-c: `{text}` is not a pressure"));
    let (value, unit) = split_quantity(text).ok_or_else(bad)?;
    let unit = match unit {
        None => Unit::Pa,
        Some(u) => Unit::parse(u)
            .filter(|u| u.dimension() == Dimension::Pressure)
            .ok_or_else(bad)?,
    };
    Ok(unit.convert(value))
}

fn load(common: &Common) -> Result<AnalysisConfig, Failure> {
    let bytes = fs::read(&common.config)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", common.config.display())))?;
    let mut config = parse_config(&bytes).map_err(|e| Failure::from(Error::from(e)))?;
    if let Some(k) = common.k_max {
        if !(k.is_finite() && k > 0.0) {
            return Err(Failure::config(format!(
                "--k-max must be positive, got {k}"
            )));
        }
        config.grid.k_max = Some(k);
    }
    if let Some(n) = common.samples {
        if n < MIN_BRANCH_SAMPLES {
            return Err(Failure::config(format!(
                "--samples must be at least {MIN_BRANCH_SAMPLES}, got {n}"
            )));
        }
        config.grid.samples = n;
    }
    if let Some(text) = &common.mu_c {
        let mu_c = parse_mu_c(text)?;
        config.material = config
            .material
            .with_mu_c(mu_c)
            .map_err(|e: MaterialError| Failure::from(Error::from(ConfigError::from(e))))?;
    }
    Ok(config)
}

fn execution(common: &Common) -> Execution {
    if common.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// `--out` wins; otherwise the config path, resolved against the config
/// file's directory; otherwise standard output.
fn destination(common: &Common, configured: Option<&Path>) -> Option<PathBuf> {
    let path = match (&common.out, configured) {
        (Some(p), _) => p.clone(),
        (None, Some(p)) => common
            .config
            .parent()
            .map(|dir| dir.join(p))
            .unwrap_or_else(|| p.to_path_buf()),
        (None, None) => return None,
    };
    (path.as_os_str() != "-").then_some(path)
}

fn write_to<F>(target: Option<PathBuf>, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match target {
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
        }
        Some(path) => {
            let mut file = File::create(&path).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("cannot create {}: {e}", path.display()),
            })?;
            write(&mut file)?;
            file.sync_all()?;
        }
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Check(common) => check(&load(&common)?),
        Command::Disperse(common) => {
            let config = load(&common)?;
            let options = config.options(execution(&common));
            let (_, branches) = sample(&config.material, &options)?;
            for w in &branches.warnings {
                eprintln!(
                    "warning: {} decreases by {:e} rad/s at k = {} rad/m",
                    w.label, -w.delta_omega, w.k
                );
            }
            let target = destination(&common, config.output.curves.as_deref());
            write_to(target, |out| {
                emit_curves(&branches.branches, out).map(|_| ())
            })
        }
        Command::Gaps(common) => {
            let config = load(&common)?;
            let analysis = analyze(&config.material, &config.options(execution(&common)))?;
            let json = gap_report_json(&analysis.report);
            let target = destination(&common, config.output.report.as_deref());
            write_to(target, |out| write_json(&json, out))
        }
        Command::Sweep { common, factors } => {
            let config = load(&common)?;
            let options = config.options(execution(&common));
            let cases = match (factors, &config.sweep) {
                (Some(f), _) => sweep_mu_c(&config.material, &f, &options)?,
                (None, Some(SweepSpec::Factors(f))) => sweep_mu_c(&config.material, f, &options)?,
                (None, Some(SweepSpec::MuC(v))) => {
                    sweep_mu_c_values(&config.material, v, &options)?
                }
                (None, None) => {
                    return Err(Failure::config(
                        "no sweep given: pass --factors or add a `sweep` block",
                    ))
                }
            };
            let json = sweep_json(&cases);
            let target = destination(&common, config.output.sweep.as_deref());
            write_to(target, |out| write_json(&json, out))
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check(config: &AnalysisConfig) -> Result<(), Failure> {
    let params = &config.material;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let report = validate_definiteness(params);
    writeln!(out, "definiteness: {}", verdict(report.passed()))?;
    for r in &report.results {
        writeln!(
            out,
            "  {}: {} (margin {:e})",
            r.condition,
            verdict(r.passed),
            r.margin
        )?;
    }

    let condition = match gap_condition(params) {
        Ok(c) => c,
        Err(e) => {
            writeln!(out, "gap condition: not evaluated ({e})")?;
            return Ok(());
        }
    };
    let c = condition.clauses;
    writeln!(
        out,
        "gap condition: {}, mu_c0 = {:e} Pa",
        verdict(c.all()),
        condition.threshold
    )?;
    writeln!(out, "  0 < mu_e < inf: {}", verdict(c.mu_e_positive))?;
    writeln!(
        out,
        "  0 < lambda_h < 2 mu_e: {}",
        verdict(c.lambda_h_below_two_mu_e)
    )?;
    writeln!(out, "  mu_c > mu_c0: {}", verdict(c.mu_c_above_threshold))?;

    if report.passed() {
        let s = characteristic_scales(params).map_err(|e| Failure::from(Error::from(e)))?;
        writeln!(out, "cutoffs (rad/s):")?;
        for (name, w) in [
            ("omega_s", s.omega_s),
            ("omega_p", s.omega_p),
            ("omega_r", s.omega_r),
            ("omega_l", s.omega_l),
            ("omega_t", s.omega_t),
        ] {
            writeln!(out, "  {name} = {w:e} ({:e} Hz)", hz_from_rad_per_s(w))?;
        }
        if let Some(GapInterval { low, high, .. }) = crate::bandgap::analytic_gap(&s, c.all()) {
            writeln!(
                out,
                "predicted gap: {low:e} .. {high:e} rad/s ({:e} .. {:e} Hz)",
                hz_from_rad_per_s(low),
                hz_from_rad_per_s(high)
            )?;
        }
    }
    Ok(())
}
