//! Command-line front end: spectra, wavefunction profiles, the invariant
//! suite, the flat-limit scan and the Maxwell check.

pub mod output;
pub mod verify;

use std::fs;
use std::path::PathBuf;

use adsmd::angular::{HalfInt, QuantumNumbers};
use adsmd::field_check::{bianchi_residual, flux, maxwell_residual, MonopoleField};
use adsmd::flat_limit::{limit_scan, quantized_limit_note, LimitTable, QuantizedNote, Units};
use adsmd::radial_exact::{exact_profile, spectrum, ChannelSpec, Variable};
use adsmd::radial_numeric::{shoot, uniform_grid, OdeSystem, ShootingConfig};
use adsmd::spectrum::{ser_f64, to_usual_units, Level, UsualUnits};
use adsmd::tolerances::{RHO_MAX, RHO_MIN, RHO_POINTS};
use adsmd::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "adsmd", version, about = "Dirac particle in a monopole field on anti-de Sitter space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic levels, optionally next to the shooting oracle.
    Spectrum(SpectrumArgs),
    /// Exact radial profile of one level on a grid.
    Wavefunction(WavefunctionArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
    /// Convergence of the curved solutions to flat space.
    LimitScan(LimitScanArgs),
    /// Maxwell residual of the monopole potential.
    FieldCheck(FieldCheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    /// Mass in units of the inverse curvature radius.
    #[arg(long = "M")]
    pub mass: f64,
    /// Monopole charge k = eg/ħc, e.g. 1/2, -1, 0.5.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    /// Total angular momentum; defaults to |k| − 1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Defaults to 0 or 1/2, whichever matches j.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub delta: i8,
}

impl ChannelArgs {
    pub fn channel(&self, rho_c: Option<f64>) -> adsmd::Result<ChannelSpec> {
        let k: HalfInt = self.k.parse()?;
        let j: HalfInt = match &self.j {
            Some(s) => s.parse()?,
            None => adsmd::angular::j_min(k),
        };
        let m: HalfInt = match &self.m {
            Some(s) => s.parse()?,
            None => HalfInt::from_doubled(j.doubled().rem_euclid(2)),
        };
        let qn = QuantumNumbers::new(k, j, m, self.delta, 0)?;
        ChannelSpec::new(qn, self.mass, rho_c)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    /// Also run the shooting oracle and report |Δε| per level.
    #[arg(long)]
    pub with_oracle: bool,
    /// Curvature radius in metres; adds levels in eV.
    #[arg(long)]
    pub rho_metres: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariableArg {
    R,
    Rho,
    Z,
}

impl From<VariableArg> for Variable {
    fn from(v: VariableArg) -> Self {
        match v {
            VariableArg::R => Variable::R,
            VariableArg::Rho => Variable::Rho,
            VariableArg::Z => Variable::Z,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = VariableArg::Rho)]
    pub variable: VariableArg,
    /// Grid start in ρ (mapped to the chosen variable).
    #[arg(long, default_value_t = RHO_MIN)]
    pub rho_min: f64,
    #[arg(long, default_value_t = RHO_MAX)]
    pub rho_max: f64,
    #[arg(long, default_value_t = RHO_POINTS)]
    pub points: usize,
    /// Scale to unit ∫(|c₁|² + |c₂|²) over the grid.
    #[arg(long)]
    pub normalize: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Angular,
    Hypergeom,
    Radial,
    Oracle,
    Flat,
    Field,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LimitScanArgs {
    /// Particle mass m.
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Energy E, with E² > m²c⁴.
    #[arg(long, default_value_t = 1.2)]
    pub energy: f64,
    /// Curvature radii, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1e2, 1e3, 1e4])]
    pub rho: Vec<f64>,
    #[arg(long, default_value_t = 5.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FieldCheckArgs {
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub g: f64,
    /// Use A_φ = g cos²θ instead, which must be flagged.
    #[arg(long)]
    pub corrupted: bool,
    #[arg(long, default_value_t = 1.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 100)]
    pub r_points: usize,
    #[arg(long, default_value_t = 100)]
    pub theta_points: usize,
    #[arg(long, default_value_t = 0.1)]
    pub theta_edge: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Error plus the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) | Error::NoBoundStates(_) => 1,
            Error::Numerical(_) => 2,
            Error::Verification(_) => 3,
        };
        CliError { code, message: e.to_string() }
    }
}

impl CliError {
    fn io(e: std::io::Error, path: &std::path::Path) -> Self {
        CliError { code: 1, message: format!("cannot write {}: {e}", path.display()) }
    }
}

/// What a command produced: text for stdout or the output file, and the
/// exit code (3 when verification failed).
pub struct Artifact {
    pub text: String,
    pub code: u8,
}

/// Rayon pool size from ADSMD_THREADS, if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("ADSMD_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| CliError {
        code: 1,
        message: format!("ADSMD_THREADS must be a positive integer, got '{v}'"),
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError { code: 2, message: format!("thread pool: {e}") })
}

pub fn run(cli: &Cli) -> Result<Artifact, CliError> {
    let (artifact, path) = match &cli.command {
        Command::Spectrum(a) => (run_spectrum(a)?, a.output.as_ref()),
        Command::Wavefunction(a) => (run_wavefunction(a)?, a.output.as_ref()),
        Command::Verify(a) => (run_verify(a), a.output.as_ref()),
        Command::LimitScan(a) => (run_limit_scan(a)?, a.output.as_ref()),
        Command::FieldCheck(a) => (run_field_check(a)?, a.output.as_ref()),
    };
    if let Some(p) = path {
        fs::write(p, &artifact.text).map_err(|e| CliError::io(e, p))?;
        return Ok(Artifact { text: String::new(), code: artifact.code });
    }
    Ok(artifact)
}

#[derive(Serialize)]
struct SpectrumReport<'a> {
    channel: &'a ChannelSpec,
    levels: &'a [Level],
    #[serde(skip_serializing_if = "Option::is_none")]
    usual_units: Option<UsualUnits>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run_spectrum(a: &SpectrumArgs) -> Result<Artifact, CliError> {
    if let Some(r) = a.rho_metres {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::validation("--rho-metres must be a positive finite number").into());
        }
    }
    let ch = a.channel.channel(a.rho_metres)?;
    let mut table = spectrum(&ch, a.n_max)?;
    if a.with_oracle {
        let e = table.energies();
        let lo = e.iter().cloned().fold(f64::INFINITY, f64::min) - 1.01;
        let hi = e.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.03;
        let out = shoot(&OdeSystem::for_channel(&ch, lo), &ShootingConfig::new(lo, hi))?;
        table.attach_oracle(&out.energies());
    }
    let usual_units = a.rho_metres.map(|r| to_usual_units(&table, r));
    let report = SpectrumReport { channel: &table.channel, levels: &table.levels, usual_units };
    Ok(Artifact { text: to_json(&report), code: 0 })
}

pub fn run_wavefunction(a: &WavefunctionArgs) -> Result<Artifact, CliError> {
    let ch = a.channel.channel(None)?;
    if a.points < 2 || !(a.rho_min >= 0.0 && a.rho_max > a.rho_min) {
        return Err(Error::validation("need points ≥ 2 and 0 ≤ rho_min < rho_max").into());
    }
    let var: Variable = a.variable.into();
    let mut grid: Vec<f64> = uniform_grid(a.rho_min, a.rho_max, a.points).iter().map(|&r| var.from_rho(r)).collect();
    if var == Variable::Z {
        grid.reverse();
    }
    let mut p = exact_profile(&ch, a.n, var, &grid)?;
    if a.normalize {
        p = p.normalized();
    }
    let text = match a.format {
        Format::Csv => output::profile_csv(&p)?,
        Format::Json => output::profile_json(&ch, a.n, &p),
    };
    Ok(Artifact { text, code: 0 })
}

pub fn run_verify(a: &VerifyArgs) -> Artifact {
    summarize(&verify::run_suite(a.suite))
}

/// One line per check plus a tally; exit code 3 if anything failed.
pub fn summarize(results: &[verify::CheckResult]) -> Artifact {
    let mut text = String::new();
    let mut failed = 0;
    for r in results {
        text.push_str(&r.line());
        text.push('\n');
        failed += usize::from(!r.pass);
    }
    text.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
    Artifact { text, code: if failed == 0 { 0 } else { 3 } }
}

#[derive(Serialize)]
struct LimitReport {
    #[serde(serialize_with = "ser_f64")]
    mass: f64,
    #[serde(serialize_with = "ser_f64")]
    energy: f64,
    table: LimitTable,
    quantized: Vec<QuantizedNote>,
}

pub fn run_limit_scan(a: &LimitScanArgs) -> Result<Artifact, CliError> {
    if a.points < 2 || !(a.r_max > 0.0) {
        return Err(Error::validation("need points ≥ 2 and r_max > 0").into());
    }
    if !(a.hbar > 0.0 && a.c > 0.0) {
        return Err(Error::validation("ħ and c must be positive").into());
    }
    let units = Units { hbar: a.hbar, c: a.c };
    let r_grid = uniform_grid(0.0, a.r_max, a.points);
    let table = limit_scan(a.mass, a.energy, &a.rho, &r_grid, units)?;
    let quantized = a.rho.iter().map(|&r| quantized_limit_note(a.mass, a.energy, r, units)).collect();
    Ok(Artifact { text: to_json(&LimitReport { mass: a.mass, energy: a.energy, table, quantized }), code: 0 })
}

#[derive(Serialize)]
struct FieldReport {
    #[serde(serialize_with = "ser_f64")]
    g_charge: f64,
    potential: adsmd::field_check::Potential,
    grid: [usize; 2],
    #[serde(serialize_with = "ser_f64")]
    maxwell_residual: f64,
    #[serde(serialize_with = "ser_f64")]
    bianchi_residual: f64,
    #[serde(serialize_with = "ser_f64")]
    flux: f64,
    #[serde(serialize_with = "ser_f64")]
    flux_expected: f64,
}

pub fn run_field_check(a: &FieldCheckArgs) -> Result<Artifact, CliError> {
    if a.r_points < 1 || a.theta_points < 1 || !(a.r_min > 0.0 && a.r_max >= a.r_min) {
        return Err(Error::validation("need r_min > 0, r_max ≥ r_min and nonempty grids").into());
    }
    let field = if a.corrupted { MonopoleField::corrupted(a.g) } else { MonopoleField::new(a.g) };
    let r = if a.r_points == 1 { vec![a.r_min] } else { uniform_grid(a.r_min, a.r_max, a.r_points) };
    let t = adsmd::angular::theta_grid(a.theta_points, a.theta_edge);
    let report = FieldReport {
        g_charge: a.g,
        potential: field.potential,
        grid: [a.r_points, a.theta_points],
        maxwell_residual: maxwell_residual(&field, &r, &t)?,
        bianchi_residual: bianchi_residual(&field, &r, &t)?,
        flux: flux(&field, 1000),
        flux_expected: 4.0 * std::f64::consts::PI * a.g,
    };
    Ok(Artifact { text: to_json(&report), code: 0 })
}
