//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative classification, 2 invalid input or
//! unwritable output, 3 failed numerical verification.

use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::blowup::{blowup_sequence, identify_catalog, BlowupError, BlowupReport};
use crate::field::{field_header, frequency_profile, write_field_csv, PolarGrid, MIN_FREQUENCY_RING};
use crate::homogeneous::{
    build_match_table, classify_form, conformal_defect, table_to_json, write_table_csv,
    Continuation, FormClass, FourTuple,
};
use crate::minimizer::synth::{random_trace, SynthOptions};
use crate::minimizer::{
    check_oracle, frequency_from_spectrum, minimize, minimize_in_class, BoundaryTrace,
    MinimizeResult, MinimizerError, DEFAULT_MAX_SWEEPS, DEFAULT_RELAX_TOL, DEFAULT_SEP_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Identity,
    Swap,
}

impl From<ClassArg> for Continuation {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Identity => Continuation::Identity,
            ClassArg::Swap => Continuation::Swap,
        }
    }
}

/// Options shared by every command.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// Radial grid intervals.
    #[arg(long = "nr", global = true, default_value_t = 64)]
    pub n_r: usize,
    /// Rays per sheet (even).
    #[arg(long = "ntheta", global = true, default_value_t = 256)]
    pub n_theta: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated radii in (0,1].
    #[arg(long, global = true, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Output file (directory for `minimize`); stdout when absent.
    #[arg(long = "out", global = true)]
    pub out_path: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "qfreq", version, about = "Frequency analytics for 2-valued Dirichlet minimizers")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a coefficient tuple "a,b,c,d" into one of the seven forms.
    Classify {
        #[arg(allow_hyphen_values = true)]
        tuple: String,
    },
    /// Write the pairwise match table.
    Table,
    /// Minimize with the boundary data of a trace file.
    Minimize(SolveArgs),
    /// Minimize, blow up at the origin and identify the limit.
    Blowup(SolveArgs),
    /// Write a seeded random boundary trace.
    Trace {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Keep a nonzero mean (the minimizer does not vanish at 0).
        #[arg(long)]
        constant: bool,
    },
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// JSON array of {"theta", "p1", "p2"} samples.
    pub trace: PathBuf,
    /// Force the continuation class.
    #[arg(long, value_enum)]
    pub class: Option<ClassArg>,
    /// Also run the relaxation oracle.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long = "oracle-tol", default_value_t = 0.01)]
    pub oracle_tol: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("not conformal")]
    NotConformal,
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotConformal => 1,
            CliError::Invalid(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

impl From<MinimizerError> for CliError {
    fn from(e: MinimizerError) -> Self {
        match e {
            MinimizerError::NoConvergence { .. } => CliError::Verification(e.to_string()),
            _ => invalid(e),
        }
    }
}

impl From<BlowupError> for CliError {
    fn from(e: BlowupError) -> Self {
        match e {
            BlowupError::NoCatalogMatch(_) | BlowupError::ZeroEnergy { .. } => {
                CliError::Verification(e.to_string())
            }
            _ => invalid(e),
        }
    }
}

/// Parse arguments, run, print errors; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    match run(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Classify { tuple } => cmd_classify(tuple, cfg, stdout),
        Command::Table => cmd_table(cfg, stdout),
        Command::Minimize(a) => cmd_minimize(a, cfg, stdout),
        Command::Blowup(a) => cmd_blowup(a, cfg, stdout),
        Command::Trace { class, constant } => cmd_trace(*class, *constant, cfg, stdout),
    }
}

/// Open `path` for writing, or fall back to `stdout`.
fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) => {
            let mut file = File::create(p).map_err(|e| invalid(format!("cannot write {}: {e}", p.display())))?;
            f(&mut file)?;
            file.flush().map_err(invalid)
        }
        None => f(stdout),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(invalid)?;
    writeln!(out).map_err(invalid)
}

fn grid(cfg: &RunConfig) -> Result<PolarGrid, CliError> {
    PolarGrid::new(cfg.n_r, cfg.n_theta).map_err(invalid)
}

#[derive(Serialize)]
struct ClassifyReport {
    form: String,
    conformal: bool,
    defect: [f64; 2],
}

pub fn cmd_classify(tuple: &str, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let parts: Vec<&str> = tuple.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(invalid(format!("expected 4 comma-separated reals, got {:?}", tuple)));
    }
    let mut v = [0.0; 4];
    for (x, p) in v.iter_mut().zip(&parts) {
        *x = p.parse().map_err(|_| invalid(format!("not a real number: {p:?}")))?;
    }
    let t = FourTuple::from(v);
    let class = classify_form(t, cfg.tol);
    let (e1, e2) = conformal_defect(t);
    let rep = ClassifyReport { form: class.to_string(), conformal: class.is_conformal(), defect: [e1, e2] };
    with_output(cfg.out_path.as_deref(), stdout, |out| match cfg.format {
        Format::Json => write_json(out, &rep),
        Format::Csv => {
            writeln!(out, "form,conformal_defect_1,conformal_defect_2").map_err(invalid)?;
            writeln!(out, "{},{},{}", rep.form, e1, e2).map_err(invalid)
        }
    })?;
    if class == FormClass::NotConformal {
        return Err(CliError::NotConformal);
    }
    Ok(())
}

pub fn cmd_table(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = build_match_table();
    with_output(cfg.out_path.as_deref(), stdout, |out| match cfg.format {
        Format::Csv => write_table_csv(&rows, out).map_err(invalid),
        Format::Json => write_json(out, &table_to_json(&rows)),
    })
}

fn load_trace(path: &Path) -> Result<BoundaryTrace, CliError> {
    let file = File::open(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(BoundaryTrace::read_json(io::BufReader::new(file))?)
}

fn check_radii(radii: &[f64], g: PolarGrid) -> Result<(), CliError> {
    let floor = MIN_FREQUENCY_RING as f64 * g.h();
    if let Some(r) = radii.iter().find(|&&r| !(r > 0.0 && r <= 1.0)) {
        return Err(invalid(format!("radius {r} outside (0,1]")));
    }
    if let Some(r) = radii.iter().find(|&&r| r < floor) {
        return Err(invalid(format!("radius {r} below grid resolution {floor}")));
    }
    Ok(())
}

fn solve(a: &SolveArgs, cfg: &RunConfig) -> Result<MinimizeResult, CliError> {
    let trace = load_trace(&a.trace)?;
    let g = grid(cfg)?;
    let mut r = match a.class {
        Some(c) => minimize_in_class(&trace, g, DEFAULT_SEP_TOL, c.into())?,
        None => minimize(&trace, g, DEFAULT_SEP_TOL)?,
    };
    if a.oracle {
        check_oracle(&mut r, DEFAULT_MAX_SWEEPS, DEFAULT_RELAX_TOL)?;
    }
    Ok(r)
}

fn verify_oracle(r: &MinimizeResult, a: &SolveArgs) -> Result<(), CliError> {
    match r.oracle_gap {
        Some(gap) if gap.is_nan() || gap > a.oracle_tol => Err(CliError::Verification(format!(
            "oracle gap {gap:e} exceeds {:e}",
            a.oracle_tol
        ))),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct MinimizeSummary {
    class: Continuation,
    energy: f64,
    alt_energy: Option<f64>,
    oracle_gap: Option<f64>,
    spectral_n0: Option<f64>,
    profile_n0: f64,
}

pub fn cmd_minimize(a: &SolveArgs, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let r = solve(a, cfg)?;
    let radii = cfg.radii.clone().unwrap_or_else(|| (1..=16).map(|k| k as f64 / 16.0).collect());
    check_radii(&radii, r.field.grid())?;
    let profile = frequency_profile(&r.field, &radii).map_err(invalid)?;
    let summary = MinimizeSummary {
        class: r.class,
        energy: r.energy,
        alt_energy: r.alt_energy,
        oracle_gap: r.oracle_gap,
        spectral_n0: frequency_from_spectrum(&r.spectrum).ok(),
        profile_n0: profile.n0,
    };
    let write_profile = |out: &mut dyn Write| match cfg.format {
        Format::Csv => profile.write_csv(out).map_err(invalid),
        Format::Json => write_json(out, &profile),
    };
    match &cfg.out_path {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| invalid(format!("cannot create {}: {e}", dir.display())))?;
            let ext = match cfg.format {
                Format::Csv => "csv",
                Format::Json => "json",
            };
            with_output(Some(&dir.join(format!("profile.{ext}"))), stdout, write_profile)?;
            with_output(Some(&dir.join("field.csv")), stdout, |out| {
                write_field_csv(&r.field, out).map_err(invalid)
            })?;
            with_output(Some(&dir.join("field_header.json")), stdout, |out| {
                write_json(out, &field_header(&r.field))
            })?;
            with_output(Some(&dir.join("summary.json")), stdout, |out| write_json(out, &summary))?;
        }
        None => {
            write_json(stdout, &summary)?;
            write_profile(stdout)?;
        }
    }
    verify_oracle(&r, a)
}

#[derive(Serialize)]
struct DichotomyReport {
    #[serde(rename = "N0")]
    n0: f64,
    blowup: Option<()>,
    reason: &'static str,
}

pub fn cmd_blowup(a: &SolveArgs, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let radii = cfg.radii.clone().unwrap_or_else(|| vec![0.4, 0.2, 0.1]);
    let g = grid(cfg)?;
    check_radii(&radii, g)?;
    let r = solve(a, cfg)?;
    verify_oracle(&r, a)?;
    let n0 = frequency_from_spectrum(&r.spectrum)?;
    if n0 == 0.0 {
        let rep = DichotomyReport { n0, blowup: None, reason: "the minimizer does not vanish at the origin" };
        return with_output(cfg.out_path.as_deref(), stdout, |out| write_json(out, &rep));
    }
    let seq = blowup_sequence(&r.spectrum, &radii, g)?;
    let m = identify_catalog(seq.limit(), cfg.tol)?;
    let rep = BlowupReport::new(&seq, &m);
    with_output(cfg.out_path.as_deref(), stdout, |out| match cfg.format {
        Format::Json => write_json(out, &rep),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["fitted_N", "rounded_N", "continuation", "residual", "boundary_mass", "1/N"])
                .map_err(invalid)?;
            w.write_record([
                rep.fitted_n.to_string(),
                rep.rounded_n.to_string(),
                rep.continuation.to_string(),
                rep.residual.to_string(),
                rep.boundary_mass.to_string(),
                rep.inv_n.to_string(),
            ])
            .map_err(invalid)?;
            w.flush().map_err(invalid)
        }
    })
}

pub fn cmd_trace(class: ClassArg, constant: bool, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut opts = SynthOptions::new(class.into(), cfg.n_theta);
    opts.constant = constant;
    if cfg.n_theta < 8 || cfg.n_theta % 2 == 1 {
        return Err(invalid("trace needs an even sample count of at least 8"));
    }
    let t = random_trace(opts, cfg.seed);
    with_output(cfg.out_path.as_deref(), stdout, |out| write_json(out, &t.to_samples()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = main_with_args(std::iter::once("qfreq").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn classify_exit_codes() {
        let (c, out, _) = run_args(&["classify", "1,0,0,1"]);
        assert_eq!(c, 0);
        assert!(out.contains("F1(d=1)"));
        assert_eq!(run_args(&["classify", "1,1,1,1"]).0, 1);
        assert_eq!(run_args(&["classify", "1,0,0"]).0, 2);
        assert_eq!(run_args(&["classify", "1,x,0,1"]).0, 2);
        let (c, out, _) = run_args(&["classify", "-1,0,0,-1", "--format", "json"]);
        assert_eq!(c, 0);
        assert!(out.contains("\"conformal\": true"));
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        assert_eq!(run_args(&["table", "--format", "xml"]).0, 2);
        assert_eq!(run_args(&["nonsense"]).0, 2);
    }

    #[test]
    fn table_formats_agree() {
        let (c, csv_out, _) = run_args(&["table"]);
        assert_eq!(c, 0);
        let (_, json_out, _) = run_args(&["table", "--format", "json"]);
        let rows: Vec<serde_json::Value> = serde_json::from_str(&json_out).unwrap();
        assert_eq!(rows.len() + 1, csv_out.lines().count());
    }
}
