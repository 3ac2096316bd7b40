//! Command-line front end for `bubblelab`.
//!
//! Every subcommand prints its measured numbers (JSON by default, CSV with
//! `--format csv`); `--assert` additionally turns failed checks into exit
//! code 2. Usage and runtime errors exit with 1.

mod commands;
pub mod config;
pub mod selector;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde_json::json;

pub use commands::{Check, Outcome};
use commands::*;
use config::{load_config, ConfigFile, Format, RunConfig, DEFAULT_A, DEFAULT_TOL};
use selector::parse_point;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "bubblelab", version, about = "Minimal bubbling on Willmore surfaces: energies, blow-ups, residues")]
struct Cli {
    /// TOML file with defaults for the options below; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// psi-mu | lopez | enneper | chen-gackstatter | plane | inverted:<model>
    #[arg(long, global = true)]
    model: Option<String>,
    /// Parameter of the four-ended family (psi-mu only).
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// Family constant a (default 3).
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Inversion center `x,y,z`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    p: Option<String>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Leave wall-clock fields out of the report.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Exit with code 2 when a check fails.
    #[arg(long, global = true)]
    assert: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curvature energies over the whole parameter sphere.
    Energies(EnergiesArgs),
    /// Rescaled four-ended family against the Enneper bubble.
    Blowup(BlowupArgs),
    /// Second residue α from a log-log fit of a probe near a point.
    Residue(ResidueArgs),
    /// Branch or end multiplicity from circle means of ∂_rλ.
    Multiplicity(MultiplicityArgs),
    /// Spread of e^λ/χ² over the rescaled inverted family.
    Harnack(HarnackArgs),
    /// First residue γ₀ on circles around a point.
    FirstResidue(FirstResidueArgs),
    /// Finite-difference residual of the Willmore equation.
    Residual(ResidualArgs),
    /// Exact certificates over ℚ(ζ₁₂).
    Verify(VerifyArgs),
    /// Lattice invariant g₂ and the ℘ differential-equation residual.
    G2(G2Args),
    /// OBJ mesh of a model over a polar grid.
    Mesh(MeshArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Energies(_) => "energies",
            Command::Blowup(_) => "blowup",
            Command::Residue(_) => "residue",
            Command::Multiplicity(_) => "multiplicity",
            Command::Harnack(_) => "harnack",
            Command::FirstResidue(_) => "first-residue",
            Command::Residual(_) => "residual",
            Command::Verify(_) => "verify",
            Command::G2(_) => "g2",
            Command::Mesh(_) => "mesh",
        }
    }

    fn options(&self) -> serde_json::Result<serde_json::Value> {
        match self {
            Command::Energies(a) => serde_json::to_value(a),
            Command::Blowup(a) => serde_json::to_value(a),
            Command::Residue(a) => serde_json::to_value(a),
            Command::Multiplicity(a) => serde_json::to_value(a),
            Command::Harnack(a) => serde_json::to_value(a),
            Command::FirstResidue(a) => serde_json::to_value(a),
            Command::Residual(a) => serde_json::to_value(a),
            Command::Verify(a) => serde_json::to_value(a),
            Command::G2(a) => serde_json::to_value(a),
            Command::Mesh(a) => serde_json::to_value(a),
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn resolve(cli: &Cli) -> anyhow::Result<RunConfig> {
    let file = match &cli.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let p = match &cli.p {
        Some(s) => Some(parse_point(s)?),
        None => file.p,
    };
    let cfg = RunConfig {
        command: cli.command.name().to_string(),
        model: cli.model.clone().or(file.model),
        mu: cli.mu.or(file.mu),
        a: cli.a.or(file.a).unwrap_or(DEFAULT_A),
        p,
        tolerance: cli.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
        output: cli.output.clone().or(file.output),
        format: cli.format.or(file.format).unwrap_or_default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Returns whether the verdict passed (always true without `--assert`).
fn execute(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = resolve(cli)?;
    let timed = !cli.no_timestamp;
    let outcome = match &cli.command {
        Command::Energies(a) => energies(&cfg, a, timed)?,
        Command::Blowup(a) => blowup(&cfg, a)?,
        Command::Residue(a) => residue(&cfg, a)?,
        Command::Multiplicity(a) => multiplicity(&cfg, a)?,
        Command::Harnack(a) => harnack(&cfg, a)?,
        Command::FirstResidue(a) => first_residue_cmd(&cfg, a)?,
        Command::Residual(a) => residual(&cfg, a)?,
        Command::Verify(a) => verify(&cfg, a)?,
        Command::G2(a) => g2(&cfg, a)?,
        Command::Mesh(a) => mesh(&cfg, a)?,
    };
    let passed = outcome.checks.iter().all(|c| c.passed);

    let text = match cfg.format {
        Format::Csv => outcome.csv,
        Format::Json => {
            let mut doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": cfg.command,
                "config": cfg,
                "options": cli.command.options()?,
                "result": outcome.result,
                "checks": outcome.checks,
                "passed": passed,
            });
            if timed {
                let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                doc["timestamp"] = json!(secs);
            }
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }

    if cli.assert {
        for c in outcome.checks.iter().filter(|c| !c.passed) {
            eprintln!("FAIL {}: {}", c.name, c.detail);
        }
        return Ok(passed);
    }
    Ok(true)
}
