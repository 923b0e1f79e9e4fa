//! fistab: bound derivations and exact analysis of truncated FI-modules.
//!
//! Exit codes: 0 success, 2 validation failure (bad files, broken
//! invariants, bad value combinations), 3 truncation cap exceeded,
//! 4 unknown preset or flag.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use fistab::bounds::{preset_pipeline, Preset, PresetError};
use fistab::characters::CharacterError;
use fistab::conf::{build_conf_module, ConfError};
use fistab::fileio::{load_module, save_module};
use fistab::report::{
    analyze_module, bounds_report_json, bounds_report_text, config_report, AnalyzeOptions,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fistab",
    version,
    about = "Exact computation and symbolic degree bounds for truncated FI-modules over Q",
    after_help = "The truncation cap defaults to 9; set FISTAB_CAP to override."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive a degree-bound table from a preset, or evaluate the
    /// configuration-space bounds directly (preset `config`).
    Bounds(BoundsArgs),
    /// Build a configuration-space cohomology module and write it to a file.
    Generate(GenerateArgs),
    /// Load a module file, validate every invariant and report observed
    /// degrees, multiplicities, character polynomial and inner products.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// mcg | mcg-boundary | diffeo | hyperelliptic | config
    preset: String,
    /// Cohomological degree (presets other than `config`).
    #[arg(long)]
    k: Option<i64>,
    /// 1 for the orientable case, 0 otherwise.
    #[arg(long)]
    lambda: Option<i64>,
    /// Manifold dimension (preset `config` only).
    #[arg(long)]
    dim: Option<u32>,
    /// 1 if orientable, 0 otherwise (preset `config` only).
    #[arg(long)]
    orientable: Option<u8>,
    /// Cohomological degree (preset `config` only).
    #[arg(long)]
    q: Option<i64>,
    #[arg(long, value_parser = ["json", "text"], default_value = "text")]
    format: String,
}

#[derive(Args)]
struct GenerateArgs {
    /// Cohomological degree of the testbed module.
    #[arg(long)]
    k: u32,
    /// Highest level to build (must not exceed the truncation cap).
    #[arg(long = "max-level")]
    max_level: u32,
    /// Output path for the module file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Module file to analyze.
    path: PathBuf,
    /// Highest character-polynomial degree to try (default: twice the
    /// observed stable degree).
    #[arg(long = "max-degree")]
    max_degree: Option<u32>,
    /// Fit window `A..B` (default: the observed polynomial window).
    #[arg(long, value_parser = parse_window)]
    window: Option<(u32, u32)>,
    #[arg(long, value_parser = ["json", "text"], default_value = "text")]
    format: String,
}

fn parse_window(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| format!("bad window start `{a}`"))?;
    let b = b
        .trim()
        .parse()
        .map_err(|_| format!("bad window end `{b}`"))?;
    Ok((a, b))
}

enum Failure {
    /// Exit 2: invalid input data or value combinations.
    Validation(String),
    /// Exit 3: truncation cap exceeded.
    Cap(String),
    /// Exit 4: unknown preset or flag usage.
    Usage(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        let (msg, code) = match self {
            Failure::Validation(m) => (m, 2),
            Failure::Cap(m) => (m, 3),
            Failure::Usage(m) => (m, 4),
        };
        eprintln!("error: {msg}");
        ExitCode::from(code)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(4)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bounds(args) => run_bounds(args),
        Command::Generate(args) => run_generate(args),
        Command::Analyze(args) => run_analyze(args),
    }
}

fn run_bounds(args: BoundsArgs) -> Result<(), Failure> {
    if args.preset == "config" {
        let dim = args
            .dim
            .ok_or_else(|| Failure::Usage("preset config needs --dim".into()))?;
        let orientable = args
            .orientable
            .ok_or_else(|| Failure::Usage("preset config needs --orientable {0,1}".into()))?;
        if orientable > 1 {
            return Err(Failure::Usage("--orientable must be 0 or 1".into()));
        }
        let q = args
            .q
            .ok_or_else(|| Failure::Usage("preset config needs --q".into()))?;
        if q < 0 {
            return Err(Failure::Validation("q must be nonnegative".into()));
        }
        let report = config_report(dim, orientable == 1, q)
            .map_err(|e| Failure::Validation(e.to_string()))?;
        match args.format.as_str() {
            "json" => print!("{}", report.render_json()),
            _ => print!("{}", report.render_text()),
        }
        return Ok(());
    }

    let preset: Preset = args
        .preset
        .parse()
        .map_err(|e: fistab::bounds::UnknownPreset| Failure::Usage(e.to_string()))?;
    let k = args
        .k
        .ok_or_else(|| Failure::Usage(format!("preset {preset} needs --k")))?;
    let lambda = match (preset, args.lambda) {
        // the boundary table does not depend on orientability and the
        // hyperelliptic case is always orientable
        (Preset::McgBoundary, l) => l.unwrap_or(1),
        (Preset::Hyperelliptic, l) => l.unwrap_or(1),
        (_, Some(l)) => l,
        (_, None) => {
            return Err(Failure::Usage(format!(
                "preset {preset} needs --lambda {{0,1}}"
            )))
        }
    };
    let report = preset_pipeline(preset, k, lambda).map_err(|e| match e {
        PresetError::UnknownPreset(u) => Failure::Usage(u.to_string()),
        other => Failure::Validation(other.to_string()),
    })?;
    match args.format.as_str() {
        "json" => print!("{}", bounds_report_json(&report).render_pretty()),
        _ => print!("{}", bounds_report_text(&report)),
    }
    Ok(())
}

fn run_generate(args: GenerateArgs) -> Result<(), Failure> {
    let module = build_conf_module(args.k, args.max_level).map_err(|e| match e {
        ConfError::CapExceeded { .. } => Failure::Cap(e.to_string()),
        other => Failure::Validation(other.to_string()),
    })?;
    let text = save_module(&module);
    std::fs::write(&args.out, text)
        .map_err(|e| Failure::Validation(format!("{}: {e}", args.out.display())))?;
    let dims: Vec<String> = module.dims().iter().map(|d| d.to_string()).collect();
    println!(
        "wrote {} (k = {}, levels 0..={}, dims [{}])",
        args.out.display(),
        args.k,
        args.max_level,
        dims.join(", ")
    );
    Ok(())
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.path)
        .map_err(|e| Failure::Validation(format!("{}: {e}", args.path.display())))?;
    let module = load_module(&text).map_err(|e| Failure::Validation(e.to_string()))?;
    if module.max_level() > fistab::truncation_cap() {
        return Err(Failure::Cap(format!(
            "module has max level {} > cap {} (set {} to raise it)",
            module.max_level(),
            fistab::truncation_cap(),
            fistab::CAP_ENV_VAR
        )));
    }
    let opts = AnalyzeOptions {
        max_degree: args.max_degree,
        window: args.window,
    };
    let report = analyze_module(&module, opts).map_err(|e| match e {
        fistab::report::AnalyzeError::RepStab(fistab::repstab::RepStabError::Character(
            CharacterError::CapExceeded { .. },
        )) => Failure::Cap(e.to_string()),
        other => Failure::Validation(other.to_string()),
    })?;
    match args.format.as_str() {
        "json" => print!("{}", report.render_json()),
        _ => print!("{}", report.render_text()),
    }
    Ok(())
}
