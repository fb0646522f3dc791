//! `hough`: analyze parametrized families and run accumulator detection.
//!
//! Exit codes for `analyze`: 0 σ-regular, 2 generically regular, 3 not
//! decided. Every command exits with 1 on error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hough_core::detector::{collect_points, perturb, run_detector, DetectConfig};
use hough_core::family_file::{parse_family_file, parse_points_csv, FamilyFile};
use hough_core::field::parse_rational;
use hough_core::report;
use hough_core::{
    analyze, generic_fiber_basis, hough_transform_point, AnalysisOptions, InverterPolicy, Rational, TermOrder,
};

#[derive(Parser, Debug)]
#[command(name = "hough", version, about = "Hough regularity of parametrized families of affine schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Deglex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether distinct parameters give distinct fibers.
    Analyze {
        file: PathBuf,
        /// Override the term ordering of the file.
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
        #[arg(long)]
        json: bool,
        /// Leave out the generator d(a)d(e)t - 1.
        #[arg(long, conflicts_with = "always_inverter")]
        no_inverter: bool,
        /// Add d(a)d(e)t - 1 even when d = 1.
        #[arg(long)]
        always_inverter: bool,
        /// Also compute the saturation when the radical test succeeds.
        #[arg(long)]
        full: bool,
    },
    /// Print the ideal in the parameters cut out by a data point.
    Transform {
        file: PathBuf,
        /// Coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        json: bool,
    },
    /// Vote over the parameter box of the file's `detect` section.
    Detect {
        file: PathBuf,
        /// Perturb every coordinate by at most this amount.
        #[arg(long)]
        noise: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the cells per axis.
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print the reduced basis of the generic fiber, its coefficients and denominator.
    Gb {
        file: PathBuf,
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
    },
}

fn load(path: &Path) -> Result<FamilyFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_family_file(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn with_order(file: FamilyFile, order: Option<OrderArg>) -> Result<FamilyFile> {
    let Some(o) = order else { return Ok(file) };
    let t = match o {
        OrderArg::Degrevlex => TermOrder::DegRevLex,
        OrderArg::Deglex => TermOrder::DegLex,
    };
    Ok(FamilyFile { family: file.family.with_order(t)?, ..file })
}

fn parse_point(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|c| parse_rational(c).ok_or_else(|| anyhow!("malformed coordinate `{}`", c.trim()))).collect()
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { file, order, json, no_inverter, always_inverter, full } => {
            let f = with_order(load(&file)?, order)?;
            let inverter = if no_inverter {
                InverterPolicy::Never
            } else if always_inverter {
                InverterPolicy::Always
            } else {
                InverterPolicy::WhenNeeded
            };
            let r = analyze(&f.family, &AnalysisOptions { inverter, always_saturate: full })?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report::report_json(&r))?);
            } else {
                print!("{}", report::report_text(&r));
            }
            Ok(r.verdict.exit_code() as u8)
        }
        Command::Transform { file, point, json } => {
            let f = load(&file)?;
            let ideal = hough_transform_point(&f.family, &parse_point(&point)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report::ideal_json(&ideal))?);
            } else {
                print!("{}", report::ideal_text(&ideal));
            }
            Ok(0)
        }
        Command::Detect { file, noise, seed, resolution, json } => {
            let f = load(&file)?;
            let mut cfg: DetectConfig =
                f.detect.clone().ok_or_else(|| anyhow!("{}: no `detect` section", file.display()))?;
            if let Some(r) = resolution {
                cfg.resolution = r;
            }
            let base = file.parent().map(Path::to_path_buf).unwrap_or_default();
            let arity = f.family.nvars();
            let read = |p: &str| -> std::result::Result<Vec<Vec<Rational>>, String> {
                let path = base.join(p);
                let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_points_csv(&text, arity).map_err(|e| format!("{}: {e}", path.display()))
            };
            let mut points = collect_points(&f.family, &cfg, &read)?;
            if points.is_empty() {
                bail!("{}: the `detect` section provides no points", file.display());
            }
            if let Some(n) = noise {
                let sigma = parse_rational(&n).ok_or_else(|| anyhow!("malformed noise level `{n}`"))?;
                points = perturb(&points, &sigma, seed);
            }
            let (acc, peak) = run_detector(&f.family, &points, &cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report::peak_json(&acc, &peak, points.len()))?);
            } else {
                print!("{}", report::peak_text(&acc, &peak, f.family.params(), points.len()));
            }
            Ok(0)
        }
        Command::Gb { file, order } => {
            let f = with_order(load(&file)?, order)?;
            print!("{}", report::basis_text(&generic_fiber_basis(&f.family)?));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
