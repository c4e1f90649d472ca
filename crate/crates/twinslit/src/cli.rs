//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for configuration and input errors, 2 when a
//! computation fails numerically (degenerate fit, empty counting run).

use crate::eraser::{effective_visibility, eraser_amplitudes, EraserSetup};
use crate::fit::{fit, FitError, FitProblem, ParamId};
use crate::io::{
    ascii_plot, default_config_text, render_report, svg_plot, to_csv, Config, ConfigError,
    CsvError,
};
use crate::pattern::{ModelError, PatternModel};
use crate::sim::{run_g2, run_scan_model, SimError};
use crate::units::MM;
use clap::{Args, Parser, Subcommand};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "twinslit",
    version,
    about = "Gated double-slit interference: patterns, counting simulations, fits"
)]
struct Cli {
    /// Print the full default configuration and exit
    #[arg(long, global = true)]
    print_defaults: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Configuration file; keys left unset take their defaults
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Override the seed from the configuration
    #[arg(long)]
    seed: Option<u64>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the configured analytic pattern over the scan range
    Pattern {
        /// Override the configured mode: double_slit, single_slit,
        /// partial_coherence, or eraser (short forms double, single, partial)
        #[arg(long, value_name = "MODE")]
        model: Option<String>,
        /// Override the slit width, in millimeters
        #[arg(long = "b-mm", value_name = "WIDTH")]
        b_mm: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a counting simulation and emit the scan as CSV
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Fit a pattern model to a scan CSV and print the report
    Fit {
        /// Scan data from `simulate` (or compatible)
        data: PathBuf,
        /// Comma-separated parameters to free (default depends on the model):
        /// center, peak_rate, slit_separation, slit_width, visibility, phase,
        /// wavelength, screen_distance
        #[arg(long, value_name = "LIST")]
        free: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the analyzer angle and tabulate the predicted fringe visibility
    Eraser {
        /// Sweep step in degrees
        #[arg(long, default_value_t = 5.0)]
        step_deg: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Beam-splitter anticorrelation measurement on the configured source
    G2 {
        /// Replace the pair source by uncorrelated beams of the same rates
        #[arg(long)]
        poissonian: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Render a scan CSV as a terminal plot, or as SVG with `--out *.svg`
    Plot {
        /// Scan data from `simulate` (or compatible)
        data: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

enum CliError {
    Validation(String),
    Numeric(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<CsvError> for CliError {
    fn from(e: CsvError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::InvalidConfig { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        match e {
            FitError::InvalidSetup(_) => CliError::Validation(e.to_string()),
            FitError::Degenerate(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("io error: {e}"))
    }
}

/// Parse and execute; returns the process exit code and never panics on bad
/// input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.print_defaults {
        print!("{}", default_config_text());
        return 0;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (try --help)");
        return 1;
    };
    match execute(command) {
        Ok(()) => 0,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn load_config(common: &Common) -> Result<Config, CliError> {
    let mut cfg = match &common.config {
        Some(path) => Config::from_path(path)?,
        None => Config::default(),
    };
    if let Some(seed) = common.seed {
        cfg.scan.seed = seed;
    }
    Ok(cfg)
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Pattern { model, b_mm, common } => {
            let mut cfg = load_config(&common)?;
            if let Some(name) = model.as_deref() {
                cfg.model = match name {
                    "double" | "double_slit" => PatternModel::DoubleSlit,
                    "single" | "single_slit" => PatternModel::SingleSlit,
                    "partial" | "partial_coherence" => PatternModel::PartialCoherence,
                    "eraser" => match cfg.model {
                        PatternModel::Eraser(_) => cfg.model.clone(),
                        _ => PatternModel::Eraser(EraserSetup::marked(0.0, None)),
                    },
                    other => {
                        return Err(CliError::Validation(format!(
                            "unknown model `{other}` for --model"
                        )))
                    }
                };
            }
            if let Some(b) = b_mm {
                if !(b.is_finite() && b > 0.0) {
                    return Err(CliError::Validation(
                        "--b-mm must be a positive width".to_string(),
                    ));
                }
                cfg.pattern.slit_width = b * MM;
            }
            cfg.pattern.validate()?;
            let mut out = String::from("position_mm,rate_hz\n");
            for x in cfg.scan.positions() {
                let _ = writeln!(out, "{},{}", x / MM, cfg.model.rate(x, &cfg.pattern));
            }
            emit(&common, &out)
        }
        Command::Simulate { common } => {
            let cfg = load_config(&common)?;
            let records = run_scan_model(&cfg.scan, &cfg.model, &cfg.pattern)?;
            emit(&common, &to_csv(&records))
        }
        Command::Fit { data, free, common } => {
            let cfg = load_config(&common)?;
            let records = crate::io::read_csv(&data)?;
            let ids = match free {
                Some(list) => parse_free(&list)?,
                None => default_free(&cfg.model),
            };
            let mut problem = FitProblem::new(records, cfg.model.clone(), cfg.pattern.clone());
            for id in ids {
                problem = problem.free(id);
            }
            let result = fit(&problem)?;
            emit(&common, &render_report(&result))
        }
        Command::Eraser { step_deg, common } => {
            let cfg = load_config(&common)?;
            if !(step_deg.is_finite() && step_deg > 0.0 && step_deg <= 90.0) {
                return Err(CliError::Validation(
                    "step_deg must lie in (0, 90]".to_string(),
                ));
            }
            let base = match &cfg.model {
                PatternModel::Eraser(setup) => setup.clone(),
                _ => EraserSetup::marked(0.0, None),
            };
            let mut out = String::from("analyzer_deg,visibility\n");
            let mut angle = -90.0f64;
            while angle <= 90.0 + 1e-9 {
                let setup = EraserSetup {
                    analyzer: Some(angle.to_radians()),
                    ..base.clone()
                };
                let v = effective_visibility(&eraser_amplitudes(&setup));
                let _ = writeln!(out, "{angle},{v}");
                angle += step_deg;
            }
            emit(&common, &out)
        }
        Command::G2 { poissonian, common } => {
            let mut cfg = load_config(&common)?;
            if poissonian {
                // uncorrelated beams need a wide window to accumulate
                // accidental triples at a useful rate
                cfg.scan.pair_efficiency = 0.0;
                cfg.scan.coincidence_window = 2e-6;
            }
            let r = run_g2(&cfg.scan, cfg.splitter_ratio, cfg.g2_total_s)?;
            let mut out = String::new();
            let _ = writeln!(out, "g2 = {:.4} ± {:.4}", r.g2, r.std_error);
            let _ = writeln!(out, "gates = {}", r.n_gate);
            let _ = writeln!(out, "gated_transmitted = {}", r.n_gt);
            let _ = writeln!(out, "gated_reflected = {}", r.n_gr);
            let _ = writeln!(out, "gated_triples = {}", r.n_gtr);
            emit(&common, &out)
        }
        Command::Plot { data, common } => {
            let records = crate::io::read_csv(&data)?;
            if records.is_empty() {
                return Err(CliError::Validation("scan file has no records".to_string()));
            }
            let xs: Vec<f64> = records.iter().map(|r| r.position_m / MM).collect();
            let ys: Vec<f64> = records.iter().map(|r| r.coincidences as f64).collect();
            let svg_requested = common
                .out
                .as_ref()
                .and_then(|p| p.extension())
                .is_some_and(|ext| ext.eq_ignore_ascii_case("svg"));
            let text = if svg_requested {
                svg_plot(&xs, &ys, "coincidences per point", "position (mm)", "counts")
            } else {
                ascii_plot(&xs, &ys, "coincidences per point")
            };
            emit(&common, &text)
        }
    }
}

fn default_free(model: &PatternModel) -> Vec<ParamId> {
    match model {
        PatternModel::DoubleSlit => vec![
            ParamId::Center,
            ParamId::PeakRate,
            ParamId::SlitSeparation,
            ParamId::SlitWidth,
        ],
        PatternModel::SingleSlit => {
            vec![ParamId::Center, ParamId::PeakRate, ParamId::SlitWidth]
        }
        PatternModel::PartialCoherence => vec![
            ParamId::Center,
            ParamId::PeakRate,
            ParamId::SlitSeparation,
            ParamId::SlitWidth,
            ParamId::Visibility,
        ],
        PatternModel::Eraser(_) => vec![ParamId::Center, ParamId::PeakRate],
    }
}

fn parse_free(list: &str) -> Result<Vec<ParamId>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            ParamId::ALL
                .iter()
                .find(|id| id.name() == name)
                .copied()
                .ok_or_else(|| {
                    let known: Vec<&str> = ParamId::ALL.iter().map(|id| id.name()).collect();
                    CliError::Validation(format!(
                        "unknown parameter `{name}` in --free (known: {})",
                        known.join(", ")
                    ))
                })
        })
        .collect()
}
