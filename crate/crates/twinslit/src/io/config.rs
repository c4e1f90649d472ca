//! Flat `key = value` configuration files.
//!
//! Every key has a default matching the reference apparatus, so an empty file
//! is a complete, valid configuration. Keys carry their unit in the name
//! (`wavelength_nm`, `dwell_s`). Unknown keys, repeated keys, and malformed
//! lines are rejected with their line number; physical invariant violations
//! name the offending key and, when it was set explicitly, its line.

use crate::coherence::SourceModel;
use crate::eraser::EraserSetup;
use crate::pattern::{ModelError, PatternModel, PatternParams};
use crate::sim::{ScanConfig, SimError};
use crate::units::{deg, MM, NM, NS};
use std::collections::HashMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{key}{}: {message}", fmt_line(.line))]
    Invalid {
        key: String,
        /// Line the key was set on; `None` when the default value is involved.
        line: Option<usize>,
        message: String,
    },
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
}

fn fmt_line(line: &Option<usize>) -> String {
    match line {
        Some(n) => format!(" (line {n})"),
        None => String::new(),
    }
}

/// Everything a run needs: pattern geometry, scan mechanics, source
/// coherence, the model to evaluate, and the photon-statistics settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub pattern: PatternParams,
    pub scan: ScanConfig,
    pub source: SourceModel,
    pub model: PatternModel,
    /// Transmission fraction of the beam splitter in the anticorrelation
    /// measurement.
    pub splitter_ratio: f64,
    /// Integration time for the anticorrelation measurement, s.
    pub g2_total_s: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            pattern: PatternParams { visibility: 0.77, ..PatternParams::default() },
            scan: ScanConfig::default(),
            source: SourceModel::default(),
            model: PatternModel::PartialCoherence,
            splitter_ratio: 0.5,
            g2_total_s: 2e6,
        }
    }
}

const KEYS: &[&str] = &[
    "mode",
    "wavelength_nm",
    "slit_separation_mm",
    "slit_width_mm",
    "screen_distance_m",
    "peak_rate_hz",
    "visibility",
    "phase_rad",
    "center_mm",
    "scan_start_mm",
    "scan_stop_mm",
    "scan_step_mm",
    "dwell_s",
    "aperture_mm",
    "herald_rate_hz",
    "signal_rate_hz",
    "pair_efficiency",
    "coincidence_window_ns",
    "background_rate_hz",
    "seed",
    "pump_wavelength_nm",
    "pump_waist_mm",
    "focus_length_m",
    "crystal_distance_m",
    "eraser_input_deg",
    "eraser_slit_a_deg",
    "eraser_slit_b_deg",
    "eraser_analyzer_deg",
    "splitter_ratio",
    "g2_total_s",
];

impl Config {
    pub fn from_path(path: &Path) -> Result<Config, ConfigError> {
        Config::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn from_text(text: &str) -> Result<Config, ConfigError> {
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut values: HashMap<String, (String, usize)> = HashMap::new();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if !KEYS.contains(&key) {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                });
            }
            if let Some(first) = seen.get(key) {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("key `{key}` already set on line {first}"),
                });
            }
            seen.insert(key.to_string(), line_no);
            values.insert(key.to_string(), (value.to_string(), line_no));
        }

        Config::build(values)
    }

    fn build(values: HashMap<String, (String, usize)>) -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        let lines: HashMap<String, usize> =
            values.iter().map(|(k, (_, l))| (k.clone(), *l)).collect();

        let num = |key: &str, target: &mut f64, scale: f64| -> Result<(), ConfigError> {
            if let Some((v, line)) = values.get(key) {
                let x: f64 = v.parse().map_err(|_| ConfigError::Parse {
                    line: *line,
                    message: format!("`{v}` is not a number for key `{key}`"),
                })?;
                *target = x * scale;
            }
            Ok(())
        };

        num("wavelength_nm", &mut cfg.pattern.wavelength, NM)?;
        num("slit_separation_mm", &mut cfg.pattern.slit_separation, MM)?;
        num("slit_width_mm", &mut cfg.pattern.slit_width, MM)?;
        num("screen_distance_m", &mut cfg.pattern.screen_distance, 1.0)?;
        num("peak_rate_hz", &mut cfg.pattern.peak_rate, 1.0)?;
        num("visibility", &mut cfg.pattern.visibility, 1.0)?;
        num("phase_rad", &mut cfg.pattern.phase, 1.0)?;
        num("center_mm", &mut cfg.pattern.center, MM)?;

        num("scan_start_mm", &mut cfg.scan.start, MM)?;
        num("scan_stop_mm", &mut cfg.scan.stop, MM)?;
        num("scan_step_mm", &mut cfg.scan.step, MM)?;
        num("dwell_s", &mut cfg.scan.dwell, 1.0)?;
        num("aperture_mm", &mut cfg.scan.aperture, MM)?;
        num("herald_rate_hz", &mut cfg.scan.herald_rate, 1.0)?;
        num("signal_rate_hz", &mut cfg.scan.signal_rate, 1.0)?;
        num("pair_efficiency", &mut cfg.scan.pair_efficiency, 1.0)?;
        num("coincidence_window_ns", &mut cfg.scan.coincidence_window, NS)?;
        num("background_rate_hz", &mut cfg.scan.background_rate, 1.0)?;

        num("pump_wavelength_nm", &mut cfg.source.pump_wavelength, NM)?;
        num("pump_waist_mm", &mut cfg.source.pump_waist, MM)?;
        num("focus_length_m", &mut cfg.source.focus_length, 1.0)?;
        num("crystal_distance_m", &mut cfg.source.crystal_distance, 1.0)?;

        num("splitter_ratio", &mut cfg.splitter_ratio, 1.0)?;
        num("g2_total_s", &mut cfg.g2_total_s, 1.0)?;

        if let Some((v, line)) = values.get("seed") {
            cfg.scan.seed = v.parse().map_err(|_| ConfigError::Parse {
                line: *line,
                message: format!("`{v}` is not an unsigned integer for key `seed`"),
            })?;
        }

        let angle = |key: &str| -> Result<Option<f64>, ConfigError> {
            match values.get(key) {
                None => Ok(None),
                Some((v, line)) => {
                    let x: f64 = v.parse().map_err(|_| ConfigError::Parse {
                        line: *line,
                        message: format!("`{v}` is not a number for key `{key}`"),
                    })?;
                    Ok(Some(deg(x)))
                }
            }
        };
        let input = angle("eraser_input_deg")?.unwrap_or(0.0);
        let slit_a = angle("eraser_slit_a_deg")?;
        let slit_b = angle("eraser_slit_b_deg")?;
        let analyzer = angle("eraser_analyzer_deg")?;

        let mode = values
            .get("mode")
            .map(|(v, l)| (v.as_str(), *l))
            .unwrap_or(("partial_coherence", 0));
        cfg.model = match mode.0 {
            "double_slit" => PatternModel::DoubleSlit,
            "single_slit" => PatternModel::SingleSlit,
            "partial_coherence" => PatternModel::PartialCoherence,
            "eraser" => {
                let setup =
                    EraserSetup::new(input, slit_a, slit_b, analyzer).map_err(|_| {
                        ConfigError::Invalid {
                            key: "eraser_slit_a_deg".to_string(),
                            line: lines
                                .get("eraser_slit_a_deg")
                                .or_else(|| lines.get("eraser_slit_b_deg"))
                                .copied(),
                            message: "slit polarizers must be set for both slits or neither"
                                .to_string(),
                        }
                    })?;
                PatternModel::Eraser(setup)
            }
            other => {
                return Err(ConfigError::Parse {
                    line: mode.1,
                    message: format!(
                        "unknown mode `{other}` (expected double_slit, single_slit, \
                         partial_coherence, or eraser)"
                    ),
                })
            }
        };

        cfg.validate(&lines)?;
        Ok(cfg)
    }

    fn validate(&self, lines: &HashMap<String, usize>) -> Result<(), ConfigError> {
        let locate = |key: &str| lines.get(key).copied();
        let invalid = |key: &str, message: String| ConfigError::Invalid {
            key: key.to_string(),
            line: locate(key),
            message,
        };

        self.pattern.validate().map_err(|e| match e {
            ModelError::InvalidParam { name, reason } => {
                invalid(pattern_key(name), reason)
            }
            other => invalid("mode", other.to_string()),
        })?;
        self.scan.validate().map_err(|e| match e {
            SimError::InvalidConfig { field, reason } => invalid(scan_key(field), reason),
            other => invalid("mode", other.to_string()),
        })?;
        self.source
            .validate()
            .map_err(|e| match e {
                ModelError::InvalidParam { name, reason } => {
                    invalid(source_key(name), reason)
                }
                other => invalid("mode", other.to_string()),
            })?;
        if !(self.splitter_ratio.is_finite()
            && self.splitter_ratio > 0.0
            && self.splitter_ratio < 1.0)
        {
            return Err(invalid(
                "splitter_ratio",
                "must lie strictly between 0 and 1".to_string(),
            ));
        }
        if !(self.g2_total_s.is_finite() && self.g2_total_s > 0.0) {
            return Err(invalid("g2_total_s", "must be positive".to_string()));
        }
        Ok(())
    }
}

fn pattern_key(name: &str) -> &str {
    match name {
        "wavelength" => "wavelength_nm",
        "slit_separation" => "slit_separation_mm",
        "slit_width" => "slit_width_mm",
        "screen_distance" => "screen_distance_m",
        "peak_rate" => "peak_rate_hz",
        "visibility" => "visibility",
        "phase" => "phase_rad",
        "center" => "center_mm",
        other => other,
    }
}

fn scan_key(name: &str) -> &str {
    match name {
        "start" => "scan_start_mm",
        "stop" => "scan_stop_mm",
        "step" => "scan_step_mm",
        "dwell" => "dwell_s",
        "aperture" => "aperture_mm",
        "herald_rate" => "herald_rate_hz",
        "signal_rate" => "signal_rate_hz",
        "coincidence_window" => "coincidence_window_ns",
        "background_rate" => "background_rate_hz",
        other => other,
    }
}

fn source_key(name: &str) -> &str {
    match name {
        "pump_wavelength" => "pump_wavelength_nm",
        "pump_waist" => "pump_waist_mm",
        "focus_length" => "focus_length_m",
        "crystal_distance" => "crystal_distance_m",
        other => other,
    }
}

/// The canonical config with every key spelled out, suitable for
/// `--print-defaults` and as a starting template.
pub fn default_config_text() -> String {
    "\
# Reference run configuration. Every key is optional; an empty file gives
# exactly these values. Lengths carry their unit in the key name.

# Pattern model: double_slit, single_slit, partial_coherence, or eraser.
mode = partial_coherence

# Detected (downconverted) light and slit-plane geometry.
wavelength_nm = 810
slit_separation_mm = 0.62
slit_width_mm = 0.13
screen_distance_m = 1.52

# Shape of the ideal pattern. The visibility matches what the pump-focusing
# geometry below predicts for this slit separation.
peak_rate_hz = 7.0
visibility = 0.77
phase_rad = 0.0
center_mm = 0.0

# Detector raster: 341 points across 25 mm, 10 s per point, behind a 0.7 mm
# collection slit.
scan_start_mm = -12.5
scan_stop_mm = 12.5
scan_step_mm = 0.07352941176470588
dwell_s = 10
aperture_mm = 0.7

# Counting electronics. The pair efficiency and coincidence window are not
# independently measured; this pairing reproduces the nominal observed rates
# (about 7 coincidences per second at the peak).
herald_rate_hz = 35000
signal_rate_hz = 3000
pair_efficiency = 1e-4
coincidence_window_ns = 32
background_rate_hz = 100
seed = 0

# Pump beam and focusing, used to predict the transverse coherence at the
# slits.
pump_wavelength_nm = 405
pump_waist_mm = 0.52
focus_length_m = 0.25
crystal_distance_m = 0.3

# Polarization tagging for eraser mode. Leave the slit keys unset for an open
# double slit; set both (usually +45 and -45) to mark the paths, and set the
# analyzer to erase the marking again.
eraser_input_deg = 0
# eraser_slit_a_deg = 45
# eraser_slit_b_deg = -45
# eraser_analyzer_deg = 0

# Beam-splitter anticorrelation measurement. Gated triples are rare at these
# rates, so a tight estimate needs a long simulated accumulation.
splitter_ratio = 0.5
g2_total_s = 2e6
"
    .to_string()
}
