//! Point-by-point coincidence scan.
//!
//! The detector parks at each position for the dwell time and accumulates
//! herald singles, signal singles, and gated coincidences. True pairs follow
//! the pattern density; accidentals follow the product of the two singles
//! rates and the coincidence window.

use super::rng::{poisson, Stream};
use super::SimError;
use crate::aperture::aperture_average;
use crate::eraser::EraserSetup;
use crate::pattern::{PatternModel, PatternParams};
use crate::units::{MM, NS};

// stream channels for the independent draws at one scan point
const CH_PAIRS: u32 = 0;
const CH_HERALD_EXTRA: u32 = 1;
const CH_SIGNAL_EXTRA: u32 = 2;
const CH_ACCIDENTAL: u32 = 3;

/// Scan geometry, detector rates, and timing.
///
/// The rate fields describe the apparatus at the pattern peak: of
/// `herald_rate` gate clicks per second, a fraction `pair_efficiency` have a
/// partner that lands on the scan detector when it sits at the peak, and
/// `signal_rate` is the total singles rate there. The window and efficiency
/// defaults are not measured numbers; they are chosen so the default scan
/// reproduces the nominal observed rates (about 7 coincidences per second at
/// the peak, a fair share of them accidental).
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    /// First detector position, m.
    pub start: f64,
    /// Last detector position (inclusive when the step divides the span), m.
    pub stop: f64,
    /// Position increment, m.
    pub step: f64,
    /// Counting time per point, s.
    pub dwell: f64,
    /// Collection slit width in front of the scan detector, m.
    pub aperture: f64,
    /// Gate (herald) singles rate, 1/s.
    pub herald_rate: f64,
    /// Scan-arm singles rate at the pattern peak, 1/s.
    pub signal_rate: f64,
    /// Probability that a gate click has a detectable partner with the
    /// detector at the pattern peak.
    pub pair_efficiency: f64,
    /// Coincidence window tau, s.
    pub coincidence_window: f64,
    /// Uncorrelated dark and stray rate on the scan detector, 1/s.
    pub background_rate: f64,
    /// Base seed; each point derives its own streams from (seed, index).
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            start: -12.5 * MM,
            stop: 12.5 * MM,
            // 341 points across 25 mm, the usual scan raster
            step: 25.0 * MM / 340.0,
            dwell: 10.0,
            aperture: 0.7 * MM,
            herald_rate: 35_000.0,
            signal_rate: 3_000.0,
            pair_efficiency: 1e-4,
            coincidence_window: 32.0 * NS,
            background_rate: 100.0,
            seed: 0,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let fin = |v: f64, name: &'static str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(SimError::config(name, format!("{v} is not finite")))
            }
        };
        fin(self.start, "start")?;
        fin(self.stop, "stop")?;
        fin(self.step, "step")?;
        fin(self.dwell, "dwell")?;
        fin(self.aperture, "aperture")?;
        fin(self.herald_rate, "herald_rate")?;
        fin(self.signal_rate, "signal_rate")?;
        fin(self.pair_efficiency, "pair_efficiency")?;
        fin(self.coincidence_window, "coincidence_window")?;
        fin(self.background_rate, "background_rate")?;
        if self.start >= self.stop {
            return Err(SimError::config("start", "scan range needs start < stop"));
        }
        if self.step <= 0.0 {
            return Err(SimError::config("step", "must be positive"));
        }
        if self.dwell <= 0.0 {
            return Err(SimError::config("dwell", "must be positive"));
        }
        if self.aperture < 0.0 {
            return Err(SimError::config("aperture", "must be nonnegative"));
        }
        if self.herald_rate < 0.0 || self.signal_rate < 0.0 || self.background_rate < 0.0 {
            return Err(SimError::config("herald_rate", "rates must be nonnegative"));
        }
        if !(0.0..=1.0).contains(&self.pair_efficiency) {
            return Err(SimError::config("pair_efficiency", "must lie in [0, 1]"));
        }
        if self.coincidence_window < 0.0 {
            return Err(SimError::config("coincidence_window", "must be nonnegative"));
        }
        // partner clicks are part of the signal singles, so the pair rate
        // cannot exceed the singles rate
        if self.signal_rate < self.pair_efficiency * self.herald_rate {
            return Err(SimError::config(
                "signal_rate",
                format!(
                    "must be at least pair_efficiency * herald_rate = {}",
                    self.pair_efficiency * self.herald_rate
                ),
            ));
        }
        Ok(())
    }

    /// Number of scan points: inclusive stepping from start by step while
    /// positions stay within stop (with a small tolerance so that an exact
    /// multiple keeps its endpoint).
    pub fn points(&self) -> usize {
        let span = self.stop - self.start;
        (span / self.step + 1e-9).floor() as usize + 1
    }

    pub fn position(&self, index: u64) -> f64 {
        self.start + index as f64 * self.step
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.points() as u64).map(|i| self.position(i)).collect()
    }
}

/// One row of a scan: everything the counting electronics report for one
/// detector position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRecord {
    /// Detector position, m. Stored in meters; serialized in mm.
    pub position_m: f64,
    /// Counting time at this point, s.
    pub dwell_s: f64,
    /// Gated coincidence count. Never exceeds either singles count.
    pub coincidences: u64,
    /// Scan-arm singles count.
    pub singles_signal: u64,
    /// Herald (gate) singles count.
    pub singles_herald: u64,
}

/// A configured scan bound to a pattern density, with the peak normalization
/// precomputed so per-point work is cheap.
pub struct ScanEngine<F: Fn(f64) -> f64> {
    cfg: ScanConfig,
    density: F,
    /// Peak of the aperture-averaged density over the scan range; rates are
    /// quoted relative to this.
    norm: f64,
}

impl<F: Fn(f64) -> f64> ScanEngine<F> {
    pub fn new(cfg: ScanConfig, density: F) -> Result<Self, SimError> {
        cfg.validate()?;
        // locate the apertured peak on a fine grid plus the scan positions
        // themselves, so the quoted peak rate is reachable by the scan
        let mut norm = 0.0f64;
        let grid = 8192;
        let span = cfg.stop - cfg.start;
        for i in 0..=grid {
            let x = cfg.start + span * i as f64 / grid as f64;
            let v = aperture_average(&density, x, cfg.aperture);
            if !v.is_finite() || v < 0.0 {
                return Err(SimError::DegenerateDensity(format!(
                    "aperture-averaged density({x}) = {v}"
                )));
            }
            norm = norm.max(v);
        }
        for i in 0..cfg.points() as u64 {
            let v = aperture_average(&density, cfg.position(i), cfg.aperture);
            if !v.is_finite() || v < 0.0 {
                return Err(SimError::DegenerateDensity(format!(
                    "aperture-averaged density at point {i} = {v}"
                )));
            }
            norm = norm.max(v);
        }
        if norm <= 0.0 {
            return Err(SimError::DegenerateDensity(
                "pattern vanishes over the whole scan range".into(),
            ));
        }
        Ok(ScanEngine { cfg, density, norm })
    }

    pub fn config(&self) -> &ScanConfig {
        &self.cfg
    }

    /// Simulate the scan point at `index` with the config seed.
    pub fn point(&self, index: u64) -> ScanRecord {
        self.point_seeded(self.cfg.seed, index)
    }

    /// Simulate one point under an explicit seed. Draws for different
    /// (seed, index) pairs come from disjoint streams, so any subset of
    /// points can be generated in any order.
    pub fn point_seeded(&self, seed: u64, index: u64) -> ScanRecord {
        let cfg = &self.cfg;
        let x = cfg.position(index);
        let rho = aperture_average(&self.density, x, cfg.aperture) / self.norm;

        // true pair rate at this position, and the residual singles rates
        // once those pairs are taken out of each detector's total
        let r_true = cfg.pair_efficiency * cfg.herald_rate * rho;
        let herald_rest = cfg.herald_rate - r_true;
        let signal_total = cfg.signal_rate * rho + cfg.background_rate;
        let signal_rest = signal_total - r_true;
        let r_acc = cfg.herald_rate * signal_total * cfg.coincidence_window;

        let t = cfg.dwell;
        let c_true = poisson(&mut Stream::new(seed, index, CH_PAIRS), r_true * t);
        let h_extra = poisson(&mut Stream::new(seed, index, CH_HERALD_EXTRA), herald_rest * t);
        let s_extra = poisson(&mut Stream::new(seed, index, CH_SIGNAL_EXTRA), signal_rest * t);
        let c_acc = poisson(&mut Stream::new(seed, index, CH_ACCIDENTAL), r_acc * t);

        // splitting each singles stream into "partnered" and "rest" keeps the
        // totals exactly Poisson while guaranteeing coincidences never exceed
        // singles; the cap below only binds in contrived corner configs
        let singles_herald = c_true + h_extra;
        let singles_signal = c_true + s_extra;
        let coincidences = (c_true + c_acc).min(singles_herald).min(singles_signal);
        ScanRecord {
            position_m: x,
            dwell_s: t,
            coincidences,
            singles_signal,
            singles_herald,
        }
    }

    pub fn run(&self) -> Vec<ScanRecord> {
        self.run_seeded(self.cfg.seed)
    }

    pub fn run_seeded(&self, seed: u64) -> Vec<ScanRecord> {
        (0..self.cfg.points() as u64)
            .map(|i| self.point_seeded(seed, i))
            .collect()
    }

    /// Modeled mean coincidence count at a position, for convergence checks
    /// and fit oracles.
    pub fn expected_coincidences(&self, x: f64) -> f64 {
        let cfg = &self.cfg;
        let rho = aperture_average(&self.density, x, cfg.aperture) / self.norm;
        let r_true = cfg.pair_efficiency * cfg.herald_rate * rho;
        let r_acc =
            cfg.herald_rate * (cfg.signal_rate * rho + cfg.background_rate) * cfg.coincidence_window;
        (r_true + r_acc) * cfg.dwell
    }
}

/// Simulate a single point without keeping an engine around. Convenience for
/// spot checks; scans should build one [`ScanEngine`] and reuse it.
pub fn simulate_point<F: Fn(f64) -> f64>(
    index: u64,
    cfg: &ScanConfig,
    density: F,
) -> Result<ScanRecord, SimError> {
    Ok(ScanEngine::new(cfg.clone(), density)?.point(index))
}

/// Run a full scan of the two-slit pattern: the partial-coherence model, or
/// the eraser model when a polarizer setup is given.
pub fn run_scan(
    cfg: &ScanConfig,
    p: &PatternParams,
    e: Option<&EraserSetup>,
) -> Result<Vec<ScanRecord>, SimError> {
    let model = match e {
        Some(setup) => PatternModel::Eraser(*setup),
        None => PatternModel::PartialCoherence,
    };
    run_scan_model(cfg, &model, p)
}

/// Run a full scan of any pattern model.
pub fn run_scan_model(
    cfg: &ScanConfig,
    model: &PatternModel,
    p: &PatternParams,
) -> Result<Vec<ScanRecord>, SimError> {
    p.validate()
        .map_err(|e| SimError::DegenerateDensity(e.to_string()))?;
    let model = model.clone();
    let p = p.clone();
    Ok(ScanEngine::new(cfg.clone(), move |x| model.rate(x, &p))?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{double_slit_density, fringe_spacing, partial_coherence_density};

    fn flat_cfg() -> ScanConfig {
        ScanConfig {
            aperture: 0.0,
            ..ScanConfig::default()
        }
    }

    #[test]
    fn default_raster_has_341_points() {
        let cfg = ScanConfig::default();
        assert_eq!(cfg.points(), 341);
        let pos = cfg.positions();
        assert!((pos[0] + 12.5 * MM).abs() < 1e-15);
        assert!((pos[340] - 12.5 * MM).abs() < 1e-12);
    }

    #[test]
    fn range_trimming_changes_point_count() {
        // a step that does not divide the span drops the far endpoint
        let cfg = ScanConfig {
            step: 73.3e-6,
            ..ScanConfig::default()
        };
        assert_eq!(cfg.points(), 342);
        let last = cfg.position(341);
        assert!(last <= cfg.stop + 1e-12);
    }

    #[test]
    fn validation_catches_inconsistent_rates() {
        let cfg = ScanConfig {
            pair_efficiency: 0.5,
            ..ScanConfig::default()
        };
        // 0.5 * 35000 pairs/s cannot hide inside 3000 signal singles/s
        assert!(matches!(
            cfg.validate(),
            Err(SimError::InvalidConfig { field: "signal_rate", .. })
        ));
        assert!(ScanConfig::default().validate().is_ok());
    }

    #[test]
    fn scan_is_reproducible_and_order_independent() {
        let p = PatternParams::default();
        let engine = ScanEngine::new(ScanConfig::default(), move |x| {
            partial_coherence_density(x, &p)
        })
        .unwrap();
        let a = engine.run();
        let b = engine.run();
        assert_eq!(a, b);
        // points generated backwards, one at a time, match the forward scan
        for (i, rec) in a.iter().enumerate().rev() {
            assert_eq!(*rec, engine.point(i as u64));
        }
        // a different seed moves the counts but not the raster
        let c = engine.run_seeded(1234);
        assert_ne!(a, c);
        for (x, y) in a.iter().zip(&c) {
            assert_eq!(x.position_m, y.position_m);
        }
    }

    #[test]
    fn peak_mean_counts_match_the_nominal_rate() {
        // with the default rates the observed peak coincidence rate is about
        // 7/s (pairs plus accidentals), so a 10 s dwell collects about 70
        let p = PatternParams::default();
        let engine =
            ScanEngine::new(ScanConfig::default(), move |x| double_slit_density(x, &p)).unwrap();
        let expected = engine.expected_coincidences(0.0);
        assert!((expected - 70.0).abs() < 3.0, "model mean {expected}");

        // index 170 sits exactly at the pattern center
        assert_eq!(ScanConfig::default().position(170), 0.0);
        let reps = 300;
        let mut acc = 0.0;
        for s in 0..reps {
            acc += engine.point_seeded(s, 170).coincidences as f64;
        }
        let mean = acc / reps as f64;
        let se = (expected / reps as f64).sqrt();
        assert!(
            (mean - expected).abs() < 4.0 * se,
            "mean {mean}, modeled {expected}, se {se}"
        );
    }

    #[test]
    fn accidentals_follow_the_rate_product() {
        // with pairs disabled, coincidences are purely accidental at rate
        // herald * signal * window
        let cfg = ScanConfig {
            pair_efficiency: 0.0,
            background_rate: 0.0,
            coincidence_window: 200e-9,
            ..flat_cfg()
        };
        let engine = ScanEngine::new(cfg.clone(), |_| 1.0).unwrap();
        let want = cfg.herald_rate * cfg.signal_rate * cfg.coincidence_window * cfg.dwell;
        let reps = 400;
        let mut acc = 0.0;
        for s in 0..reps {
            acc += engine.point_seeded(s, 3).coincidences as f64;
        }
        let mean = acc / reps as f64;
        let se = (want / reps as f64).sqrt();
        assert!(
            (mean - want).abs() < 3.0 * se,
            "mean {mean}, want {want}, se {se}"
        );
    }

    #[test]
    fn dark_fringe_with_no_accidentals_is_silent() {
        let p = PatternParams {
            visibility: 1.0,
            ..PatternParams::default()
        };
        let cfg = ScanConfig {
            aperture: 0.0,
            background_rate: 0.0,
            // park the raster so that point 0 sits on the first minimum
            start: 0.5 * fringe_spacing(&p),
            stop: 0.5 * fringe_spacing(&p) + 1.0 * MM,
            ..ScanConfig::default()
        };
        let engine = ScanEngine::new(cfg, move |x| double_slit_density(x, &p)).unwrap();
        for s in 0..500 {
            let rec = engine.point_seeded(s, 0);
            assert_eq!(rec.coincidences, 0, "seed {s}");
            // nothing arrives at a dark fringe at all
            assert_eq!(rec.singles_signal, 0, "seed {s}");
        }
    }

    #[test]
    fn coincidences_never_exceed_singles() {
        // starved detectors with an absurd window force the cap to engage
        let cfg = ScanConfig {
            herald_rate: 2.0,
            signal_rate: 5.0,
            pair_efficiency: 0.4,
            background_rate: 1e5,
            coincidence_window: 1e-3,
            dwell: 1.0,
            ..flat_cfg()
        };
        let engine = ScanEngine::new(cfg, |_| 1.0).unwrap();
        for s in 0..300 {
            let r = engine.point_seeded(s, 0);
            assert!(r.coincidences <= r.singles_signal.min(r.singles_herald));
        }
    }

    #[test]
    fn longer_dwell_shrinks_relative_scatter() {
        let p = PatternParams::default();
        let reps = 200;
        let mut vars = Vec::new();
        for dwell in [1.0, 16.0] {
            let cfg = ScanConfig {
                dwell,
                ..ScanConfig::default()
            };
            let pc = p.clone();
            let engine = ScanEngine::new(cfg, move |x| double_slit_density(x, &pc)).unwrap();
            let rates: Vec<f64> = (0..reps)
                .map(|s| engine.point_seeded(s, 170).coincidences as f64 / dwell)
                .collect();
            let mean = rates.iter().sum::<f64>() / reps as f64;
            let var = rates.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / reps as f64;
            vars.push(var);
        }
        // variance of the rate estimate scales as 1/dwell: expect a factor
        // of 16 between these, within sampling slack
        let ratio = vars[0] / vars[1];
        assert!((8.0..32.0).contains(&ratio), "variance ratio {ratio}");
    }
}
