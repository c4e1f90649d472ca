//! Heralded second-order correlation at a beam splitter.
//!
//! The scan arm is sent to a splitter with detectors T and R; gate clicks
//! open a window tau on both. For each gate the possible outcomes (partner
//! to T, partner to R, accidental clicks on either side) have fixed
//! probabilities, so the tallies over the full run are independent Poisson
//! counts per outcome class rather than an event-by-event timeline.

use super::rng::{poisson, Stream};
use super::scan::ScanConfig;
use super::SimError;

// stream channels for the four outcome-class draws
const CH_G2_TR: u32 = 10;
const CH_G2_T_ONLY: u32 = 11;
const CH_G2_R_ONLY: u32 = 12;
const CH_G2_NEITHER: u32 = 13;

/// Tallies and estimate from one g2 run.
///
/// The estimator is g2 = N_G * N_GTR / (N_GT * N_GR): gates, gates with a
/// transmitted click, with a reflected click, and with both. A single photon
/// cannot trigger both sides, so an ideal heralded source drives it to zero;
/// uncorrelated light gives 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2Result {
    pub n_gate: u64,
    pub n_gt: u64,
    pub n_gr: u64,
    pub n_gtr: u64,
    pub g2: f64,
    /// Propagated counting error on g2, treating the four tallies as
    /// Poisson distributed.
    pub std_error: f64,
}

/// Count for `total_time` seconds with the splitter sending `splitter_ratio`
/// of the scan arm to T.
///
/// Rates and the window come from `cfg`; the detector is taken to collect
/// the whole pattern, so position plays no role here.
pub fn run_g2(cfg: &ScanConfig, splitter_ratio: f64, total_time: f64) -> Result<G2Result, SimError> {
    cfg.validate()?;
    if !(0.0..=1.0).contains(&splitter_ratio) || !splitter_ratio.is_finite() {
        return Err(SimError::config("splitter_ratio", "must lie in [0, 1]"));
    }
    if !(total_time.is_finite() && total_time > 0.0) {
        return Err(SimError::config("total_time", "must be positive"));
    }

    let p_pair = cfg.pair_efficiency;
    let s_total = cfg.signal_rate + cfg.background_rate;
    // chance of at least one uncorrelated click inside a window tau
    let acc = |rate: f64| -(-rate * cfg.coincidence_window).exp_m1();
    let a_t = acc(splitter_ratio * s_total);
    let a_r = acc((1.0 - splitter_ratio) * s_total);
    let pair_t = p_pair * splitter_ratio;
    let pair_r = p_pair * (1.0 - splitter_ratio);

    // outcome probabilities per gate; the partner goes to exactly one side
    let p_t = pair_t + (1.0 - pair_t) * a_t;
    let p_r = pair_r + (1.0 - pair_r) * a_r;
    let p_tr = pair_t * a_r + pair_r * a_t + (1.0 - p_pair) * a_t * a_r;
    let p_t_only = (p_t - p_tr).max(0.0);
    let p_r_only = (p_r - p_tr).max(0.0);
    let p_neither = (1.0 - p_t - p_r + p_tr).max(0.0);

    // a Poisson-distributed gate total split over outcome classes is the
    // same as independent Poisson counts per class
    let lam = cfg.herald_rate * total_time;
    let seed = cfg.seed;
    let n_gtr = poisson(&mut Stream::new(seed, 0, CH_G2_TR), lam * p_tr);
    let n_t_only = poisson(&mut Stream::new(seed, 0, CH_G2_T_ONLY), lam * p_t_only);
    let n_r_only = poisson(&mut Stream::new(seed, 0, CH_G2_R_ONLY), lam * p_r_only);
    let n_neither = poisson(&mut Stream::new(seed, 0, CH_G2_NEITHER), lam * p_neither);

    let n_gate = n_gtr + n_t_only + n_r_only + n_neither;
    let n_gt = n_gtr + n_t_only;
    let n_gr = n_gtr + n_r_only;
    if n_gate == 0 || n_gt == 0 || n_gr == 0 {
        return Err(SimError::InsufficientCounts(format!(
            "gates {n_gate}, gated T {n_gt}, gated R {n_gr}; cannot form g2"
        )));
    }

    let g2 = n_gate as f64 * n_gtr as f64 / (n_gt as f64 * n_gr as f64);
    let std_error = if n_gtr > 0 {
        g2 * (1.0 / n_gtr as f64 + 1.0 / n_gt as f64 + 1.0 / n_gr as f64 + 1.0 / n_gate as f64)
            .sqrt()
    } else {
        // zero triples: quote the scale of a single triple count
        n_gate as f64 / (n_gt as f64 * n_gr as f64)
    };
    Ok(G2Result {
        n_gate,
        n_gt,
        n_gr,
        n_gtr,
        g2,
        std_error,
    })
}

/// Idealized heralded-source config: strong pairing, a tight window, no
/// background. g2 lands close to zero.
pub fn heralded_config(seed: u64) -> ScanConfig {
    ScanConfig {
        pair_efficiency: 0.08,
        coincidence_window: 1e-9,
        background_rate: 0.0,
        seed,
        ..ScanConfig::default()
    }
}

/// Uncorrelated-light config: pairing off, window wide open. g2 sits at 1.
pub fn poissonian_config(seed: u64) -> ScanConfig {
    ScanConfig {
        pair_efficiency: 0.0,
        coincidence_window: 2e-6,
        seed,
        ..ScanConfig::default()
    }
}
