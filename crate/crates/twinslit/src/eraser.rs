//! Polarization tagging and erasure of which-slit information.
//!
//! A linearly polarized photon meets an optional polarizer over each slit and
//! an optional analyzer in front of the detector. Amplitudes follow Malus'
//! law at each projection; whether the two paths interfere depends on the
//! overlap of their final polarization states.

use crate::pattern::{self, ModelError, PatternParams};

/// Polarizer arrangement. Angles are radians from vertical, in the plane
/// transverse to propagation.
///
/// The slit polarizers are either both present or both absent; the type
/// carries them as a pair so a half-configured state cannot be represented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EraserSetup {
    /// Polarization angle of the photons arriving at the slits.
    pub input_angle: f64,
    /// Tagging polarizers over slit A and slit B.
    pub slit_polarizers: Option<(f64, f64)>,
    /// Analyzer between the slits and the detector.
    pub analyzer: Option<f64>,
}

impl EraserSetup {
    /// Build a setup from individually optional slit polarizer angles, as a
    /// config file provides them.
    pub fn new(
        input_angle: f64,
        slit_a: Option<f64>,
        slit_b: Option<f64>,
        analyzer: Option<f64>,
    ) -> Result<Self, ModelError> {
        let slit_polarizers = match (slit_a, slit_b) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(ModelError::MixedPolarizers),
        };
        Ok(EraserSetup {
            input_angle,
            slit_polarizers,
            analyzer,
        })
    }

    /// No polarizers anywhere: the plain two-slit experiment.
    pub fn open(input_angle: f64) -> Self {
        EraserSetup {
            input_angle,
            slit_polarizers: None,
            analyzer: None,
        }
    }

    /// Tagging polarizers at +45 and -45 degrees from vertical, the standard
    /// which-slit marking configuration, with an optional analyzer behind.
    pub fn marked(input_angle: f64, analyzer: Option<f64>) -> Self {
        EraserSetup {
            input_angle,
            slit_polarizers: Some((45f64.to_radians(), -45f64.to_radians())),
            analyzer,
        }
    }
}

/// Per-slit amplitude magnitudes and the coherence between the two paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EraserAmplitudes {
    /// |amplitude| transmitted through the slit A chain.
    pub amp_a: f64,
    /// |amplitude| transmitted through the slit B chain.
    pub amp_b: f64,
    /// True when the two paths end in a common polarization state, so the
    /// cross term survives at full strength.
    pub coherent: bool,
    /// |cos| of the angle between the two final polarization states: the
    /// weight of the interference cross term. 1 when coherent, 0 for
    /// orthogonally tagged paths, in between for skew tags.
    pub path_overlap: f64,
}

/// Project the input polarization through each slit's polarizer chain.
///
/// Each polarizer multiplies the amplitude by |cos| of the angle between the
/// incoming polarization and its axis and rotates the state onto its axis.
pub fn eraser_amplitudes(e: &EraserSetup) -> EraserAmplitudes {
    // (amplitude, final polarization angle) per path
    let leg = |slit_pol: Option<f64>| -> (f64, f64) {
        let (mut amp, mut pol) = (1.0, e.input_angle);
        if let Some(axis) = slit_pol {
            amp *= (axis - pol).cos().abs();
            pol = axis;
        }
        if let Some(axis) = e.analyzer {
            amp *= (axis - pol).cos().abs();
            pol = axis;
        }
        (amp, pol)
    };
    let (pol_a, pol_b) = match e.slit_polarizers {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    let (amp_a, final_a) = leg(pol_a);
    let (amp_b, final_b) = leg(pol_b);
    let overlap = (final_a - final_b).cos().abs();
    EraserAmplitudes {
        amp_a,
        amp_b,
        // both paths exit in the same state when nothing distinguishes them
        // or an analyzer projects them onto a common axis
        coherent: e.slit_polarizers.is_none() || e.analyzer.is_some(),
        path_overlap: overlap,
    }
}

/// Fringe contrast 2 w A_a A_b / (A_a^2 + A_b^2) implied by the amplitudes,
/// with w the path overlap. Zero when either path is fully blocked.
pub fn effective_visibility(a: &EraserAmplitudes) -> f64 {
    let norm = a.amp_a * a.amp_a + a.amp_b * a.amp_b;
    if norm == 0.0 {
        0.0
    } else {
        2.0 * a.path_overlap * a.amp_a * a.amp_b / norm
    }
}

/// Detection rate with the polarizers in place.
///
/// Normalized so that with no polarizers anywhere the rate equals
/// [`pattern::double_slit_density`]; inserting polarizers only removes
/// photons. Uses `p.phase` as the fringe offset and ignores `p.visibility`
/// (the illumination is taken as fully coherent; contrast loss here comes
/// from the polarizers alone).
pub fn eraser_density(x: f64, p: &PatternParams, e: &EraserSetup) -> f64 {
    let a = eraser_amplitudes(e);
    eraser_density_with(x, p, &a)
}

/// Same as [`eraser_density`] with the projection work hoisted out, for scan
/// loops that evaluate thousands of positions under one setup.
pub fn eraser_density_with(x: f64, p: &PatternParams, a: &EraserAmplitudes) -> f64 {
    let alpha = pattern::alpha(x, p);
    let beta = pattern::beta(x, p);
    let cross = 2.0 * a.path_overlap * a.amp_a * a.amp_b * (2.0 * alpha + p.phase).cos();
    0.25 * p.peak_rate * pattern::sinc_sq(beta) * (a.amp_a * a.amp_a + a.amp_b * a.amp_b + cross)
}
