//! Fraunhofer detection-plane models for one and two slits.
//!
//! Positions are transverse coordinates on the detection plane in meters; in
//! the small-angle regime sin(theta) = (x - x0) / L. All densities are mean
//! count rates in counts per second, so they double as probability densities
//! up to normalization.

use crate::eraser::{self, EraserSetup};
use crate::units::{MM, NM};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },
    #[error("slit polarizers must be set for both slits or neither")]
    MixedPolarizers,
}

impl ModelError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        ModelError::InvalidParam {
            name,
            reason: reason.into(),
        }
    }
}

/// Geometry and scale of a slit pattern on the detection plane.
///
/// `visibility` and `phase` only enter the partial-coherence model; the ideal
/// two-slit and one-slit formulas ignore them. `peak_rate` is the rate at the
/// central maximum for the ideal pattern and the envelope amplitude for the
/// partial-coherence one.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternParams {
    /// Downconverted (detected) wavelength, m.
    pub wavelength: f64,
    /// Center-to-center slit separation d, m.
    pub slit_separation: f64,
    /// Width b of each slit, m.
    pub slit_width: f64,
    /// Slits-to-detector distance L (the lens focal length when a transform
    /// lens images the far field), m.
    pub screen_distance: f64,
    /// Count rate at the central maximum, counts/s.
    pub peak_rate: f64,
    /// Fringe visibility |V| in [0, 1].
    pub visibility: f64,
    /// Fringe phase offset, radians, kept in (-pi, pi].
    pub phase: f64,
    /// Pattern center x0 on the detection plane, m.
    pub center: f64,
}

impl Default for PatternParams {
    /// The apparatus values the rest of the crate treats as the reference
    /// geometry: 810 nm photons, d = 0.62 mm, b = 0.13 mm, L = 1.52 m.
    fn default() -> Self {
        PatternParams {
            wavelength: 810.0 * NM,
            slit_separation: 0.62 * MM,
            slit_width: 0.13 * MM,
            screen_distance: 1.52,
            peak_rate: 7.0,
            visibility: 1.0,
            phase: 0.0,
            center: 0.0,
        }
    }
}

impl PatternParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let fin = |v: f64, name: &'static str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(ModelError::invalid(name, format!("{v} is not finite")))
            }
        };
        fin(self.wavelength, "wavelength")?;
        fin(self.slit_separation, "slit_separation")?;
        fin(self.slit_width, "slit_width")?;
        fin(self.screen_distance, "screen_distance")?;
        fin(self.peak_rate, "peak_rate")?;
        fin(self.visibility, "visibility")?;
        fin(self.phase, "phase")?;
        fin(self.center, "center")?;
        if self.wavelength <= 0.0 {
            return Err(ModelError::invalid("wavelength", "must be positive"));
        }
        if self.slit_width <= 0.0 {
            return Err(ModelError::invalid("slit_width", "must be positive"));
        }
        if self.slit_separation <= self.slit_width {
            return Err(ModelError::invalid(
                "slit_separation",
                format!(
                    "must exceed slit_width ({} m <= {} m)",
                    self.slit_separation, self.slit_width
                ),
            ));
        }
        if self.screen_distance <= 0.0 {
            return Err(ModelError::invalid("screen_distance", "must be positive"));
        }
        if self.peak_rate < 0.0 {
            return Err(ModelError::invalid("peak_rate", "must be nonnegative"));
        }
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(ModelError::invalid("visibility", "must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Two-slit phase alpha = pi d (x - x0) / (lambda L).
pub fn alpha(x: f64, p: &PatternParams) -> f64 {
    PI * p.slit_separation * (x - p.center) / (p.wavelength * p.screen_distance)
}

/// Single-slit phase beta = pi b (x - x0) / (lambda L).
pub fn beta(x: f64, p: &PatternParams) -> f64 {
    PI * p.slit_width * (x - p.center) / (p.wavelength * p.screen_distance)
}

/// (sin b / b)^2 with the removable singularity handled by series.
pub fn sinc_sq(b: f64) -> f64 {
    if b.abs() < 1e-8 {
        // sinc^2 = 1 - b^2/3 + O(b^4); the quartic term is below 1e-33 here
        1.0 - b * b / 3.0
    } else {
        let s = b.sin() / b;
        s * s
    }
}

/// d/db of sinc_sq, used by the analytic fit Jacobian.
pub(crate) fn sinc_sq_deriv(b: f64) -> f64 {
    if b.abs() < 1e-4 {
        // series keeps full precision where the closed form cancels
        let b2 = b * b;
        -2.0 * b / 3.0 + 8.0 * b * b2 / 45.0 - 4.0 * b2 * b2 * b / 105.0
    } else {
        let s = b.sin() / b;
        2.0 * s * (b.cos() - s) / b
    }
}

/// Ideal two-slit rate: peak * sinc_sq(beta) * cos^2(alpha).
pub fn double_slit_density(x: f64, p: &PatternParams) -> f64 {
    let c = alpha(x, p).cos();
    p.peak_rate * sinc_sq(beta(x, p)) * c * c
}

/// One-slit rate: peak * sinc_sq(beta), the envelope of the two-slit pattern.
pub fn single_slit_density(x: f64, p: &PatternParams) -> f64 {
    p.peak_rate * sinc_sq(beta(x, p))
}

/// Two-slit rate with reduced fringe contrast:
/// peak * sinc_sq(beta) * (1 + |V| cos(2 alpha + phase)) / 2.
///
/// With |V| = 1 and zero phase this is identical to [`double_slit_density`];
/// with |V| = 0 it is half the one-slit envelope.
pub fn partial_coherence_density(x: f64, p: &PatternParams) -> f64 {
    let m = (2.0 * alpha(x, p) + p.phase).cos();
    p.peak_rate * sinc_sq(beta(x, p)) * 0.5 * (1.0 + p.visibility * m)
}

/// Separation 2 lambda L / b between the first diffraction minima, m.
pub fn envelope_width(p: &PatternParams) -> f64 {
    2.0 * p.wavelength * p.screen_distance / p.slit_width
}

/// Interference fringe period lambda L / d, m.
pub fn fringe_spacing(p: &PatternParams) -> f64 {
    p.wavelength * p.screen_distance / p.slit_separation
}

/// Which analytic density a simulation or fit should evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum PatternModel {
    DoubleSlit,
    SingleSlit,
    PartialCoherence,
    Eraser(EraserSetup),
}

impl PatternModel {
    /// Mean detection rate at position `x`, counts/s.
    pub fn rate(&self, x: f64, p: &PatternParams) -> f64 {
        match self {
            PatternModel::DoubleSlit => double_slit_density(x, p),
            PatternModel::SingleSlit => single_slit_density(x, p),
            PatternModel::PartialCoherence => partial_coherence_density(x, p),
            PatternModel::Eraser(setup) => eraser::eraser_density(x, p, setup),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PatternModel::DoubleSlit => "double_slit",
            PatternModel::SingleSlit => "single_slit",
            PatternModel::PartialCoherence => "partial_coherence",
            PatternModel::Eraser(_) => "eraser",
        }
    }
}
