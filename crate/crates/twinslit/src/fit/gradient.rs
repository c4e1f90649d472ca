//! Closed-form derivatives of the partial-coherence rate.
//!
//! Writing S = sinc^2(beta), C = (1 + V cos phi)/2 with phi = 2 alpha + delta,
//! the rate is N0 S C. Both alpha and beta scale as (x - x0)/(lambda L), which
//! gives every geometric parameter a compact chain-rule form.

use super::ParamId;
use crate::pattern::{alpha, beta, sinc_sq, sinc_sq_deriv, PatternParams};
use std::f64::consts::PI;

/// Partial derivative of the partial-coherence rate with respect to one
/// fittable parameter, evaluated at detector position `x`.
pub fn partial_coherence_partial(x: f64, p: &PatternParams, id: ParamId) -> f64 {
    let a = alpha(x, p);
    let b = beta(x, p);
    let s = sinc_sq(b);
    let sp = sinc_sq_deriv(b);
    let phi = 2.0 * a + p.phase;
    let c = 0.5 * (1.0 + p.visibility * phi.cos());
    let vs = p.visibility * phi.sin();
    let n0 = p.peak_rate;
    let lam_l = p.wavelength * p.screen_distance;
    match id {
        ParamId::PeakRate => s * c,
        ParamId::Visibility => 0.5 * n0 * s * phi.cos(),
        ParamId::Phase => -0.5 * n0 * s * vs,
        ParamId::SlitSeparation => -n0 * s * vs * a / p.slit_separation,
        ParamId::SlitWidth => n0 * c * sp * b / p.slit_width,
        ParamId::Center => {
            n0 * (-c * sp * PI * p.slit_width + s * vs * PI * p.slit_separation) / lam_l
        }
        ParamId::Wavelength => n0 * (-c * sp * b + s * vs * a) / p.wavelength,
        ParamId::ScreenDistance => n0 * (-c * sp * b + s * vs * a) / p.screen_distance,
    }
}
