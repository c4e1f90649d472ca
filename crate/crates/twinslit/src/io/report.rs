//! Plain-text fit reports.
//!
//! One `key = value` line per summary item, then the estimates as
//! `key = value ± error` in display units, then the scaled covariance.

use crate::fit::{FitResult, ParamId};
use std::fmt::Write as _;

/// Key and scale factor used when showing a parameter to a human: lengths in
/// mm, wavelengths in nm, everything else in its SI unit.
pub fn display_key(id: ParamId) -> (&'static str, f64) {
    match id {
        ParamId::Center => ("center_mm", 1e3),
        ParamId::PeakRate => ("peak_rate_hz", 1.0),
        ParamId::SlitSeparation => ("slit_separation_mm", 1e3),
        ParamId::SlitWidth => ("slit_width_mm", 1e3),
        ParamId::Visibility => ("visibility", 1.0),
        ParamId::Phase => ("phase_rad", 1.0),
        ParamId::Wavelength => ("wavelength_nm", 1e9),
        ParamId::ScreenDistance => ("screen_distance_m", 1.0),
    }
}

/// `value ± error` with the error shown to two significant figures and the
/// value to matching precision.
fn fmt_with_error(value: f64, error: f64) -> String {
    if !(error.is_finite() && error > 0.0) {
        return format!("{value}");
    }
    let err_exp = error.abs().log10().floor() as i32;
    let decimals = (1 - err_exp).max(0) as usize;
    if decimals > 12 {
        return format!("{value:e} ± {error:e}");
    }
    format!("{value:.decimals$} ± {error:.decimals$}")
}

pub fn render_report(fit: &FitResult) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "model = {}", fit.model.name());
    let _ = writeln!(w, "converged = {}", fit.converged);
    let _ = writeln!(w, "termination = {:?}", fit.termination);
    let _ = writeln!(w, "iterations = {}", fit.iterations);
    let _ = writeln!(w, "degrees_of_freedom = {}", fit.degrees_of_freedom);
    let _ = writeln!(w, "reduced_chi_square = {:.4}", fit.reduced_chi_square);
    let _ = writeln!(w, "guess_fallback = {}", fit.guess_fallback);
    let free_names: Vec<&str> = fit.free.iter().map(|id| display_key(*id).0).collect();
    let _ = writeln!(w, "free_parameters = {}", free_names.join(", "));
    for (k, id) in fit.free.iter().enumerate() {
        let (key, scale) = display_key(*id);
        let _ = writeln!(
            w,
            "{key} = {}",
            fmt_with_error(fit.estimates[k] * scale, fit.std_errors[k] * scale)
        );
    }
    let _ = writeln!(w, "\n[covariance]");
    if !fit.covariance_full_rank {
        let _ = writeln!(w, "# rank deficient; entries from a pseudo-inverse");
    }
    let n = fit.covariance_dim;
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| format!("{:.6e}", fit.covariance[i * n + j]))
            .collect();
        let _ = writeln!(w, "{} = {}", free_names[i], row.join(" "));
    }
    out
}
