//! Finite collection-slit resolution: what the scanning detector actually
//! records is the pattern averaged over its aperture width.

use crate::pattern::PatternParams;
use std::f64::consts::PI;
use std::sync::OnceLock;

const QUAD_POINTS: usize = 33;

/// Gauss-Legendre nodes and weights on [-1, 1], found by Newton iteration on
/// the Legendre recurrence. 33 points integrate the fringe cosine over any
/// realistic aperture to machine precision.
fn quad_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(QUAD_POINTS))
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let pk = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess for the i-th root
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Mean of `f` over the window [x - aperture/2, x + aperture/2].
/// A nonpositive aperture means a point detector: `f(x)` unchanged.
pub fn aperture_average<F: Fn(f64) -> f64>(f: F, x: f64, aperture: f64) -> f64 {
    if aperture <= 0.0 {
        return f(x);
    }
    let (nodes, weights) = quad_rule();
    let half = 0.5 * aperture;
    let mut acc = 0.0;
    for (t, w) in nodes.iter().zip(weights) {
        acc += w * f(x + half * t);
    }
    // the weights sum to 2, so half their total is the mean
    0.5 * acc
}

/// A pattern density as seen through a collection slit of width `aperture`
/// centered at `x`.
pub fn aperture_averaged_density<F>(x: f64, p: &PatternParams, aperture: f64, base: F) -> f64
where
    F: Fn(f64, &PatternParams) -> f64,
{
    aperture_average(|u| base(u, p), x, aperture)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{self, double_slit_density, partial_coherence_density};
    use crate::units::MM;
    use approx::assert_relative_eq;

    fn sinc(x: f64) -> f64 {
        if x == 0.0 {
            1.0
        } else {
            x.sin() / x
        }
    }

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (nodes, weights) = quad_rule();
        assert_eq!(nodes.len(), 33);
        let total: f64 = weights.iter().sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
        // odd powers vanish by symmetry; even powers match 2/(k+1)
        for k in [2usize, 8, 20, 40, 64] {
            let got: f64 = nodes
                .iter()
                .zip(weights)
                .map(|(x, w)| w * x.powi(k as i32))
                .sum();
            let want = 2.0 / (k as f64 + 1.0);
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_aperture_is_identity() {
        let p = PatternParams::default();
        for i in 0..100 {
            let x = -10.0 * MM + i as f64 * 0.2 * MM;
            assert_eq!(
                aperture_averaged_density(x, &p, 0.0, double_slit_density),
                double_slit_density(x, &p)
            );
        }
    }

    #[test]
    fn cosine_average_matches_closed_form() {
        // the mean of cos(k u) over a window of width a centered at x is
        // sinc(k a / 2) cos(k x); the quadrature must reproduce it
        for (k, a, x) in [
            (3163.7, 0.7e-3, 0.0),
            (3163.7, 0.7e-3, 1.3e-3),
            (900.0, 2.0e-3, -0.4e-3),
            (12000.0, 0.25e-3, 0.8e-3),
        ] {
            let got = aperture_average(|u: f64| (k * u).cos(), x, a);
            let want = sinc(0.5 * k * a) * (k * x).cos();
            assert!(
                (got - want).abs() < 1e-9,
                "k = {k}, a = {a}, x = {x}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn fringe_visibility_attenuates_by_sinc() {
        // flatten the envelope; then the apertured pattern is a pure cosine
        // fringe whose contrast drops by sinc(pi a / dx)
        let p = PatternParams {
            slit_width: 1e-6 * MM,
            visibility: 1.0,
            ..PatternParams::default()
        };
        let dx = pattern::fringe_spacing(&p);
        let a = 0.7 * MM;
        let hi = aperture_averaged_density(0.0, &p, a, partial_coherence_density);
        let lo = aperture_averaged_density(0.5 * dx, &p, a, partial_coherence_density);
        let v_eff = (hi - lo) / (hi + lo);
        let want = sinc(PI * a / dx);
        assert!((v_eff - want).abs() < 1e-9, "{v_eff} vs {want}");
        // frozen reference: 0.7 mm slit over 1.986 mm fringes keeps 81%
        assert_relative_eq!(want, 0.807_778_202_539_762_6, max_relative = 1e-12);
    }

    #[test]
    fn averaging_preserves_mass_of_smooth_bumps() {
        // averaging then integrating equals integrating the original when the
        // support stays inside the integration range
        let f = |u: f64| (-((u) / 2.0e-3) * (u / 2.0e-3)).exp();
        let step = 1e-5;
        let raw: f64 = (-3000..3000).map(|i| f(i as f64 * step) * step).sum();
        let avg: f64 = (-3000..3000)
            .map(|i| aperture_average(f, i as f64 * step, 0.5e-3) * step)
            .sum();
        assert_relative_eq!(raw, avg, max_relative = 1e-6);
    }
}
