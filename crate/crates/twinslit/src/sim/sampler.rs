//! Inverse-CDF sampling of photon arrival positions from a tabulated
//! density, for event-level simulations and distribution checks.

use super::rng::Stream;
use super::SimError;

/// Minimum tabulation resolution. The CDF is piecewise linear over this many
/// cells, so the sampled distribution is the density smoothed over one cell
/// width, which is far below any physical feature size in play here.
pub const MIN_CELLS: usize = 4096;

#[derive(Debug, Clone)]
pub struct PositionSampler {
    lo: f64,
    cell_width: f64,
    /// cdf[i] is the cumulative mass before cell i; cdf[cells] = 1.
    cdf: Vec<f64>,
}

/// Tabulate `density` on `cells` midpoints over `range` and build the
/// sampler. `cells` is clamped up to [`MIN_CELLS`].
pub fn build_sampler<F: Fn(f64) -> f64>(
    density: F,
    range: (f64, f64),
    cells: usize,
) -> Result<PositionSampler, SimError> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(SimError::config(
            "range",
            format!("need finite lo < hi, got ({lo}, {hi})"),
        ));
    }
    let cells = cells.max(MIN_CELLS);
    let cell_width = (hi - lo) / cells as f64;
    let mut cdf = Vec::with_capacity(cells + 1);
    cdf.push(0.0);
    let mut total = 0.0;
    for i in 0..cells {
        let x = lo + (i as f64 + 0.5) * cell_width;
        let v = density(x);
        if !v.is_finite() || v < 0.0 {
            return Err(SimError::DegenerateDensity(format!(
                "density({x}) = {v}; need finite nonnegative values"
            )));
        }
        total += v;
        cdf.push(total);
    }
    if total <= 0.0 {
        return Err(SimError::DegenerateDensity(
            "density vanishes over the whole range".into(),
        ));
    }
    for c in &mut cdf {
        *c /= total;
    }
    cdf[cells] = 1.0;
    Ok(PositionSampler { lo, cell_width, cdf })
}

impl PositionSampler {
    /// Draw one position. Inverts the piecewise-linear CDF: binary search
    /// for the cell, then linear interpolation inside it.
    pub fn sample(&self, rng: &mut Stream) -> f64 {
        let u = rng.uniform();
        // last i with cdf[i] <= u; u < 1 guarantees i < cells
        let i = self.cdf.partition_point(|&c| c <= u).saturating_sub(1);
        let mass = self.cdf[i + 1] - self.cdf[i];
        let frac = if mass > 0.0 {
            (u - self.cdf[i]) / mass
        } else {
            0.5
        };
        self.lo + (i as f64 + frac) * self.cell_width
    }

    pub fn cells(&self) -> usize {
        self.cdf.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{double_slit_density, PatternParams};
    use crate::stats::chi2_sf;
    use crate::units::MM;

    #[test]
    fn rejects_degenerate_densities() {
        assert!(matches!(
            build_sampler(|_| 0.0, (-1.0, 1.0), 4096),
            Err(SimError::DegenerateDensity(_))
        ));
        assert!(build_sampler(|x| x, (-1.0, 1.0), 4096).is_err()); // negative lobe
        assert!(build_sampler(|x| x.abs(), (1.0, -1.0), 4096).is_err()); // inverted range
    }

    #[test]
    fn enforces_minimum_resolution() {
        let s = build_sampler(|_| 1.0, (0.0, 1.0), 16).unwrap();
        assert!(s.cells() >= MIN_CELLS);
    }

    #[test]
    fn uniform_density_passes_ks() {
        let s = build_sampler(|_| 3.7, (2.0, 5.0), 4096).unwrap();
        let n = 100_000;
        let mut rng = Stream::new(5, 0, 0);
        let mut xs: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
        xs.sort_by(f64::total_cmp);
        let mut d = 0.0f64;
        for (i, x) in xs.iter().enumerate() {
            assert!((2.0..=5.0).contains(x));
            let f = (x - 2.0) / 3.0;
            let lo = i as f64 / n as f64;
            let hi = (i + 1) as f64 / n as f64;
            d = d.max((f - lo).abs()).max((f - hi).abs());
        }
        // 1% KS critical value
        assert!(d < 1.628 / (n as f64).sqrt(), "KS statistic {d}");
    }

    #[test]
    fn narrow_spike_lands_in_its_cell() {
        let spike = |x: f64| if (x - 0.25).abs() < 1e-4 { 1.0 } else { 0.0 };
        let s = build_sampler(spike, (0.0, 1.0), 65_536).unwrap();
        let mut rng = Stream::new(9, 1, 2);
        for _ in 0..1000 {
            let x = s.sample(&mut rng);
            assert!((x - 0.25).abs() < 2e-4, "sampled {x}");
        }
    }

    #[test]
    fn double_slit_histogram_matches_density() {
        let p = PatternParams::default();
        let range = (-12.5 * MM, 12.5 * MM);
        let s = build_sampler(|x| double_slit_density(x, &p), range, 8192).unwrap();
        let n = 200_000;
        let bins = 125;
        let width = (range.1 - range.0) / bins as f64;
        let mut rng = Stream::new(21, 0, 0);
        let mut hist = vec![0u64; bins];
        for _ in 0..n {
            let x = s.sample(&mut rng);
            let b = (((x - range.0) / width) as usize).min(bins - 1);
            hist[b] += 1;
        }
        // expected mass per bin by Simpson's rule on the analytic density
        let mut expect: Vec<f64> = (0..bins)
            .map(|b| {
                let x0 = range.0 + b as f64 * width;
                let f = |x| double_slit_density(x, &p);
                (f(x0) + 4.0 * f(x0 + 0.5 * width) + f(x0 + width)) / 6.0
            })
            .collect();
        let total: f64 = expect.iter().sum();
        for e in &mut expect {
            *e *= n as f64 / total;
        }
        let mut chi2 = 0.0;
        let mut dof = 0.0;
        let mut merged_obs = 0.0;
        let mut merged_exp = 0.0;
        for b in 0..bins {
            merged_obs += hist[b] as f64;
            merged_exp += expect[b];
            if merged_exp >= 8.0 || b == bins - 1 {
                let d = merged_obs - merged_exp;
                chi2 += d * d / merged_exp;
                dof += 1.0;
                merged_obs = 0.0;
                merged_exp = 0.0;
            }
        }
        let p_value = chi2_sf(chi2, dof - 1.0);
        assert!(p_value > 1e-3, "chi2 = {chi2}, dof = {dof}, p = {p_value}");
    }
}
