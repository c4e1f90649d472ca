//! Weighted least-squares fitting of count patterns.
//!
//! A fit takes scan records (position, dwell, coincidence count), a pattern
//! model, and a choice of free parameters. Residuals are weighted by the
//! Poisson scale sqrt(max(count, 1)), so the minimized cost is the usual
//! chi-square statistic and parameter errors follow from the curvature at the
//! minimum times the reduced chi-square.
//!
//! The driver never evaluates the model outside plain arithmetic, so step
//! trials may wander through parameter sets that a strict validation would
//! reject (for example d < b); bounds keep them in a sane region and the
//! final estimates are what the data support.

mod gradient;
mod guess;
mod lm;

pub use gradient::partial_coherence_partial;
pub use guess::{initial_guess, Guess};
pub use lm::{LmOptions, Termination};

use crate::pattern::{PatternModel, PatternParams};
use crate::sim::ScanRecord;
use crate::units::wrap_phase;
use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FitError {
    #[error("invalid fit setup: {0}")]
    InvalidSetup(String),
    /// The data cannot constrain the requested free parameters.
    #[error("degenerate fit: {0}")]
    Degenerate(String),
}

/// One fittable field of [`PatternParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamId {
    Center,
    PeakRate,
    SlitSeparation,
    SlitWidth,
    Visibility,
    Phase,
    Wavelength,
    ScreenDistance,
}

impl ParamId {
    pub const ALL: [ParamId; 8] = [
        ParamId::Center,
        ParamId::PeakRate,
        ParamId::SlitSeparation,
        ParamId::SlitWidth,
        ParamId::Visibility,
        ParamId::Phase,
        ParamId::Wavelength,
        ParamId::ScreenDistance,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ParamId::Center => "center",
            ParamId::PeakRate => "peak_rate",
            ParamId::SlitSeparation => "slit_separation",
            ParamId::SlitWidth => "slit_width",
            ParamId::Visibility => "visibility",
            ParamId::Phase => "phase",
            ParamId::Wavelength => "wavelength",
            ParamId::ScreenDistance => "screen_distance",
        }
    }

    pub fn get(&self, p: &PatternParams) -> f64 {
        match self {
            ParamId::Center => p.center,
            ParamId::PeakRate => p.peak_rate,
            ParamId::SlitSeparation => p.slit_separation,
            ParamId::SlitWidth => p.slit_width,
            ParamId::Visibility => p.visibility,
            ParamId::Phase => p.phase,
            ParamId::Wavelength => p.wavelength,
            ParamId::ScreenDistance => p.screen_distance,
        }
    }

    pub fn set(&self, p: &mut PatternParams, v: f64) {
        match self {
            ParamId::Center => p.center = v,
            ParamId::PeakRate => p.peak_rate = v,
            ParamId::SlitSeparation => p.slit_separation = v,
            ParamId::SlitWidth => p.slit_width = v,
            ParamId::Visibility => p.visibility = v,
            ParamId::Phase => p.phase = v,
            ParamId::Wavelength => p.wavelength = v,
            ParamId::ScreenDistance => p.screen_distance = v,
        }
    }

    /// Box bounds used when the caller does not supply any. Lengths get wide
    /// physical ranges; the center may roam one full span beyond the scan.
    pub fn default_bounds(&self, data: &[ScanRecord]) -> (f64, f64) {
        let (lo, hi) = data.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| {
            (a.min(r.position_m), b.max(r.position_m))
        });
        let span = (hi - lo).max(1e-6);
        match self {
            ParamId::Center => (lo - span, hi + span),
            ParamId::PeakRate => (0.0, 1e9),
            ParamId::SlitSeparation => (1e-6, 0.1),
            ParamId::SlitWidth => (1e-7, 0.05),
            ParamId::Visibility => (0.0, 1.0),
            // phase may wander past the principal branch during the fit and
            // is wrapped back to (-pi, pi] for reporting
            ParamId::Phase => (-2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI),
            ParamId::Wavelength => (1e-8, 1e-4),
            ParamId::ScreenDistance => (1e-3, 1e3),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FreeParam {
    pub id: ParamId,
    /// Explicit box bounds; `None` takes [`ParamId::default_bounds`].
    pub bounds: Option<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct FitProblem {
    pub data: Vec<ScanRecord>,
    pub model: PatternModel,
    /// Values for every parameter that is not freed, and the fallback start
    /// for the freed ones.
    pub base: PatternParams,
    pub free: Vec<FreeParam>,
    /// Use the closed-form Jacobian instead of central differences. Only
    /// implemented for the partial-coherence model.
    pub analytic_jacobian: bool,
}

impl FitProblem {
    pub fn new(data: Vec<ScanRecord>, model: PatternModel, base: PatternParams) -> Self {
        FitProblem { data, model, base, free: Vec::new(), analytic_jacobian: false }
    }

    pub fn free(mut self, id: ParamId) -> Self {
        self.free.push(FreeParam { id, bounds: None });
        self
    }

    pub fn free_bounded(mut self, id: ParamId, lo: f64, hi: f64) -> Self {
        self.free.push(FreeParam { id, bounds: Some((lo, hi)) });
        self
    }

    pub fn analytic_jacobian(mut self, yes: bool) -> Self {
        self.analytic_jacobian = yes;
        self
    }

    fn validate(&self) -> Result<(), FitError> {
        if self.free.is_empty() {
            return Err(FitError::InvalidSetup("no free parameters".into()));
        }
        for (i, a) in self.free.iter().enumerate() {
            for b in &self.free[i + 1..] {
                if a.id == b.id {
                    return Err(FitError::InvalidSetup(format!(
                        "parameter {} freed twice",
                        a.id.name()
                    )));
                }
            }
            if let Some((lo, hi)) = a.bounds {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(FitError::InvalidSetup(format!(
                        "bounds for {} must satisfy lo < hi",
                        a.id.name()
                    )));
                }
            }
        }
        if self.data.len() <= self.free.len() {
            return Err(FitError::InvalidSetup(format!(
                "{} data points cannot constrain {} free parameters",
                self.data.len(),
                self.free.len()
            )));
        }
        for (i, r) in self.data.iter().enumerate() {
            if !r.position_m.is_finite() || !(r.dwell_s > 0.0) {
                return Err(FitError::InvalidSetup(format!(
                    "record {i}: position must be finite and dwell positive"
                )));
            }
        }
        if self.analytic_jacobian && !matches!(self.model, PatternModel::PartialCoherence) {
            return Err(FitError::InvalidSetup(format!(
                "analytic Jacobian is only available for partial_coherence, not {}",
                self.model.name()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct FitResult {
    pub model: PatternModel,
    /// Full parameter set at the minimum, phase wrapped to (-pi, pi].
    pub params: PatternParams,
    pub free: Vec<ParamId>,
    /// Best-fit values of the free parameters, in `free` order.
    pub estimates: Vec<f64>,
    /// One-sigma errors scaled by the reduced chi-square.
    pub std_errors: Vec<f64>,
    /// Scaled covariance, row-major `covariance_dim` x `covariance_dim`.
    pub covariance: Vec<f64>,
    pub covariance_dim: usize,
    /// False when the curvature matrix needed a pseudo-inverse.
    pub covariance_full_rank: bool,
    pub reduced_chi_square: f64,
    pub degrees_of_freedom: usize,
    pub iterations: usize,
    pub converged: bool,
    pub termination: Termination,
    pub final_cost: f64,
    pub cost_history: Vec<f64>,
    /// True when the automatic starting guess fell back to `base` values.
    pub guess_fallback: bool,
}

impl FitResult {
    /// Estimate and error for one free parameter, if it was freed.
    pub fn estimate(&self, id: ParamId) -> Option<(f64, f64)> {
        self.free
            .iter()
            .position(|f| *f == id)
            .map(|k| (self.estimates[k], self.std_errors[k]))
    }
}

struct Eval<'a> {
    problem: &'a FitProblem,
    sigma: Vec<f64>,
}

impl Eval<'_> {
    fn new(problem: &FitProblem) -> Eval<'_> {
        let sigma = problem
            .data
            .iter()
            .map(|r| (r.coincidences.max(1) as f64).sqrt())
            .collect();
        Eval { problem, sigma }
    }

    fn params_from(&self, x: &[f64]) -> PatternParams {
        let mut p = self.problem.base.clone();
        for (fp, v) in self.problem.free.iter().zip(x) {
            fp.id.set(&mut p, *v);
        }
        p
    }

    fn residuals(&self, x: &[f64]) -> DVector<f64> {
        let p = self.params_from(x);
        DVector::from_iterator(
            self.problem.data.len(),
            self.problem.data.iter().zip(&self.sigma).map(|(r, s)| {
                (r.coincidences as f64 - r.dwell_s * self.problem.model.rate(r.position_m, &p)) / s
            }),
        )
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        if self.problem.analytic_jacobian {
            self.analytic_jacobian(x)
        } else {
            self.numeric_jacobian(x)
        }
    }

    fn analytic_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let p = self.params_from(x);
        let m = self.problem.data.len();
        let n = x.len();
        DMatrix::from_fn(m, n, |i, k| {
            let r = &self.problem.data[i];
            let d = gradient::partial_coherence_partial(r.position_m, &p, self.problem.free[k].id);
            -r.dwell_s * d / self.sigma[i]
        })
    }

    /// Central differences with relative step 1e-6 and absolute floor 1e-12.
    fn numeric_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let m = self.problem.data.len();
        let n = x.len();
        let mut j = DMatrix::zeros(m, n);
        let mut xp = x.to_vec();
        for k in 0..n {
            let h = (1e-6 * x[k].abs()).max(1e-12);
            xp[k] = x[k] + h;
            let rp = self.residuals(&xp);
            xp[k] = x[k] - h;
            let rm = self.residuals(&xp);
            xp[k] = x[k];
            let scale = 1.0 / (2.0 * h);
            for i in 0..m {
                j[(i, k)] = (rp[i] - rm[i]) * scale;
            }
        }
        j
    }
}

/// Fit with an automatic starting point from [`initial_guess`].
pub fn fit(problem: &FitProblem) -> Result<FitResult, FitError> {
    problem.validate()?;
    let g = initial_guess(&problem.data, &problem.model, &problem.base);
    let mut out = fit_with(problem, &g.params, &LmOptions::default())?;
    out.guess_fallback = g.fallback;
    Ok(out)
}

/// Fit starting from caller-supplied parameter values.
pub fn fit_from(problem: &FitProblem, start: &PatternParams) -> Result<FitResult, FitError> {
    fit_with(problem, start, &LmOptions::default())
}

pub fn fit_with(
    problem: &FitProblem,
    start: &PatternParams,
    opts: &LmOptions,
) -> Result<FitResult, FitError> {
    problem.validate()?;
    let eval = Eval::new(problem);
    let x0: Vec<f64> = problem.free.iter().map(|f| f.id.get(start)).collect();
    let bounds: Vec<(f64, f64)> = problem
        .free
        .iter()
        .map(|f| f.bounds.unwrap_or_else(|| f.id.default_bounds(&problem.data)))
        .collect();
    let names: Vec<String> = problem.free.iter().map(|f| f.id.name().to_string()).collect();

    let min = lm::minimize(
        |x| eval.residuals(x),
        |x| eval.jacobian(x),
        &x0,
        &bounds,
        &names,
        opts,
    )
    .map_err(FitError::Degenerate)?;

    let n = problem.free.len();
    let dof = problem.data.len() - n;
    let reduced = min.cost / dof as f64;

    // covariance of the estimates: inverse curvature scaled by the reduced
    // chi-square, with a pseudo-inverse fallback for rank-deficient fits
    let (cov_unscaled, full_rank) = match min.jtj.clone().cholesky() {
        Some(ch) => (ch.inverse(), true),
        None => {
            let eps = 1e-14 * min.jtj.diagonal().amax().max(1e-300);
            let pinv = min
                .jtj
                .clone()
                .svd(true, true)
                .pseudo_inverse(eps)
                .unwrap_or_else(|_| DMatrix::zeros(n, n));
            (pinv, false)
        }
    };

    let mut params = eval.params_from(&min.x);
    params.phase = wrap_phase(params.phase);
    let estimates: Vec<f64> = problem.free.iter().map(|f| f.id.get(&params)).collect();
    let std_errors: Vec<f64> = (0..n)
        .map(|k| (reduced * cov_unscaled[(k, k)]).max(0.0).sqrt())
        .collect();
    let covariance: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| reduced * cov_unscaled[(i, j)])
        .collect();

    Ok(FitResult {
        model: problem.model.clone(),
        params,
        free: problem.free.iter().map(|f| f.id).collect(),
        estimates,
        std_errors,
        covariance,
        covariance_dim: n,
        covariance_full_rank: full_rank,
        reduced_chi_square: reduced,
        degrees_of_freedom: dof,
        iterations: min.iterations,
        converged: min.termination != Termination::MaxIterations,
        termination: min.termination,
        final_cost: min.cost,
        cost_history: min.cost_history,
        guess_fallback: false,
    })
}
