//! Damped least squares with box bounds by projection.
//!
//! Levenberg-Marquardt with Marquardt's diagonal scaling: steps solve
//! (J'J + lambda diag(J'J)) dx = -J'r, the damping grows tenfold on a
//! rejected step and shrinks tenfold on an accepted one. Accepted costs are
//! monotone by construction.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct LmOptions {
    pub max_iter: usize,
    /// Stop when an accepted step improves the cost by less than this
    /// relative amount.
    pub cost_rel_tol: f64,
    /// Stop when the infinity norm of the cost gradient J'r falls below this.
    pub grad_tol: f64,
    pub lambda_init: f64,
    pub lambda_factor: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        LmOptions {
            max_iter: 200,
            cost_rel_tol: 1e-10,
            grad_tol: 1e-10,
            lambda_init: 1e-3,
            lambda_factor: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// An accepted step changed the cost by less than the relative tolerance.
    CostConverged,
    /// The gradient vanished to tolerance.
    GradientConverged,
    /// No damping value produced an acceptable step; the fit cannot improve
    /// further in floating point.
    StepStalled,
    MaxIterations,
}

#[derive(Debug, Clone)]
pub struct Minimized {
    pub x: Vec<f64>,
    pub cost: f64,
    pub iterations: usize,
    pub termination: Termination,
    /// Cost after the start point and after every accepted step.
    pub cost_history: Vec<f64>,
    /// J'J at the solution, for covariance estimation.
    pub jtj: DMatrix<f64>,
}

fn project(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, (lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(*lo, *hi);
    }
}

/// Describe which parameter combination makes J'J unsolvable: dead columns
/// first, then near-collinear pairs.
fn degeneracy_diagnostic(a: &DMatrix<f64>, names: &[String]) -> String {
    let n = a.nrows();
    let max_diag = (0..n).map(|i| a[(i, i)]).fold(0.0f64, f64::max);
    let dead: Vec<&str> = (0..n)
        .filter(|&i| a[(i, i)] <= 1e-14 * max_diag.max(1e-300))
        .map(|i| names[i].as_str())
        .collect();
    if !dead.is_empty() {
        return format!(
            "parameter(s) with no gradient support: {}",
            dead.join(", ")
        );
    }
    let mut worst = (0usize, 0usize, 0.0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            let c = a[(i, j)].abs() / (a[(i, i)] * a[(j, j)]).sqrt();
            if c > worst.2 {
                worst = (i, j, c);
            }
        }
    }
    format!(
        "nearly collinear parameters: {} and {} (correlation {:.9})",
        names[worst.0], names[worst.1], worst.2
    )
}

/// Minimize |residuals(x)|^2 over the box `bounds`.
///
/// `names` labels the parameters for degeneracy diagnostics. Fails only when
/// the normal equations are singular beyond what damping can regularize or
/// the residuals are non-finite at the start.
pub fn minimize<R, J>(
    mut residuals: R,
    mut jacobian: J,
    x0: &[f64],
    bounds: &[(f64, f64)],
    names: &[String],
    opts: &LmOptions,
) -> Result<Minimized, String>
where
    R: FnMut(&[f64]) -> DVector<f64>,
    J: FnMut(&[f64]) -> DMatrix<f64>,
{
    let n = x0.len();
    assert_eq!(bounds.len(), n);
    let mut x = x0.to_vec();
    project(&mut x, bounds);

    let r = residuals(&x);
    let mut cost = r.norm_squared();
    if !cost.is_finite() {
        return Err("residuals are not finite at the initial guess".to_string());
    }
    let mut history = vec![cost];
    let mut lambda = opts.lambda_init;
    let mut jtj = DMatrix::zeros(n, n);
    let mut termination = Termination::MaxIterations;
    let mut iterations = 0;

    'outer: for iter in 1..=opts.max_iter {
        iterations = iter;
        let j = jacobian(&x);
        let r = residuals(&x);
        jtj = j.transpose() * &j;
        let g = j.transpose() * &r;
        if g.amax() < opts.grad_tol {
            termination = Termination::GradientConverged;
            iterations = iter - 1;
            break;
        }

        // scale-invariant damping floor so a zero diagonal cannot freeze a
        // direction entirely when lambda is large
        let max_diag = jtj.diagonal().amax();
        if !(max_diag.is_finite() && max_diag > 0.0) {
            return Err(degeneracy_diagnostic(&jtj, names));
        }
        if iter == 1 {
            // a parameter with no residual response at the start means the
            // problem itself is degenerate, not merely a hard step
            let dead = (0..n).any(|i| jtj[(i, i)] <= 1e-14 * max_diag);
            if dead {
                return Err(degeneracy_diagnostic(&jtj, names));
            }
        }

        let mut accepted = false;
        for _ in 0..30 {
            let mut m = jtj.clone();
            for i in 0..n {
                let d = jtj[(i, i)].max(1e-12 * max_diag);
                m[(i, i)] += lambda * d;
            }
            let Some(chol) = m.cholesky() else {
                lambda *= opts.lambda_factor;
                continue;
            };
            let dx = chol.solve(&(-&g));
            let mut x_new = x.clone();
            for i in 0..n {
                x_new[i] += dx[i];
            }
            project(&mut x_new, bounds);
            let r_new = residuals(&x_new);
            let cost_new = r_new.norm_squared();
            if cost_new.is_finite() && cost_new <= cost {
                let rel = (cost - cost_new) / cost.max(1e-300);
                x = x_new;
                cost = cost_new;
                history.push(cost);
                lambda = (lambda / opts.lambda_factor).max(1e-12);
                accepted = true;
                if rel < opts.cost_rel_tol {
                    termination = Termination::CostConverged;
                    break 'outer;
                }
                break;
            }
            lambda *= opts.lambda_factor;
        }
        if !accepted {
            // the normal equations never became solvable: genuinely singular
            if jtj.clone().cholesky().is_none() && lambda > 1e12 {
                return Err(degeneracy_diagnostic(&jtj, names));
            }
            termination = Termination::StepStalled;
            break;
        }
    }

    // refresh J'J at the final point for covariance use
    let j = jacobian(&x);
    jtj.copy_from(&(j.transpose() * &j));
    Ok(Minimized {
        x,
        cost,
        iterations,
        termination,
        cost_history: history,
        jtj,
    })
}
