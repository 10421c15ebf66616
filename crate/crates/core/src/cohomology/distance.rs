use serde::Serialize;

use super::truncate::TruncatedOperator;
use crate::algebra::check_p;
use crate::energy::phi;
use crate::optim::{armijo, conjugate_gradient, dot, norm_inf};
use crate::sum::compensated_sum;
use crate::{Error, Result};

/// Result of minimising `‖T u - v‖_p`.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub distance: f64,
    pub witness: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Stopping and iteration limits for [`distance_to_image`].
#[derive(Clone, Copy, Debug)]
pub struct DistanceOptions {
    /// Stop once the predicted decrease falls below this fraction of the
    /// objective.
    pub rel_tol: f64,
    pub max_iters: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            rel_tol: 1e-13,
            max_iters: 500,
        }
    }
}

const WEIGHT_FLOOR: f64 = 1e-12;

fn objective(t: &TruncatedOperator, v: &[f64], u: &[f64], p: f64) -> f64 {
    let tu = t.apply(u);
    compensated_sum(tu.iter().zip(v).map(|(a, b)| (a - b).abs().powf(p)))
}

fn residual(t: &TruncatedOperator, v: &[f64], u: &[f64]) -> Vec<f64> {
    t.apply(u).iter().zip(v).map(|(a, b)| a - b).collect()
}

/// `diag(TᵀWT)` for a diagonal weight `W`.
fn weighted_diagonal(t: &TruncatedOperator, w: &[f64]) -> Vec<f64> {
    let mut d = vec![0.0; t.cols()];
    for &(r, c, val) in t.entries() {
        d[c] += val * val * w[r];
    }
    d
}

fn least_squares(t: &TruncatedOperator, v: &[f64], w: &[f64], rel_tol: f64) -> Vec<f64> {
    let rhs: Vec<f64> = t.apply_transpose(&v.iter().zip(w).map(|(a, b)| a * b).collect::<Vec<_>>());
    let diag = weighted_diagonal(t, w);
    let apply = |x: &[f64], out: &mut [f64]| {
        let tx: Vec<f64> = t.apply(x).iter().zip(w).map(|(a, b)| a * b).collect();
        out.copy_from_slice(&t.apply_transpose(&tx));
    };
    conjugate_gradient(apply, Some(&diag), &rhs, rel_tol, 20 * t.cols().max(10)).x
}

pub fn distance_to_image(t: &TruncatedOperator, v: &[f64], p: f64) -> Result<DistanceReport> {
    distance_with(t, v, p, DistanceOptions::default())
}

/// Minimises `‖T u - v‖_p` over all `u`. The `p = 2` solution seeds a damped
/// Newton iteration on `Σ |r_i|^p`.
pub fn distance_with(
    t: &TruncatedOperator,
    v: &[f64],
    p: f64,
    opts: DistanceOptions,
) -> Result<DistanceReport> {
    check_p(p)?;
    if p == 1.0 {
        return Err(Error::param("distance minimisation needs p > 1"));
    }
    if v.len() != t.rows() {
        return Err(Error::Shape(format!(
            "target has length {}, operator has {} rows",
            v.len(),
            t.rows()
        )));
    }
    let ones = vec![1.0; t.rows()];
    let mut u = least_squares(t, v, &ones, 1e-14);
    let mut f = objective(t, v, &u, p);
    let mut iterations = 0;
    let mut converged = f == 0.0;
    while !converged && iterations < opts.max_iters {
        let r = residual(t, v, &u);
        let grad = t.apply_transpose(&r.iter().map(|&ri| p * phi(ri, p)).collect::<Vec<_>>());
        if p == 2.0 && norm_inf(&grad) <= 1e-14 * (1.0 + f.sqrt()) {
            converged = true;
            break;
        }
        let w: Vec<f64> = r
            .iter()
            .map(|ri| p * (p - 1.0) * ri.abs().max(WEIGHT_FLOOR).powf(p - 2.0))
            .collect();
        let neg: Vec<f64> = grad.iter().map(|g| -g).collect();
        let diag = weighted_diagonal(t, &w);
        let apply = |x: &[f64], out: &mut [f64]| {
            let tx: Vec<f64> = t.apply(x).iter().zip(&w).map(|(a, b)| a * b).collect();
            out.copy_from_slice(&t.apply_transpose(&tx));
        };
        let mut dir = conjugate_gradient(apply, Some(&diag), &neg, 1e-10, 20 * t.cols().max(10)).x;
        let mut slope = dot(&grad, &dir);
        if !(slope < 0.0) {
            dir = neg;
            slope = dot(&grad, &dir);
        }
        if -slope <= opts.rel_tol * f {
            converged = true;
            break;
        }
        iterations += 1;
        match armijo(|x| objective(t, v, x, p), &u, f, &dir, slope, 1.0) {
            Some(step) => {
                let decrease = f - step.value;
                u = step.point;
                f = step.value;
                if decrease <= opts.rel_tol * f {
                    converged = true;
                }
            }
            None => break,
        }
    }
    Ok(DistanceReport {
        distance: f.powf(1.0 / p),
        witness: u,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::truncate::{truncate, WindowPolicy};
    use crate::cohomology::{Builtin, ComplexSpec};
    use crate::group::{GroupElement, Window};

    fn z_setup(n: i64) -> (TruncatedOperator, Vec<f64>) {
        let c = ComplexSpec::builtin(Builtin::Z);
        let t = truncate(
            &c.differentials()[0],
            &Window::interval(0, n),
            WindowPolicy::Extend,
        )
        .unwrap();
        let mut v = vec![0.0; t.rows()];
        v[t.row_of(0, &GroupElement::abelian(&[0])).unwrap()] = 1.0;
        (t, v)
    }

    #[test]
    fn z_point_mass_matches_uniform_spread() {
        // the image is the sum-zero subspace on n + 2 points, so the best
        // residual is the uniform one
        for p in [1.5, 2.0, 3.0] {
            for n in [5, 20] {
                let (t, v) = z_setup(n);
                let rep = distance_to_image(&t, &v, p).unwrap();
                let exact = ((n + 2) as f64).powf((1.0 - p) / p);
                assert!(rep.converged, "p={p} n={n}");
                assert!(
                    (rep.distance - exact).abs() <= 1e-8 * exact,
                    "p={p} n={n}: {}",
                    rep.distance
                );
            }
        }
    }

    #[test]
    fn target_in_image() {
        let (t, _) = z_setup(6);
        let u: Vec<f64> = (0..t.cols()).map(|k| (k as f64).sin()).collect();
        let v = t.apply(&u);
        let rep = distance_to_image(&t, &v, 1.7).unwrap();
        assert!(rep.distance < 1e-10);
    }

    #[test]
    fn shape_mismatch() {
        let (t, _) = z_setup(3);
        assert!(matches!(
            distance_to_image(&t, &[1.0], 2.0),
            Err(Error::Shape(_))
        ));
    }
}
