use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::check_p;
use crate::energy::{phi, GraphFunction, Scope};
use crate::group::{CayleyBall, GeneratingSet, GroupSpec};
use crate::optim::{armijo, dot, norm_inf};
use crate::sum::compensated_sum;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct SobolevOptions {
    pub starts: usize,
    pub seed: u64,
    pub max_iters: usize,
    /// Stop once `‖∇λ‖_∞ ≤ rel_tol · λ` at a point with `‖f‖_p = 1`. Line
    /// searches on `λ` resolve gradients down to about `√ε · λ`.
    pub rel_tol: f64,
}

impl Default for SobolevOptions {
    fn default() -> Self {
        SobolevOptions {
            starts: 8,
            seed: 0,
            max_iters: 50_000,
            rel_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SobolevReport {
    pub radius: usize,
    pub p: f64,
    pub lambda: f64,
    /// Minimiser, on the ball of radius `R + 1` and zero on its outer sphere.
    pub achiever: GraphFunction,
    pub start: usize,
    pub iterations: usize,
    pub converged: bool,
    /// `λ` reached by every start, in start order.
    pub per_start: Vec<f64>,
}

struct Problem {
    ball: Arc<CayleyBall>,
    free: Vec<usize>,
    p: f64,
}

struct Run {
    lambda: f64,
    values: Vec<f64>,
    iterations: usize,
    converged: bool,
}

impl Problem {
    fn embed(&self, x: &[f64]) -> Vec<f64> {
        let mut full = vec![0.0; self.ball.len()];
        for (&i, &v) in self.free.iter().zip(x) {
            full[i] = v;
        }
        full
    }

    fn function(&self, x: &[f64]) -> GraphFunction {
        GraphFunction::new(self.ball.clone(), self.embed(x)).expect("finite values")
    }

    fn norm_power(&self, x: &[f64]) -> f64 {
        compensated_sum(x.iter().map(|v| v.abs().powf(self.p)))
    }

    fn ratio(&self, x: &[f64]) -> f64 {
        let n = self.norm_power(x);
        if !(n > 0.0) {
            return f64::INFINITY;
        }
        self.function(x)
            .dirichlet_sum(self.p, Scope::AllInBallEdges)
            / n
    }

    /// Ratio and its gradient `(∇I - λ ∇N) / N`.
    fn ratio_grad(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let f = self.function(x);
        let n = self.norm_power(x);
        let energy = f.dirichlet_sum(self.p, Scope::AllInBallEdges);
        let lambda = energy / n;
        let full = f.energy_gradient(self.p);
        let grad = self
            .free
            .iter()
            .zip(x)
            .map(|(&i, &v)| (full[i] - lambda * self.p * phi(v, self.p)) / n)
            .collect();
        (lambda, grad)
    }

    fn normalize(&self, x: &mut [f64]) {
        let s = self.norm_power(x).powf(1.0 / self.p);
        if s > 0.0 {
            x.iter_mut().for_each(|v| *v /= s);
        }
    }

    /// Polak–Ribière+ conjugate gradients with Armijo steps, renormalising
    /// after each step since the ratio is scale invariant.
    fn descend(&self, mut x: Vec<f64>, opts: &SobolevOptions) -> Run {
        self.normalize(&mut x);
        let (mut lambda, mut grad) = self.ratio_grad(&x);
        let mut dir: Vec<f64> = grad.iter().map(|g| -g).collect();
        let mut step = 1.0f64;
        let mut iterations = 0;
        let mut converged = false;
        while iterations < opts.max_iters {
            if norm_inf(&grad) <= opts.rel_tol * lambda.max(f64::MIN_POSITIVE) {
                converged = true;
                break;
            }
            let mut slope = dot(&grad, &dir);
            if !(slope < 0.0) {
                dir = grad.iter().map(|g| -g).collect();
                slope = dot(&grad, &dir);
            }
            let Some(accepted) = armijo(
                |y| self.ratio(y),
                &x,
                lambda,
                &dir,
                slope,
                (2.0 * step).min(1e6),
            ) else {
                break;
            };
            iterations += 1;
            step = accepted.length;
            x = accepted.point;
            let scale = self.norm_power(&x).powf(1.0 / self.p);
            self.normalize(&mut x);
            let (l, g) = self.ratio_grad(&x);
            // PR+ on the normalised point; the previous direction is rescaled
            // with the point so the recurrence stays consistent
            let gg = dot(&grad, &grad);
            let beta = if gg > 0.0 {
                (dot(&g, &g) - dot(&g, &grad)).max(0.0) / gg
            } else {
                0.0
            };
            dir = g
                .iter()
                .zip(&dir)
                .map(|(gi, di)| -gi + beta * di / scale)
                .collect();
            lambda = l;
            grad = g;
        }
        Run {
            lambda,
            values: self.embed(&x),
            iterations,
            converged,
        }
    }
}

/// `λ(R) = min I_p(f) / ‖f‖_p^p` over nonzero `f` supported in the ball of
/// radius `R`, with `I_p` the Dirichlet sum over the whole group. Each start
/// runs independently; the smallest value wins, ties going to the lower
/// start index.
pub fn sobolev_ratio(
    group: &GroupSpec,
    gens: &GeneratingSet,
    radius: usize,
    p: f64,
    opts: SobolevOptions,
) -> Result<SobolevReport> {
    check_p(p)?;
    if p == 1.0 {
        return Err(Error::param("the Sobolev ratio needs p > 1"));
    }
    if radius == 0 {
        return Err(Error::param("radius must be at least 1"));
    }
    if opts.starts == 0 {
        return Err(Error::param("at least one start is needed"));
    }
    let ball = CayleyBall::new(group, gens, radius + 1)?;
    let free: Vec<usize> = (0..ball.len())
        .filter(|&i| ball.depth(i) <= radius)
        .collect();
    let problem = Problem { ball, free, p };
    let dim = problem.free.len();
    let runs: Vec<Run> = (0..opts.starts)
        .into_par_iter()
        .map(|k| {
            let x0 = if k == 0 {
                vec![1.0; dim]
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(k as u64);
                (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()
            };
            problem.descend(x0, &opts)
        })
        .collect();
    let per_start: Vec<f64> = runs.iter().map(|r| r.lambda).collect();
    let (start, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.lambda < a.1.lambda { b } else { a })
        .expect("at least one start");
    Ok(SobolevReport {
        radius,
        p,
        lambda: best.lambda,
        achiever: GraphFunction::new(problem.ball.clone(), best.values)?,
        start,
        iterations: best.iterations,
        converged: best.converged,
        per_start,
    })
}
