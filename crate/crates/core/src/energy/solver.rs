use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{phi, GraphFunction, Scope};
use crate::group::{CayleyBall, GroupElement};
use crate::optim::{armijo, conjugate_gradient, dot, norm_inf};
use crate::sum::Compensated;
use crate::{Error, Result};

pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITERS: usize = 100_000;
const WEIGHT_FLOOR: f64 = 1e-12;
const JITTER: f64 = 1e-14;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMethod {
    /// Steepest descent with Armijo backtracking.
    GradientDescent,
    /// Reweighted least-squares (Newton) directions with Armijo backtracking.
    #[default]
    Irls,
}

/// Minimise the in-ball p-Dirichlet energy with prescribed frontier values.
#[derive(Clone, Debug)]
pub struct DirichletProblem {
    ball: Arc<CayleyBall>,
    /// Frontier entries are the data; interior entries are ignored.
    boundary: Vec<f64>,
    pub p: f64,
    pub residual_tol: f64,
    pub max_iters: usize,
    pub method: SolverMethod,
}

impl DirichletProblem {
    /// Boundary data from a function of the frontier vertex.
    pub fn from_fn(
        ball: Arc<CayleyBall>,
        p: f64,
        g: impl Fn(&GroupElement) -> f64,
    ) -> Result<Self> {
        let boundary = (0..ball.len())
            .map(|i| {
                if ball.is_interior(i) {
                    0.0
                } else {
                    g(ball.vertex(i))
                }
            })
            .collect();
        Self::build(ball, p, boundary)
    }

    /// Boundary data as `(element, value)` pairs covering the frontier
    /// exactly.
    pub fn with_boundary(
        ball: Arc<CayleyBall>,
        p: f64,
        values: &[(GroupElement, f64)],
    ) -> Result<Self> {
        let mut boundary = vec![0.0; ball.len()];
        let mut seen = vec![false; ball.len()];
        for (x, v) in values {
            let i = ball
                .index_of(x)
                .ok_or_else(|| Error::NotInBall(ball.group().format_element(x)))?;
            if ball.is_interior(i) {
                return Err(Error::param(format!(
                    "boundary value given at interior vertex {}",
                    ball.group().format_element(x)
                )));
            }
            boundary[i] = *v;
            seen[i] = true;
        }
        if let Some(i) = ball.frontier().find(|&i| !seen[i]) {
            return Err(Error::param(format!(
                "no boundary value for frontier vertex {}",
                ball.group().format_element(ball.vertex(i))
            )));
        }
        Self::build(ball, p, boundary)
    }

    fn build(ball: Arc<CayleyBall>, p: f64, boundary: Vec<f64>) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::param(format!("p must exceed 1 (got {p})")));
        }
        if boundary.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("boundary values must be finite"));
        }
        Ok(DirichletProblem {
            ball,
            boundary,
            p,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            max_iters: DEFAULT_MAX_ITERS,
            method: SolverMethod::default(),
        })
    }

    pub fn ball(&self) -> &Arc<CayleyBall> {
        &self.ball
    }

    /// Frontier vertices with their prescribed values.
    pub fn boundary(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.ball.frontier().map(|i| (i, self.boundary[i]))
    }

    fn validate(&self) -> Result<()> {
        if !(self.residual_tol > 0.0) {
            return Err(Error::param("residual_tol must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::param("max_iters must be positive"));
        }
        // every interior vertex must connect to the frontier inside the ball
        let ball = &self.ball;
        let mut reached = vec![false; ball.len()];
        let mut stack: Vec<usize> = ball.frontier().collect();
        for &i in &stack {
            reached[i] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in ball.neighbor_indices(v).iter().flatten() {
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(i) = (0..ball.len()).find(|&i| !reached[i]) {
            return Err(Error::IllPosed(format!(
                "interior component of {} has no frontier contact",
                ball.group().format_element(ball.vertex(i))
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnergyReport {
    /// In-ball p-Dirichlet sum of the solution.
    pub energy: f64,
    /// `|Df(v)|^p` per vertex, out-of-ball neighbours excluded.
    pub gradient_powers: Vec<f64>,
    /// Largest interior `|Δ_p f|`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub jittered: bool,
}

#[derive(Clone, Debug)]
pub struct DirichletSolution {
    pub f: GraphFunction,
    pub report: EnergyReport,
}

/// The energy restricted to unknown interior values, over ordered pairs
/// with at least one interior endpoint.
#[derive(Clone)]
struct Energy<'a> {
    p: f64,
    pairs: Vec<(Slot, Slot)>,
    n: usize,
    fixed: &'a [f64],
}

#[derive(Clone, Copy)]
enum Slot {
    Free(usize),
    Fixed(usize),
}

impl Energy<'_> {
    fn value_of(&self, s: Slot, x: &[f64]) -> f64 {
        match s {
            Slot::Free(k) => x[k],
            Slot::Fixed(i) => self.fixed[i],
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        let mut acc = Compensated::default();
        for &(a, b) in &self.pairs {
            acc.add(
                (self.value_of(a, x) - self.value_of(b, x))
                    .abs()
                    .powf(self.p),
            );
        }
        acc.value()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        for &(a, b) in &self.pairs {
            let t = self.p * phi(self.value_of(a, x) - self.value_of(b, x), self.p);
            if let Slot::Free(k) = a {
                g[k] += t;
            }
            if let Slot::Free(k) = b {
                g[k] -= t;
            }
        }
        g
    }

    /// Newton direction with weights `p(p-1) max(|d|, floor)^{p-2}`.
    fn irls_direction(&self, x: &[f64], g: &[f64]) -> Vec<f64> {
        let weights: Vec<f64> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let d = (self.value_of(a, x) - self.value_of(b, x)).abs();
                self.p * (self.p - 1.0) * d.max(WEIGHT_FLOOR).powf(self.p - 2.0)
            })
            .collect();
        let mut diag = vec![0.0; self.n];
        for (&(a, b), w) in self.pairs.iter().zip(&weights) {
            if let Slot::Free(k) = a {
                diag[k] += w;
            }
            if let Slot::Free(k) = b {
                diag[k] += w;
            }
        }
        let apply = |v: &[f64], out: &mut [f64]| {
            out.iter_mut().for_each(|o| *o = 0.0);
            for (&(a, b), w) in self.pairs.iter().zip(&weights) {
                let va = if let Slot::Free(k) = a { v[k] } else { 0.0 };
                let vb = if let Slot::Free(k) = b { v[k] } else { 0.0 };
                let t = w * (va - vb);
                if let Slot::Free(k) = a {
                    out[k] += t;
                }
                if let Slot::Free(k) = b {
                    out[k] -= t;
                }
            }
        };
        let rhs: Vec<f64> = g.iter().map(|v| -v).collect();
        conjugate_gradient(apply, Some(&diag), &rhs, 1e-12, 20 * self.n + 100).x
    }
}

/// Solves the p-Dirichlet problem by convex minimisation. A run that hits
/// `max_iters` or stalls returns its best iterate with `converged = false`.
pub fn solve_dirichlet(problem: &DirichletProblem) -> Result<DirichletSolution> {
    problem.validate()?;
    let ball = &problem.ball;
    let p = problem.p;
    let interior: Vec<usize> = ball.interior().collect();
    let mut slot_of = vec![None; ball.len()];
    for (k, &i) in interior.iter().enumerate() {
        slot_of[i] = Some(k);
    }
    let slot = |i: usize| slot_of[i].map_or(Slot::Fixed(i), Slot::Free);
    let mut pairs = Vec::new();
    for i in 0..ball.len() {
        for &j in ball.neighbor_indices(i).iter().flatten() {
            if slot_of[i].is_some() || slot_of[j].is_some() {
                pairs.push((slot(i), slot(j)));
            }
        }
    }
    let energy = Energy {
        p,
        pairs,
        n: interior.len(),
        fixed: &problem.boundary,
    };

    // start from the harmonic extension, which is exact for p = 2
    let mut x = if interior.is_empty() {
        Vec::new()
    } else {
        let quadratic = Energy {
            p: 2.0,
            ..energy.clone()
        };
        let zero = vec![0.0; interior.len()];
        let g0 = quadratic.gradient(&zero);
        quadratic.irls_direction(&zero, &g0)
    };

    let mut fx = energy.value(&x);
    let mut iterations = 0;
    let mut converged = false;
    let mut jittered = false;
    let mut step = 1.0f64;
    let scale = problem.boundary().fold(1.0f64, |m, (_, v)| m.max(v.abs()));
    loop {
        let g = energy.gradient(&x);
        let residual = norm_inf(&g) / (2.0 * p);
        if residual <= problem.residual_tol {
            converged = true;
            break;
        }
        if iterations >= problem.max_iters {
            break;
        }
        iterations += 1;
        let (dir, initial) = match problem.method {
            SolverMethod::Irls => {
                let d = energy.irls_direction(&x, &g);
                let slope = dot(&g, &d);
                if slope < 0.0 && d.iter().all(|v| v.is_finite()) {
                    (d, 1.0)
                } else {
                    (g.iter().map(|v| -v).collect(), step)
                }
            }
            SolverMethod::GradientDescent => {
                (g.iter().map(|v| -v).collect(), (2.0 * step).min(1.0))
            }
        };
        let slope = dot(&g, &dir);
        match armijo(|y| energy.value(y), &x, fx, &dir, slope, initial) {
            Some(s) => {
                step = s.length;
                x = s.point;
                fx = s.value;
            }
            None if !jittered => {
                jittered = true;
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                for v in x.iter_mut() {
                    *v += JITTER * scale * rng.random_range(-1.0..1.0);
                }
                fx = energy.value(&x);
            }
            None => break,
        }
    }

    let mut values = problem.boundary.clone();
    for (k, &i) in interior.iter().enumerate() {
        values[i] = x[k];
    }
    let f = GraphFunction::new(ball.clone(), values)?;
    check_maximum_principle(problem, &f)?;
    let report = EnergyReport {
        energy: f.dirichlet_sum(p, Scope::AllInBallEdges),
        gradient_powers: (0..ball.len()).map(|i| f.gradient_power_at(i, p)).collect(),
        residual: f.max_interior_laplacian(p),
        iterations,
        converged,
        jittered,
    };
    Ok(DirichletSolution { f, report })
}

fn check_maximum_principle(problem: &DirichletProblem, f: &GraphFunction) -> Result<()> {
    let (lo, hi) = problem
        .boundary()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, v)| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return Ok(());
    }
    let slack = 1e-9 * (hi - lo).abs().max(1.0);
    for i in problem.ball.interior() {
        let v = f.value(i);
        if v > hi + slack || v < lo - slack {
            return Err(Error::Invariant(format!(
                "maximum principle violated at {}: {v} outside [{lo}, {hi}]",
                problem.ball.group().format_element(problem.ball.vertex(i))
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GeneratingSet, GroupSpec};

    fn coord(x: &GroupElement) -> i64 {
        match x {
            GroupElement::Abelian(a) => a[0],
            _ => unreachable!(),
        }
    }

    #[test]
    fn constant_boundary_gives_constant() {
        let ball = CayleyBall::standard(&"Z^2".parse().unwrap(), 4).unwrap();
        let prob = DirichletProblem::from_fn(ball, 1.5, |_| 3.0).unwrap();
        let sol = solve_dirichlet(&prob).unwrap();
        assert!(sol.report.converged);
        assert!(sol.f.values().iter().all(|&v| (v - 3.0).abs() < 1e-12));
        assert!(sol.report.residual < 1e-10);
    }

    #[test]
    fn segment_is_linear_for_every_p() {
        let ball = CayleyBall::standard(&GroupSpec::FreeAbelian(1), 8).unwrap();
        for p in [1.5, 2.0, 3.0] {
            for method in [SolverMethod::Irls, SolverMethod::GradientDescent] {
                let mut prob = DirichletProblem::from_fn(ball.clone(), p, |x| {
                    if coord(x) > 0 {
                        1.0
                    } else {
                        0.0
                    }
                })
                .unwrap();
                prob.method = method;
                let sol = solve_dirichlet(&prob).unwrap();
                assert!(sol.report.converged, "p = {p}, {method:?}");
                for (i, x) in ball.vertices().iter().enumerate() {
                    let expected = (coord(x) + 8) as f64 / 16.0;
                    assert!(
                        (sol.f.value(i) - expected).abs() < 1e-7,
                        "p = {p}, {method:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn incomplete_boundary_is_rejected() {
        let ball = CayleyBall::standard(&GroupSpec::FreeAbelian(1), 3).unwrap();
        let partial = [(GroupElement::abelian(&[3]), 1.0)];
        assert!(DirichletProblem::with_boundary(ball.clone(), 2.0, &partial).is_err());
        let inner = [(GroupElement::abelian(&[0]), 1.0)];
        assert!(DirichletProblem::with_boundary(ball, 2.0, &inner).is_err());
    }

    #[test]
    fn finite_group_without_frontier_is_ill_posed() {
        let c6 = GroupSpec::FiniteCyclic(6);
        let ball = CayleyBall::new(&c6, &GeneratingSet::standard(&c6), 5).unwrap();
        let prob = DirichletProblem::from_fn(ball, 2.0, |_| 0.0).unwrap();
        assert!(matches!(solve_dirichlet(&prob), Err(Error::IllPosed(_))));
    }
}
