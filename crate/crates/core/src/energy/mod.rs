//! Gradients, p-Dirichlet sums and the p-Laplacian for functions on Cayley
//! balls, and a solver for the p-Dirichlet problem.

use std::sync::Arc;

use crate::group::{CayleyBall, GroupElement};
use crate::sum::{compensated_sum, Compensated};
use crate::{Error, Result};

mod problem;
mod solver;

pub use problem::{BoundaryValue, DirichletFile, Tolerances};
pub use solver::{
    solve_dirichlet, DirichletProblem, DirichletSolution, EnergyReport, SolverMethod,
    DEFAULT_MAX_ITERS, DEFAULT_RESIDUAL_TOL,
};

/// A real function on the vertices of a ball.
#[derive(Clone, Debug)]
pub struct GraphFunction {
    ball: Arc<CayleyBall>,
    values: Vec<f64>,
}

/// Which ordered pairs `(g, gs)` enter a Dirichlet sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Both endpoints interior.
    InteriorOnly,
    /// Both endpoints in the ball.
    AllInBallEdges,
}

/// `|d|^{p-2} d`, taken to be 0 at `d = 0` for every `p`.
pub(crate) fn phi(d: f64, p: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else {
        d.signum() * d.abs().powf(p - 1.0)
    }
}

impl GraphFunction {
    pub fn new(ball: Arc<CayleyBall>, values: Vec<f64>) -> Result<Self> {
        if values.len() != ball.len() {
            return Err(Error::Shape(format!(
                "{} values for a ball of {} vertices",
                values.len(),
                ball.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!(
                "non-finite value at {}",
                ball.group().format_element(ball.vertex(i))
            )));
        }
        Ok(GraphFunction { ball, values })
    }

    pub fn from_fn(ball: Arc<CayleyBall>, f: impl Fn(&GroupElement) -> f64) -> Result<Self> {
        let values = ball.vertices().iter().map(f).collect();
        Self::new(ball, values)
    }

    pub fn constant(ball: Arc<CayleyBall>, c: f64) -> Self {
        let values = vec![c; ball.len()];
        GraphFunction { ball, values }
    }

    pub fn ball(&self) -> &Arc<CayleyBall> {
        &self.ball
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Value at `x`; zero outside the ball.
    pub fn at(&self, x: &GroupElement) -> f64 {
        self.ball.index_of(x).map_or(0.0, |i| self.values[i])
    }

    fn index(&self, v: &GroupElement) -> Result<usize> {
        self.ball
            .index_of(v)
            .ok_or_else(|| Error::NotInBall(self.ball.group().format_element(v)))
    }

    fn require_interior(&self, i: usize) -> Result<()> {
        if self.ball.is_interior(i) {
            Ok(())
        } else {
            Err(Error::FrontierVertex(
                self.ball.group().format_element(self.ball.vertex(i)),
            ))
        }
    }

    /// `|Df(v)|^p = Σ_s |f(v) - f(vs)|^p`. Frontier vertices need
    /// `exclude_outside`, which drops neighbours outside the ball.
    pub fn gradient_power(&self, v: &GroupElement, p: f64, exclude_outside: bool) -> Result<f64> {
        let i = self.index(v)?;
        if !exclude_outside {
            self.require_interior(i)?;
        }
        Ok(self.gradient_power_at(i, p))
    }

    pub(crate) fn gradient_power_at(&self, i: usize, p: f64) -> f64 {
        let fv = self.values[i];
        compensated_sum(
            self.ball
                .neighbor_indices(i)
                .iter()
                .flatten()
                .map(|&j| (fv - self.values[j]).abs().powf(p)),
        )
    }

    /// `I_p(f) = Σ_g Σ_s |f(g) - f(gs)|^p` over the ordered pairs admitted by
    /// `scope`; every edge is counted in both orientations.
    pub fn dirichlet_sum(&self, p: f64, scope: Scope) -> f64 {
        let mut acc = Compensated::default();
        for i in 0..self.ball.len() {
            if scope == Scope::InteriorOnly && !self.ball.is_interior(i) {
                continue;
            }
            let fv = self.values[i];
            for &j in self.ball.neighbor_indices(i).iter().flatten() {
                if scope == Scope::InteriorOnly && !self.ball.is_interior(j) {
                    continue;
                }
                acc.add((fv - self.values[j]).abs().powf(p));
            }
        }
        acc.value()
    }

    /// `Δ_p f(v) = Σ_s |f(vs) - f(v)|^{p-2} (f(vs) - f(v))`.
    pub fn p_laplacian(&self, v: &GroupElement, p: f64) -> Result<f64> {
        let i = self.index(v)?;
        self.require_interior(i)?;
        Ok(self.p_laplacian_at(i, p))
    }

    pub(crate) fn p_laplacian_at(&self, i: usize, p: f64) -> f64 {
        let fv = self.values[i];
        compensated_sum(
            self.ball
                .neighbor_indices(i)
                .iter()
                .flatten()
                .map(|&j| phi(self.values[j] - fv, p)),
        )
    }

    /// Largest `|Δ_p f|` over interior vertices.
    pub fn max_interior_laplacian(&self, p: f64) -> f64 {
        self.ball
            .interior()
            .map(|i| self.p_laplacian_at(i, p).abs())
            .fold(0.0, f64::max)
    }

    fn identity_value(&self) -> Result<f64> {
        let e = self.ball.group().identity();
        self.ball
            .index_of(&e)
            .map(|i| self.values[i])
            .ok_or_else(|| Error::NotInBall("e".into()))
    }

    /// `(I_p(f) + |f(e)|^p)^{1/p}` on the ball.
    pub fn dp_norm(&self, p: f64) -> Result<f64> {
        let fe = self.identity_value()?;
        Ok((self.dirichlet_sum(p, Scope::AllInBallEdges) + fe.abs().powf(p)).powf(1.0 / p))
    }

    /// `I_p(f)^{1/p} + ‖f‖_∞` on the ball.
    pub fn bdp_norm(&self, p: f64) -> Result<f64> {
        self.identity_value()?;
        let sup = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Ok(self.dirichlet_sum(p, Scope::AllInBallEdges).powf(1.0 / p) + sup)
    }

    /// `∂E/∂f(v) = 2p Σ_s |f(v) - f(vs)|^{p-2} (f(v) - f(vs))` over in-ball
    /// neighbours, for every vertex, where `E` is the all-in-ball Dirichlet
    /// sum. On interior vertices this is `-2p Δ_p f(v)`.
    pub fn energy_gradient(&self, p: f64) -> Vec<f64> {
        (0..self.ball.len())
            .map(|i| -2.0 * p * self.p_laplacian_at(i, p))
            .collect()
    }
}
