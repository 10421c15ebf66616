use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{DirichletProblem, SolverMethod, DEFAULT_MAX_ITERS, DEFAULT_RESIDUAL_TOL};
use crate::group::{CayleyBall, GeneratingSet, GroupSpec};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryValue {
    pub element: String,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_tol")]
    pub residual_tol: f64,
    #[serde(default = "default_iters")]
    pub max_iters: usize,
}

fn default_tol() -> f64 {
    DEFAULT_RESIDUAL_TOL
}

fn default_iters() -> usize {
    DEFAULT_MAX_ITERS
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual_tol: DEFAULT_RESIDUAL_TOL,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

/// On-disk form of a Dirichlet problem.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirichletFile {
    pub group: String,
    #[serde(default)]
    pub gens: Option<Vec<String>>,
    pub radius: usize,
    pub p: f64,
    pub boundary: Vec<BoundaryValue>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub method: SolverMethod,
}

impl DirichletFile {
    pub fn into_problem(&self) -> Result<DirichletProblem> {
        let group: GroupSpec = self.group.parse()?;
        let gens = match &self.gens {
            None => GeneratingSet::standard(&group),
            Some(list) => GeneratingSet::custom(
                &group,
                list.iter()
                    .map(|s| group.parse_element(s))
                    .collect::<Result<_>>()?,
            )?,
        };
        let ball: Arc<CayleyBall> = CayleyBall::new(&group, &gens, self.radius)?;
        let values = self
            .boundary
            .iter()
            .map(|b| Ok((group.parse_element(&b.element)?, b.value)))
            .collect::<Result<Vec<_>>>()?;
        let mut problem = DirichletProblem::with_boundary(ball, self.p, &values)?;
        problem.residual_tol = self.tolerances.residual_tol;
        problem.max_iters = self.tolerances.max_iters;
        problem.method = self.method;
        Ok(problem)
    }
}
