use std::path::PathBuf;

use clap::Args;
use lpcoh_core::energy::{
    solve_dirichlet, DirichletFile, DirichletProblem, SolverMethod, Tolerances,
};
use lpcoh_core::group::CayleyBall;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{check_p, one_or_many, parse_gens, parse_group, read_json, Context, Result};
use crate::error::CliError;
use crate::report::{Provenance, Report};

/// Slack allowed on the maximum principle.
pub const MAX_PRINCIPLE_TOL: f64 = 1e-12;

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct DirichletArgs {
    /// Problem JSON (group, radius, p, boundary records); replaces the
    /// other problem flags.
    #[arg(long)]
    pub problem: Option<PathBuf>,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, value_delimiter = ';')]
    pub gens: Option<Vec<String>>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Frontier values in sorted element order; a single value is used
    /// everywhere.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub boundary: Option<Vec<f64>>,
    #[arg(long)]
    pub residual_tol: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// `irls` or `gradient-descent`.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DirichletParams {
    pub problem: Option<PathBuf>,
    pub group: String,
    pub gens: Option<Vec<String>>,
    pub radius: usize,
    pub p: f64,
    #[serde(deserialize_with = "one_or_many")]
    pub boundary: Vec<f64>,
    pub residual_tol: f64,
    pub max_iters: usize,
    pub method: SolverMethod,
}

impl Default for DirichletParams {
    fn default() -> Self {
        let tol = Tolerances::default();
        DirichletParams {
            problem: None,
            group: "Z".into(),
            gens: None,
            radius: 16,
            p: 2.0,
            boundary: vec![0.0, 1.0],
            residual_tol: tol.residual_tol,
            max_iters: tol.max_iters,
            method: SolverMethod::default(),
        }
    }
}

fn build(params: &DirichletParams) -> Result<DirichletProblem> {
    if let Some(path) = &params.problem {
        let file: DirichletFile = serde_json::from_value(read_json(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        check_p(file.p)?;
        return Ok(file.into_problem()?);
    }
    check_p(params.p)?;
    let group = parse_group(&params.group)?;
    let gens = parse_gens(&group, params.gens.as_deref())?;
    let ball = CayleyBall::new(&group, &gens, params.radius)?;
    let mut frontier: Vec<_> = ball.frontier().map(|i| ball.vertex(i).clone()).collect();
    frontier.sort();
    let values: Vec<(_, f64)> = match params.boundary.len() {
        1 => frontier
            .into_iter()
            .map(|x| (x, params.boundary[0]))
            .collect(),
        k if k == frontier.len() => frontier
            .into_iter()
            .zip(params.boundary.iter().copied())
            .collect(),
        k => {
            return Err(CliError::Config(format!(
                "{k} boundary values for {} frontier vertices",
                frontier.len()
            )))
        }
    };
    let mut problem = DirichletProblem::with_boundary(ball, params.p, &values)?;
    problem.residual_tol = params.residual_tol;
    problem.max_iters = params.max_iters;
    problem.method = params.method;
    Ok(problem)
}

pub fn dirichlet(args: &DirichletArgs, ctx: &Context) -> Result<Report> {
    let params: DirichletParams = ctx.params("dirichlet", args)?;
    let problem = build(&params)?;
    let sol = solve_dirichlet(&problem)?;
    let ball = sol.f.ball();
    let group = ball.group();
    let (lo, hi) = problem
        .boundary()
        .map(|(_, v)| v)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
    let mut order: Vec<usize> = (0..ball.len()).collect();
    order.sort_by(|&a, &b| ball.vertex(a).cmp(ball.vertex(b)));
    let mut report = ctx.report("dirichlet", &params);
    let mut max_principle = true;
    for i in order {
        let v = sol.f.value(i);
        let interior = ball.is_interior(i);
        if interior && lo <= hi && !(v >= lo - MAX_PRINCIPLE_TOL && v <= hi + MAX_PRINCIPLE_TOL) {
            max_principle = false;
        }
        report.push(
            Provenance::Float,
            json!({
                "element": group.format_element(ball.vertex(i)), "depth": ball.depth(i),
                "frontier": !interior, "value": v,
                "gradient_power": sol.report.gradient_powers[i],
            }),
        );
    }
    report.flag(!max_principle);
    report.flag_nonconverged(!sol.report.converged);
    let r = &sol.report;
    report.summary = Some(json!({
        "energy": r.energy, "residual": r.residual, "iterations": r.iterations,
        "converged": r.converged, "jittered": r.jittered, "max_principle": max_principle,
        "vertices": ball.len(),
    }));
    Ok(report.finish())
}
