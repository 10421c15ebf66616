use std::path::PathBuf;

use clap::Args;
use lpcoh_core::algebra::io::tuple_from_json;
use lpcoh_core::algebra::{Exact, GroupVector, VectorTuple};
use lpcoh_core::cohomology::{
    distance_with, invariant_vectors, smallest_singular_value, truncate, Builtin, ComplexFile,
    ComplexSpec, DistanceOptions, WindowPolicy,
};
use lpcoh_core::group::{CayleyBall, GroupSpec, Window};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{check_p, one_or_many, parse_group, power_law, read_json, sorted, Context, Result};
use crate::error::CliError;
use crate::report::{Provenance, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `d_n d_{n+1} = 0` and augmentation.
    Compose,
    /// `ℓ^p` distance from a target to the truncated image.
    Distance,
    /// Smallest singular value of the truncated differential.
    Sigma,
    /// Invariant vectors on balls.
    Invariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowShape {
    /// The standard Cayley ball of radius `N`.
    Ball,
    /// `{0, …, N-1}` in `Z`.
    Half,
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct CohomologyArgs {
    /// `Z`, `Z2`, `F<k>` or a complex JSON file.
    #[arg(long)]
    pub complex: Option<String>,
    /// `compose`, `distance`, `sigma` or `invariant`.
    #[arg(long)]
    pub check: Option<String>,
    /// Group for `invariant` (default: the complex's group).
    #[arg(long)]
    pub group: Option<String>,
    /// Which differential `d_n` to truncate.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Window sizes `N` (radii for `invariant`).
    #[arg(long, value_delimiter = ',')]
    pub window: Option<Vec<usize>>,
    /// `ball` or `half`.
    #[arg(long)]
    pub shape: Option<String>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Tuple JSON in the target of `d_n` (default: identity in slot 0).
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// `clip` or `extend` (default: extend for distance, clip for sigma).
    #[arg(long)]
    pub policy: Option<String>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CohomologyParams {
    pub complex: String,
    pub check: Check,
    pub group: Option<String>,
    pub degree: usize,
    #[serde(deserialize_with = "one_or_many")]
    pub window: Vec<usize>,
    pub shape: WindowShape,
    pub p: f64,
    pub target: Option<PathBuf>,
    pub policy: Option<WindowPolicy>,
    pub rel_tol: f64,
    pub max_iters: usize,
}

impl Default for CohomologyParams {
    fn default() -> Self {
        let opts = DistanceOptions::default();
        CohomologyParams {
            complex: "Z".into(),
            check: Check::Compose,
            group: None,
            degree: 0,
            window: vec![10],
            shape: WindowShape::Ball,
            p: 2.0,
            target: None,
            policy: None,
            rel_tol: opts.rel_tol,
            max_iters: opts.max_iters,
        }
    }
}

fn load_complex(s: &str) -> Result<(ComplexSpec, Option<Builtin>)> {
    if let Ok(b) = s.parse::<Builtin>() {
        return Ok((ComplexSpec::builtin(b), Some(b)));
    }
    let path = PathBuf::from(s);
    if !path.exists() {
        return Err(CliError::Config(format!(
            "{s:?} is neither a built-in complex nor a file"
        )));
    }
    let file: ComplexFile = serde_json::from_value(read_json(&path)?)
        .map_err(|e| CliError::Config(format!("{s}: {e}")))?;
    Ok((file.into_spec()?, None))
}

fn window(group: &GroupSpec, shape: WindowShape, n: usize) -> Result<Window> {
    match shape {
        WindowShape::Ball => Ok(CayleyBall::standard(group, n)?.window().clone()),
        WindowShape::Half => {
            if *group != GroupSpec::FreeAbelian(1) {
                return Err(CliError::Config(
                    "half windows are defined on Z only".into(),
                ));
            }
            if n == 0 {
                return Err(CliError::Config("half windows need N ≥ 1".into()));
            }
            Ok(Window::interval(0, n as i64 - 1))
        }
    }
}

fn compose(complex: &ComplexSpec, report: &mut Report) {
    let check = complex.compose_check();
    let defects = complex.augmentation_defects();
    let mut flat = Vec::new();
    for (n, support) in check.residual_support.iter().enumerate() {
        for &(r, c) in support {
            flat.push(json!([n, r, c]));
        }
        report.push(
            Provenance::Exact,
            json!({"degree": n, "zero": support.is_empty(), "residual_support": support}),
        );
    }
    report.flag(!check.pass);
    report.flag(!defects.is_empty());
    report.summary = Some(json!({
        "pass": check.pass, "residual_support": flat, "augmentation_defects": defects,
    }));
}

pub fn cohomology(args: &CohomologyArgs, ctx: &Context) -> Result<Report> {
    let params: CohomologyParams = ctx.params("cohomology", args)?;
    let (complex, builtin) = load_complex(&params.complex)?;
    let group = match &params.group {
        Some(g) => parse_group(g)?,
        None => complex.group().clone(),
    };
    let mut report = ctx.report("cohomology", &params);
    let windows = sorted(&params.window);
    match params.check {
        Check::Compose => compose(&complex, &mut report),
        Check::Invariant => {
            for r in windows {
                let ball = CayleyBall::standard(&group, r)?;
                let inv = invariant_vectors(&ball);
                report.push(
                    Provenance::Exact,
                    json!({
                        "R": r, "vertices": inv.vertices, "components": inv.components,
                        "value": inv.dimension, "dimension_with_decay": inv.dimension_with_decay,
                        "closed": inv.closed,
                    }),
                );
            }
        }
        Check::Distance | Check::Sigma => {
            if group != *complex.group() {
                return Err(CliError::Config(format!(
                    "--group {group} differs from the complex's group {}",
                    complex.group()
                )));
            }
            let d = complex.differentials().get(params.degree).ok_or_else(|| {
                CliError::Config(format!(
                    "degree {} out of range: the complex has {} differentials",
                    params.degree,
                    complex.differentials().len()
                ))
            })?;
            let z_point_mass = builtin == Some(Builtin::Z) && params.target.is_none();
            if params.check == Check::Distance {
                check_p(params.p)?;
                let policy = params.policy.unwrap_or(WindowPolicy::Extend);
                let target: VectorTuple<Exact> = match &params.target {
                    Some(path) => tuple_from_json(&group, &read_json(path)?)?,
                    None => {
                        let mut comps = vec![GroupVector::zero(&group); d.rows()];
                        comps[0] = GroupVector::identity(&group);
                        VectorTuple::new(&group, comps)?
                    }
                };
                let opts = DistanceOptions {
                    rel_tol: params.rel_tol,
                    max_iters: params.max_iters,
                };
                let rows = windows
                    .par_iter()
                    .map(|&n| {
                        let w = window(&group, params.shape, n)?;
                        let t = truncate(d, &w, policy)?;
                        let v = t.target_vector(&target)?;
                        Ok((n, w.len(), distance_with(&t, &v, params.p, opts)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut monotone = true;
                let mut prev = f64::INFINITY;
                for (n, size, rep) in rows {
                    // u_k = -(1 - k/|W|) spreads the point mass uniformly
                    let bound = z_point_mass.then(|| power_law(size as f64, params.p));
                    if let Some(b) = bound {
                        report.flag(rep.distance > b * (1.0 + 1e-9));
                    }
                    monotone &= rep.distance <= prev;
                    prev = rep.distance;
                    report.flag_nonconverged(!rep.converged);
                    report.push(
                        Provenance::Float,
                        json!({
                            "N": n, "window_size": size, "value": rep.distance,
                            "bound": bound, "converged": rep.converged,
                            "iterations": rep.iterations,
                        }),
                    );
                }
                report.summary = Some(json!({"monotone_decreasing": monotone}));
            } else {
                let policy = params.policy.unwrap_or(WindowPolicy::Clip);
                let rows = windows
                    .par_iter()
                    .map(|&n| {
                        let w = window(&group, params.shape, n)?;
                        let t = truncate(d, &w, policy)?;
                        Ok((n, w.len(), t.rows(), t.cols(), smallest_singular_value(&t)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut decreasing = true;
                let mut prev = f64::INFINITY;
                for (n, size, rows, cols, sigma) in rows {
                    decreasing &= sigma < prev;
                    prev = sigma;
                    let reference = (builtin == Some(Builtin::Z) && policy == WindowPolicy::Clip)
                        .then(|| {
                            2.0 * (std::f64::consts::PI / (2.0 * (2 * size + 1) as f64)).sin()
                        });
                    report.push(
                        Provenance::Float,
                        json!({
                            "N": n, "window_size": size, "rows": rows, "cols": cols,
                            "value": sigma, "bound": Value::Null, "reference": reference,
                        }),
                    );
                }
                report.summary = Some(json!({"strictly_decreasing": decreasing}));
            }
        }
    }
    Ok(report.finish())
}
