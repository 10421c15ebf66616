use std::path::{Path, PathBuf};

use clap::Args;
use lpcoh_core::algebra::io::{tuple_from_json, tuple_to_json, vector_from_json, vector_to_json};
use lpcoh_core::algebra::{
    AveragingSpec, CosetSeries, Exact, GroupVector, Mode, Scalar, VectorTuple,
};
use lpcoh_core::cohomology::{composed_density, density_experiment, NSelection};
use lpcoh_core::group::{GroupElement, GroupSpec};
use lpcoh_core::invariance::{approximate_by_diff, diff_decompose};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{check_p, one_or_many, parse_g, parse_group, read_json, sorted, Context, Result};
use crate::error::CliError;
use crate::report::{Provenance, Report};

fn exact_unit(s: &str) -> Result<Exact> {
    Ok(Scalar::parse(s, Mode::Exact)?.exact()?.clone())
}

fn load_tuple(group: &GroupSpec, path: Option<&Path>) -> Result<VectorTuple<Exact>> {
    match path {
        None => Ok(VectorTuple::single(GroupVector::identity(group))),
        Some(p) => Ok(tuple_from_json(group, &read_json(p)?)?),
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON serializes");
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub epsilon: Option<Vec<f64>>,
    /// Vector or tuple JSON (default: the identity).
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// `recipe` or `measured`.
    #[arg(long)]
    pub selection: Option<String>,
    /// Write the witness `d b` for the smallest epsilon here.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DensityParams {
    pub group: String,
    pub g: Option<String>,
    pub omega: String,
    pub p: f64,
    #[serde(deserialize_with = "one_or_many")]
    pub epsilon: Vec<f64>,
    pub b: Option<PathBuf>,
    pub selection: NSelection,
    pub witness_out: Option<PathBuf>,
}

impl Default for DensityParams {
    fn default() -> Self {
        DensityParams {
            group: "Z".into(),
            g: None,
            omega: "1".into(),
            p: 2.0,
            epsilon: vec![1e-3],
            b: None,
            selection: NSelection::Recipe,
            witness_out: None,
        }
    }
}

pub fn density(args: &DensityArgs, ctx: &Context) -> Result<Report> {
    let params: DensityParams = ctx.params("density", args)?;
    check_p(params.p)?;
    let group = parse_group(&params.group)?;
    let g = parse_g(&group, params.g.as_deref())?;
    let spec = AveragingSpec::new(&group, g, exact_unit(&params.omega)?, 1)?;
    let b = load_tuple(&group, params.b.as_deref())?;
    let epsilons = sorted(&params.epsilon);
    let reports = epsilons
        .par_iter()
        .map(|&eps| {
            Ok(density_experiment(
                &b,
                &spec,
                params.p,
                eps,
                params.selection,
            )?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ctx.report("density", &params);
    for r in &reports {
        let below = r.achieved < r.epsilon;
        report.flag(!below || !r.witness_verified);
        report.push(
            Provenance::Float,
            json!({
                "epsilon": r.epsilon, "n": r.n, "recipe_target": r.recipe_target,
                "norm_law": r.norm_law, "recipe_bound_holds": r.norm_law < r.recipe_target,
                "achieved": r.achieved, "below_epsilon": below,
                "witness_support": r.witness_support(), "witness_verified": r.witness_verified,
            }),
        );
    }
    if let (Some(path), Some(r)) = (&params.witness_out, reports.first()) {
        let t = VectorTuple::new(
            &group,
            r.witness.iter().map(CosetSeries::to_vector).collect(),
        )?;
        write_json(path, &tuple_to_json(&t))?;
    }
    Ok(report.finish())
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct ComposedArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    /// One unit scalar per factor, e.g. `1;-1`.
    #[arg(long, value_delimiter = ';', allow_hyphen_values = true)]
    pub omegas: Option<Vec<String>>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub b: Option<PathBuf>,
    #[arg(long)]
    pub selection: Option<String>,
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ComposedParams {
    pub group: String,
    pub g: Option<String>,
    #[serde(deserialize_with = "one_or_many")]
    pub omegas: Vec<String>,
    pub p: f64,
    pub epsilon: f64,
    pub b: Option<PathBuf>,
    pub selection: NSelection,
    pub witness_out: Option<PathBuf>,
}

impl Default for ComposedParams {
    fn default() -> Self {
        ComposedParams {
            group: "Z".into(),
            g: None,
            omegas: vec!["1".into(), "-1".into()],
            p: 2.0,
            epsilon: 1e-2,
            b: None,
            // the recipe's stage-2 n is far beyond any cap
            selection: NSelection::Measured,
            witness_out: None,
        }
    }
}

pub fn composed(args: &ComposedArgs, ctx: &Context) -> Result<Report> {
    let params: ComposedParams = ctx.params("composed", args)?;
    check_p(params.p)?;
    let group = parse_group(&params.group)?;
    let g = parse_g(&group, params.g.as_deref())?;
    let specs = params
        .omegas
        .iter()
        .map(|s| Ok(AveragingSpec::new(&group, g.clone(), exact_unit(s)?, 1)?))
        .collect::<Result<Vec<_>>>()?;
    let b = load_tuple(&group, params.b.as_deref())?;
    let rep = composed_density(&b, &specs, params.p, params.epsilon, params.selection)?;
    let mut report = ctx.report("composed", &params);
    for (i, s) in rep.stages.iter().enumerate() {
        report.push(
            Provenance::Float,
            json!({
                "stage": i + 1, "omega": s.omega, "n": s.n, "target": s.target,
                "achieved": s.achieved, "factor_norm": s.factor_norm,
            }),
        );
    }
    let below = rep.error < rep.epsilon;
    report.flag(!below || !rep.witness_verified);
    report.summary = Some(json!({
        "error": rep.error, "epsilon": rep.epsilon, "below_epsilon": below,
        "witness_verified": rep.witness_verified,
        "witness_support": rep.witness.components().iter().map(GroupVector::len).sum::<usize>(),
    }));
    if let Some(path) = &params.witness_out {
        write_json(path, &tuple_to_json(&rep.witness))?;
    }
    Ok(report.finish())
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct TilfDiffArgs {
    #[arg(long)]
    pub group: Option<String>,
    /// Vector JSON to decompose or approximate.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Direction of the averaging used for approximation.
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub selection: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TilfDiffParams {
    pub group: String,
    pub target: Option<PathBuf>,
    pub g: Option<String>,
    pub p: f64,
    pub epsilon: f64,
    pub selection: NSelection,
}

impl Default for TilfDiffParams {
    fn default() -> Self {
        TilfDiffParams {
            group: "Z".into(),
            target: None,
            g: None,
            p: 2.0,
            epsilon: 1e-3,
            selection: NSelection::Recipe,
        }
    }
}

fn element_rows(report: &mut Report, group: &GroupSpec, v: &GroupVector<Exact>) {
    let records = vector_to_json(v);
    for (rec, (x, _)) in records.as_array().into_iter().flatten().zip(v.terms()) {
        let mut row = rec.clone();
        row["word_length"] = group.standard_length(x).into();
        report.push(Provenance::Exact, row);
    }
}

pub fn tilf_diff(args: &TilfDiffArgs, ctx: &Context) -> Result<Report> {
    let params: TilfDiffParams = ctx.params("tilf-diff", args)?;
    check_p(params.p)?;
    let group = parse_group(&params.group)?;
    let path = params
        .target
        .as_deref()
        .ok_or_else(|| CliError::Config("tilf-diff needs --target".into()))?;
    let f: GroupVector<Exact> = vector_from_json(&group, &read_json(path)?)?;
    let mut report = ctx.report("tilf-diff", &params);
    if f.coefficient_sum().is_zero() {
        let dec = diff_decompose(&f)?;
        let reconstructs = dec.reconstruct()? == f;
        report.flag(!reconstructs);
        for t in dec.display_terms() {
            report.push(
                Provenance::Exact,
                json!({"h": t.h, "coefficient": t.coefficient}),
            );
        }
        report.summary = Some(json!({
            "kind": "decomposition", "base": "e", "terms": dec.terms.len(),
            "reconstructs": reconstructs,
        }));
    } else {
        let g: GroupElement = parse_g(&group, params.g.as_deref())?;
        let spec = AveragingSpec::new(&group, g, <Exact as num_traits::One>::one(), 1)?;
        let approx = approximate_by_diff(&f, &spec, params.p, params.epsilon, params.selection)?;
        let r = &approx.report;
        let below = r.achieved < r.epsilon;
        let zero_sum = approx.approximant.coefficient_sum().is_zero();
        report.flag(!below || !zero_sum);
        element_rows(&mut report, &group, &approx.approximant);
        report.summary = Some(json!({
            "kind": "approximation", "coefficient_sum": f.coefficient_sum().to_string(),
            "n": r.n, "epsilon": r.epsilon, "achieved": r.achieved, "below_epsilon": below,
            "approximant_zero_sum": zero_sum,
        }));
    }
    Ok(report.finish())
}
