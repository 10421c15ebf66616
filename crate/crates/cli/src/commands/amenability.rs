use std::path::PathBuf;

use clap::Args;
use lpcoh_core::invariance::{sobolev_ratio, SobolevOptions};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{check_p, one_or_many, parse_gens, parse_group, sorted, Context, Result};
use crate::error::CliError;
use crate::report::{Provenance, Report};

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct AmenabilityArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, value_delimiter = ';')]
    pub gens: Option<Vec<String>>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<usize>>,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Directory for one achiever JSON per radius.
    #[arg(long)]
    pub achiever_dir: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AmenabilityParams {
    pub group: String,
    pub gens: Option<Vec<String>>,
    pub p: f64,
    #[serde(deserialize_with = "one_or_many")]
    pub radii: Vec<usize>,
    pub starts: usize,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub achiever_dir: Option<PathBuf>,
}

impl Default for AmenabilityParams {
    fn default() -> Self {
        let opts = SobolevOptions::default();
        AmenabilityParams {
            group: "F2".into(),
            gens: None,
            p: 2.0,
            radii: vec![1, 2, 3, 4],
            starts: opts.starts,
            max_iters: opts.max_iters,
            rel_tol: opts.rel_tol,
            achiever_dir: None,
        }
    }
}

pub fn amenability(args: &AmenabilityArgs, ctx: &Context) -> Result<Report> {
    let params: AmenabilityParams = ctx.params("amenability", args)?;
    check_p(params.p)?;
    let group = parse_group(&params.group)?;
    let gens = parse_gens(&group, params.gens.as_deref())?;
    let opts = SobolevOptions {
        starts: params.starts,
        seed: ctx.seed,
        max_iters: params.max_iters,
        rel_tol: params.rel_tol,
    };
    if let Some(dir) = &params.achiever_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut report = ctx.report("amenability", &params);
    // each radius already runs its starts in parallel
    for r in sorted(&params.radii) {
        let rep = sobolev_ratio(&group, &gens, r, params.p, opts)?;
        let file = match &params.achiever_dir {
            None => None,
            Some(dir) => {
                let path = dir.join(format!("achiever_R{r}.json"));
                let ball = rep.achiever.ball();
                let values: Vec<_> = (0..ball.len())
                    .map(|i| json!({"element": group.format_element(ball.vertex(i)), "value": rep.achiever.value(i)}))
                    .collect();
                let text = serde_json::to_string_pretty(&values).expect("JSON serializes");
                std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
                Some(path.display().to_string())
            }
        };
        report.flag_nonconverged(!rep.converged);
        report.push(
            Provenance::Float,
            json!({
                "R": r, "lambda": rep.lambda, "converged": rep.converged,
                "iterations": rep.iterations, "start": rep.start,
                "point_mass_bound": 2.0 * gens.len() as f64, "achiever_file": file,
            }),
        );
    }
    Ok(report.finish())
}
