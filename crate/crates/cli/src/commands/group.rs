use clap::Args;
use lpcoh_core::group::{BallOptions, CayleyBall, DEFAULT_VERTEX_CAP};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{parse_gens, parse_group, Context, Result};
use crate::report::{Provenance, Report};

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, value_delimiter = ';')]
    pub gens: Option<Vec<String>>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub vertex_cap: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GroupParams {
    pub group: String,
    pub gens: Option<Vec<String>>,
    pub radius: usize,
    pub vertex_cap: usize,
}

impl Default for GroupParams {
    fn default() -> Self {
        GroupParams {
            group: "Z^2".into(),
            gens: None,
            radius: 5,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

pub fn group(args: &GroupArgs, ctx: &Context) -> Result<Report> {
    let params: GroupParams = ctx.params("group", args)?;
    let group = parse_group(&params.group)?;
    let gens = parse_gens(&group, params.gens.as_deref())?;
    let ball = CayleyBall::with_options(
        &group,
        &gens,
        params.radius,
        BallOptions {
            vertex_cap: params.vertex_cap,
        },
    )?;
    let mut spheres = vec![0usize; params.radius + 1];
    for i in 0..ball.len() {
        spheres[ball.depth(i)] += 1;
    }
    let mut report = ctx.report("group", &params);
    let mut total = 0;
    for (r, s) in spheres.iter().enumerate() {
        total += s;
        report.push(
            Provenance::Exact,
            json!({"R": r, "sphere": s, "ball": total}),
        );
    }
    report.summary = Some(json!({
        "group": group.to_string(), "generators": gens.len(),
        "order": group.order(), "infinite": group.is_infinite(),
    }));
    Ok(report.finish())
}
