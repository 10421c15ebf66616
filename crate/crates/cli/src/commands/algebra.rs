use std::path::PathBuf;

use clap::Args;
use lpcoh_core::algebra::{
    averaging_element, factor_witness, linear_factor, neumann_inverse, young_check,
    young_check_l1_tuple, young_check_lp_tuple, AveragingSpec, Coefficient, Exact, GroupVector,
    Mode, Scalar, VectorTuple, YoungCheck,
};
use lpcoh_core::group::{GeneratingSet, GroupElement, GroupSpec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{check_p, one_or_many, parse_g, parse_group, power_law, sorted, Context, Result};
use crate::report::{Provenance, Report};

/// Tolerance on `‖x_n‖_p` against the law.
pub const NORM_LAW_TOL: f64 = 1e-12;
/// Tolerance on the Neumann residual against its prediction.
pub const NEUMANN_TOL: f64 = 1e-12;

fn provenance(mode: Mode) -> Provenance {
    match mode {
        Mode::Exact => Provenance::Exact,
        Mode::Float => Provenance::Float,
    }
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct AveragingArgs {
    /// Group, e.g. `Z`, `Z^2`, `F2`, `Z x C3`.
    #[arg(long)]
    pub group: Option<String>,
    /// Element of infinite order (default: first standard generator).
    #[arg(long)]
    pub g: Option<String>,
    /// Unit scalar: `1`, `-1`, `i`, `-i` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u64>>,
    /// `exact` or `float`.
    #[arg(long)]
    pub mode: Option<String>,
    /// Run the module's invariant checks instead.
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AveragingParams {
    pub group: String,
    pub g: Option<String>,
    pub omega: String,
    #[serde(deserialize_with = "one_or_many")]
    pub p: Vec<f64>,
    #[serde(deserialize_with = "one_or_many")]
    pub n: Vec<u64>,
    pub mode: Mode,
}

impl Default for AveragingParams {
    fn default() -> Self {
        AveragingParams {
            group: "Z".into(),
            g: None,
            omega: "1".into(),
            p: vec![2.0],
            n: vec![4],
            mode: Mode::Exact,
        }
    }
}

fn averaging_rows<C: Coefficient>(
    spec: &AveragingSpec<C>,
    grid: &[(f64, u64)],
) -> Result<Vec<(f64, u64, f64)>> {
    grid.par_iter()
        .map(|&(p, n)| {
            let norm = averaging_element(&spec.with_n(n)?).p_norm(p)?;
            Ok((p, n, norm))
        })
        .collect()
}

pub fn averaging(args: &AveragingArgs, ctx: &Context) -> Result<Report> {
    let params: AveragingParams = ctx.params("averaging", args)?;
    let group = parse_group(&params.group)?;
    let g = parse_g(&group, params.g.as_deref())?;
    let omega = Scalar::parse(&params.omega, params.mode)?;
    let ps = sorted(&params.p);
    ps.iter().try_for_each(|&p| check_p(p))?;
    let grid: Vec<(f64, u64)> = ps
        .iter()
        .flat_map(|&p| sorted(&params.n).into_iter().map(move |n| (p, n)))
        .collect();
    let rows = match omega {
        Scalar::Exact(w) => averaging_rows(&AveragingSpec::new(&group, g, w, 1)?, &grid)?,
        Scalar::Float(w) => averaging_rows(&AveragingSpec::new(&group, g, w, 1)?, &grid)?,
    };
    let mut report = ctx.report("averaging", &params);
    for (p, n, norm) in rows {
        let law = power_law(n as f64, p);
        let rel_err = (norm - law).abs() / law;
        report.flag(!(rel_err <= NORM_LAW_TOL));
        report.push(
            provenance(params.mode),
            json!({"p": p, "n": n, "norm": norm, "law": law, "rel_err": rel_err}),
        );
    }
    Ok(report.finish())
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct YoungArgs {
    /// Groups to sample from.
    #[arg(long, value_delimiter = ',')]
    pub groups: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    /// Random pairs per group and exponent.
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Random tuple cases per group and exponent.
    #[arg(long)]
    pub tuples: Option<usize>,
    #[arg(long)]
    pub max_support: Option<usize>,
    /// Support elements are random words of at most this length.
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub max_tuple: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct YoungParams {
    #[serde(deserialize_with = "one_or_many")]
    pub groups: Vec<String>,
    #[serde(deserialize_with = "one_or_many")]
    pub p: Vec<f64>,
    pub pairs: usize,
    pub tuples: usize,
    pub max_support: usize,
    pub radius: usize,
    pub max_tuple: usize,
}

impl Default for YoungParams {
    fn default() -> Self {
        YoungParams {
            groups: vec!["Z^2".into(), "F2".into()],
            p: vec![1.5, 2.0, 3.0],
            pairs: 1000,
            tuples: 100,
            max_support: 8,
            radius: 4,
            max_tuple: 3,
        }
    }
}

/// A random vector: `1..=max_support` terms at random words of length at
/// most `radius`, with coefficients uniform in the unit square.
pub fn random_vector(
    rng: &mut ChaCha8Rng,
    group: &GroupSpec,
    gens: &GeneratingSet,
    max_support: usize,
    radius: usize,
) -> Result<GroupVector<Complex64>> {
    let size = rng.random_range(1..=max_support.max(1));
    let mut terms = Vec::with_capacity(size);
    for _ in 0..size {
        let len = rng.random_range(0..=radius);
        let mut x = group.identity();
        for _ in 0..len {
            let s = &gens.elements()[rng.random_range(0..gens.len())];
            x = group.times(&x, s);
        }
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        terms.push((x, c));
    }
    Ok(GroupVector::from_terms(group, terms)?)
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    min_slack: f64,
}

impl Tally {
    fn add(mut self, c: &YoungCheck) -> Self {
        self.min_slack = if self.cases == 0 {
            c.slack()
        } else {
            self.min_slack.min(c.slack())
        };
        self.cases += 1;
        self.failures += !c.holds as usize;
        self
    }
}

fn case_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn young(args: &YoungArgs, ctx: &Context) -> Result<Report> {
    let params: YoungParams = ctx.params("young", args)?;
    let ps = sorted(&params.p);
    ps.iter().try_for_each(|&p| check_p(p))?;
    let mut report = ctx.report("young", &params);
    for (gi, name) in params.groups.iter().enumerate() {
        let group = parse_group(name)?;
        let gens = GeneratingSet::standard(&group);
        for (pi, &p) in ps.iter().enumerate() {
            let base = ((gi as u64) << 48) | ((pi as u64) << 40);
            let pairs: Vec<YoungCheck> = (0..params.pairs)
                .into_par_iter()
                .map(|k| {
                    let mut rng = case_rng(ctx.seed, base | k as u64);
                    let a =
                        random_vector(&mut rng, &group, &gens, params.max_support, params.radius)?;
                    let b =
                        random_vector(&mut rng, &group, &gens, params.max_support, params.radius)?;
                    Ok(young_check(&a, &b, p)?)
                })
                .collect::<Result<_>>()?;
            let tuples: Vec<(YoungCheck, YoungCheck)> = (0..params.tuples)
                .into_par_iter()
                .map(|k| {
                    let mut rng = case_rng(ctx.seed, base | (1 << 32) | k as u64);
                    let u =
                        random_vector(&mut rng, &group, &gens, params.max_support, params.radius)?;
                    let m = rng.random_range(1..=params.max_tuple.max(1));
                    let comps = (0..m)
                        .map(|_| {
                            random_vector(
                                &mut rng,
                                &group,
                                &gens,
                                params.max_support,
                                params.radius,
                            )
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let v = VectorTuple::new(&group, comps)?;
                    Ok((
                        young_check_l1_tuple(&u, &v, p)?,
                        young_check_lp_tuple(&u, &v, p)?,
                    ))
                })
                .collect::<Result<_>>()?;
            let kinds = [
                ("pair", pairs.iter().fold(Tally::default(), Tally::add)),
                (
                    "l1-tuple",
                    tuples
                        .iter()
                        .map(|t| &t.0)
                        .fold(Tally::default(), Tally::add),
                ),
                (
                    "lp-tuple",
                    tuples
                        .iter()
                        .map(|t| &t.1)
                        .fold(Tally::default(), Tally::add),
                ),
            ];
            for (kind, t) in kinds {
                report.flag(t.failures > 0);
                report.push(
                    Provenance::Float,
                    json!({
                        "group": group.to_string(), "p": p, "kind": kind,
                        "cases": t.cases, "failures": t.failures, "min_slack": t.min_slack,
                    }),
                );
            }
        }
    }
    Ok(report.finish())
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct WitnessArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    /// Exact unit scalars, e.g. `1,-1,i`.
    #[arg(long, value_delimiter = ';', allow_hyphen_values = true)]
    pub omega: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u64>>,
    /// Also write each witness `d` as vector JSON.
    #[arg(long)]
    pub emit: Option<bool>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WitnessParams {
    pub group: String,
    pub g: Option<String>,
    #[serde(deserialize_with = "one_or_many")]
    pub omega: Vec<String>,
    #[serde(deserialize_with = "one_or_many")]
    pub n: Vec<u64>,
    pub emit: bool,
}

impl Default for WitnessParams {
    fn default() -> Self {
        WitnessParams {
            group: "Z".into(),
            g: None,
            omega: vec!["1".into(), "-1".into(), "i".into()],
            n: vec![1, 2, 4, 8, 16, 32, 64],
            emit: false,
        }
    }
}

/// `(g - ω) d - (1 - x_n)`, computed exactly.
pub fn witness_residual(
    spec: &AveragingSpec<Exact>,
    d: &GroupVector<Exact>,
) -> Result<GroupVector<Exact>> {
    let lhs = linear_factor(spec.group(), spec.g(), spec.omega())?.convolve(d)?;
    let rhs = GroupVector::identity(spec.group()).sub(&averaging_element(spec))?;
    Ok(lhs.sub(&rhs)?)
}

pub fn witness(args: &WitnessArgs, ctx: &Context) -> Result<Report> {
    let params: WitnessParams = ctx.params("witness", args)?;
    let group = parse_group(&params.group)?;
    let g = parse_g(&group, params.g.as_deref())?;
    let omegas = params
        .omega
        .iter()
        .map(|s| Ok(Scalar::parse(s, Mode::Exact)?.exact()?.clone()))
        .collect::<Result<Vec<Exact>>>()?;
    let grid: Vec<(usize, u64)> = (0..omegas.len())
        .flat_map(|i| sorted(&params.n).into_iter().map(move |n| (i, n)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(i, n)| {
            let spec = AveragingSpec::new(&group, g.clone(), omegas[i].clone(), n)?;
            let d = factor_witness(&spec)?;
            let residual = witness_residual(&spec, &d)?;
            Ok((i, n, d, residual))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ctx.report("witness", &params);
    for (i, n, d, residual) in rows {
        report.flag(!residual.is_zero());
        let mut row = json!({
            "omega": params.omega[i], "n": n, "support": d.len(),
            "one_norm": d.one_norm(), "residual_terms": residual.len(),
            "exact_zero": residual.is_zero(),
        });
        if params.emit {
            row["witness"] = lpcoh_core::algebra::io::vector_to_json(&d);
        }
        report.push(Provenance::Exact, row);
    }
    Ok(report.finish())
}

#[serde_with::skip_serializing_none]
#[derive(Args, Debug, Serialize)]
pub struct NeumannArgs {
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    /// Scalars off the unit circle, e.g. `2;1/2`.
    #[arg(long, value_delimiter = ';', allow_hyphen_values = true)]
    pub omega: Option<Vec<String>>,
    /// Truncation order `K`.
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<u64>>,
    #[arg(long)]
    pub mode: Option<String>,
    /// Write the truncated inverse of the first case here.
    #[arg(long)]
    pub inverse_out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub selftest: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NeumannParams {
    pub group: String,
    pub g: Option<String>,
    #[serde(deserialize_with = "one_or_many")]
    pub omega: Vec<String>,
    #[serde(deserialize_with = "one_or_many")]
    pub order: Vec<u64>,
    pub mode: Mode,
    pub inverse_out: Option<PathBuf>,
}

impl Default for NeumannParams {
    fn default() -> Self {
        NeumannParams {
            group: "Z".into(),
            g: None,
            omega: vec!["2".into(), "1/2".into()],
            order: vec![30],
            mode: Mode::Exact,
            inverse_out: None,
        }
    }
}

/// `‖(g - ω) u - 1‖_1` and the inverse itself.
fn neumann_case<C: Coefficient>(
    group: &GroupSpec,
    g: &GroupElement,
    omega: &C,
    order: u64,
) -> Result<(f64, f64, GroupVector<C>)> {
    let inv = neumann_inverse(group, g, omega, order)?;
    let residual = linear_factor(group, g, omega)?
        .convolve(&inv.inverse)?
        .sub(&GroupVector::identity(group))?;
    Ok((residual.one_norm(), inv.predicted_residual, inv.inverse))
}

pub fn neumann(args: &NeumannArgs, ctx: &Context) -> Result<Report> {
    let params: NeumannParams = ctx.params("neumann", args)?;
    let group = parse_group(&params.group)?;
    let g = parse_g(&group, params.g.as_deref())?;
    let omegas = params
        .omega
        .iter()
        .map(|s| Ok(Scalar::parse(s, params.mode)?))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ctx.report("neumann", &params);
    let mut first_inverse = None;
    for (i, omega) in omegas.iter().enumerate() {
        for order in sorted(&params.order) {
            let (residual, predicted, inverse) = match omega {
                Scalar::Exact(w) => {
                    let (r, p, u) = neumann_case(&group, &g, w, order)?;
                    (r, p, lpcoh_core::algebra::io::vector_to_json(&u))
                }
                Scalar::Float(w) => {
                    let (r, p, u) = neumann_case(&group, &g, w, order)?;
                    (r, p, lpcoh_core::algebra::io::vector_to_json(&u))
                }
            };
            first_inverse.get_or_insert(inverse);
            let rel_err = (residual - predicted).abs() / predicted;
            report.flag(!(rel_err <= NEUMANN_TOL));
            report.push(
                provenance(params.mode),
                json!({
                    "omega": params.omega[i], "order": order, "residual_l1": residual,
                    "predicted": predicted, "rel_err": rel_err,
                }),
            );
        }
    }
    if let (Some(path), Some(inv)) = (&params.inverse_out, first_inverse) {
        let text = serde_json::to_string_pretty(&inv).expect("vector serializes");
        std::fs::write(path, text).map_err(|e| crate::error::CliError::io(path, e))?;
    }
    Ok(report.finish())
}
