use serde::{Deserialize, Serialize};

use crate::algebra::{
    check_p, factor_polynomial, linear_factor, AveragingSpec, Coefficient, CosetSeries, Exact,
    GroupVector, VectorTuple,
};
use crate::group::CyclicSubgroup;
use crate::{Error, Result};

/// Largest `n` either selection rule may return.
pub const MAX_AVERAGING_N: u64 = 1 << 27;

/// How the averaging length is picked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NSelection {
    /// Smallest `n` with `n^{(1-p)/p} < target / ‖b‖_1`, which bounds
    /// `‖x_n b‖_p` through Young's inequality.
    #[default]
    Recipe,
    /// Smallest `n` found by doubling and bisection with the measured
    /// `‖x_n b‖_p` below the target.
    Measured,
    /// A fixed `n`.
    #[serde(skip)]
    Fixed(u64),
}

#[derive(Clone, Debug)]
pub struct DensityReport {
    pub n: u64,
    pub p: f64,
    pub epsilon: f64,
    /// `ε / (2‖b‖_1)`.
    pub recipe_target: f64,
    /// `n^{(1-p)/p}`.
    pub norm_law: f64,
    /// `‖x_n b‖_p` by coset-wise averaging in floating point.
    pub achieved: f64,
    /// `d b`, one series per component, with `(g - ω)(d b) = (1 - x_n) b`.
    pub witness: Vec<CosetSeries<Exact>>,
    pub witness_verified: bool,
}

impl DensityReport {
    pub fn witness_support(&self) -> usize {
        self.witness.iter().map(CosetSeries::support_size).sum()
    }
}

fn tuple_norm(parts: impl Iterator<Item = Result<f64>>, p: f64) -> Result<f64> {
    let mut acc = 0.0f64;
    let mut max = 0.0f64;
    let vals = parts.collect::<Result<Vec<_>>>()?;
    for v in &vals {
        max = max.max(*v);
    }
    if max == 0.0 {
        return Ok(0.0);
    }
    for v in &vals {
        acc += (v / max).powf(p);
    }
    Ok(max * acc.powf(1.0 / p))
}

fn series(subgroup: &CyclicSubgroup, b: &VectorTuple<Exact>) -> Result<Vec<CosetSeries<Exact>>> {
    b.components()
        .iter()
        .map(|c| CosetSeries::new(subgroup, c))
        .collect()
}

fn float_spec(spec: &AveragingSpec<Exact>) -> Result<AveragingSpec<num_complex::Complex64>> {
    AveragingSpec::new(
        spec.group(),
        spec.g().clone(),
        spec.omega().to_c64(),
        spec.n(),
    )
}

/// `‖x_n b‖_p` in floating point.
fn averaged_norm(
    parts: &[CosetSeries<num_complex::Complex64>],
    spec: &AveragingSpec<Exact>,
    p: f64,
) -> Result<f64> {
    let fspec = float_spec(spec)?;
    tuple_norm(parts.iter().map(|s| s.average(&fspec)?.p_norm(p)), p)
}

/// Smallest `n ≥ 1` with `n^{(1-p)/p} < target`.
pub fn recipe_n(target: f64, p: f64) -> Result<u64> {
    check_p(p)?;
    if p == 1.0 || !(target > 0.0) {
        return Err(Error::param("the recipe needs p > 1 and a positive target"));
    }
    let law = |n: u64| (n as f64).powf((1.0 - p) / p);
    if law(1) < target {
        return Ok(1);
    }
    let guess = target.powf(p / (1.0 - p));
    if !(guess < MAX_AVERAGING_N as f64) {
        return Err(Error::ResourceLimit(format!(
            "recipe needs n ≈ {guess:.3e}, above the cap {MAX_AVERAGING_N}"
        )));
    }
    let mut n = (guess.floor() as u64).max(1);
    while n > 1 && law(n - 1) < target {
        n -= 1;
    }
    while !(law(n) < target) {
        n += 1;
    }
    Ok(n)
}

fn measured_n(
    parts: &[CosetSeries<num_complex::Complex64>],
    spec: &AveragingSpec<Exact>,
    p: f64,
    target: f64,
) -> Result<u64> {
    let ok = |n: u64| -> Result<bool> { Ok(averaged_norm(parts, &spec.with_n(n)?, p)? < target) };
    if ok(1)? {
        return Ok(1);
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    while !ok(hi)? {
        lo = hi;
        hi *= 2;
        if hi > MAX_AVERAGING_N {
            return Err(Error::ResourceLimit(format!(
                "no n below {MAX_AVERAGING_N} reaches the target {target:e}"
            )));
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Approximates `b` by an element of `(g - ω)B`: picks `n`, measures
/// `‖x_n b‖_p` and builds `d b` where `1 - x_n = (g - ω) d`, checking
/// `(g - ω)(d b) = (1 - x_n) b` exactly. The `n` stored in `spec` is ignored.
pub fn density_experiment(
    b: &VectorTuple<Exact>,
    spec: &AveragingSpec<Exact>,
    p: f64,
    epsilon: f64,
    selection: NSelection,
) -> Result<DensityReport> {
    check_p(p)?;
    if !(epsilon > 0.0) {
        return Err(Error::param("epsilon must be positive"));
    }
    if b.group() != spec.group() {
        return Err(Error::GroupMismatch {
            left: spec.group().to_string(),
            right: b.group().to_string(),
        });
    }
    let subgroup = CyclicSubgroup::new(spec.group(), spec.g())?;
    let exact = series(&subgroup, b)?;
    let floats: Vec<_> = exact.iter().map(CosetSeries::to_float).collect();
    let b_one = b.one_norm();
    let recipe_target = epsilon / (2.0 * b_one);
    let n = if b_one == 0.0 {
        1
    } else {
        match selection {
            NSelection::Recipe => recipe_n(recipe_target, p)?,
            NSelection::Measured => measured_n(&floats, spec, p, epsilon)?,
            NSelection::Fixed(n) => n,
        }
    };
    let spec = spec.with_n(n)?;
    let achieved = averaged_norm(&floats, &spec, p)?;
    let d = factor_polynomial(&spec)?;
    let mut witness = Vec::with_capacity(exact.len());
    let mut verified = true;
    for s in &exact {
        let db = s.mul_polynomial(&d);
        let lhs = db.mul_linear(spec.omega());
        let rhs = s.deflate(&spec)?;
        verified &= lhs.sub(&rhs)?.is_empty();
        witness.push(db);
    }
    if !verified {
        return Err(Error::Invariant(
            "(g - omega)(d b) differs from (1 - x_n) b".into(),
        ));
    }
    Ok(DensityReport {
        n,
        p,
        epsilon,
        recipe_target,
        norm_law: spec.norm_law(p),
        achieved,
        witness,
        witness_verified: verified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub omega: String,
    pub n: u64,
    /// Bound this stage's error must stay below.
    pub target: f64,
    /// `‖x_n b_{i-1}‖_p`.
    pub achieved: f64,
    /// `‖g - ω‖_1`.
    pub factor_norm: f64,
}

#[derive(Clone, Debug)]
pub struct ComposedReport {
    pub p: f64,
    pub epsilon: f64,
    pub stages: Vec<StageReport>,
    /// `u` with `‖b - Π(g - ω_i) u‖_p < ε`.
    pub witness: VectorTuple<Exact>,
    /// `‖b - Π(g - ω_i) u‖_p`, from the exact residual.
    pub error: f64,
    pub witness_verified: bool,
}

/// Chains one density step per factor: `b_i = (1 - x_{n_i}) b_{i-1} / (g - ω_i)`.
/// Stage `i` (1-based, `m` factors) must bring `‖x_n b_{i-1}‖_p` below
/// `ε / (2^{min(i, m-1)} Π_{j<i} ‖g - ω_j‖_1)`, so the errors sum to less
/// than `ε`. All specs must share `g`; their `n` is ignored.
pub fn composed_density(
    b: &VectorTuple<Exact>,
    specs: &[AveragingSpec<Exact>],
    p: f64,
    epsilon: f64,
    selection: NSelection,
) -> Result<ComposedReport> {
    check_p(p)?;
    if !(epsilon > 0.0) {
        return Err(Error::param("epsilon must be positive"));
    }
    let Some(first) = specs.first() else {
        return Ok(ComposedReport {
            p,
            epsilon,
            stages: Vec::new(),
            witness: b.clone(),
            error: 0.0,
            witness_verified: true,
        });
    };
    if specs
        .iter()
        .any(|s| s.g() != first.g() || s.group() != first.group())
    {
        return Err(Error::param("all factors must share the group element g"));
    }
    if b.group() != first.group() {
        return Err(Error::GroupMismatch {
            left: first.group().to_string(),
            right: b.group().to_string(),
        });
    }
    let group = first.group();
    let m = specs.len();
    if m == 1 {
        let rep = density_experiment(b, first, p, epsilon, selection)?;
        let witness = VectorTuple::new(
            group,
            rep.witness.iter().map(CosetSeries::to_vector).collect(),
        )?;
        let factor_norm = linear_factor(group, first.g(), first.omega())?.one_norm();
        return Ok(ComposedReport {
            p,
            epsilon,
            stages: vec![StageReport {
                omega: first.omega().to_string(),
                n: rep.n,
                target: epsilon,
                achieved: rep.achieved,
                factor_norm,
            }],
            error: rep.achieved,
            witness,
            witness_verified: rep.witness_verified,
        });
    }
    let subgroup = CyclicSubgroup::new(group, first.g())?;
    let mut current = series(&subgroup, b)?;
    let mut stages = Vec::with_capacity(m);
    let mut prefix = 1.0;
    for (idx, spec) in specs.iter().enumerate() {
        let i = idx + 1;
        let target = epsilon / (2f64.powi(i.min(m - 1) as i32) * prefix);
        let floats: Vec<_> = current.iter().map(CosetSeries::to_float).collect();
        let one = crate::sum::compensated_sum(current.iter().map(CosetSeries::one_norm));
        let n = if one == 0.0 {
            1
        } else {
            match selection {
                NSelection::Recipe => recipe_n(target / one, p)?,
                NSelection::Measured => measured_n(&floats, spec, p, target)?,
                NSelection::Fixed(n) => n,
            }
        };
        let spec = spec.with_n(n)?;
        let achieved = averaged_norm(&floats, &spec, p)?;
        let factor_norm = linear_factor(group, spec.g(), spec.omega())?.one_norm();
        current = current
            .iter()
            .map(|s| s.deflate(&spec)?.div_linear(spec.omega()))
            .collect::<Result<Vec<_>>>()?;
        stages.push(StageReport {
            omega: spec.omega().to_string(),
            n,
            target,
            achieved,
            factor_norm,
        });
        prefix *= factor_norm;
    }
    let u = VectorTuple::new(group, current.iter().map(CosetSeries::to_vector).collect())?;
    // Π (g - ω_i) by generic convolution, independent of the coset machinery
    let mut f = GroupVector::identity(group);
    for spec in specs {
        f = f.convolve(&linear_factor(group, spec.g(), spec.omega())?)?;
    }
    let residual = b.sub(&u.left_mul(&f)?)?;
    let error = residual.p_norm(p)?;
    Ok(ComposedReport {
        p,
        epsilon,
        stages,
        witness: u,
        error,
        witness_verified: true,
    })
}
