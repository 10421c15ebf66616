//! Translations `f_h(g) = f(hg)`, spans of differences `f_h - f`, the
//! difference embedding `θ`, and Sobolev-type ratios on balls.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AveragingSpec, Coefficient, CosetSeries, Exact, GroupVector, VectorTuple};
use crate::cohomology::{density_experiment, DensityReport, NSelection};
use crate::energy::GraphFunction;
use crate::group::{CyclicSubgroup, GroupElement};
use crate::{Error, Result};

mod sobolev;
mod tent;
mod theta;

pub use sobolev::{sobolev_ratio, SobolevOptions, SobolevReport};
pub use tent::{tent_energy, tent_function};
pub use theta::{theta, theta_energy_check, theta_on_ball, ThetaCheck, ThetaOnBall};

/// Left translation `f ↦ f_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationAction {
    pub h: GroupElement,
}

impl TranslationAction {
    pub fn new(h: GroupElement) -> Self {
        TranslationAction { h }
    }

    pub fn vector<C: Coefficient>(&self, f: &GroupVector<C>) -> Result<GroupVector<C>> {
        translate(f, &self.h)
    }

    pub fn function(&self, f: &GraphFunction) -> Result<GraphFunction> {
        translate_function(f, &self.h)
    }
}

/// `f_h(g) = f(hg)`: the mass at `x` moves to `h⁻¹x`.
pub fn translate<C: Coefficient>(f: &GroupVector<C>, h: &GroupElement) -> Result<GroupVector<C>> {
    let group = f.group();
    group.check(h)?;
    f.left_translate(&group.inverse(h))
}

/// `f_h` on the same ball. Fails when part of the support would leave it.
pub fn translate_function(f: &GraphFunction, h: &GroupElement) -> Result<GraphFunction> {
    let ball = f.ball();
    let group = ball.group();
    group.check(h)?;
    let h_inv = group.inverse(h);
    for (i, x) in ball.vertices().iter().enumerate() {
        if f.value(i) != 0.0 && ball.index_of(&group.times(&h_inv, x)).is_none() {
            return Err(Error::NotInBall(format!(
                "translate of {} by {}",
                group.format_element(x),
                group.format_element(h)
            )));
        }
    }
    let values = ball
        .vertices()
        .iter()
        .map(|g| f.at(&group.times(h, g)))
        .collect();
    GraphFunction::new(ball.clone(), values)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiffTerm {
    pub h: String,
    pub coefficient: String,
}

/// `f = Σ c_i (base_{h_i} - base)` with `base = δ_e`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffDecomposition {
    pub base: GroupVector<Exact>,
    pub terms: Vec<(GroupElement, Exact)>,
}

impl DiffDecomposition {
    pub fn reconstruct(&self) -> Result<GroupVector<Exact>> {
        let mut acc = GroupVector::zero(self.base.group());
        for (h, c) in &self.terms {
            let diff = translate(&self.base, h)?.sub(&self.base)?;
            acc = acc.add(&diff.scale(c))?;
        }
        Ok(acc)
    }

    pub fn display_terms(&self) -> Vec<DiffTerm> {
        let group = self.base.group();
        self.terms
            .iter()
            .map(|(h, c)| DiffTerm {
                h: group.format_element(h),
                coefficient: c.to_string(),
            })
            .collect()
    }
}

/// Writes a zero-sum `f` exactly as a combination of `(δ_e)_h - δ_e`, using
/// `(δ_e)_h = δ_{h⁻¹}`: each `x ≠ e` in the support contributes
/// `h = x⁻¹` with coefficient `f(x)`.
pub fn diff_decompose(f: &GroupVector<Exact>) -> Result<DiffDecomposition> {
    let sum = f.coefficient_sum();
    if !sum.is_zero() {
        return Err(Error::NotInDiffSpan(sum.to_string()));
    }
    let group = f.group();
    let e = group.identity();
    let terms = f
        .terms()
        .iter()
        .filter(|(x, _)| *x != e)
        .map(|(x, c)| (group.inverse(x), c.clone()))
        .collect();
    let dec = DiffDecomposition {
        base: GroupVector::identity(group),
        terms,
    };
    if dec.reconstruct()? != *f {
        return Err(Error::Invariant(
            "difference decomposition does not reconstruct".into(),
        ));
    }
    Ok(dec)
}

/// `(1 - x_n) f`, which lies in `(g - 1)B` and hence in the closure of the
/// difference span, together with the density report for `f`.
#[derive(Clone, Debug)]
pub struct DiffApproximation {
    pub approximant: GroupVector<Exact>,
    pub report: DensityReport,
}

pub fn approximate_by_diff(
    f: &GroupVector<Exact>,
    spec: &AveragingSpec<Exact>,
    p: f64,
    epsilon: f64,
    selection: NSelection,
) -> Result<DiffApproximation> {
    if !(spec.omega().clone() - Exact::from_ratio(1, 1)).is_zero() {
        return Err(Error::param("approximation by differences needs omega = 1"));
    }
    if !spec.group().is_infinite() {
        return Err(Error::param(
            "approximation by differences needs an infinite group",
        ));
    }
    let report = density_experiment(&VectorTuple::single(f.clone()), spec, p, epsilon, selection)?;
    let subgroup = CyclicSubgroup::new(spec.group(), spec.g())?;
    let approximant = CosetSeries::new(&subgroup, f)?
        .deflate(&spec.with_n(report.n)?)?
        .to_vector();
    Ok(DiffApproximation {
        approximant,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::averaging_element;
    use crate::group::{CayleyBall, GroupSpec};
    use num_traits::One;

    fn z() -> GroupSpec {
        GroupSpec::FreeAbelian(1)
    }

    fn el(k: i64) -> GroupElement {
        GroupElement::abelian(&[k])
    }

    #[test]
    fn translate_point_mass() {
        let f = GroupVector::<Exact>::delta(&z(), el(0)).unwrap();
        let g = translate(&f, &el(3)).unwrap();
        assert_eq!(g, GroupVector::delta(&z(), el(-3)).unwrap());
        assert_eq!(translate(&f, &el(0)).unwrap(), f);
    }

    #[test]
    fn translation_composes() {
        let f2 = GroupSpec::Free(2);
        let f = GroupVector::from_terms(
            &f2,
            vec![
                (GroupElement::free_word(&[1, 2]), Exact::from_ratio(2, 3)),
                (GroupElement::free_word(&[-2]), Exact::from_ratio(-1, 1)),
            ],
        )
        .unwrap();
        let h = GroupElement::free_word(&[2, 1]);
        let k = GroupElement::free_word(&[-1]);
        let lhs = translate(&translate(&f, &h).unwrap(), &k).unwrap();
        let rhs = translate(&f, &f2.times(&h, &k)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.p_norm(2.5).unwrap(), f.p_norm(2.5).unwrap());
    }

    #[test]
    fn translate_function_checks_the_ball() {
        let ball = CayleyBall::standard(&z(), 4).unwrap();
        let f = GraphFunction::from_fn(ball.clone(), |x| (*x == el(2)) as i32 as f64).unwrap();
        let g = translate_function(&f, &el(1)).unwrap();
        assert_eq!(g.at(&el(1)), 1.0);
        assert!(translate_function(&f, &el(-3)).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let one = Exact::one();
        let f = GroupVector::from_terms(
            &z(),
            vec![
                (el(2), one.clone()),
                (el(1), Exact::from_ratio(-2, 1)),
                (el(0), one.clone()),
            ],
        )
        .unwrap();
        let dec = diff_decompose(&f).unwrap();
        assert_eq!(dec.terms.len(), 2);
        assert_eq!(dec.reconstruct().unwrap(), f);
        let single = GroupVector::identity(&z())
            .neg()
            .add(&GroupVector::delta(&z(), el(-5)).unwrap())
            .unwrap();
        let dec = diff_decompose(&single).unwrap();
        assert_eq!(dec.terms, vec![(el(5), one)]);
        assert!(matches!(
            diff_decompose(&GroupVector::identity(&z())),
            Err(Error::NotInDiffSpan(_))
        ));
    }

    #[test]
    fn approximation_by_differences() {
        let spec = AveragingSpec::new(&z(), el(1), Exact::one(), 1).unwrap();
        let f = GroupVector::identity(&z());
        let approx = approximate_by_diff(&f, &spec, 2.0, 0.1, NSelection::Recipe).unwrap();
        assert!(approx.report.achieved < 0.1);
        let x = averaging_element(&spec.with_n(approx.report.n).unwrap());
        let direct = f.convolve(&x).unwrap();
        assert!((approx.report.achieved - direct.p_norm(2.0).unwrap()).abs() < 1e-12);
        assert!(approx.approximant.coefficient_sum().is_zero());
        let loose = approximate_by_diff(&f, &spec, 2.0, 2.0, NSelection::Measured).unwrap();
        assert_eq!(loose.report.n, 1);
        let bad = AveragingSpec::new(&z(), el(1), -Exact::one(), 1).unwrap();
        assert!(approximate_by_diff(&f, &bad, 2.0, 0.1, NSelection::Recipe).is_err());
    }
}
