use serde::Serialize;

use crate::algebra::{Coefficient, GroupVector, VectorTuple};
use crate::energy::{GraphFunction, Scope};
use crate::group::{CayleyBall, GeneratingSet};
use crate::{Error, Result};

/// `θ(f)`: for each generator `s`, the difference function `g ↦ f(g) - f(gs)`.
pub fn theta<C: Coefficient>(f: &GroupVector<C>, gens: &GeneratingSet) -> Result<VectorTuple<C>> {
    let group = f.group();
    if gens.group() != group {
        return Err(Error::GroupMismatch {
            left: group.to_string(),
            right: gens.group().to_string(),
        });
    }
    let components = gens
        .elements()
        .iter()
        // (f(· s))(g) = f(gs) puts the mass of x at x s⁻¹
        .map(|s| f.sub(&f.right_translate(&group.inverse(s))?))
        .collect::<Result<Vec<_>>>()?;
    VectorTuple::new(group, components)
}

/// Both sides of `‖θ(f)‖_p^p = I_p(f)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThetaCheck {
    pub theta_power: f64,
    pub dirichlet: f64,
}

impl ThetaCheck {
    pub fn relative_gap(&self) -> f64 {
        (self.theta_power - self.dirichlet).abs() / self.dirichlet.max(1.0)
    }
}

/// Evaluates `‖θ(f)‖_p^p` and, independently, the Dirichlet sum of `f` on a
/// ball one step larger than its support.
pub fn theta_energy_check<C: Coefficient>(
    f: &GroupVector<C>,
    gens: &GeneratingSet,
    p: f64,
) -> Result<ThetaCheck> {
    let t = theta(f, gens)?;
    crate::algebra::check_p(p)?;
    let theta_power = crate::sum::compensated_sum(
        t.components()
            .iter()
            .flat_map(|c| c.moduli().map(|m| m.powf(p)).collect::<Vec<_>>()),
    );
    let group = f.group();
    let radius = f
        .support()
        .map(|x| group.word_length(gens, x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0) as usize
        + 1;
    let ball = CayleyBall::new(group, gens, radius)?;
    let float = f.to_float();
    let values = ball
        .vertices()
        .iter()
        .map(|x| {
            let c = float.coeff(x);
            if c.im != 0.0 {
                Err(Error::param(
                    "the energy identity is checked for real functions",
                ))
            } else {
                Ok(c.re)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let dirichlet = GraphFunction::new(ball, values)?.dirichlet_sum(p, Scope::AllInBallEdges);
    Ok(ThetaCheck {
        theta_power,
        dirichlet,
    })
}

/// `θ(f)` for a function on a ball, evaluated on interior vertices only.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaOnBall {
    /// `components[s][k]` is `f(g_k) - f(g_k s)` for the `k`-th interior vertex.
    pub components: Vec<Vec<f64>>,
    /// Frontier vertices were left out.
    pub truncated: bool,
}

pub fn theta_on_ball(f: &GraphFunction) -> ThetaOnBall {
    let ball = f.ball();
    let interior: Vec<usize> = ball.interior().collect();
    let components = (0..ball.gens().len())
        .map(|s| {
            interior
                .iter()
                .map(|&i| {
                    let j = ball.neighbor_indices(i)[s].expect("interior vertex");
                    f.value(i) - f.value(j)
                })
                .collect()
        })
        .collect();
    ThetaOnBall {
        components,
        truncated: interior.len() < ball.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exact;
    use crate::group::{GroupElement, GroupSpec};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn el(k: i64) -> GroupElement {
        GroupElement::abelian(&[k])
    }

    #[test]
    fn point_mass_on_z() {
        let z = GroupSpec::FreeAbelian(1);
        let gens = GeneratingSet::standard(&z);
        let f = GroupVector::<Exact>::identity(&z);
        let t = theta(&f, &gens).unwrap();
        // S = {+1, -1}
        let expect = |k: i64| {
            GroupVector::identity(&z)
                .sub(&GroupVector::delta(&z, el(k)).unwrap())
                .unwrap()
        };
        assert_eq!(t.components(), &[expect(-1), expect(1)]);
        let check = theta_energy_check(&f, &gens, 3.0).unwrap();
        assert_eq!((check.theta_power, check.dirichlet), (4.0, 4.0));
    }

    #[test]
    fn constants_on_a_ball() {
        let ball: Arc<CayleyBall> = CayleyBall::standard(&GroupSpec::Free(2), 2).unwrap();
        let t = theta_on_ball(&GraphFunction::constant(ball, 3.0));
        assert!(t.truncated);
        assert!(t.components.iter().flatten().all(|v| *v == 0.0));
    }

    proptest! {
        #[test]
        fn energy_identity_on_z2(
            terms in proptest::collection::vec(((-3i64..=3, -3i64..=3), -20i64..=20), 0..12),
            p in 1.1f64..4.0,
        ) {
            let z2 = GroupSpec::FreeAbelian(2);
            let f = GroupVector::from_terms(
                &z2,
                terms.iter().map(|((a, b), c)| (GroupElement::abelian(&[*a, *b]), Exact::from_ratio(*c, 7))),
            )
            .unwrap();
            let check = theta_energy_check(&f, &GeneratingSet::standard(&z2), p).unwrap();
            prop_assert!(check.relative_gap() <= 1e-12, "{:?}", check);
        }
    }
}
