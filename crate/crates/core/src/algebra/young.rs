use serde::Serialize;

use super::{Coefficient, GroupVector, VectorTuple};
use crate::Result;

/// Slack allowed on the right-hand side.
pub const YOUNG_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct YoungCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl YoungCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        YoungCheck {
            lhs,
            rhs,
            holds: lhs <= rhs + YOUNG_TOLERANCE,
        }
    }

    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// `‖αβ‖_p ≤ ‖α‖_1 ‖β‖_p`.
pub fn young_check<C: Coefficient>(
    alpha: &GroupVector<C>,
    beta: &GroupVector<C>,
    p: f64,
) -> Result<YoungCheck> {
    let lhs = alpha.convolve(beta)?.p_norm(p)?;
    Ok(YoungCheck::new(lhs, alpha.one_norm() * beta.p_norm(p)?))
}

/// `‖u v‖_p ≤ ‖u‖_1 ‖v‖_p` for `u ∈ ℓ¹` acting on a tuple `v ∈ ℓ^p(G)^m`.
pub fn young_check_l1_tuple<C: Coefficient>(
    u: &GroupVector<C>,
    v: &VectorTuple<C>,
    p: f64,
) -> Result<YoungCheck> {
    let lhs = v.left_mul(u)?.p_norm(p)?;
    Ok(YoungCheck::new(lhs, u.one_norm() * v.p_norm(p)?))
}

/// `‖u v‖_p ≤ ‖u‖_p ‖v‖_1` for `u ∈ ℓ^p` acting on a tuple `v ∈ ℓ¹(G)^m`.
pub fn young_check_lp_tuple<C: Coefficient>(
    u: &GroupVector<C>,
    v: &VectorTuple<C>,
    p: f64,
) -> Result<YoungCheck> {
    let lhs = v.left_mul(u)?.p_norm(p)?;
    Ok(YoungCheck::new(lhs, u.p_norm(p)? * v.one_norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exact;
    use crate::group::{GroupElement, GroupSpec};

    #[test]
    fn translation_is_an_isometry() {
        let z = GroupSpec::FreeAbelian(1);
        let beta = GroupVector::from_terms(
            &z,
            [
                (GroupElement::abelian(&[0]), Exact::from_ratio(3, 1)),
                (GroupElement::abelian(&[5]), Exact::from_ratio(-4, 1)),
            ],
        )
        .unwrap();
        let alpha = GroupVector::delta(&z, GroupElement::abelian(&[7])).unwrap();
        let c = young_check(&alpha, &beta, 2.0).unwrap();
        assert_eq!(c.lhs, 5.0);
        assert_eq!(c.rhs, 5.0);
        assert!(c.holds);
    }

    #[test]
    fn two_point_example() {
        let z = GroupSpec::FreeAbelian(1);
        let alpha = GroupVector::<Exact>::from_terms(
            &z,
            [0, 1].map(|k| (GroupElement::abelian(&[k]), Exact::from_ratio(1, 1))),
        )
        .unwrap();
        let beta = GroupVector::identity(&z);
        let c = young_check(&alpha, &beta, 2.0).unwrap();
        assert!((c.lhs - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.rhs, 2.0);
        assert!(c.holds);
    }
}
