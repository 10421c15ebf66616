use super::{Coefficient, GroupVector};
use crate::group::{GroupElement, GroupSpec};
use crate::Result;

/// A polynomial `c_0 + c_1 t + … + c_d t^d` over a coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `t - omega`.
    pub fn linear(omega: C) -> Self {
        Polynomial {
            coeffs: vec![-omega, C::one()],
        }
    }

    /// `Π (t - ω_i)`.
    pub fn from_roots(roots: &[C]) -> Self {
        roots.iter().fold(Self::constant(C::one()), |acc, w| {
            acc.mul(&Self::linear(w.clone()))
        })
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Synthetic division by `t - omega`: returns `(q, r)` with
    /// `self = (t - omega) q + r`.
    pub fn div_linear(&self, omega: &C) -> (Self, C) {
        let Some(d) = self.degree() else {
            return (Self::zero(), C::zero());
        };
        let mut q = vec![C::zero(); d];
        let mut carry = C::zero();
        for k in (1..=d).rev() {
            carry = self.coeffs[k].clone() + omega.clone() * carry;
            q[k - 1] = carry.clone();
        }
        let r = self.coeffs[0].clone() + omega.clone() * carry;
        (Self::new(q), r)
    }

    /// The group-ring element `Σ c_k g^k`.
    pub fn at(&self, group: &GroupSpec, g: &GroupElement) -> Result<GroupVector<C>> {
        group.check(g)?;
        let mut terms = Vec::with_capacity(self.coeffs.len());
        let mut power = group.identity();
        for c in &self.coeffs {
            if !c.is_zero() {
                terms.push((power.clone(), c.clone()));
            }
            power = group.times(g, &power);
        }
        Ok(GroupVector::from_unchecked(group, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exact;

    fn poly(cs: &[i64]) -> Polynomial<Exact> {
        Polynomial::new(cs.iter().map(|&c| Exact::from_ratio(c, 1)).collect())
    }

    #[test]
    fn division_by_linear_factor() {
        // t^2 - 3t + 2 = (t - 1)(t - 2)
        let (q, r) = poly(&[2, -3, 1]).div_linear(&Exact::from_ratio(1, 1));
        assert_eq!(q, poly(&[-2, 1]));
        assert_eq!(r, Exact::from_ratio(0, 1));
        let (q, r) = poly(&[1, 0, 1]).div_linear(&Exact::from_ratio(1, 1));
        assert_eq!(
            q.mul(&Polynomial::linear(Exact::from_ratio(1, 1))),
            poly(&[-1, 0, 1])
        );
        assert_eq!(r, Exact::from_ratio(2, 1));
    }

    #[test]
    fn roots_and_evaluation() {
        let f = Polynomial::from_roots(&[Exact::from_ratio(1, 1), Exact::from_ratio(-1, 1)]);
        assert_eq!(f, poly(&[-1, 0, 1]));
        assert_eq!(f.eval(&Exact::from_ratio(3, 1)), Exact::from_ratio(8, 1));
        let z = GroupSpec::FreeAbelian(1);
        let v = f.at(&z, &GroupElement::abelian(&[2])).unwrap();
        assert_eq!(
            v.coeff(&GroupElement::abelian(&[4])),
            Exact::from_ratio(1, 1)
        );
        assert_eq!(
            v.coeff(&GroupElement::abelian(&[0])),
            Exact::from_ratio(-1, 1)
        );
        assert_eq!(v.len(), 2);
    }
}
