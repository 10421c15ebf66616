use num_complex::Complex64;

use super::vector::{check_p, p_norm_of};
use super::{Coefficient, GroupVector};
use crate::group::GroupSpec;
use crate::sum::Compensated;
use crate::{Error, Result};

/// An element of `(ℂG)^m`, normed as a subset of `ℓ^p(G)^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorTuple<C> {
    group: GroupSpec,
    components: Vec<GroupVector<C>>,
}

impl<C: Coefficient> VectorTuple<C> {
    pub fn new(group: &GroupSpec, components: Vec<GroupVector<C>>) -> Result<Self> {
        for c in &components {
            if c.group() != group {
                return Err(Error::GroupMismatch {
                    left: group.to_string(),
                    right: c.group().to_string(),
                });
            }
        }
        Ok(VectorTuple {
            group: group.clone(),
            components,
        })
    }

    pub fn zero(group: &GroupSpec, m: usize) -> Self {
        VectorTuple {
            group: group.clone(),
            components: vec![GroupVector::zero(group); m],
        }
    }

    pub fn single(v: GroupVector<C>) -> Self {
        VectorTuple {
            group: v.group().clone(),
            components: vec![v],
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[GroupVector<C>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<GroupVector<C>> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GroupVector::is_zero)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "tuple sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(VectorTuple {
            group: self.group.clone(),
            components,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(GroupVector::neg)
    }

    pub fn map(&self, f: impl Fn(&GroupVector<C>) -> GroupVector<C>) -> Self {
        VectorTuple {
            group: self.group.clone(),
            components: self.components.iter().map(f).collect(),
        }
    }

    /// Componentwise left convolution `u · (v_1, …, v_m)`.
    pub fn left_mul(&self, u: &GroupVector<C>) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|v| u.convolve(v))
            .collect::<Result<_>>()?;
        Ok(VectorTuple {
            group: self.group.clone(),
            components,
        })
    }

    /// Componentwise right convolution `(v_1, …, v_m) · u`.
    pub fn right_mul(&self, u: &GroupVector<C>) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|v| v.convolve(u))
            .collect::<Result<_>>()?;
        Ok(VectorTuple {
            group: self.group.clone(),
            components,
        })
    }

    pub fn to_float(&self) -> VectorTuple<Complex64> {
        VectorTuple {
            group: self.group.clone(),
            components: self.components.iter().map(GroupVector::to_float).collect(),
        }
    }

    /// `(Σ_k ‖v_k‖_p^p)^{1/p}`.
    pub fn p_norm(&self, p: f64) -> Result<f64> {
        check_p(p)?;
        Ok(p_norm_of(
            self.components.iter().flat_map(|v| v.moduli()),
            p,
        ))
    }

    pub fn one_norm(&self) -> f64 {
        let mut acc = Compensated::default();
        for m in self.components.iter().flat_map(|v| v.moduli()) {
            acc.add(m);
        }
        acc.value()
    }

    pub fn sup_norm(&self) -> f64 {
        self.components
            .iter()
            .map(GroupVector::sup_norm)
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exact;

    #[test]
    fn tuple_norm() {
        let z = GroupSpec::FreeAbelian(1);
        let d = GroupVector::<Exact>::identity(&z);
        let t = VectorTuple::new(&z, vec![d.clone(), d]).unwrap();
        assert!((t.p_norm(2.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(t.one_norm(), 2.0);
        assert_eq!(VectorTuple::<Exact>::zero(&z, 3).p_norm(2.0).unwrap(), 0.0);
    }
}
