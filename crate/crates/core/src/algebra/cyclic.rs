//! Left multiplication by elements of `ℂ⟨g⟩` computed coset by coset.
//!
//! Writing `v = Σ_rep Σ_k c_k g^k rep` over the right cosets `⟨g⟩ rep`, left
//! multiplication by a polynomial in `g` acts on each coefficient sequence
//! `(c_k)` as multiplication of Laurent polynomials in one variable. This is
//! what makes averaging by `x_n` with large `n` linear instead of quadratic.

use std::collections::BTreeMap;

use super::vector::p_norm_of;
use super::{AveragingSpec, Coefficient, GroupVector, Polynomial};
use crate::group::{CyclicSubgroup, GroupElement};
use crate::{Error, Result};

/// `Σ_j coeffs[j] t^{lo + j}`, trimmed at both ends.
#[derive(Clone, Debug, PartialEq)]
struct Laurent<C> {
    lo: i64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> Laurent<C> {
    fn trimmed(mut lo: i64, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            lo += lead as i64;
        }
        Laurent { lo, coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(t - ω) s`.
    fn mul_linear(&self, omega: &C) -> Self {
        let len = self.coeffs.len();
        let mut out = Vec::with_capacity(len + 1);
        for j in 0..=len {
            let prev = if j > 0 {
                self.coeffs[j - 1].clone()
            } else {
                C::zero()
            };
            let here = if j < len {
                omega.clone() * self.coeffs[j].clone()
            } else {
                C::zero()
            };
            out.push(prev - here);
        }
        Self::trimmed(self.lo, out)
    }

    /// `s / (t - ω)`, or `None` when the division is not exact.
    fn div_linear(&self, omega: &C) -> Option<Self> {
        let len = self.coeffs.len();
        if len == 0 {
            return Some(self.clone());
        }
        let mut q = vec![C::zero(); len - 1];
        let mut carry = C::zero();
        for k in (1..len).rev() {
            carry = self.coeffs[k].clone() + omega.clone() * carry;
            q[k - 1] = carry.clone();
        }
        let r = self.coeffs[0].clone() + omega.clone() * carry;
        r.is_zero().then(|| Self::trimmed(self.lo, q))
    }

    /// `x_n s`, where `(x_n s)_m = ω^{-m}/n Σ_{j=m-n}^{m-1} ω^j s_j`.
    fn average(&self, omega: &C, n: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let len = self.coeffs.len();
        let n_us = n as usize;
        let inv_n = C::from_ratio(1, n as i64);
        let twisted: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| omega.unit_powi(self.lo + j as i64) * c.clone())
            .collect();
        let mut out = Vec::with_capacity(len + n_us);
        let mut window = C::zero();
        // output index i corresponds to degree m = lo + 1 + i
        for i in 0..len + n_us - 1 {
            if i < len {
                window = window + twisted[i].clone();
            }
            if i >= n_us {
                window = window - twisted[i - n_us].clone();
            }
            let m = self.lo + 1 + i as i64;
            out.push(omega.unit_powi(-m) * window.clone() * inv_n.clone());
        }
        Self::trimmed(self.lo + 1, out)
    }

    fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Laurent {
                lo: other.lo,
                coeffs: other.coeffs.iter().map(|c| -c.clone()).collect(),
            };
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut out = vec![C::zero(); (hi - lo) as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let i = (self.lo - lo) as usize + j;
            out[i] = out[i].clone() + c.clone();
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            let i = (other.lo - lo) as usize + j;
            out[i] = out[i].clone() - c.clone();
        }
        Self::trimmed(lo, out)
    }
}

/// A group-ring vector split along the right cosets of `⟨g⟩`.
#[derive(Clone, Debug)]
pub struct CosetSeries<C> {
    subgroup: CyclicSubgroup,
    cosets: BTreeMap<GroupElement, Laurent<C>>,
}

impl<C: Coefficient> CosetSeries<C> {
    pub fn new(subgroup: &CyclicSubgroup, v: &GroupVector<C>) -> Result<Self> {
        if v.group() != subgroup.group() {
            return Err(Error::GroupMismatch {
                left: subgroup.group().to_string(),
                right: v.group().to_string(),
            });
        }
        let mut grouped: BTreeMap<GroupElement, Vec<(i64, C)>> = BTreeMap::new();
        for (x, a) in v.terms() {
            let (rep, k) = subgroup.decompose(x);
            grouped.entry(rep).or_default().push((k, a.clone()));
        }
        let cosets = grouped
            .into_iter()
            .map(|(rep, mut ks)| {
                ks.sort_by_key(|(k, _)| *k);
                let lo = ks[0].0;
                let hi = ks[ks.len() - 1].0;
                let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
                for (k, a) in ks {
                    coeffs[(k - lo) as usize] = a;
                }
                (rep, Laurent::trimmed(lo, coeffs))
            })
            .collect();
        Ok(CosetSeries {
            subgroup: subgroup.clone(),
            cosets,
        })
    }

    pub fn subgroup(&self) -> &CyclicSubgroup {
        &self.subgroup
    }

    fn map(&self, f: impl Fn(&Laurent<C>) -> Laurent<C>) -> Self {
        CosetSeries {
            subgroup: self.subgroup.clone(),
            cosets: self
                .cosets
                .iter()
                .map(|(rep, s)| (rep.clone(), f(s)))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        }
    }

    pub fn to_vector(&self) -> GroupVector<C> {
        let mut terms = Vec::new();
        for (rep, s) in &self.cosets {
            for (j, c) in s.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((self.subgroup.compose(rep, s.lo + j as i64), c.clone()));
                }
            }
        }
        GroupVector::from_unchecked(self.subgroup.group(), terms)
    }

    pub fn to_float(&self) -> CosetSeries<num_complex::Complex64> {
        CosetSeries {
            subgroup: self.subgroup.clone(),
            cosets: self
                .cosets
                .iter()
                .map(|(rep, s)| {
                    let coeffs = s.coeffs.iter().map(Coefficient::to_c64).collect();
                    (rep.clone(), Laurent::trimmed(s.lo, coeffs))
                })
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cosets.values().map(|s| s.coeffs.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// `(g - ω) v`.
    pub fn mul_linear(&self, omega: &C) -> Self {
        self.map(|s| s.mul_linear(omega))
    }

    /// The unique `u` with `(g - ω) u = v`, if it is finitely supported.
    pub fn div_linear(&self, omega: &C) -> Result<Self> {
        let mut cosets = BTreeMap::new();
        for (rep, s) in &self.cosets {
            let q = s
                .div_linear(omega)
                .ok_or_else(|| Error::Invariant("vector is not divisible by g - omega".into()))?;
            if !q.is_zero() {
                cosets.insert(rep.clone(), q);
            }
        }
        Ok(CosetSeries {
            subgroup: self.subgroup.clone(),
            cosets,
        })
    }

    /// `x_n v` for the averaging element of `spec`.
    pub fn average(&self, spec: &AveragingSpec<C>) -> Result<Self> {
        if spec.g() != self.subgroup.generator() {
            return Err(Error::param("averaging element uses a different g"));
        }
        Ok(self.map(|s| s.average(spec.omega(), spec.n())))
    }

    /// `(1 - x_n) v`.
    pub fn deflate(&self, spec: &AveragingSpec<C>) -> Result<Self> {
        let avg = self.average(spec)?;
        let mut cosets = self.cosets.clone();
        for (rep, s) in avg.cosets {
            let entry = cosets.entry(rep).or_insert_with(|| Laurent {
                lo: 0,
                coeffs: Vec::new(),
            });
            *entry = entry.sub(&s);
        }
        cosets.retain(|_, s| !s.is_zero());
        Ok(CosetSeries {
            subgroup: self.subgroup.clone(),
            cosets,
        })
    }

    /// `q(g) v`.
    pub fn mul_polynomial(&self, q: &Polynomial<C>) -> Self {
        let qc = q.coeffs();
        self.map(|s| {
            if qc.is_empty() {
                return Laurent {
                    lo: 0,
                    coeffs: Vec::new(),
                };
            }
            let mut out = vec![C::zero(); s.coeffs.len() + qc.len() - 1];
            for (j, a) in s.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, c) in qc.iter().enumerate() {
                    out[j + k] = out[j + k].clone() + a.clone() * c.clone();
                }
            }
            Laurent::trimmed(s.lo, out)
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.subgroup.generator() != other.subgroup.generator()
            || self.subgroup.group() != other.subgroup.group()
        {
            return Err(Error::param("coset series over different subgroups"));
        }
        let mut cosets = self.cosets.clone();
        for (rep, s) in &other.cosets {
            let entry = cosets.entry(rep.clone()).or_insert_with(|| Laurent {
                lo: 0,
                coeffs: Vec::new(),
            });
            *entry = entry.sub(s);
        }
        cosets.retain(|_, s| !s.is_zero());
        Ok(CosetSeries {
            subgroup: self.subgroup.clone(),
            cosets,
        })
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.cosets
            .values()
            .map(|s| s.coeffs.iter().filter(|c| !c.is_zero()).count())
            .sum()
    }

    pub fn p_norm(&self, p: f64) -> Result<f64> {
        super::vector::check_p(p)?;
        Ok(p_norm_of(
            self.cosets
                .values()
                .flat_map(|s| s.coeffs.iter().map(Coefficient::modulus)),
            p,
        ))
    }

    pub fn one_norm(&self) -> f64 {
        crate::sum::compensated_sum(
            self.cosets
                .values()
                .flat_map(|s| s.coeffs.iter().map(Coefficient::modulus)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{averaging_element, linear_factor, Exact};
    use crate::group::GroupSpec;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn f2_vec(words: &[(Vec<i32>, i64)]) -> GroupVector<Exact> {
        GroupVector::from_terms(
            &GroupSpec::Free(2),
            words
                .iter()
                .map(|(w, a)| (GroupElement::free_word(w), Exact::from_ratio(*a, 3))),
        )
        .unwrap()
    }

    fn word() -> impl Strategy<Value = Vec<i32>> {
        proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..5)
    }

    fn omega() -> impl Strategy<Value = Exact> {
        prop_oneof![
            Just(Exact::from_ratio(1, 1)),
            Just(Exact::from_ratio(-1, 1)),
            Just(Exact::i()),
            Just(Exact::parse_parts("3/5", "-4/5").unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn structured_ops_match_convolution(
            g in word(),
            terms in proptest::collection::vec((word(), -4i64..=4), 0..6),
            w in omega(),
            n in 1u64..6,
        ) {
            let group = GroupSpec::Free(2);
            let g = GroupElement::free_word(&g);
            prop_assume!(group.has_infinite_order(&g));
            let h = CyclicSubgroup::new(&group, &g).unwrap();
            let v = f2_vec(&terms);
            let series = CosetSeries::new(&h, &v).unwrap();
            prop_assert_eq!(series.to_vector(), v.clone());

            let factor = linear_factor(&group, &g, &w).unwrap();
            let prod = factor.convolve(&v).unwrap();
            prop_assert_eq!(series.mul_linear(&w).to_vector(), prod.clone());
            let back = CosetSeries::new(&h, &prod).unwrap().div_linear(&w).unwrap();
            prop_assert_eq!(back.to_vector(), v.clone());

            let spec = AveragingSpec::new(&group, g.clone(), w, n).unwrap();
            let avg = averaging_element(&spec).convolve(&v).unwrap();
            prop_assert_eq!(series.average(&spec).unwrap().to_vector(), avg.clone());
            prop_assert_eq!(series.deflate(&spec).unwrap().to_vector(), v.sub(&avg).unwrap());
        }
    }

    #[test]
    fn float_average_norm() {
        let z = GroupSpec::FreeAbelian(1);
        let g = GroupElement::abelian(&[1]);
        let h = CyclicSubgroup::new(&z, &g).unwrap();
        let spec = AveragingSpec::new(&z, g, Complex64::new(-1.0, 0.0), 1000).unwrap();
        let delta = CosetSeries::new(&h, &GroupVector::identity(&z)).unwrap();
        let norm = delta.average(&spec).unwrap().p_norm(2.0).unwrap();
        assert!((norm - spec.norm_law(2.0)).abs() < 1e-14);
    }

    #[test]
    fn indivisible_vector_is_reported() {
        let z = GroupSpec::FreeAbelian(1);
        let g = GroupElement::abelian(&[1]);
        let h = CyclicSubgroup::new(&z, &g).unwrap();
        let delta = CosetSeries::new(&h, &GroupVector::<Exact>::identity(&z)).unwrap();
        assert!(matches!(
            delta.div_linear(&Exact::from_ratio(1, 1)),
            Err(Error::Invariant(_))
        ));
    }
}
