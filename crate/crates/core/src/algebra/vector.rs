use std::cmp::Ordering;

use num_complex::Complex64;

use super::Coefficient;
use crate::group::{GroupElement, GroupSpec};
use crate::sum::Compensated;
use crate::{Error, Result};

/// A finitely supported element `Σ a_x x` of the group ring.
///
/// Terms are kept sorted by element with no zero coefficients, so two equal
/// vectors have identical representations.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupVector<C> {
    group: GroupSpec,
    terms: Vec<(GroupElement, C)>,
}

impl<C: Coefficient> GroupVector<C> {
    pub fn zero(group: &GroupSpec) -> Self {
        GroupVector {
            group: group.clone(),
            terms: Vec::new(),
        }
    }

    /// The point mass `δ_x`.
    pub fn delta(group: &GroupSpec, x: GroupElement) -> Result<Self> {
        group.check(&x)?;
        Ok(GroupVector {
            group: group.clone(),
            terms: vec![(x, C::one())],
        })
    }

    pub fn identity(group: &GroupSpec) -> Self {
        GroupVector {
            group: group.clone(),
            terms: vec![(group.identity(), C::one())],
        }
    }

    /// Builds a vector from arbitrary terms; repeated elements are summed and
    /// zeros dropped.
    pub fn from_terms(
        group: &GroupSpec,
        terms: impl IntoIterator<Item = (GroupElement, C)>,
    ) -> Result<Self> {
        let mut terms: Vec<_> = terms.into_iter().collect();
        for (x, _) in &terms {
            group.check(x)?;
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(GroupVector {
            group: group.clone(),
            terms: combine_sorted(terms),
        })
    }

    /// Terms already validated against `group`, in any order.
    pub(crate) fn from_unchecked(group: &GroupSpec, mut terms: Vec<(GroupElement, C)>) -> Self {
        if !terms.is_sorted_by(|a, b| a.0 < b.0) {
            terms.sort_by(|a, b| a.0.cmp(&b.0));
        }
        GroupVector {
            group: group.clone(),
            terms: combine_sorted(terms),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn terms(&self) -> &[(GroupElement, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(GroupElement, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.iter().map(|(x, _)| x)
    }

    pub fn coeff(&self, x: &GroupElement) -> C {
        match self.terms.binary_search_by(|(y, _)| y.cmp(x)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(GroupVector {
            group: self.group.clone(),
            terms: merge(self.terms.clone(), other.terms.clone()),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupVector {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.clone(), -a.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.group);
        }
        GroupVector {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// The convolution `(αβ)_g = Σ_x α_{gx⁻¹} β_x`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let group = &self.group;
        // Each term of the shorter factor contributes one translated copy of
        // the longer one; copies are merged pairwise like a merge sort.
        let mut stack: Vec<Vec<(GroupElement, C)>> = Vec::new();
        let push = |stack: &mut Vec<Vec<(GroupElement, C)>>, mut run: Vec<(GroupElement, C)>| {
            while let Some(top) = stack.last() {
                if top.len() > 2 * run.len() {
                    break;
                }
                let top = stack.pop().unwrap();
                run = merge(top, run);
            }
            stack.push(run);
        };
        if self.len() <= other.len() {
            for (y, a) in &self.terms {
                let run = translated(&other.terms, |x| group.times(y, x), |b| a.clone() * b);
                push(&mut stack, run);
            }
        } else {
            for (x, b) in &other.terms {
                let run = translated(&self.terms, |y| group.times(y, x), |a| a * b.clone());
                push(&mut stack, run);
            }
        }
        let mut acc = Vec::new();
        while let Some(run) = stack.pop() {
            acc = merge(run, acc);
        }
        Ok(GroupVector {
            group: group.clone(),
            terms: acc,
        })
    }

    /// `δ_h · v`, whose support is `h · supp v`.
    pub fn left_translate(&self, h: &GroupElement) -> Result<Self> {
        self.group.check(h)?;
        let run = translated(&self.terms, |x| self.group.times(h, x), |a| a);
        Ok(GroupVector {
            group: self.group.clone(),
            terms: run,
        })
    }

    /// `v · δ_h`, whose support is `supp v · h`.
    pub fn right_translate(&self, h: &GroupElement) -> Result<Self> {
        self.group.check(h)?;
        let run = translated(&self.terms, |x| self.group.times(x, h), |a| a);
        Ok(GroupVector {
            group: self.group.clone(),
            terms: run,
        })
    }

    /// The linear extension of `x ↦ x⁻¹`.
    pub fn antipode(&self) -> Self {
        let run = translated(&self.terms, |x| self.group.inverse(x), |a| a);
        GroupVector {
            group: self.group.clone(),
            terms: run,
        }
    }

    pub fn conj(&self) -> Self {
        GroupVector {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.clone(), a.conj()))
                .collect(),
        }
    }

    /// Sum of all coefficients (the augmentation).
    pub fn coefficient_sum(&self) -> C {
        self.terms
            .iter()
            .fold(C::zero(), |acc, (_, a)| acc + a.clone())
    }

    /// Largest standard word length over the support.
    pub fn support_radius(&self) -> u64 {
        self.support()
            .map(|x| self.group.standard_length(x))
            .max()
            .unwrap_or(0)
    }

    pub fn to_float(&self) -> GroupVector<Complex64> {
        GroupVector {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.clone(), a.to_c64()))
                .filter(|(_, a)| *a != Complex64::new(0.0, 0.0))
                .collect(),
        }
    }

    pub fn moduli(&self) -> impl Iterator<Item = f64> + Clone + '_ {
        self.terms.iter().map(|(_, a)| a.modulus())
    }

    pub fn p_norm(&self, p: f64) -> Result<f64> {
        check_p(p)?;
        Ok(p_norm_of(self.moduli(), p))
    }

    pub fn one_norm(&self) -> f64 {
        let mut acc = Compensated::default();
        for m in self.moduli() {
            acc.add(m);
        }
        acc.value()
    }

    pub fn sup_norm(&self) -> f64 {
        self.moduli().fold(0.0, f64::max)
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("p must exceed 1 (got {p})")))
    }
}

/// `(Σ m_i^p)^{1/p}` with scaling by the largest entry.
pub(crate) fn p_norm_of(moduli: impl Iterator<Item = f64> + Clone, p: f64) -> f64 {
    let top = moduli.clone().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    let mut acc = Compensated::default();
    for m in moduli {
        acc.add((m / top).powf(p));
    }
    top * acc.value().powf(1.0 / p)
}

/// Maps every term, re-sorting only when the map broke the order.
fn translated<C: Coefficient>(
    terms: &[(GroupElement, C)],
    elem: impl Fn(&GroupElement) -> GroupElement,
    coeff: impl Fn(C) -> C,
) -> Vec<(GroupElement, C)> {
    let mut run: Vec<_> = terms
        .iter()
        .map(|(x, a)| (elem(x), coeff(a.clone())))
        .collect();
    if !run.is_sorted_by(|a, b| a.0 < b.0) {
        run.sort_by(|a, b| a.0.cmp(&b.0));
    }
    run.retain(|(_, a)| !a.is_zero());
    run
}

/// Sums adjacent equal keys of a sorted list and drops zeros.
fn combine_sorted<C: Coefficient>(terms: Vec<(GroupElement, C)>) -> Vec<(GroupElement, C)> {
    let mut out: Vec<(GroupElement, C)> = Vec::with_capacity(terms.len());
    for (x, a) in terms {
        match out.last_mut() {
            Some((y, b)) if *y == x => {
                *b = b.clone() + a;
            }
            _ => {
                if let Some((_, b)) = out.last() {
                    if b.is_zero() {
                        out.pop();
                    }
                }
                out.push((x, a));
            }
        }
    }
    if matches!(out.last(), Some((_, b)) if b.is_zero()) {
        out.pop();
    }
    out
}

/// Merges two sorted, zero-free term lists.
fn merge<C: Coefficient>(
    a: Vec<(GroupElement, C)>,
    b: Vec<(GroupElement, C)>,
) -> Vec<(GroupElement, C)> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (x, s) = a.next().unwrap();
                let (_, t) = b.next().unwrap();
                let c = s + t;
                if !c.is_zero() {
                    out.push((x, c));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exact;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn z() -> GroupSpec {
        GroupSpec::FreeAbelian(1)
    }

    fn zvec(pairs: &[(i64, i64)]) -> GroupVector<Exact> {
        GroupVector::from_terms(
            &z(),
            pairs
                .iter()
                .map(|&(k, a)| (GroupElement::abelian(&[k]), Exact::from_ratio(a, 1))),
        )
        .unwrap()
    }

    fn brute_force(a: &GroupVector<Exact>, b: &GroupVector<Exact>) -> GroupVector<Exact> {
        let g = a.group();
        let mut terms = Vec::new();
        for (x, s) in a.terms() {
            for (y, t) in b.terms() {
                terms.push((g.times(x, y), s.clone() * t.clone()));
            }
        }
        GroupVector::from_terms(g, terms).unwrap()
    }

    #[test]
    fn canonical_form() {
        let v = zvec(&[(2, 1), (0, 3), (2, -1), (1, 0)]);
        assert_eq!(v.terms().len(), 1);
        assert_eq!(v, zvec(&[(0, 3)]));
        assert_eq!(v.coeff(&GroupElement::abelian(&[2])), Exact::zero());
    }

    #[test]
    fn telescoping_product() {
        let k = 9;
        let d = zvec(&[(0, 1), (1, -1)]);
        let run = zvec(&(0..=k).map(|j| (j, 1)).collect::<Vec<_>>());
        assert_eq!(d.convolve(&run).unwrap(), zvec(&[(0, 1), (k + 1, -1)]));
    }

    #[test]
    fn free_group_product() {
        let f2 = GroupSpec::Free(2);
        let e = |s: &str| f2.parse_element(s).unwrap();
        let a =
            GroupVector::<Exact>::from_terms(&f2, [(e("a"), Exact::one()), (e("b"), Exact::one())])
                .unwrap();
        let b = GroupVector::delta(&f2, e("a^-1")).unwrap();
        let expected =
            GroupVector::from_terms(&f2, [(e("e"), Exact::one()), (e("b a^-1"), Exact::one())])
                .unwrap();
        assert_eq!(a.convolve(&b).unwrap(), expected);
        assert_eq!(b.convolve(&a).unwrap(), brute_force(&b, &a));
    }

    #[test]
    fn norms() {
        let v = zvec(&[(0, 1), (1, 1), (2, 1), (3, 1)]).to_float();
        assert_eq!(v.p_norm(2.0).unwrap(), 2.0);
        assert_eq!(v.one_norm(), 4.0);
        assert_eq!(v.sup_norm(), 1.0);
        assert!(v.p_norm(1.0).is_err());
        assert_eq!(
            GroupVector::<Complex64>::zero(&z()).p_norm(3.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = zvec(&[(0, 1)]);
        let b = GroupVector::<Exact>::identity(&GroupSpec::Free(2));
        assert!(matches!(a.convolve(&b), Err(Error::GroupMismatch { .. })));
    }

    fn free_vec() -> impl Strategy<Value = GroupVector<Exact>> {
        let word =
            proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..4);
        proptest::collection::vec((word, -3i64..=3), 0..6).prop_map(|ts| {
            GroupVector::from_terms(
                &GroupSpec::Free(2),
                ts.into_iter()
                    .map(|(w, a)| (GroupElement::free_word(&w), Exact::from_ratio(a, 2))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn convolution_matches_brute_force(a in free_vec(), b in free_vec()) {
            prop_assert_eq!(a.convolve(&b).unwrap(), brute_force(&a, &b));
        }

        #[test]
        fn ring_laws(a in free_vec(), b in free_vec(), c in free_vec()) {
            let ab_c = a.convolve(&b).unwrap().convolve(&c).unwrap();
            let a_bc = a.convolve(&b.convolve(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let left = a.convolve(&b.add(&c).unwrap()).unwrap();
            let right = a.convolve(&b).unwrap().add(&a.convolve(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn translation_preserves_norm(a in free_vec(), w in proptest::collection::vec(prop_oneof![Just(1i32), Just(-2)], 0..5)) {
            let h = GroupElement::free_word(&w);
            let a = a.to_float();
            let shifted = a.left_translate(&h).unwrap();
            let (n0, n1) = (a.p_norm(2.5).unwrap(), shifted.p_norm(2.5).unwrap());
            prop_assert!((n0 - n1).abs() <= 1e-14 * n0.max(1.0));
            let delta = GroupVector::delta(a.group(), h).unwrap();
            prop_assert_eq!(delta.convolve(&a).unwrap(), shifted);
        }
    }
}
