use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{Coefficient, Exact, GroupVector, Polynomial};
use crate::group::{GroupElement, GroupSpec};
use crate::{Error, Result};

/// Parameters of the averaging element `x_n = (1/n) Σ_{k=1}^n ω^{-k} g^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AveragingSpec<C> {
    group: GroupSpec,
    g: GroupElement,
    omega: C,
    n: u64,
}

impl<C: Coefficient> AveragingSpec<C> {
    pub fn new(group: &GroupSpec, g: GroupElement, omega: C, n: u64) -> Result<Self> {
        group.check(&g)?;
        if !group.has_infinite_order(&g) {
            return Err(Error::FiniteOrder(group.format_element(&g)));
        }
        if omega.cmp_modulus_one() != Ordering::Equal {
            return Err(Error::param(format!(
                "|omega| must be 1 (got {})",
                omega.modulus()
            )));
        }
        if n == 0 {
            return Err(Error::param("n must be positive"));
        }
        Ok(AveragingSpec {
            group: group.clone(),
            g,
            omega,
            n,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn g(&self) -> &GroupElement {
        &self.g
    }

    pub fn omega(&self) -> &C {
        &self.omega
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn with_n(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n must be positive"));
        }
        Ok(AveragingSpec { n, ..self.clone() })
    }

    /// `n^{(1-p)/p}`, the exact p-norm of `x_n`.
    pub fn norm_law(&self, p: f64) -> f64 {
        (self.n as f64).powf((1.0 - p) / p)
    }

    /// Coefficients `ω^{-k}/n` for `k = 1..=n`.
    pub(crate) fn weights(&self) -> Vec<C> {
        let inv = self.omega.inverse().expect("unit omega is nonzero");
        let scale = C::from_ratio(1, self.n as i64);
        let mut w = inv.unit_powers(self.n as usize + 1);
        w.remove(0);
        w.into_iter().map(|c| c * scale.clone()).collect()
    }
}

/// The averaging element `x_n`.
pub fn averaging_element<C: Coefficient>(spec: &AveragingSpec<C>) -> GroupVector<C> {
    let group = spec.group();
    let mut terms = Vec::with_capacity(spec.n as usize);
    let mut power = group.identity();
    for w in spec.weights() {
        power = group.times(spec.g(), &power);
        terms.push((power.clone(), w));
    }
    GroupVector::from_unchecked(group, terms)
}

/// `d` with `1 - x_n = (g - ω) d`, from synthetic division of
/// `1 - (1/n) Σ ω^{-k} t^k` by `t - ω`.
pub fn factor_witness(spec: &AveragingSpec<Exact>) -> Result<GroupVector<Exact>> {
    factor_polynomial(spec)?.at(spec.group(), spec.g())
}

/// The witness of [`factor_witness`] as a polynomial in `g`.
pub fn factor_polynomial(spec: &AveragingSpec<Exact>) -> Result<Polynomial<Exact>> {
    let mut coeffs = Vec::with_capacity(spec.n as usize + 1);
    coeffs.push(Exact::one());
    coeffs.extend(spec.weights().into_iter().map(|w| -w));
    let (q, r) = Polynomial::new(coeffs).div_linear(spec.omega());
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "1 - x_n leaves remainder {r} on division by t - omega"
        )));
    }
    Ok(q)
}

/// A truncated Neumann series for `(g - ω)^{-1}` in `ℓ¹(⟨g⟩)`.
#[derive(Clone, Debug)]
pub struct NeumannInverse<C> {
    pub inverse: GroupVector<C>,
    /// `|ω|^{-(K+1)}` or `|ω|^{K+1}`, the predicted `ℓ¹` residual.
    pub predicted_residual: f64,
}

/// For `|ω| > 1`, `u_K = -Σ_{k=0}^K ω^{-(k+1)} g^k`; for `|ω| < 1`,
/// `u_K = Σ_{k=0}^K ω^k g^{-(k+1)}`. Either way
/// `(g - ω) u_K = 1 - (residual term)`.
pub fn neumann_inverse<C: Coefficient>(
    group: &GroupSpec,
    g: &GroupElement,
    omega: &C,
    order: u64,
) -> Result<NeumannInverse<C>> {
    group.check(g)?;
    if !group.has_infinite_order(g) {
        return Err(Error::FiniteOrder(group.format_element(g)));
    }
    let m = omega.modulus();
    let mut terms = Vec::with_capacity(order as usize + 1);
    let predicted_residual;
    match omega.cmp_modulus_one() {
        Ordering::Equal => return Err(Error::UnitModulus),
        Ordering::Greater => {
            let inv = omega.inverse().expect("nonzero");
            let mut c = -inv.clone();
            let mut power = group.identity();
            for _ in 0..=order {
                terms.push((power.clone(), c.clone()));
                c = c * inv.clone();
                power = group.times(g, &power);
            }
            predicted_residual = m.powf(-((order + 1) as f64));
        }
        Ordering::Less => {
            let g_inv = group.inverse(g);
            let mut c = C::one();
            let mut power = g_inv.clone();
            for _ in 0..=order {
                terms.push((power.clone(), c.clone()));
                c = c * omega.clone();
                power = group.times(&g_inv, &power);
            }
            predicted_residual = m.powf((order + 1) as f64);
        }
    }
    Ok(NeumannInverse {
        inverse: GroupVector::from_unchecked(group, terms),
        predicted_residual,
    })
}

/// `g - ω` as a group-ring element.
pub fn linear_factor<C: Coefficient>(
    group: &GroupSpec,
    g: &GroupElement,
    omega: &C,
) -> Result<GroupVector<C>> {
    Polynomial::linear(omega.clone()).at(group, g)
}
