//! Supported groups, canonical element forms, generating sets and Cayley balls.
//!
//! The universe is restricted to groups with a cheap normal form: free abelian
//! groups `Z^d`, free groups `F_k`, finite cyclic groups `C_m` and finite
//! direct products of these.

mod ball;
mod coset;
mod element;
mod generators;
mod parse;

use std::fmt;

pub use ball::{BallOptions, CayleyBall, Neighbor, Window, DEFAULT_VERTEX_CAP};
pub use coset::CyclicSubgroup;
pub use element::GroupElement;
pub use generators::GeneratingSet;

use crate::{Error, Result};

/// Letters usable as free generator names. `e` is reserved for the identity.
pub(crate) const FREE_LETTERS: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    FreeAbelian(usize),
    Free(usize),
    FiniteCyclic(u64),
    DirectProduct(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn free_abelian(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidGroup("Z^d needs d >= 1".into()));
        }
        Ok(GroupSpec::FreeAbelian(d))
    }

    pub fn free(k: usize) -> Result<Self> {
        if k == 0 || k > FREE_LETTERS.len() {
            return Err(Error::InvalidGroup(format!(
                "F_k needs 1 <= k <= {}",
                FREE_LETTERS.len()
            )));
        }
        Ok(GroupSpec::Free(k))
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("C_m needs m >= 1".into()));
        }
        Ok(GroupSpec::FiniteCyclic(m))
    }

    pub fn product(factors: Vec<GroupSpec>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::InvalidGroup(
                "a direct product needs at least two factors".into(),
            ));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(GroupSpec::DirectProduct(factors))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::FreeAbelian(d) => Self::free_abelian(*d).map(drop),
            GroupSpec::Free(k) => Self::free(*k).map(drop),
            GroupSpec::FiniteCyclic(m) => Self::cyclic(*m).map(drop),
            GroupSpec::DirectProduct(fs) => Self::product(fs.clone()).map(drop),
        }
    }

    pub fn is_infinite(&self) -> bool {
        match self {
            GroupSpec::FreeAbelian(_) | GroupSpec::Free(_) => true,
            GroupSpec::FiniteCyclic(_) => false,
            GroupSpec::DirectProduct(fs) => fs.iter().any(GroupSpec::is_infinite),
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::FiniteCyclic(m) => Some(*m),
            GroupSpec::DirectProduct(fs) => fs
                .iter()
                .try_fold(1u64, |acc, f| f.order().and_then(|o| acc.checked_mul(o))),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::FreeAbelian(d) => GroupElement::Abelian(smallvec::smallvec![0; *d]),
            GroupSpec::Free(_) => GroupElement::Free(Default::default()),
            GroupSpec::FiniteCyclic(_) => GroupElement::Cyclic(0),
            GroupSpec::DirectProduct(fs) => {
                GroupElement::Product(fs.iter().map(GroupSpec::identity).collect())
            }
        }
    }

    /// Whether `x` is a canonical element of this group.
    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (GroupSpec::FreeAbelian(d), GroupElement::Abelian(v)) => v.len() == *d,
            (GroupSpec::Free(k), GroupElement::Free(w)) => {
                let k = *k as i32;
                w.iter().all(|&l| l != 0 && l.abs() <= k) && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupSpec::FiniteCyclic(m), GroupElement::Cyclic(r)) => r < m,
            (GroupSpec::DirectProduct(fs), GroupElement::Product(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ElementMismatch {
                element: format!("{x:?}"),
                group: self.to_string(),
            })
        }
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.times(x, y))
    }

    pub fn inv(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.inverse(x))
    }

    /// Product of two elements already known to belong to the group.
    pub fn times(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (self, x, y) {
            (GroupSpec::FreeAbelian(_), GroupElement::Abelian(a), GroupElement::Abelian(b)) => {
                GroupElement::Abelian(a.iter().zip(b).map(|(s, t)| s + t).collect())
            }
            (GroupSpec::Free(_), GroupElement::Free(a), GroupElement::Free(b)) => {
                let mut w = a.clone();
                for &l in b {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                GroupElement::Free(w)
            }
            (GroupSpec::FiniteCyclic(m), GroupElement::Cyclic(a), GroupElement::Cyclic(b)) => {
                GroupElement::Cyclic(((*a as u128 + *b as u128) % *m as u128) as u64)
            }
            (GroupSpec::DirectProduct(fs), GroupElement::Product(a), GroupElement::Product(b)) => {
                GroupElement::Product(
                    fs.iter()
                        .zip(a.iter().zip(b))
                        .map(|(f, (s, t))| f.times(s, t))
                        .collect(),
                )
            }
            _ => unreachable!("times called on elements outside {self}"),
        }
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        match (self, x) {
            (GroupSpec::FreeAbelian(_), GroupElement::Abelian(a)) => {
                GroupElement::Abelian(a.iter().map(|s| -s).collect())
            }
            (GroupSpec::Free(_), GroupElement::Free(w)) => {
                GroupElement::Free(w.iter().rev().map(|l| -l).collect())
            }
            (GroupSpec::FiniteCyclic(m), GroupElement::Cyclic(r)) => {
                GroupElement::Cyclic(if *r == 0 { 0 } else { m - r })
            }
            (GroupSpec::DirectProduct(fs), GroupElement::Product(xs)) => {
                GroupElement::Product(fs.iter().zip(xs).map(|(f, x)| f.inverse(x)).collect())
            }
            _ => unreachable!("inverse called on an element outside {self}"),
        }
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: &GroupElement, k: i64) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.power(x, k))
    }

    pub fn power(&self, x: &GroupElement, k: i64) -> GroupElement {
        match (self, x) {
            (GroupSpec::FreeAbelian(_), GroupElement::Abelian(a)) => {
                GroupElement::Abelian(a.iter().map(|s| s * k).collect())
            }
            (GroupSpec::FiniteCyclic(m), GroupElement::Cyclic(r)) => {
                let m = *m as i128;
                GroupElement::Cyclic(((*r as i128 * k as i128).rem_euclid(m)) as u64)
            }
            (GroupSpec::DirectProduct(fs), GroupElement::Product(xs)) => {
                GroupElement::Product(fs.iter().zip(xs).map(|(f, x)| f.power(x, k)).collect())
            }
            _ => {
                let base = if k < 0 { self.inverse(x) } else { x.clone() };
                let mut acc = self.identity();
                let mut sq = base;
                let mut e = k.unsigned_abs();
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.times(&acc, &sq);
                    }
                    e >>= 1;
                    if e > 0 {
                        sq = self.times(&sq, &sq);
                    }
                }
                acc
            }
        }
    }

    /// True when `x` generates an infinite cyclic subgroup.
    pub fn has_infinite_order(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (GroupSpec::FreeAbelian(_), GroupElement::Abelian(a)) => a.iter().any(|&s| s != 0),
            (GroupSpec::Free(_), GroupElement::Free(w)) => !w.is_empty(),
            (GroupSpec::DirectProduct(fs), GroupElement::Product(xs)) => {
                fs.iter().zip(xs).any(|(f, x)| f.has_infinite_order(x))
            }
            _ => false,
        }
    }

    /// Cayley distance to the identity for the standard generating set.
    pub fn standard_length(&self, x: &GroupElement) -> u64 {
        match (self, x) {
            (GroupSpec::FreeAbelian(_), GroupElement::Abelian(a)) => {
                a.iter().map(|s| s.unsigned_abs()).sum()
            }
            (GroupSpec::Free(_), GroupElement::Free(w)) => w.len() as u64,
            (GroupSpec::FiniteCyclic(m), GroupElement::Cyclic(r)) => (*r).min(m - r),
            (GroupSpec::DirectProduct(fs), GroupElement::Product(xs)) => {
                fs.iter().zip(xs).map(|(f, x)| f.standard_length(x)).sum()
            }
            _ => unreachable!("standard_length called on an element outside {self}"),
        }
    }

    /// Word length of `x` with respect to `gens`: closed form for the
    /// standard set, breadth-first search otherwise.
    pub fn word_length(&self, gens: &GeneratingSet, x: &GroupElement) -> Result<u64> {
        self.check(x)?;
        if gens.group() != self {
            return Err(Error::GroupMismatch {
                left: self.to_string(),
                right: gens.group().to_string(),
            });
        }
        if gens.is_standard() {
            return Ok(self.standard_length(x));
        }
        generators::bfs_distance(self, gens, x, DEFAULT_VERTEX_CAP)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        parse::parse_element(self, s)
    }

    pub fn format_element(&self, x: &GroupElement) -> String {
        element::format_element(self, x)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::FreeAbelian(1) => write!(f, "Z"),
            GroupSpec::FreeAbelian(d) => write!(f, "Z^{d}"),
            GroupSpec::Free(k) => write!(f, "F{k}"),
            GroupSpec::FiniteCyclic(m) => write!(f, "C{m}"),
            GroupSpec::DirectProduct(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    match g {
                        GroupSpec::DirectProduct(_) => write!(f, "({g})")?,
                        _ => write!(f, "{g}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_group(s)
    }
}
