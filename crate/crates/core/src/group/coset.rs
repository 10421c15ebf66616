use smallvec::SmallVec;

use super::{GroupElement, GroupSpec};
use crate::{Error, Result};

/// The infinite cyclic subgroup `H = <g>` together with a canonical choice of
/// representative for each right coset `Hx`, so every `x` factors uniquely as
/// `x = g^k * rep`.
#[derive(Clone, Debug)]
pub struct CyclicSubgroup {
    group: GroupSpec,
    generator: GroupElement,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    /// First coordinate where `g` is nonzero.
    Abelian { g: Vec<i64>, pivot: usize },
    /// `g = w c w^-1` with `c` cyclically reduced.
    Free {
        conj: GroupElement,
        core: GroupElement,
    },
    /// First factor in which `g` has infinite order.
    Product {
        pivot: usize,
        inner: Box<CyclicSubgroup>,
    },
}

impl CyclicSubgroup {
    pub fn new(group: &GroupSpec, g: &GroupElement) -> Result<Self> {
        group.check(g)?;
        if !group.has_infinite_order(g) {
            return Err(Error::FiniteOrder(group.format_element(g)));
        }
        let kind = match (group, g) {
            (GroupSpec::FreeAbelian(_), GroupElement::Abelian(a)) => Kind::Abelian {
                g: a.to_vec(),
                pivot: a.iter().position(|&s| s != 0).unwrap(),
            },
            (GroupSpec::Free(_), GroupElement::Free(w)) => {
                let mut lo = 0;
                let mut hi = w.len();
                while hi - lo >= 2 && w[lo] == -w[hi - 1] {
                    lo += 1;
                    hi -= 1;
                }
                Kind::Free {
                    conj: GroupElement::Free(w[..lo].iter().copied().collect::<SmallVec<_>>()),
                    core: GroupElement::Free(w[lo..hi].iter().copied().collect::<SmallVec<_>>()),
                }
            }
            (GroupSpec::DirectProduct(fs), GroupElement::Product(xs)) => {
                let pivot = fs
                    .iter()
                    .zip(xs)
                    .position(|(f, x)| f.has_infinite_order(x))
                    .unwrap();
                Kind::Product {
                    pivot,
                    inner: Box::new(CyclicSubgroup::new(&fs[pivot], &xs[pivot])?),
                }
            }
            _ => unreachable!(),
        };
        Ok(CyclicSubgroup {
            group: group.clone(),
            generator: g.clone(),
            kind,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn generator(&self) -> &GroupElement {
        &self.generator
    }

    /// Returns `(rep, k)` with `x = g^k * rep`.
    pub fn decompose(&self, x: &GroupElement) -> (GroupElement, i64) {
        match (&self.kind, x) {
            (Kind::Abelian { g, pivot }, GroupElement::Abelian(a)) => {
                let k = a[*pivot].div_euclid(g[*pivot]);
                let rep = a.iter().zip(g).map(|(s, t)| s - k * t).collect();
                (GroupElement::Abelian(rep), k)
            }
            (Kind::Free { conj, core }, _) => {
                let f = &self.group;
                let y = f.times(&f.inverse(conj), x);
                let core_inv = f.inverse(core);
                let len = |e: &GroupElement| match e {
                    GroupElement::Free(w) => w.len(),
                    _ => unreachable!(),
                };
                // |core^j y| is convex in j; walk downhill, then slide to the
                // smallest minimiser.
                let mut j = 0i64;
                let mut cur = y;
                let mut cur_len = len(&cur);
                loop {
                    let up = f.times(core, &cur);
                    if len(&up) < cur_len {
                        cur_len = len(&up);
                        cur = up;
                        j += 1;
                        continue;
                    }
                    let down = f.times(&core_inv, &cur);
                    if len(&down) <= cur_len {
                        cur_len = len(&down);
                        cur = down;
                        j -= 1;
                        continue;
                    }
                    break;
                }
                (f.times(conj, &cur), -j)
            }
            (Kind::Product { pivot, inner }, GroupElement::Product(xs)) => {
                let (_, k) = inner.decompose(&xs[*pivot]);
                let shift = self.group.power(&self.generator, -k);
                (self.group.times(&shift, x), k)
            }
            _ => unreachable!("decompose called on an element outside {}", self.group),
        }
    }

    /// `g^k * rep`.
    pub fn compose(&self, rep: &GroupElement, k: i64) -> GroupElement {
        self.group.times(&self.group.power(&self.generator, k), rep)
    }
}
