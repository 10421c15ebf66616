use std::collections::{HashSet, VecDeque};

use super::{GroupElement, GroupSpec};
use crate::{Error, Result};

/// An ordered, symmetric, identity-free set of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    group: GroupSpec,
    elements: Vec<GroupElement>,
    standard: bool,
}

impl GeneratingSet {
    /// Standard generators and their inverses: `e_1, -e_1, e_2, ...` for
    /// `Z^d`, `a, a^-1, b, b^-1, ...` for `F_k`, `{1, m-1}` for `C_m`, and the
    /// union of the factor sets for products.
    pub fn standard(group: &GroupSpec) -> Self {
        GeneratingSet {
            group: group.clone(),
            elements: standard_elements(group),
            standard: true,
        }
    }

    /// A user-supplied set. Symmetry and absence of the identity are checked;
    /// generation of the whole group is not.
    pub fn custom(group: &GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        for x in &elements {
            group.check(x)?;
        }
        let identity = group.identity();
        if elements.contains(&identity) {
            return Err(Error::InvalidGenerators("contains the identity".into()));
        }
        let set: HashSet<&GroupElement> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::InvalidGenerators("contains duplicates".into()));
        }
        for x in &elements {
            if !set.contains(&group.inverse(x)) {
                return Err(Error::InvalidGenerators(format!(
                    "not symmetric: inverse of {} missing",
                    group.format_element(x)
                )));
            }
        }
        Ok(GeneratingSet {
            group: group.clone(),
            elements,
            standard: false,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }
}

fn standard_elements(group: &GroupSpec) -> Vec<GroupElement> {
    match group {
        GroupSpec::FreeAbelian(d) => {
            let mut out = Vec::with_capacity(2 * d);
            for i in 0..*d {
                for sign in [1, -1] {
                    let mut v = vec![0i64; *d];
                    v[i] = sign;
                    out.push(GroupElement::abelian(&v));
                }
            }
            out
        }
        GroupSpec::Free(k) => (1..=*k as i32)
            .flat_map(|l| {
                [
                    GroupElement::free_word(&[l]),
                    GroupElement::free_word(&[-l]),
                ]
            })
            .collect(),
        GroupSpec::FiniteCyclic(m) => match *m {
            1 => vec![],
            2 => vec![GroupElement::Cyclic(1)],
            m => vec![GroupElement::Cyclic(1), GroupElement::Cyclic(m - 1)],
        },
        GroupSpec::DirectProduct(fs) => {
            let mut out = Vec::new();
            for (i, f) in fs.iter().enumerate() {
                for s in standard_elements(f) {
                    let mut parts: Vec<GroupElement> = fs.iter().map(GroupSpec::identity).collect();
                    parts[i] = s;
                    out.push(GroupElement::Product(parts));
                }
            }
            out
        }
    }
}

pub(super) fn bfs_distance(
    group: &GroupSpec,
    gens: &GeneratingSet,
    target: &GroupElement,
    cap: usize,
) -> Result<u64> {
    let start = group.identity();
    if *target == start {
        return Ok(0);
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0u64)]);
    while let Some((v, d)) = queue.pop_front() {
        for s in gens.elements() {
            let w = group.times(&v, s);
            if w == *target {
                return Ok(d + 1);
            }
            if seen.insert(w.clone()) {
                if seen.len() > cap {
                    return Err(Error::ResourceLimit(format!(
                        "word-length search exceeded {cap} vertices"
                    )));
                }
                queue.push_back((w, d + 1));
            }
        }
    }
    Err(Error::InvalidGenerators(format!(
        "{} is not reachable from the identity",
        group.format_element(target)
    )))
}
