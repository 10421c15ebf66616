use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::io::{vector_from_records, vector_to_records, TermRecord};
use crate::algebra::{Coefficient, Exact, GrMatrix, GroupVector};
use crate::group::{GroupElement, GroupSpec};
use crate::{Error, Result};

/// The first few terms `ℂG^{e_N} → … → ℂG^{e_1} → ℂG^{e_0}` of a free
/// resolution, with `d_n` an `e_n × e_{n+1}` matrix acting on columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSpec {
    group: GroupSpec,
    ranks: Vec<usize>,
    differentials: Vec<GrMatrix<Exact>>,
}

/// Built-in resolutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Z,
    Z2,
    /// Free group of the given rank.
    Free(usize),
}

impl std::str::FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" => return Ok(Builtin::Z),
            "Z2" | "Z^2" => return Ok(Builtin::Z2),
            _ => {}
        }
        let rank = t
            .strip_prefix("F_")
            .or_else(|| t.strip_prefix('F'))
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::param(format!("unknown built-in complex {t:?}")))?;
        Ok(Builtin::Free(rank))
    }
}

/// Outcome of multiplying consecutive differentials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComposeCheck {
    pub pass: bool,
    /// For each pair `(d_n, d_{n+1})`, the 1-based `(row, column)` positions
    /// where `d_n d_{n+1}` is nonzero.
    pub residual_support: Vec<Vec<(usize, usize)>>,
}

fn delta_minus_one(group: &GroupSpec, x: GroupElement) -> GroupVector<Exact> {
    GroupVector::from_unchecked(
        group,
        vec![
            (x, Exact::from_ratio(1, 1)),
            (group.identity(), Exact::from_ratio(-1, 1)),
        ],
    )
}

impl ComplexSpec {
    /// Validates `e_0 = 1` and the shapes of the differentials.
    pub fn new(
        group: &GroupSpec,
        ranks: Vec<usize>,
        differentials: Vec<GrMatrix<Exact>>,
    ) -> Result<Self> {
        if ranks.first() != Some(&1) {
            return Err(Error::Shape("e_0 must be 1".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.group() != group {
                return Err(Error::GroupMismatch {
                    left: group.to_string(),
                    right: d.group().to_string(),
                });
            }
            if d.rows() != ranks[n] || d.cols() != ranks[n + 1] {
                return Err(Error::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[n],
                    ranks[n + 1]
                )));
            }
        }
        Ok(ComplexSpec {
            group: group.clone(),
            ranks,
            differentials,
        })
    }

    pub fn builtin(kind: Builtin) -> Self {
        let spec = match kind {
            Builtin::Z => {
                let z = GroupSpec::FreeAbelian(1);
                let d0 = GrMatrix::from_rows(
                    &z,
                    vec![vec![delta_minus_one(&z, GroupElement::abelian(&[1]))]],
                )
                .expect("1x1");
                ComplexSpec::new(&z, vec![1, 1], vec![d0])
            }
            Builtin::Z2 => {
                let z2 = GroupSpec::FreeAbelian(2);
                let a = delta_minus_one(&z2, GroupElement::abelian(&[1, 0]));
                let b = delta_minus_one(&z2, GroupElement::abelian(&[0, 1]));
                let d0 = GrMatrix::from_rows(&z2, vec![vec![a.clone(), b.clone()]]).expect("1x2");
                let d1 = GrMatrix::from_rows(&z2, vec![vec![b], vec![a.neg()]]).expect("2x1");
                ComplexSpec::new(&z2, vec![1, 2, 1], vec![d0, d1])
            }
            Builtin::Free(k) => {
                let f = GroupSpec::Free(k);
                let row = (1..=k as i32)
                    .map(|l| delta_minus_one(&f, GroupElement::free_word(&[l])))
                    .collect();
                let d0 = GrMatrix::from_rows(&f, vec![row]).expect("1xk");
                ComplexSpec::new(&f, vec![1, k], vec![d0])
            }
        }
        .expect("built-in complexes are well formed");
        debug_assert!(spec.compose_check().pass && spec.augmentation_defects().is_empty());
        spec
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[GrMatrix<Exact>] {
        &self.differentials
    }

    /// Exact products `d_n d_{n+1}` for every consecutive pair.
    pub fn compose_check(&self) -> ComposeCheck {
        let residual_support: Vec<Vec<(usize, usize)>> = self
            .differentials
            .windows(2)
            .map(|w| {
                w[0].mul(&w[1])
                    .expect("shapes validated at construction")
                    .nonzero_positions()
                    .into_iter()
                    .map(|(i, j)| (i + 1, j + 1))
                    .collect()
            })
            .collect();
        ComposeCheck {
            pass: residual_support.iter().all(Vec::is_empty),
            residual_support,
        }
    }

    /// 1-based columns of `d_0` whose coefficients do not sum to zero.
    pub fn augmentation_defects(&self) -> Vec<usize> {
        let Some(d0) = self.differentials.first() else {
            return Vec::new();
        };
        (0..d0.cols())
            .filter(|&j| !d0.entry(0, j).coefficient_sum().is_zero())
            .map(|j| j + 1)
            .collect()
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            group: self.group.to_string(),
            ranks: self.ranks.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|d| {
                    (0..d.rows())
                        .map(|i| {
                            (0..d.cols())
                                .map(|j| vector_to_records(d.entry(i, j)))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// On-disk form: each differential is a list of rows, each row a list of
/// entries, each entry a list of `{element, re, im}` records.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub group: String,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<Vec<TermRecord>>>>,
}

impl ComplexFile {
    pub fn into_spec(&self) -> Result<ComplexSpec> {
        let group: GroupSpec = self.group.parse()?;
        let differentials = self
            .differentials
            .iter()
            .map(|rows| {
                let rows = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|entry| vector_from_records(&group, entry))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                GrMatrix::from_rows(&group, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexSpec::new(&group, self.ranks.clone(), differentials)
    }
}
