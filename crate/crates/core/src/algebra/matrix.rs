use super::{Coefficient, GroupVector, VectorTuple};
use crate::group::GroupSpec;
use crate::{Error, Result};

/// An `r × c` matrix over the group ring, acting on column tuples from the
/// left.
#[derive(Clone, Debug, PartialEq)]
pub struct GrMatrix<C> {
    group: GroupSpec,
    rows: usize,
    cols: usize,
    entries: Vec<GroupVector<C>>,
}

impl<C: Coefficient> GrMatrix<C> {
    pub fn from_rows(group: &GroupSpec, rows: Vec<Vec<GroupVector<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|e| e.group() != group) {
            return Err(Error::GroupMismatch {
                left: group.to_string(),
                right: bad.group().to_string(),
            });
        }
        Ok(GrMatrix {
            group: group.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn zeros(group: &GroupSpec, rows: usize, cols: usize) -> Self {
        GrMatrix {
            group: group.clone(),
            rows,
            cols,
            entries: vec![GroupVector::zero(group); rows * cols],
        }
    }

    pub fn identity(group: &GroupSpec, n: usize) -> Self {
        let mut m = Self::zeros(group, n, n);
        for i in 0..n {
            m.entries[i * n + i] = GroupVector::identity(group);
        }
        m
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupVector<C> {
        &self.entries[i * self.cols + j]
    }

    /// `(i, j, entry)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &GroupVector<C>)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, e)| (k / self.cols, k % self.cols, e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupVector::is_zero)
    }

    /// Zero-based positions of the nonzero entries.
    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        self.iter()
            .filter(|(_, _, e)| !e.is_zero())
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    /// `M t` with `(M t)_i = Σ_j M_ij t_j`.
    pub fn apply(&self, t: &VectorTuple<C>) -> Result<VectorTuple<C>> {
        if t.len() != self.cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix applied to a tuple of size {}",
                self.rows,
                self.cols,
                t.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = GroupVector::zero(&self.group);
            for (j, tj) in t.components().iter().enumerate() {
                let e = self.entry(i, j);
                if !e.is_zero() && !tj.is_zero() {
                    acc = acc.add(&e.convolve(tj)?)?;
                }
            }
            out.push(acc);
        }
        VectorTuple::new(&self.group, out)
    }

    /// Row action `t M` with `(t M)_j = Σ_i t_i M_ij`.
    pub fn apply_right(&self, t: &VectorTuple<C>) -> Result<VectorTuple<C>> {
        if t.len() != self.rows {
            return Err(Error::Shape(format!(
                "tuple of size {} times a {}x{} matrix",
                t.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut acc = GroupVector::zero(&self.group);
            for (i, ti) in t.components().iter().enumerate() {
                let e = self.entry(i, j);
                if !e.is_zero() && !ti.is_zero() {
                    acc = acc.add(&ti.convolve(e)?)?;
                }
            }
            out.push(acc);
        }
        VectorTuple::new(&self.group, out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.group, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let mut acc = GroupVector::zero(&self.group);
                for j in 0..self.cols {
                    let (a, b) = (self.entry(i, j), other.entry(j, k));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.convolve(b)?)?;
                    }
                }
                out.entries[i * other.cols + k] = acc;
            }
        }
        Ok(out)
    }

    /// Transpose with every entry sent through `x ↦ x⁻¹`; turns the left
    /// action into the corresponding right action.
    pub fn transpose_antipode(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).antipode());
            }
        }
        GrMatrix {
            group: self.group.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn map(&self, f: impl Fn(&GroupVector<C>) -> GroupVector<C>) -> Self {
        GrMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn support_radius(&self) -> u64 {
        self.entries
            .iter()
            .map(GroupVector::support_radius)
            .max()
            .unwrap_or(0)
    }
}
