use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{Coefficient, GrMatrix, VectorTuple};
use crate::group::{GroupElement, GroupSpec, Window};
use crate::{Error, Result};

/// What happens to outputs that leave the input window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowPolicy {
    /// Drop them: the operator is square on the window.
    Clip,
    /// Keep them: the output window is the input window followed by every
    /// element the image reaches outside it.
    Extend,
}

impl std::str::FromStr for WindowPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "clip" => Ok(WindowPolicy::Clip),
            "extend" => Ok(WindowPolicy::Extend),
            other => Err(Error::param(format!("unknown window policy {other:?}"))),
        }
    }
}

/// Default bound on stored nonzeros.
pub const DEFAULT_NNZ_CAP: usize = 20_000_000;

/// Left multiplication by a group-ring matrix, restricted to tuples
/// supported in a window, as a real sparse matrix.
///
/// Row `i * |out| + k` is component `i` at the `k`-th output element;
/// column `j * |in| + k` is component `j` at the `k`-th input element.
#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    group: GroupSpec,
    input: Window,
    output: Window,
    in_rank: usize,
    out_rank: usize,
    entries: Vec<(usize, usize, f64)>,
}

pub fn truncate<C: Coefficient>(
    m: &GrMatrix<C>,
    input: &Window,
    policy: WindowPolicy,
) -> Result<TruncatedOperator> {
    truncate_with_cap(m, input, policy, DEFAULT_NNZ_CAP)
}

pub fn truncate_with_cap<C: Coefficient>(
    m: &GrMatrix<C>,
    input: &Window,
    policy: WindowPolicy,
    nnz_cap: usize,
) -> Result<TruncatedOperator> {
    let group = m.group();
    for x in input.elements() {
        group.check(x)?;
    }
    let mut output = input.clone();
    // (out component, out element index, in column, value)
    let mut raw = Vec::new();
    for j in 0..m.cols() {
        for (k, x) in input.elements().iter().enumerate() {
            let col = j * input.len() + k;
            for i in 0..m.rows() {
                for (y, c) in m.entry(i, j).terms() {
                    let z = c.to_c64();
                    if z.im != 0.0 {
                        return Err(Error::param("truncation supports real entries only"));
                    }
                    let yx = group.times(y, x);
                    let pos = match policy {
                        WindowPolicy::Clip => match output.index_of(&yx) {
                            Some(pos) => pos,
                            None => continue,
                        },
                        WindowPolicy::Extend => output.push(yx),
                    };
                    raw.push((i, pos, col, z.re));
                    if raw.len() > nnz_cap {
                        return Err(Error::ResourceLimit(format!(
                            "truncated operator exceeds {nnz_cap} nonzeros"
                        )));
                    }
                }
            }
        }
    }
    let width = output.len();
    let mut entries: Vec<(usize, usize, f64)> = raw
        .into_iter()
        .map(|(i, pos, col, v)| (i * width + pos, col, v))
        .collect();
    entries.sort_by_key(|&(r, c, _)| (c, r));
    // merge repeated positions
    let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(entries.len());
    for (r, c, v) in entries {
        match merged.last_mut() {
            Some(last) if last.0 == r && last.1 == c => last.2 += v,
            _ => merged.push((r, c, v)),
        }
    }
    merged.retain(|e| e.2 != 0.0);
    Ok(TruncatedOperator {
        group: group.clone(),
        input: input.clone(),
        output,
        in_rank: m.cols(),
        out_rank: m.rows(),
        entries: merged,
    })
}

impl TruncatedOperator {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.out_rank * self.output.len()
    }

    pub fn cols(&self) -> usize {
        self.in_rank * self.input.len()
    }

    pub fn input(&self) -> &Window {
        &self.input
    }

    pub fn output(&self) -> &Window {
        &self.output
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn row_of(&self, component: usize, x: &GroupElement) -> Option<usize> {
        (component < self.out_rank)
            .then(|| self.output.index_of(x))
            .flatten()
            .map(|k| component * self.output.len() + k)
    }

    pub fn col_of(&self, component: usize, x: &GroupElement) -> Option<usize> {
        (component < self.in_rank)
            .then(|| self.input.index_of(x))
            .flatten()
            .map(|k| component * self.input.len() + k)
    }

    /// `(component, element)` labelling of a column.
    pub fn col_label(&self, col: usize) -> (usize, &GroupElement) {
        let w = self.input.len();
        (col / w, &self.input.elements()[col % w])
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows()];
        for &(r, c, v) in &self.entries {
            out[r] += v * u[c];
        }
        out
    }

    pub fn apply_transpose(&self, r: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols()];
        for &(row, c, v) in &self.entries {
            out[c] += v * r[row];
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows(), self.cols());
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    /// A target tuple as a vector over the output rows. Imaginary parts must
    /// vanish and the support must lie in the output window.
    pub fn target_vector<C: Coefficient>(&self, t: &VectorTuple<C>) -> Result<Vec<f64>> {
        if t.len() != self.out_rank {
            return Err(Error::Shape(format!(
                "target has {} components, operator has {}",
                t.len(),
                self.out_rank
            )));
        }
        let mut v = vec![0.0; self.rows()];
        for (i, comp) in t.components().iter().enumerate() {
            for (x, c) in comp.terms() {
                let z = c.to_c64();
                if z.im != 0.0 {
                    return Err(Error::param("targets must be real"));
                }
                let row = self.row_of(i, x).ok_or_else(|| {
                    Error::Shape(format!(
                        "target element {} lies outside the output window",
                        self.group.format_element(x)
                    ))
                })?;
                v[row] = z.re;
            }
        }
        Ok(v)
    }
}
