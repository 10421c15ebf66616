use std::collections::HashMap;
use std::sync::Arc;

use super::{GeneratingSet, GroupElement, GroupSpec};
use crate::{Error, Result};

pub const DEFAULT_VERTEX_CAP: usize = 4_000_000;

#[derive(Clone, Copy, Debug)]
pub struct BallOptions {
    pub vertex_cap: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

/// An ordered finite set of group elements with an index lookup.
#[derive(Clone, Debug)]
pub struct Window {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl Window {
    /// Duplicates are dropped, first occurrence wins.
    pub fn new(elements: impl IntoIterator<Item = GroupElement>) -> Self {
        let mut w = Window {
            elements: Vec::new(),
            index: HashMap::new(),
        };
        for x in elements {
            w.push(x);
        }
        w
    }

    pub(crate) fn push(&mut self, x: GroupElement) -> usize {
        if let Some(&i) = self.index.get(&x) {
            return i;
        }
        let i = self.elements.len();
        self.index.insert(x.clone(), i);
        self.elements.push(x);
        i
    }

    /// `{lo, lo+1, ..., hi}` inside `Z`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        Window::new((lo..=hi).map(|k| GroupElement::abelian(&[k])))
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

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).copied()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Neighbor {
    pub generator: GroupElement,
    pub element: GroupElement,
    /// Position of `element` in the ball, if it lies inside.
    pub index: Option<usize>,
}

impl Neighbor {
    pub fn inside(&self) -> bool {
        self.index.is_some()
    }
}

/// The vertices of word length at most `R`, indexed in breadth-first order
/// (generator order breaks ties), with the neighbor table precomputed.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    group: GroupSpec,
    gens: GeneratingSet,
    radius: usize,
    window: Window,
    depth: Vec<usize>,
    /// `neighbors[v * |S| + j]` is the index of `v * s_j`, if inside.
    neighbors: Vec<Option<usize>>,
}

impl CayleyBall {
    pub fn new(group: &GroupSpec, gens: &GeneratingSet, radius: usize) -> Result<Arc<Self>> {
        Self::with_options(group, gens, radius, BallOptions::default())
    }

    pub fn standard(group: &GroupSpec, radius: usize) -> Result<Arc<Self>> {
        Self::new(group, &GeneratingSet::standard(group), radius)
    }

    pub fn with_options(
        group: &GroupSpec,
        gens: &GeneratingSet,
        radius: usize,
        options: BallOptions,
    ) -> Result<Arc<Self>> {
        if gens.group() != group {
            return Err(Error::GroupMismatch {
                left: group.to_string(),
                right: gens.group().to_string(),
            });
        }
        let mut window = Window::new([group.identity()]);
        let mut depth = vec![0usize];
        let mut frontier_start = 0;
        for r in 1..=radius {
            let frontier_end = window.len();
            for v in frontier_start..frontier_end {
                for s in gens.elements() {
                    let w = group.times(&window.elements()[v], s);
                    if window.index_of(&w).is_none() {
                        if window.len() >= options.vertex_cap {
                            return Err(Error::ResourceLimit(format!(
                                "ball of radius {radius} exceeds {} vertices",
                                options.vertex_cap
                            )));
                        }
                        window.push(w);
                        depth.push(r);
                    }
                }
            }
            frontier_start = frontier_end;
            if frontier_start == window.len() {
                break;
            }
        }
        let k = gens.len();
        let mut neighbors = Vec::with_capacity(window.len() * k);
        for v in window.elements() {
            for s in gens.elements() {
                neighbors.push(window.index_of(&group.times(v, s)));
            }
        }
        Ok(Arc::new(CayleyBall {
            group: group.clone(),
            gens: gens.clone(),
            radius,
            window,
            depth,
            neighbors,
        }))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn gens(&self) -> &GeneratingSet {
        &self.gens
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn vertices(&self) -> &[GroupElement] {
        self.window.elements()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn vertex(&self, i: usize) -> &GroupElement {
        &self.window.elements()[i]
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.window.index_of(x)
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    /// Word length strictly below the radius.
    pub fn is_interior(&self, i: usize) -> bool {
        self.depth[i] < self.radius
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_interior(i))
    }

    pub fn frontier(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.is_interior(i))
    }

    /// Neighbor indices of vertex `i` in generator order.
    pub fn neighbor_indices(&self, i: usize) -> &[Option<usize>] {
        let k = self.gens.len();
        &self.neighbors[i * k..(i + 1) * k]
    }

    pub fn neighbors(&self, v: &GroupElement) -> Result<Vec<Neighbor>> {
        let i = self
            .index_of(v)
            .ok_or_else(|| Error::NotInBall(self.group.format_element(v)))?;
        Ok(self
            .gens
            .elements()
            .iter()
            .zip(self.neighbor_indices(i))
            .map(|(s, &index)| Neighbor {
                generator: s.clone(),
                element: self.group.times(v, s),
                index,
            })
            .collect())
    }

    /// Connected components of the graph induced on the ball.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        for start in 0..self.len() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbor_indices(v).iter().flatten() {
                    if label[*w] == usize::MAX {
                        label[*w] = next;
                        stack.push(*w);
                    }
                }
            }
            next += 1;
        }
        label
    }
}
