use serde::Serialize;

use crate::group::CayleyBall;

/// Solutions of `f(g) = f(gs)` over the edges of a ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub vertices: usize,
    pub components: usize,
    /// Dimension of the space of edge-invariant functions on the ball.
    pub dimension: usize,
    /// Dimension once `f` must also vanish outside the ball. A component
    /// survives only if no edge leaves the ball from it.
    pub dimension_with_decay: usize,
    /// No edge leaves the ball, so the ball is the whole (finite) group.
    pub closed: bool,
}

/// An invariant function is constant on each connected component, so the
/// solution space has one dimension per component.
pub fn invariant_vectors(ball: &CayleyBall) -> InvariantReport {
    let labels = ball.components();
    let components = labels.iter().max().map_or(0, |m| m + 1);
    let mut leaks = vec![false; components];
    for (i, &c) in labels.iter().enumerate() {
        if ball.neighbor_indices(i).iter().any(Option::is_none) {
            leaks[c] = true;
        }
    }
    let surviving = leaks.iter().filter(|l| !**l).count();
    InvariantReport {
        vertices: ball.len(),
        components,
        dimension: components,
        dimension_with_decay: surviving,
        closed: leaks.iter().all(|l| !*l),
    }
}
