use crate::energy::GraphFunction;
use crate::group::{CayleyBall, GroupSpec};
use crate::{Error, Result};

/// `f_n(x) = max(0, 1 - |x|/n)` on the standard ball of radius `n` in `Z^d`.
/// It vanishes on the sphere of radius `n`, so every edge carrying energy
/// lies inside the ball.
pub fn tent_function(group: &GroupSpec, n: usize) -> Result<GraphFunction> {
    if !matches!(group, GroupSpec::FreeAbelian(_)) {
        return Err(Error::param("tent functions are defined on Z^d"));
    }
    if n == 0 {
        return Err(Error::param("tent width must be positive"));
    }
    let ball = CayleyBall::standard(group, n)?;
    let values = (0..ball.len())
        .map(|i| 1.0 - ball.depth(i) as f64 / n as f64)
        .collect();
    GraphFunction::new(ball, values)
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `I_p(f_n)` on `Z^d`. Every edge joins spheres `k` and `k + 1` and, for
/// `k < n`, carries a jump of `1/n`. A point of the sphere `k + 1` with `j`
/// nonzero coordinates has `j` neighbours on sphere `k`, and there are
/// `C(d, j) 2^j C(k, j - 1)` such points.
pub fn tent_energy(n: usize, p: f64, d: usize) -> f64 {
    let (n64, d64) = (n as u64, d as u64);
    let mut edges = 0.0;
    for k in 0..n64 {
        for j in 1..=d64.min(k + 1) {
            edges += j as f64 * binomial(d64, j) * 2f64.powi(j as i32) * binomial(k, j - 1);
        }
    }
    2.0 * edges * (n as f64).powf(-p)
}
