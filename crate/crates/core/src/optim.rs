//! Small numerical kernels shared by the energy solver and the
//! distance-to-image minimiser.

/// Sufficient-decrease constant of the Armijo rule.
pub const ARMIJO_C: f64 = 1e-4;
/// Step shrink factor for backtracking.
pub const ARMIJO_SHRINK: f64 = 0.5;
const MIN_STEP: f64 = 1e-20;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    crate::sum::compensated_sum(a.iter().zip(b).map(|(x, y)| x * y))
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Accepted step of a backtracking line search.
#[derive(Clone, Debug)]
pub struct Step {
    pub length: f64,
    pub point: Vec<f64>,
    pub value: f64,
}

/// Backtracking from `initial` until
/// `f(x + t d) ≤ f(x) + c t slope`, with a few ulps of slack on `f(x)` so
/// that steps whose decrease is below rounding are still accepted.
/// Returns `None` once the step underflows.
pub fn armijo(
    mut f: impl FnMut(&[f64]) -> f64,
    x: &[f64],
    fx: f64,
    dir: &[f64],
    slope: f64,
    initial: f64,
) -> Option<Step> {
    let slack = 8.0 * f64::EPSILON * fx.abs();
    let mut t = initial;
    let mut trial = vec![0.0; x.len()];
    while t >= MIN_STEP {
        for ((y, xi), di) in trial.iter_mut().zip(x).zip(dir) {
            *y = xi + t * di;
        }
        let ft = f(&trial);
        if ft.is_finite() && ft <= fx + ARMIJO_C * t * slope + slack {
            return Some(Step {
                length: t,
                point: trial,
                value: ft,
            });
        }
        t *= ARMIJO_SHRINK;
    }
    None
}

#[derive(Clone, Debug)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub relative_residual: f64,
}

/// Preconditioned conjugate gradients for a symmetric positive
/// (semi)definite operator given as `apply(x, out)`. `diag` enables Jacobi
/// preconditioning.
pub fn conjugate_gradient(
    apply: impl Fn(&[f64], &mut [f64]),
    diag: Option<&[f64]>,
    rhs: &[f64],
    rel_tol: f64,
    max_iter: usize,
) -> CgOutcome {
    let n = rhs.len();
    let mut x = vec![0.0; n];
    let b_norm = dot(rhs, rhs).sqrt();
    if b_norm == 0.0 {
        return CgOutcome {
            x,
            iterations: 0,
            relative_residual: 0.0,
        };
    }
    let precondition = |r: &[f64], z: &mut [f64]| match diag {
        Some(d) => {
            for ((zi, ri), di) in z.iter_mut().zip(r).zip(d) {
                *zi = if *di > 0.0 { ri / di } else { *ri };
            }
        }
        None => z.copy_from_slice(r),
    };
    let mut r = rhs.to_vec();
    let mut z = vec![0.0; n];
    precondition(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let mut iterations = 0;
    let mut rel = 1.0;
    while iterations < max_iter {
        apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 || !pap.is_finite() {
            break;
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        iterations += 1;
        rel = dot(&r, &r).sqrt() / b_norm;
        if rel <= rel_tol {
            break;
        }
        precondition(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    CgOutcome {
        x,
        iterations,
        relative_residual: rel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cg_solves_tridiagonal_system() {
        // path Laplacian with Dirichlet ends
        let n = 50;
        let apply = |x: &[f64], out: &mut [f64]| {
            for i in 0..n {
                let left = if i > 0 { x[i - 1] } else { 0.0 };
                let right = if i + 1 < n { x[i + 1] } else { 0.0 };
                out[i] = 2.0 * x[i] - left - right;
            }
        };
        let mut rhs = vec![0.0; n];
        rhs[n - 1] = 1.0;
        let out = conjugate_gradient(apply, Some(&vec![2.0; n]), &rhs, 1e-14, 1000);
        for (i, xi) in out.x.iter().enumerate() {
            assert!((xi - (i + 1) as f64 / (n + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn armijo_finds_decrease() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2);
        let step = armijo(f, &[0.0], 9.0, &[6.0], -36.0, 1.0).unwrap();
        assert!(step.value < 9.0);
        // an ascent direction mislabelled as descent never passes
        assert!(armijo(f, &[3.0], 0.0, &[1.0], -1.0, 1.0).is_none());
    }
}
