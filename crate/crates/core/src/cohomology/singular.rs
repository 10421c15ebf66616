use nalgebra::{DMatrix, SymmetricEigen};

use super::truncate::TruncatedOperator;
use crate::{Error, Result};

/// Largest Gram dimension accepted by [`smallest_singular_value`].
pub const DEFAULT_DENSE_CAP: usize = 4096;

pub fn smallest_singular_value(t: &TruncatedOperator) -> Result<f64> {
    smallest_singular_value_with_cap(t, DEFAULT_DENSE_CAP)
}

/// Smallest of the `min(rows, cols)` singular values, from the Gram matrix
/// of the shorter side.
pub fn smallest_singular_value_with_cap(t: &TruncatedOperator, cap: usize) -> Result<f64> {
    let k = t.rows().min(t.cols());
    if k == 0 {
        return Err(Error::Shape("empty operator".into()));
    }
    if k > cap {
        return Err(Error::ResourceLimit(format!(
            "Gram matrix of size {k} exceeds the dense cap {cap}"
        )));
    }
    let a = t.to_dense();
    let gram: DMatrix<f64> = if t.cols() <= t.rows() {
        a.transpose() * &a
    } else {
        &a * a.transpose()
    };
    let eig = SymmetricEigen::new(gram);
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(min.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Exact, GrMatrix};
    use crate::cohomology::truncate::{truncate, WindowPolicy};
    use crate::cohomology::{Builtin, ComplexSpec};
    use crate::group::{CayleyBall, GroupSpec, Window};

    #[test]
    fn identity_is_one() {
        let z2 = GroupSpec::FreeAbelian(2);
        let ball = CayleyBall::standard(&z2, 3).unwrap();
        let t = truncate(
            &GrMatrix::<Exact>::identity(&z2, 2),
            ball.window(),
            WindowPolicy::Clip,
        )
        .unwrap();
        assert!((smallest_singular_value(&t).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn z_clip_matches_path_spectrum() {
        // TᵀT is the path Laplacian with one free end, eigenvalues
        // 4 sin²((2k - 1)π / (2(2m + 1)))
        let c = ComplexSpec::builtin(Builtin::Z);
        let mut last = f64::INFINITY;
        for n in [2i64, 5, 10, 40] {
            let t = truncate(
                &c.differentials()[0],
                &Window::interval(-n, n),
                WindowPolicy::Clip,
            )
            .unwrap();
            let m = (2 * n + 1) as f64;
            let exact = 2.0 * (std::f64::consts::PI / (2.0 * (2.0 * m + 1.0))).sin();
            let s = smallest_singular_value(&t).unwrap();
            assert!((s - exact).abs() < 1e-12, "n={n}: {s} vs {exact}");
            assert!(s < last);
            last = s;
        }
    }

    #[test]
    fn cap_is_enforced() {
        let c = ComplexSpec::builtin(Builtin::Z);
        let t = truncate(
            &c.differentials()[0],
            &Window::interval(0, 20),
            WindowPolicy::Clip,
        )
        .unwrap();
        assert!(matches!(
            smallest_singular_value_with_cap(&t, 5),
            Err(Error::ResourceLimit(_))
        ));
    }
}
