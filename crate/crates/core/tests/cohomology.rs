use lpcoh_core::algebra::{AveragingSpec, Coefficient, Exact, GroupVector, VectorTuple};
use lpcoh_core::cohomology::{
    composed_density, density_experiment, distance_to_image, invariant_vectors,
    smallest_singular_value, truncate, Builtin, ComplexSpec, NSelection, WindowPolicy,
};
use lpcoh_core::group::{CayleyBall, GroupElement, GroupSpec, Window};
use proptest::prelude::*;

fn z() -> GroupSpec {
    GroupSpec::FreeAbelian(1)
}

#[test]
fn koszul_maps_compose_to_zero_on_tuples() {
    let c = ComplexSpec::builtin(Builtin::Z2);
    let group = c.group().clone();
    let v = VectorTuple::new(
        &group,
        vec![GroupVector::from_terms(
            &group,
            vec![
                (GroupElement::abelian(&[2, -1]), Exact::from_ratio(3, 4)),
                (GroupElement::abelian(&[0, 5]), Exact::from_ratio(-1, 1)),
            ],
        )
        .unwrap()],
    )
    .unwrap();
    let once = c.differentials()[1].apply(&v).unwrap();
    assert_eq!(once.len(), 2);
    assert!(c.differentials()[0].apply(&once).unwrap().is_zero());
}

#[test]
fn distance_shrinks_as_the_window_grows() {
    let c = ComplexSpec::builtin(Builtin::Z);
    let mut last = f64::INFINITY;
    for n in [4i64, 8, 16, 32] {
        let t = truncate(
            &c.differentials()[0],
            &Window::interval(0, n),
            WindowPolicy::Extend,
        )
        .unwrap();
        let mut v = vec![0.0; t.rows()];
        v[t.row_of(0, &GroupElement::abelian(&[0])).unwrap()] = 1.0;
        let rep = distance_to_image(&t, &v, 1.5).unwrap();
        // explicit witness u_k = -(1 - k/n) leaves (1/n) Σ δ_k
        assert!(rep.distance <= (n as f64).powf(-1.0 / 3.0));
        assert!(rep.distance < last);
        last = rep.distance;
    }
}

#[test]
fn free_group_gap_persists() {
    let c = ComplexSpec::builtin(Builtin::Free(2));
    let values: Vec<f64> = (2..=4)
        .map(|r| {
            let ball = CayleyBall::standard(c.group(), r).unwrap();
            let t = truncate(&c.differentials()[0], ball.window(), WindowPolicy::Clip).unwrap();
            smallest_singular_value(&t).unwrap()
        })
        .collect();
    // the 4-regular tree has spectral gap 4 - 2√3
    let gap = (4.0 - 2.0 * 3f64.sqrt()).sqrt();
    for s in &values {
        assert!(*s >= gap - 1e-9, "{values:?}");
    }
}

#[test]
fn density_on_z_squared() {
    let z2 = GroupSpec::FreeAbelian(2);
    let b = VectorTuple::new(
        &z2,
        vec![
            GroupVector::identity(&z2),
            GroupVector::delta(&z2, GroupElement::abelian(&[1, 1]))
                .unwrap()
                .scale(&Exact::from_ratio(-1, 2)),
        ],
    )
    .unwrap();
    let spec = AveragingSpec::new(
        &z2,
        GroupElement::abelian(&[1, 0]),
        Exact::from_ratio(-1, 1),
        1,
    )
    .unwrap();
    let rep = density_experiment(&b, &spec, 2.0, 0.05, NSelection::Recipe).unwrap();
    assert!(rep.achieved < 0.05);
    assert!(rep.witness_verified);
    assert!(density_experiment(&b, &spec, 2.0, 0.0, NSelection::Recipe).is_err());
}

#[test]
fn composed_density_with_imaginary_root() {
    let b = VectorTuple::single(GroupVector::identity(&z()));
    let specs: Vec<_> = [Exact::from_ratio(1, 1), Exact::i()]
        .into_iter()
        .map(|w| AveragingSpec::new(&z(), GroupElement::abelian(&[1]), w, 1).unwrap())
        .collect();
    let rep = composed_density(&b, &specs, 3.0, 0.1, NSelection::Measured).unwrap();
    assert!(rep.error < 0.1);
    assert_eq!(rep.stages.len(), 2);
}

#[test]
fn invariant_probe_on_products() {
    let g: GroupSpec = "Z x C3".parse().unwrap();
    let rep = invariant_vectors(&CayleyBall::standard(&g, 3).unwrap());
    assert_eq!((rep.dimension, rep.dimension_with_decay), (1, 0));
}

proptest! {
    #[test]
    fn truncation_agrees_with_convolution(coeffs in proptest::collection::vec(-3i64..=3, 1..5), n in 2i64..6) {
        let group = z();
        let m = GroupVector::from_terms(
            &group,
            coeffs.iter().enumerate().map(|(k, c)| (GroupElement::abelian(&[k as i64 - 1]), Exact::from_ratio(*c, 1))),
        )
        .unwrap();
        let mat = lpcoh_core::algebra::GrMatrix::from_rows(&group, vec![vec![m.clone()]]).unwrap();
        let t = truncate(&mat, &Window::interval(-n, n), WindowPolicy::Extend).unwrap();
        for k in 0..t.cols() {
            let x = t.col_label(k).1.clone();
            let image = m.convolve(&GroupVector::delta(&group, x).unwrap()).unwrap();
            let mut column = vec![0.0; t.rows()];
            column[..].copy_from_slice(&t.apply(&(0..t.cols()).map(|j| (j == k) as i32 as f64).collect::<Vec<_>>()));
            for (y, c) in image.terms() {
                prop_assert_eq!(column[t.row_of(0, y).unwrap()], c.to_c64().re);
            }
            prop_assert_eq!(column.iter().filter(|v| **v != 0.0).count(), image.len());
        }
    }
}
