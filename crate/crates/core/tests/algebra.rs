use lpcoh_core::algebra::{
    averaging_element, factor_witness, linear_factor, neumann_inverse, AveragingSpec, Coefficient,
    Exact, GroupVector,
};
use lpcoh_core::group::{GroupElement, GroupSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn z() -> GroupSpec {
    GroupSpec::FreeAbelian(1)
}

fn g() -> GroupElement {
    GroupElement::abelian(&[1])
}

#[test]
fn norm_law_against_direct_sum() {
    for p in [1.25, 1.5, 2.0, 3.0] {
        for n in [1u64, 7, 100, 2500] {
            let spec = AveragingSpec::new(&z(), g(), Complex64::new(0.6, 0.8), n).unwrap();
            let x = averaging_element(&spec);
            // every coefficient has modulus 1/n
            let direct = (n as f64 * (1.0 / n as f64).powf(p)).powf(1.0 / p);
            assert!((x.p_norm(p).unwrap() - direct).abs() <= 1e-13 * direct);
            assert!((spec.norm_law(p) - direct).abs() <= 1e-13 * direct);
        }
    }
}

#[test]
fn witness_identity_in_free_group() {
    let f2 = GroupSpec::Free(2);
    let g = GroupElement::free_word(&[1, 2, -1]);
    for omega in [
        Exact::from_ratio(1, 1),
        Exact::i(),
        Exact::parse_parts("-3/5", "4/5").unwrap(),
    ] {
        let spec = AveragingSpec::new(&f2, g.clone(), omega.clone(), 9).unwrap();
        let d = factor_witness(&spec).unwrap();
        let lhs = linear_factor(&f2, &g, &omega)
            .unwrap()
            .convolve(&d)
            .unwrap();
        let rhs = GroupVector::identity(&f2)
            .sub(&averaging_element(&spec))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn neumann_residual_halves_each_order() {
    let two = Exact::from_ratio(2, 1);
    for k in [0u64, 5, 12] {
        let inv = neumann_inverse(&z(), &g(), &two, k).unwrap();
        let prod = linear_factor(&z(), &g(), &two)
            .unwrap()
            .convolve(&inv.inverse)
            .unwrap();
        let residual = prod.sub(&GroupVector::identity(&z())).unwrap();
        assert_eq!(residual.len(), 1);
        assert_eq!(residual.one_norm(), inv.predicted_residual);
    }
}

proptest! {
    #[test]
    fn averaging_commutes_with_g(n in 1u64..30, re in -1.0f64..1.0) {
        let im = (1.0 - re * re).sqrt();
        let spec = AveragingSpec::new(&z(), g(), Complex64::new(re, im), n).unwrap();
        let x = averaging_element(&spec);
        let d = GroupVector::<Complex64>::delta(&z(), g()).unwrap();
        let a = x.convolve(&d).unwrap();
        let b = d.convolve(&x).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!((x.one_norm() - 1.0).abs() < 1e-12);
        prop_assert!(x.coefficient_sum().to_c64().norm() <= 1.0 + 1e-12);
    }
}
