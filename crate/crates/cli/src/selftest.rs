//! `--selftest`: quick invariant checks for the module behind each
//! subcommand.

use std::process::ExitCode;

use lpcoh_core::algebra::{
    averaging_element, factor_witness, neumann_inverse, young_check, AveragingSpec, Coefficient,
    Exact, GroupVector, VectorTuple,
};
use lpcoh_core::cohomology::{
    composed_density, density_experiment, invariant_vectors, smallest_singular_value, truncate,
    Builtin, ComplexSpec, NSelection, WindowPolicy,
};
use lpcoh_core::energy::{solve_dirichlet, DirichletProblem, GraphFunction, Scope};
use lpcoh_core::group::{CayleyBall, GeneratingSet, GroupElement, GroupSpec, Window};
use lpcoh_core::invariance::{
    diff_decompose, sobolev_ratio, tent_energy, tent_function, theta_energy_check, SobolevOptions,
};
use num_complex::Complex64;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commands::algebra::{random_vector, witness_residual};
use crate::error::EXIT_INVARIANT;

type Check = (&'static str, fn() -> lpcoh_core::Result<bool>);

fn z() -> GroupSpec {
    GroupSpec::FreeAbelian(1)
}

fn el(k: i64) -> GroupElement {
    GroupElement::abelian(&[k])
}

fn group_checks() -> Vec<Check> {
    vec![
        ("ball sizes", || {
            let z2 = CayleyBall::standard(&"Z^2".parse()?, 3)?.len();
            let f2 = CayleyBall::standard(&"F2".parse()?, 2)?.len();
            let c6 = CayleyBall::standard(&"C6".parse()?, 5)?.len();
            Ok(z2 == 25 && f2 == 17 && c6 == 6)
        }),
        ("inverses and formatting", || {
            let g: GroupSpec = "F2 x Z x C3".parse()?;
            let ball = CayleyBall::standard(&g, 3)?;
            Ok(ball.vertices().iter().all(|x| {
                g.times(x, &g.inverse(x)) == g.identity()
                    && g.parse_element(&g.format_element(x)).as_ref() == Ok(x)
            }))
        }),
    ]
}

fn algebra_checks() -> Vec<Check> {
    vec![
        ("norm law", || {
            let spec = AveragingSpec::new(&z(), el(1), Complex64::one(), 1)?;
            let mut ok = true;
            for n in [1u64, 4, 37, 1000] {
                for p in [1.25, 2.0, 3.0] {
                    let s = spec.with_n(n)?;
                    let norm = averaging_element(&s).p_norm(p)?;
                    ok &= (norm - s.norm_law(p)).abs() <= 1e-12 * s.norm_law(p);
                }
            }
            Ok(ok)
        }),
        ("young", || {
            let g: GroupSpec = "F2".parse()?;
            let gens = GeneratingSet::standard(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut ok = true;
            for _ in 0..50 {
                let a = random_vector(&mut rng, &g, &gens, 6, 3).map_err(cli_err)?;
                let b = random_vector(&mut rng, &g, &gens, 6, 3).map_err(cli_err)?;
                ok &= young_check(&a, &b, 2.5)?.holds;
            }
            Ok(ok)
        }),
        ("factor witness", || {
            let mut ok = true;
            for omega in [Exact::one(), -Exact::one(), Exact::i()] {
                let spec = AveragingSpec::new(&z(), el(1), omega, 9)?;
                let d = factor_witness(&spec)?;
                ok &= witness_residual(&spec, &d).map_err(cli_err)?.is_zero();
            }
            Ok(ok)
        }),
        ("neumann residual", || {
            let two = Exact::from_ratio(2, 1);
            let inv = neumann_inverse(&z(), &el(1), &two, 10)?;
            let factor =
                GroupVector::delta(&z(), el(1))?.sub(&GroupVector::identity(&z()).scale(&two))?;
            let r = factor
                .convolve(&inv.inverse)?
                .sub(&GroupVector::identity(&z()))?;
            Ok(r.one_norm() == 2f64.powi(-11) && inv.predicted_residual == 2f64.powi(-11))
        }),
    ]
}

fn cli_err(e: crate::error::CliError) -> lpcoh_core::Error {
    lpcoh_core::Error::Invariant(e.to_string())
}

fn density_checks() -> Vec<Check> {
    vec![
        ("density witness", || {
            let spec = AveragingSpec::new(&z(), el(1), Exact::one(), 1)?;
            let b = VectorTuple::single(GroupVector::identity(&z()));
            let r = density_experiment(&b, &spec, 2.0, 0.1, NSelection::Recipe)?;
            Ok(r.achieved < 0.1 && r.witness_verified)
        }),
        ("composed density", || {
            let specs = [Exact::one(), -Exact::one()]
                .into_iter()
                .map(|w| AveragingSpec::new(&z(), el(1), w, 1))
                .collect::<lpcoh_core::Result<Vec<_>>>()?;
            let b = VectorTuple::single(GroupVector::identity(&z()));
            let r = composed_density(&b, &specs, 2.0, 0.1, NSelection::Measured)?;
            Ok(r.error < 0.1 && r.witness_verified)
        }),
        ("difference decomposition", || {
            let f = GroupVector::from_terms(
                &z(),
                vec![
                    (el(3), Exact::from_ratio(2, 3)),
                    (el(-1), Exact::from_ratio(-2, 3)),
                ],
            )?;
            Ok(diff_decompose(&f)?.reconstruct()? == f)
        }),
    ]
}

fn dirichlet_checks() -> Vec<Check> {
    vec![("segment is linear", || {
        let ball = CayleyBall::standard(&z(), 4)?;
        let problem =
            DirichletProblem::from_fn(ball, 3.0, |x| if *x == el(4) { 1.0 } else { 0.0 })?;
        let sol = solve_dirichlet(&problem)?;
        let linear = (-4..=4).all(|k| (sol.f.at(&el(k)) - (k + 4) as f64 / 8.0).abs() < 1e-6);
        Ok(sol.report.converged && linear)
    })]
}

fn cohomology_checks() -> Vec<Check> {
    vec![
        ("built-in complexes", || {
            Ok([Builtin::Z, Builtin::Z2, Builtin::Free(2)]
                .into_iter()
                .all(|b| {
                    let c = ComplexSpec::builtin(b);
                    c.compose_check().pass && c.augmentation_defects().is_empty()
                }))
        }),
        ("Z clip singular values", || {
            let c = ComplexSpec::builtin(Builtin::Z);
            let t = truncate(
                &c.differentials()[0],
                &Window::interval(-3, 3),
                WindowPolicy::Clip,
            )?;
            let exact = 2.0 * (std::f64::consts::PI / 30.0).sin();
            Ok((smallest_singular_value(&t)? - exact).abs() < 1e-10)
        }),
        ("invariant vectors", || {
            let c6 = invariant_vectors(&*CayleyBall::standard(&"C6".parse()?, 3)?);
            let z2 = invariant_vectors(&*CayleyBall::standard(&"Z^2".parse()?, 3)?);
            Ok(c6.dimension_with_decay == 1 && z2.dimension == 1 && z2.dimension_with_decay == 0)
        }),
    ]
}

fn amenability_checks() -> Vec<Check> {
    vec![
        ("theta energy identity", || {
            let g: GroupSpec = "Z^2".parse()?;
            let f = GroupVector::from_terms(
                &g,
                vec![
                    (GroupElement::abelian(&[0, 0]), Exact::from_ratio(3, 2)),
                    (GroupElement::abelian(&[1, -2]), Exact::from_ratio(-1, 3)),
                ],
            )?;
            Ok(theta_energy_check(&f, &GeneratingSet::standard(&g), 2.5)?.relative_gap() <= 1e-12)
        }),
        ("tent energy", || {
            let f: GraphFunction = tent_function(&z(), 10)?;
            let direct = f.dirichlet_sum(2.0, Scope::AllInBallEdges);
            Ok((direct - tent_energy(10, 2.0, 1)).abs() < 1e-14 && (direct - 0.4).abs() < 1e-14)
        }),
        ("Z sobolev ratio", || {
            let rep = sobolev_ratio(
                &z(),
                &GeneratingSet::standard(&z()),
                4,
                2.0,
                SobolevOptions::default(),
            )?;
            let exact = 8.0 * (std::f64::consts::PI / 20.0).sin().powi(2);
            Ok(rep.converged && (rep.lambda - exact).abs() < 1e-9)
        }),
    ]
}

pub fn run(name: &str) -> ExitCode {
    let checks = match name {
        "group" => group_checks(),
        "averaging" | "young" | "witness" | "neumann" => algebra_checks(),
        "density" | "composed" | "tilf-diff" => density_checks(),
        "dirichlet" => dirichlet_checks(),
        "cohomology" => cohomology_checks(),
        "amenability" => amenability_checks(),
        _ => unreachable!("unknown subcommand {name}"),
    };
    let mut failed = 0;
    for (label, check) in checks {
        match check() {
            Ok(true) => println!("PASS {name}: {label}"),
            Ok(false) => {
                failed += 1;
                println!("FAIL {name}: {label}");
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {label}: {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVARIANT)
    }
}
