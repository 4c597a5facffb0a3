use kgspec::conditions::{s_lambda, seminorm_n, SLambdaOptions, SeminormQuery, Target, Transform};
use kgspec::kgmap::{kg_energy_from_schrodinger, Branch};
use kgspec::spectral::{discretize, solve_eigen, SolveOptions};
use kgspec::tridiag::{eigenvalues_in, for_each_eigenvector, sturm_count, InverseIterationOptions};
use kgspec::{Grid1D, PotentialSpec};
use proptest::prelude::*;

fn target_strategy() -> impl Strategy<Value = Target> {
    prop_oneof![
        (0.2f64..8.0, 0.1f64..3.0).prop_map(|(v, a)| Target::new(PotentialSpec::square_well(v, a).unwrap(), Transform::SqrtAbs).unwrap()),
        Just(Target::new(PotentialSpec::vnw_derived(), Transform::SqrtAbs).unwrap()),
        Just(Target::new(PotentialSpec::vnw_derived(), Transform::Identity).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn seminorm_is_monotone_in_delta(target in target_strategy(), d1 in 0.05f64..1.0, frac in 0.0f64..1.0, alpha in prop_oneof![Just(2.0), Just(4.0), Just(0.5)]) {
        let d2 = d1 + frac * (1.5 - d1);
        let q = |delta| SeminormQuery { alpha, delta, dimension: 1, target: target.clone() };
        let a = seminorm_n(&q(d1), (-4.0, 4.0), 1e-10).unwrap();
        let b = seminorm_n(&q(d2), (-4.0, 4.0), 1e-10).unwrap();
        prop_assert!(a.value <= b.value + 1e-8 * (1.0 + b.value), "{} > {}", a.value, b.value);
    }

    #[test]
    fn s_lambda_is_monotone_and_bounded(v0 in 0.2f64..8.0, a in 0.1f64..3.0, l1 in 0.05f64..1.0, frac in 0.0f64..1.0) {
        let l2 = l1 + frac * (2.0 - l1);
        let t = Target::new(PotentialSpec::square_well(v0, a).unwrap(), Transform::NegativePart).unwrap();
        let opts = SLambdaOptions { half_width: 10.0, cell: 0.05, tol: 1e-10 };
        let s1 = s_lambda(&t, l1, &opts).unwrap();
        let s2 = s_lambda(&t, l2, &opts).unwrap();
        prop_assert!(s1.value + 1e-9 >= s2.value);
        prop_assert!(s1.value <= v0 / l1 + 1e-9);
        prop_assert!(s2.upper >= s2.value);
    }

    #[test]
    fn kg_map_branches_are_antisymmetric(s in -4.0f64..100.0, m in 0.1f64..3.0) {
        prop_assume!(s + m * m >= 0.0);
        let p = kg_energy_from_schrodinger(s, m, Branch::Positive).unwrap();
        let n = kg_energy_from_schrodinger(s, m, Branch::Negative).unwrap();
        prop_assert_eq!(p, -n);
        prop_assert!((p * p - m * m - s).abs() <= 1e-12 * (1.0 + p * p));
    }

    #[test]
    fn random_tridiagonal_eigenpairs(diag in prop::collection::vec(-5.0f64..5.0, 2..60), seed in any::<u64>(), mu in -8.0f64..8.0) {
        let n = diag.len();
        let off: Vec<f64> = (0..n - 1).map(|i| -0.5 - 0.5 * ((i * 7919) % 13) as f64 / 13.0).collect();
        let ev = eigenvalues_in(&diag, &off, f64::NEG_INFINITY, f64::INFINITY);
        prop_assert_eq!(ev.len(), n);
        prop_assert_eq!(ev.iter().filter(|&&e| e < mu).count(), sturm_count(&diag, &off, mu));
        let mut vecs: Vec<Vec<f64>> = Vec::new();
        let opts = InverseIterationOptions { seed, ..Default::default() };
        for_each_eigenvector(&diag, &off, &ev, &opts, |_, v, r| {
            assert!(r <= 1e-8);
            vecs.push(v.to_vec());
            Ok(())
        }).unwrap();
        for i in 0..n {
            for j in 0..i {
                let d: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                prop_assert!(d.abs() <= 1e-6, "({}, {}) {}", i, j, d);
            }
        }
    }

    #[test]
    fn solves_are_deterministic(v0 in 0.5f64..6.0, a in 0.3f64..2.0, seed in any::<u64>()) {
        let grid = Grid1D::line(-10.0, 10.0, 0.05).unwrap();
        let m = discretize(&PotentialSpec::square_well(v0, a).unwrap(), &grid, None).unwrap();
        let opts = SolveOptions::with_seed(seed);
        let r1 = solve_eigen(&m, Some((-v0, 2.0)), &opts).unwrap();
        let r2 = solve_eigen(&m, Some((-v0, 2.0)), &opts).unwrap();
        prop_assert_eq!(r1, r2);
    }
}
