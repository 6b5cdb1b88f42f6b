mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::{klein_band, random_module};
use tubedef_core::ar::{coxeter_check, coxeter_matrix, dualize, homogeneous_tube_membership, tau, transpose, ArError, TubeVerdict};
use tubedef_core::euclidean::{build_euclidean, simple_regular_a, EuclideanSpec};
use tubedef_core::fixtures::{a2, klein4, kronecker, path_algebra, truncated_polynomial};
use tubedef_core::homological::{ext_dim, indecomposable_injective, indecomposable_projective, syzygy};
use tubedef_core::rep::{hom_dim, is_isomorphic, IsoVerdict};
use tubedef_core::{Field, Representation};

fn iso(a: &Representation, b: &Representation) -> bool {
    is_isomorphic(a, b, 0).unwrap().verdict == IsoVerdict::Yes
}

#[test]
fn tau_of_projective_is_zero() {
    let f = Field::Rationals;
    for alg in [kronecker(f), klein4(f), a2(f), truncated_polynomial(f, 3)] {
        for v in 0..alg.quiver().num_vertices() {
            let p = indecomposable_projective(&alg, v).unwrap();
            assert!(tau(&p).unwrap().is_zero());
        }
    }
}

#[test]
fn dual_is_an_involution() {
    let v = klein_band(Field::Rationals, 3, 2);
    let dd = dualize(&dualize(&v));
    assert_eq!(dd.dims(), v.dims());
    assert_eq!(dd.actions(), v.actions());
}

#[test]
fn kronecker_tau_on_simples_and_regulars() {
    let f = Field::Rationals;
    let kr = kronecker(f);
    let s1 = Representation::simple(Arc::clone(&kr), 1);
    let s0 = Representation::simple(Arc::clone(&kr), 0);
    let projective_simple = if indecomposable_projective(&kr, 0).unwrap().total_dim() == 1 { &s0 } else { &s1 };
    assert!(tau(projective_simple).unwrap().is_zero());
    let other = if std::ptr::eq(projective_simple, &s0) { &s1 } else { &s0 };
    let t = tau(other).unwrap();
    assert_eq!(t.total_dim(), 5);
    for lambda in [1, 2, 5] {
        let e = simple_regular_a(&kr, &f.from_i64(lambda)).unwrap();
        assert!(iso(&tau(&e).unwrap(), &e));
        assert_eq!(homogeneous_tube_membership(&e, 0).unwrap().verdict, TubeVerdict::Yes);
        let c = coxeter_check(&e).unwrap();
        assert!(c.agrees);
        assert_eq!(c.predicted, vec![1, 1]);
    }
}

#[test]
fn tau_is_omega_squared_on_symmetric_algebras() {
    let f = Field::Rationals;
    let mut modules = vec![klein_band(f, 3, 1), klein_band(f, 2, 2), klein_band(f, 1, 3)];
    let x3 = truncated_polynomial(f, 3);
    modules.push(Representation::simple(Arc::clone(&x3), 0));
    let x3_2 = syzygy(&Representation::simple(Arc::clone(&x3), 0), 1).unwrap();
    modules.push(x3_2);
    let k4 = klein4(f);
    modules.push(Representation::simple(Arc::clone(&k4), 0));
    modules.push(syzygy(&Representation::simple(Arc::clone(&k4), 0), 1).unwrap());
    for v in modules {
        let t = tau(&v).unwrap();
        let o2 = syzygy(&v, 2).unwrap();
        assert!(iso(&t, &o2), "dims {:?}", v.dims());
    }
}

#[test]
fn klein_bands_are_homogeneous_and_simples_are_not() {
    let f = Field::Rationals;
    for (lambda, m) in [(3, 1), (2, 2)] {
        assert_eq!(homogeneous_tube_membership(&klein_band(f, lambda, m), 1).unwrap().verdict, TubeVerdict::Yes);
    }
    let s = Representation::simple(klein4(f), 0);
    assert_ne!(homogeneous_tube_membership(&s, 1).unwrap().verdict, TubeVerdict::Yes);
}

#[test]
fn auslander_reiten_formula_on_hereditary_algebras() {
    let f = Field::Rationals;
    let d4 = path_algebra(build_euclidean(EuclideanSpec::DTilde { m: 4 }).unwrap(), f);
    let a22 = path_algebra(build_euclidean(EuclideanSpec::ATilde { p: 2, q: 2 }).unwrap(), f);
    for (k, alg) in [kronecker(f), a2(f), d4, a22].iter().enumerate() {
        let n = alg.quiver().num_vertices();
        for seed in 0..3u64 {
            let dm: Vec<usize> = (0..n).map(|i| (seed as usize + i) % 3).collect();
            let dn: Vec<usize> = (0..n).map(|i| (seed as usize + 2 * i + 1) % 2 + 1).collect();
            let m = random_module(alg, dm, seed + 7 * k as u64);
            let nn = random_module(alg, dn, seed + 50);
            let tm = tau(&m).unwrap();
            assert_eq!(ext_dim(&m, &nn, 1).unwrap(), hom_dim(&nn, &tm).unwrap());
        }
    }
}

#[test]
fn coxeter_matrix_shapes_and_errors() {
    let f = Field::Rationals;
    let phi = coxeter_matrix(&kronecker(f)).unwrap();
    assert_eq!((phi.rows(), phi.cols()), (2, 2));
    assert_eq!(coxeter_matrix(&klein4(f)).unwrap_err(), ArError::NotHereditary);
    let kr = kronecker(f);
    let p = indecomposable_projective(&kr, 1).unwrap();
    assert_eq!(coxeter_check(&p).unwrap_err(), ArError::ProjectiveInput);
    assert_eq!(coxeter_check(&klein_band(f, 3, 1)).unwrap_err(), ArError::NotHereditary);
}

#[test]
fn coxeter_predicts_tau_on_euclidean_quivers() {
    let f = Field::Rationals;
    for spec in [EuclideanSpec::DTilde { m: 4 }, EuclideanSpec::ATilde { p: 2, q: 3 }] {
        let alg = path_algebra(build_euclidean(spec).unwrap(), f);
        for v in 0..alg.quiver().num_vertices() {
            let inj = indecomposable_injective(&alg, v).unwrap();
            if tau(&inj).unwrap().is_zero() {
                continue;
            }
            let c = coxeter_check(&inj).unwrap();
            assert!(c.agrees, "{spec} vertex {v}: {:?}", c);
        }
    }
}

#[test]
fn transpose_lives_over_the_opposite() {
    let v = klein_band(Field::Rationals, 3, 1);
    let tr = transpose(&v).unwrap();
    assert_eq!(tr.algebra().quiver().num_arrows(), 2);
    assert_eq!(dualize(&tr).total_dim(), tau(&v).unwrap().total_dim());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ar_formula_on_random_kronecker_modules(seed in any::<u64>(), d in proptest::collection::vec(0usize..3, 4)) {
        let kr = kronecker(Field::Rationals);
        let m = random_module(&kr, vec![d[0], d[1]], seed);
        let n = random_module(&kr, vec![d[2], d[3]], seed ^ 5);
        prop_assert_eq!(ext_dim(&m, &n, 1).unwrap(), hom_dim(&n, &tau(&m).unwrap()).unwrap());
    }
}
