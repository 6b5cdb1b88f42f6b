use std::sync::Arc;

use proptest::prelude::*;

use tubedef_core::ar::{homogeneous_tube_membership, TubeVerdict};
use tubedef_core::euclidean::{build_euclidean, euclidean_family, simple_regular_a, simple_regular_search};
use tubedef_core::fixtures::{klein4, kronecker, path_algebra};
use tubedef_core::rep::is_brick;
use tubedef_core::{EuclideanError, EuclideanSpec, Field};

#[test]
fn vertex_and_arrow_counts() {
    for m in 4..=8 {
        let q = build_euclidean(EuclideanSpec::DTilde { m }).unwrap();
        assert_eq!((q.num_vertices(), q.num_arrows()), (m + 1, m));
    }
    for (spec, n) in [(EuclideanSpec::ETilde6, 7), (EuclideanSpec::ETilde7, 8), (EuclideanSpec::ETilde8, 9)] {
        let q = build_euclidean(spec).unwrap();
        assert_eq!((q.num_vertices(), q.num_arrows()), (n, n - 1));
    }
    for (p, qq) in [(1, 1), (1, 2), (2, 3), (4, 4)] {
        let q = build_euclidean(EuclideanSpec::ATilde { p, q: qq }).unwrap();
        assert_eq!((q.num_vertices(), q.num_arrows()), (p + qq, p + qq));
    }
}

#[test]
fn degrees_match_the_diagrams() {
    let degrees = |spec| {
        let q = build_euclidean(spec).unwrap();
        let mut d = vec![0usize; q.num_vertices()];
        for a in q.arrows() {
            d[a.source] += 1;
            d[a.target] += 1;
        }
        d.sort_unstable();
        d
    };
    assert_eq!(degrees(EuclideanSpec::DTilde { m: 4 }), vec![1, 1, 1, 1, 4]);
    assert_eq!(degrees(EuclideanSpec::DTilde { m: 6 }), vec![1, 1, 1, 1, 2, 3, 3]);
    assert_eq!(degrees(EuclideanSpec::ETilde6), vec![1, 1, 1, 2, 2, 2, 3]);
    assert_eq!(degrees(EuclideanSpec::ETilde7), vec![1, 1, 1, 2, 2, 2, 2, 3]);
    assert_eq!(degrees(EuclideanSpec::ETilde8), vec![1, 1, 1, 2, 2, 2, 2, 2, 3]);
}

#[test]
fn null_roots() {
    let f = Field::Rationals;
    let sum = |spec| {
        let alg = path_algebra(build_euclidean(spec).unwrap(), f);
        alg.euler_data().unwrap().null_root.unwrap().iter().sum::<i64>()
    };
    assert_eq!(sum(EuclideanSpec::DTilde { m: 4 }), 6);
    assert_eq!(sum(EuclideanSpec::DTilde { m: 5 }), 8);
    assert_eq!(sum(EuclideanSpec::ETilde6), 12);
    assert_eq!(sum(EuclideanSpec::ETilde7), 18);
    assert_eq!(sum(EuclideanSpec::ETilde8), 30);
    assert_eq!(sum(EuclideanSpec::ATilde { p: 2, q: 3 }), 5);
}

#[test]
fn spec_text_round_trip() {
    for spec in [
        EuclideanSpec::ATilde { p: 2, q: 3 },
        EuclideanSpec::DTilde { m: 5 },
        EuclideanSpec::ETilde6,
        EuclideanSpec::ETilde7,
        EuclideanSpec::ETilde8,
    ] {
        assert_eq!(spec.to_string().parse::<EuclideanSpec>().unwrap(), spec);
    }
    assert_eq!("kronecker".parse::<EuclideanSpec>().unwrap(), EuclideanSpec::ATilde { p: 1, q: 1 });
    assert_eq!(" DTilde(6) ".parse::<EuclideanSpec>().unwrap(), EuclideanSpec::DTilde { m: 6 });
    for bad in ["dtilde3", "atilde(0,2)", "atilde(1)", "etilde9", "", "btilde4"] {
        assert!(matches!(bad.parse::<EuclideanSpec>(), Err(EuclideanError::InvalidSpec(_))), "{bad}");
    }
}

#[test]
fn family_is_recognised() {
    let f = Field::Rationals;
    for spec in [EuclideanSpec::ATilde { p: 2, q: 1 }, EuclideanSpec::DTilde { m: 4 }, EuclideanSpec::ETilde7] {
        let alg = path_algebra(build_euclidean(spec).unwrap(), f);
        assert_eq!(euclidean_family(&alg), Some(spec));
    }
    assert_eq!(euclidean_family(&klein4(f)), None);
}

#[test]
fn atilde_simple_regular_modules() {
    let f = Field::Rationals;
    let alg = path_algebra(build_euclidean(EuclideanSpec::ATilde { p: 2, q: 3 }).unwrap(), f);
    let e = simple_regular_a(&alg, &f.from_i64(4)).unwrap();
    assert_eq!(e.dims(), &[1; 5]);
    assert!(is_brick(&e).unwrap());
    assert_eq!(homogeneous_tube_membership(&e, 0).unwrap().verdict, TubeVerdict::Yes);
    assert!(matches!(simple_regular_a(&alg, &f.zero()), Err(EuclideanError::ZeroLambda)));
    let d4 = path_algebra(build_euclidean(EuclideanSpec::DTilde { m: 4 }).unwrap(), f);
    assert!(matches!(simple_regular_a(&d4, &f.one()), Err(EuclideanError::WrongFamily(_))));
    assert!(matches!(simple_regular_a(&klein4(f), &f.one()), Err(EuclideanError::WrongFamily(_))));
}

#[test]
fn search_finds_dtilde_mouth() {
    let f = Field::Rationals;
    let alg = path_algebra(build_euclidean(EuclideanSpec::DTilde { m: 4 }).unwrap(), f);
    let (v, stats) = simple_regular_search(&alg, 0, 512).unwrap();
    let mut dims = v.dims().to_vec();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    assert!(stats.attempts >= 1);
    assert!(is_brick(&v).unwrap());
    assert_eq!(homogeneous_tube_membership(&v, 1).unwrap().verdict, TubeVerdict::Yes);
}

#[test]
fn search_rejects_atilde_and_non_euclidean() {
    let f = Field::Rationals;
    assert!(matches!(simple_regular_search(&kronecker(f), 0, 8), Err(EuclideanError::WrongFamily(_))));
    let alg = path_algebra(build_euclidean(EuclideanSpec::ATilde { p: 1, q: 2 }).unwrap(), f);
    assert!(matches!(simple_regular_search(&alg, 0, 8), Err(EuclideanError::WrongFamily(_))));
    assert!(simple_regular_search(&klein4(f), 0, 8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn atilde_mouths_are_tau_fixed_bricks(p in 1usize..4, q in 1usize..4, lambda in 1i64..20) {
        let f = Field::Rationals;
        let alg = path_algebra(build_euclidean(EuclideanSpec::ATilde { p, q }).unwrap(), f);
        let e = simple_regular_a(&alg, &f.from_i64(lambda)).unwrap();
        prop_assert!(is_brick(&e).unwrap());
        prop_assert_eq!(homogeneous_tube_membership(&e, 0).unwrap().verdict, TubeVerdict::Yes);
        let q0 = Arc::clone(e.algebra());
        prop_assert_eq!(euclidean_family(&q0), Some(EuclideanSpec::ATilde { p, q }));
    }
}
