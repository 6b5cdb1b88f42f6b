mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::{brute_force_hom_count, klein_band, random_basis_change, random_module, rng};
use tubedef_core::fixtures::{a2, klein4, kronecker, truncated_polynomial};
use tubedef_core::homological::{indecomposable_injective, indecomposable_projective};
use tubedef_core::rep::{
    cokernel_of, direct_sum_with_maps, end_structure, hom_basis, hom_dim, image_of, is_brick, is_indecomposable,
    is_isomorphic, kernel_of, random_combination, span_rank, IndecVerdict, IsoVerdict,
};
use tubedef_core::{Field, Matrix, Morphism, RepError, Representation};

#[test]
fn relations_are_enforced() {
    let f = Field::Rationals;
    let alg = klein4(f);
    let a = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
    let z = Matrix::zeros(f, 2, 2);
    let err = Representation::new(Arc::clone(&alg), vec![2], vec![a.clone(), z.clone()]).unwrap_err();
    assert_eq!(err, RepError::RelationViolated { relation: 0 });
    let report = Representation::new_unchecked(Arc::clone(&alg), vec![2], vec![a, z]).unwrap().check();
    assert!(!report.valid);
    assert_eq!(report.violations.len(), 1);
    assert!(Representation::new(alg, vec![2], vec![Matrix::zeros(f, 2, 3)]).is_err());
}

#[test]
fn band_module_is_a_module_with_two_dimensional_end() {
    let v = klein_band(Field::Rationals, 3, 1);
    assert!(v.check().valid);
    let e = end_structure(&v).unwrap();
    assert_eq!((e.dim_end, e.radical_dim, e.top_dim), (2, 1, 1));
    assert!(!is_brick(&v).unwrap());
    assert_eq!(is_indecomposable(&v).unwrap().verdict, IndecVerdict::Yes);
}

#[test]
fn hom_matches_brute_force_over_small_fields() {
    for p in [2, 3] {
        let f = Field::Prime(p);
        let k4 = klein4(f);
        let kr = kronecker(f);
        let modules = vec![
            klein_band(f, 1, 1),
            Representation::simple(Arc::clone(&k4), 0),
            indecomposable_projective(&k4, 0).unwrap(),
            random_module(&kr, vec![1, 2], p),
            random_module(&kr, vec![2, 1], p + 1),
            indecomposable_injective(&kr, 1).unwrap(),
        ];
        for v in &modules {
            for w in &modules {
                if !Arc::ptr_eq(v.algebra(), w.algebra()) || v.total_dim() * w.total_dim() > 12 {
                    continue;
                }
                let d = hom_dim(v, w).unwrap();
                assert_eq!(brute_force_hom_count(v, w), p.pow(d as u32), "F_{p}: {:?} -> {:?}", v.dims(), w.dims());
            }
        }
    }
}

#[test]
fn known_hom_dimensions() {
    let f = Field::Rationals;
    let kr = kronecker(f);
    let s0 = Representation::simple(Arc::clone(&kr), 0);
    let s1 = Representation::simple(Arc::clone(&kr), 1);
    let p1 = indecomposable_projective(&kr, 1).unwrap();
    assert_eq!(p1.dims(), &[2, 1]);
    assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
    assert_eq!(hom_dim(&s0, &p1).unwrap(), 2);
    assert_eq!(hom_dim(&s1, &s0).unwrap(), 0);
    let i0 = indecomposable_injective(&kr, 0).unwrap();
    assert_eq!(i0.dims(), &[1, 2]);
    let x3 = truncated_polynomial(f, 3);
    let p = indecomposable_projective(&x3, 0).unwrap();
    assert_eq!(hom_dim(&p, &p).unwrap(), 3);
}

#[test]
fn decomposable_modules_are_caught() {
    let f = Field::Rationals;
    let kr = kronecker(f);
    let s = Representation::simple(Arc::clone(&kr), 0);
    let sum = s.direct_sum(&s).unwrap();
    let r = is_indecomposable(&sum).unwrap();
    assert_eq!(r.verdict, IndecVerdict::Inconclusive);
    assert_eq!(r.top_dim, 4);
    assert!(!is_brick(&sum).unwrap());
}

#[test]
fn brick_needs_characteristic_free_data() {
    let f = Field::Prime(2);
    let v = klein_band(f, 1, 1);
    assert!(!is_brick(&v).unwrap());
    let zero = Representation::zero(klein4(f));
    assert!(!is_brick(&zero).unwrap());
}

#[test]
fn iso_detects_transported_modules() {
    let f = Field::Rationals;
    let kr = kronecker(f);
    for seed in 0..4 {
        let v = random_module(&kr, vec![2, 3], seed);
        let w = v.transport(&random_basis_change(&v, seed + 100)).unwrap();
        let r = is_isomorphic(&v, &w, seed).unwrap();
        assert_eq!(r.verdict, IsoVerdict::Yes);
        let witness = r.witness.unwrap();
        assert!(witness.is_morphism() && witness.is_isomorphism());
    }
    let v = klein_band(f, 2, 1);
    let w = klein_band(f, 3, 1);
    assert_ne!(is_isomorphic(&v, &w, 0).unwrap().verdict, IsoVerdict::Yes);
    let s = Representation::simple(Arc::clone(&kr), 0);
    assert_eq!(is_isomorphic(&s, &Representation::simple(kr, 1), 0).unwrap().verdict, IsoVerdict::No);
}

#[test]
fn morphisms_must_commute() {
    let f = Field::Rationals;
    let alg = a2(f);
    let p1 = indecomposable_projective(&alg, 1).unwrap();
    let s1 = Representation::simple(Arc::clone(&alg), 1);
    let s0 = Representation::simple(Arc::clone(&alg), 0);
    let bad = Morphism::new(s1.clone(), p1.clone(), vec![Matrix::zeros(f, 1, 0), Matrix::identity(f, 1)]);
    assert!(matches!(bad, Err(RepError::NotAMorphism(_))));
    assert!(Morphism::new(s0, p1, vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 0)]).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hom_is_additive(seed in any::<u64>(), d in proptest::collection::vec(0usize..3, 6)) {
        let kr = kronecker(Field::Rationals);
        let u = random_module(&kr, vec![d[0], d[1]], seed);
        let v = random_module(&kr, vec![d[2], d[3]], seed ^ 1);
        let w = random_module(&kr, vec![d[4], d[5]], seed ^ 2);
        let sum = v.direct_sum(&w).unwrap();
        prop_assert_eq!(hom_dim(&sum, &u).unwrap(), hom_dim(&v, &u).unwrap() + hom_dim(&w, &u).unwrap());
        prop_assert_eq!(hom_dim(&u, &sum).unwrap(), hom_dim(&u, &v).unwrap() + hom_dim(&u, &w).unwrap());
    }

    #[test]
    fn hom_basis_is_independent_and_commutes(seed in any::<u64>(), d in proptest::collection::vec(0usize..3, 4)) {
        let f = Field::Prime(5);
        let kr = kronecker(f);
        let v = random_module(&kr, vec![d[0], d[1]], seed);
        let w = random_module(&kr, vec![d[2], d[3]], seed ^ 7);
        let basis = hom_basis(&v, &w).unwrap();
        prop_assert!(basis.iter().all(Morphism::is_morphism));
        prop_assert_eq!(span_rank(f, &basis), basis.len());
        prop_assert_eq!(brute_force_hom_count(&v, &w), 5u64.pow(basis.len() as u32));
    }

    #[test]
    fn kernel_image_cokernel_are_exact(seed in any::<u64>()) {
        let f = Field::Rationals;
        let kr = kronecker(f);
        let v = random_module(&kr, vec![2, 2], seed);
        let w = random_module(&kr, vec![2, 1], seed ^ 3);
        let basis = hom_basis(&v, &w).unwrap();
        let m = random_combination(&basis, &v, &w, &mut rng(seed));
        let (k, incl) = kernel_of(&m).unwrap();
        let (im, onto, into) = image_of(&m).unwrap();
        let (c, proj) = cokernel_of(&m).unwrap();
        prop_assert!(k.check().valid && im.check().valid && c.check().valid);
        prop_assert!(incl.is_morphism() && incl.is_injective());
        prop_assert!(m.compose(&incl).unwrap().is_zero());
        prop_assert!(proj.compose(&m).unwrap().is_zero());
        prop_assert!(proj.is_surjective() && onto.is_surjective() && into.is_injective());
        prop_assert_eq!(into.compose(&onto).unwrap(), m);
        for x in 0..2 {
            prop_assert_eq!(k.dim_at(x) + im.dim_at(x), v.dim_at(x));
            prop_assert_eq!(im.dim_at(x) + c.dim_at(x), w.dim_at(x));
        }
    }

    #[test]
    fn direct_sum_maps_split(seed in any::<u64>()) {
        let f = Field::Rationals;
        let kr = kronecker(f);
        let v = random_module(&kr, vec![1, 2], seed);
        let w = random_module(&kr, vec![2, 1], seed ^ 5);
        let s = direct_sum_with_maps(&v, &w).unwrap();
        prop_assert!(s.proj[0].compose(&s.inj[0]).unwrap().is_isomorphism());
        prop_assert!(s.proj[1].compose(&s.inj[0]).unwrap().is_zero());
        let id = s.inj[0].compose(&s.proj[0]).unwrap().add(&s.inj[1].compose(&s.proj[1]).unwrap());
        prop_assert_eq!(id, Morphism::identity(&s.sum));
    }
}
