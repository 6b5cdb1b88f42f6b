mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::brute_force_hom_count;
use tubedef_core::band::{
    band_brick_status, band_module, enumerate_bands, jordan_block, lambda_samples, lemma1_ses, parse_band, verify_ses,
};
use tubedef_core::fixtures::{klein4, kronecker};
use tubedef_core::rep::{hom_dim, is_brick, is_isomorphic, kernel_of, IsoVerdict};
use tubedef_core::{BandError, BandModuleSpec, Field, Matrix};

fn spec(text: &str, f: Field, lambda: i64, m: usize) -> BandModuleSpec {
    BandModuleSpec { band: parse_band(text, &klein4(f)).unwrap(), lambda: f.from_i64(lambda), m }
}

#[test]
fn parse_errors() {
    let alg = klein4(Field::Rationals);
    assert_eq!(parse_band("", &alg).unwrap_err(), BandError::Empty);
    assert_eq!(parse_band("a c^-", &alg).unwrap_err(), BandError::UnknownArrow("c".into()));
    assert_eq!(parse_band("a a^- b", &alg).unwrap_err(), BandError::ImmediateInverse(0));
    assert!(matches!(parse_band("a a b^-", &alg).unwrap_err(), BandError::ZeroComposition(0, 1)));
    assert_eq!(parse_band("a b^- a b^-", &alg).unwrap_err(), BandError::ProperPower);
    let kr = kronecker(Field::Rationals);
    assert!(matches!(parse_band("a b", &kr).unwrap_err(), BandError::NotComposable(0, 1)));
    assert_eq!(parse_band("a^- b^-", &alg).unwrap_err(), BandError::OneDirection);
}

#[test]
fn parse_rotates_to_least_rotation() {
    let alg = klein4(Field::Rationals);
    let x = parse_band("b^- a", &alg).unwrap();
    let y = parse_band("a b^-", &alg).unwrap();
    assert_eq!(x.letters(), y.letters());
    assert_eq!(x.to_string(), "a b^-");
    let z = parse_band("b a^-", &alg).unwrap();
    assert_eq!(z.canonical_key(), y.canonical_key());
    assert_ne!(z.letters(), y.letters());
}

#[test]
fn jordan_block_is_lower() {
    let f = Field::Rationals;
    let j = jordan_block(&f.from_i64(4), 3);
    let expect = Matrix::from_i64(f, &[&[4, 0, 0], &[1, 4, 0], &[0, 1, 4]]);
    assert_eq!(j, expect);
}

#[test]
fn band_module_dimensions() {
    let f = Field::Rationals;
    for m in 1..=4 {
        let v = band_module(&spec("a b^-", f, 3, m)).unwrap();
        assert_eq!(v.dims(), &[2 * m]);
        assert!(v.check().valid);
    }
    let kr = kronecker(f);
    let b = parse_band("a b^-", &kr).unwrap();
    let v = band_module(&BandModuleSpec { band: b.clone(), lambda: f.from_i64(2), m: 3 }).unwrap();
    assert_eq!(v.dims(), &[3, 3]);
    assert_eq!(band_module(&BandModuleSpec { band: b.clone(), lambda: f.zero(), m: 1 }).unwrap_err(), BandError::ZeroLambda);
    assert_eq!(band_module(&BandModuleSpec { band: b, lambda: f.one(), m: 0 }).unwrap_err(), BandError::BadM(1));
}

#[test]
fn inverse_word_inverts_lambda() {
    let f = Field::Rationals;
    let alg = klein4(f);
    let x = |text: &str, l: tubedef_core::Scalar| {
        band_module(&BandModuleSpec { band: parse_band(text, &alg).unwrap(), lambda: l, m: 2 }).unwrap()
    };
    let two = f.from_i64(2);
    let half = two.inv().unwrap();
    let y = x("b a^-", two.clone());
    assert_eq!(is_isomorphic(&y, &x("a b^-", half), 0).unwrap().verdict, IsoVerdict::Yes);
    assert_ne!(is_isomorphic(&y, &x("a b^-", two), 0).unwrap().verdict, IsoVerdict::Yes);
}

#[test]
fn short_exact_sequences_for_small_m() {
    let f = Field::Rationals;
    for (m, expect) in [(2, [2, 4, 2]), (3, [4, 6, 2]), (4, [6, 8, 2])] {
        let s = spec("a b^-", f, 3, m);
        let ses = lemma1_ses(&s, 0).unwrap();
        assert!(ses.verified);
        let dims = [ses.g.source().total_dim(), ses.f.source().total_dim(), ses.f.target().total_dim()];
        assert_eq!(dims, expect);
        assert!(verify_ses(&ses.g, &ses.f));
        let (ker, _) = kernel_of(&ses.f).unwrap();
        let prev = band_module(&BandModuleSpec { m: m - 1, ..s.clone() }).unwrap();
        assert_eq!(is_isomorphic(&ker, &prev, 3).unwrap().verdict, IsoVerdict::Yes);
    }
    assert_eq!(lemma1_ses(&spec("a b^-", f, 3, 1), 0).unwrap_err(), BandError::BadM(2));
}

#[test]
fn kronecker_band_ses_holds() {
    let f = Field::Rationals;
    let kr = kronecker(f);
    let s = BandModuleSpec { band: parse_band("a b^-", &kr).unwrap(), lambda: f.from_i64(5), m: 3 };
    assert!(lemma1_ses(&s, 1).unwrap().verified);
}

#[test]
fn enumeration_of_short_bands() {
    let f = Field::Rationals;
    let alg = klein4(f);
    assert!(enumerate_bands(&alg, 1, 100).bands.is_empty());
    let two: Vec<String> = enumerate_bands(&alg, 2, 100).bands.iter().map(|b| b.to_string()).collect();
    assert_eq!(two, vec!["a b^-"]);
    let kr = kronecker(f);
    let kb: Vec<String> = enumerate_bands(&kr, 4, 100).bands.iter().map(|b| b.to_string()).collect();
    assert_eq!(kb, vec!["a b^-"]);
    let four = enumerate_bands(&alg, 4, 100);
    assert!(!four.truncated);
    let keys: HashSet<_> = four.bands.iter().map(|b| b.canonical_key()).collect();
    assert_eq!(keys.len(), four.bands.len());
    for b in &four.bands {
        assert!(b.len() == 2 || b.len() == 4);
        assert_eq!(parse_band(&b.to_string(), &alg).unwrap().canonical_key(), b.canonical_key());
    }
    let cut = enumerate_bands(&alg, 4, 1);
    assert!(cut.truncated);
    assert_eq!(cut.bands.len(), 1);
}

#[test]
fn brick_status() {
    let f = Field::Rationals;
    let kr = kronecker(f);
    let b = parse_band("a b^-", &kr).unwrap();
    let v = band_module(&BandModuleSpec { band: b.clone(), lambda: f.from_i64(2), m: 1 }).unwrap();
    assert!(is_brick(&v).unwrap());
    let alg = klein4(f);
    let kb = parse_band("a b^-", &alg).unwrap();
    let status = band_brick_status(&kb, &lambda_samples(f, 2, 0)).unwrap();
    assert_eq!(status.len(), 7);
    assert!(status.iter().all(|s| !s.brick && s.stable_brick));
}

#[test]
fn lambda_samples_skip_zero_in_small_characteristic() {
    let f = Field::prime(5).unwrap();
    let s = lambda_samples(f, 3, 9);
    assert_eq!(s.len(), 3 + 3);
    assert!(s.iter().all(|x| !x.is_zero()));
}

#[test]
fn kronecker_band_hom_dims_match_brute_force() {
    let f = Field::prime(3).unwrap();
    let kr = kronecker(f);
    let b = parse_band("a b^-", &kr).unwrap();
    let at = |l: i64, m: usize| band_module(&BandModuleSpec { band: b.clone(), lambda: f.from_i64(l), m }).unwrap();
    for (x, y) in [((1, 1), (1, 1)), ((1, 2), (1, 1)), ((1, 1), (2, 1)), ((2, 2), (2, 1)), ((1, 2), (1, 2))] {
        let (v, w) = (at(x.0, x.1), at(y.0, y.1));
        let d = hom_dim(&v, &w).unwrap() as u32;
        assert_eq!(brute_force_hom_count(&v, &w), 3u64.pow(d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kronecker_band_end_has_dimension_m(lambda in 1i64..50, m in 1usize..5) {
        let f = Field::Rationals;
        let kr = kronecker(f);
        let b = parse_band("a b^-", &kr).unwrap();
        let v = band_module(&BandModuleSpec { band: b, lambda: f.from_i64(lambda), m }).unwrap();
        prop_assert_eq!(hom_dim(&v, &v).unwrap(), m);
    }

    #[test]
    fn distinct_lambdas_give_orthogonal_bands(l1 in 1i64..30, l2 in 1i64..30) {
        prop_assume!(l1 != l2);
        let f = Field::Rationals;
        let kr = kronecker(f);
        let b = parse_band("a b^-", &kr).unwrap();
        let v = band_module(&BandModuleSpec { band: b.clone(), lambda: f.from_i64(l1), m: 1 }).unwrap();
        let w = band_module(&BandModuleSpec { band: b, lambda: f.from_i64(l2), m: 1 }).unwrap();
        prop_assert_eq!(hom_dim(&v, &w).unwrap(), 0);
    }
}
