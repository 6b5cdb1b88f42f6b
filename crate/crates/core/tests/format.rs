mod common;

use common::klein_band;
use tubedef_core::deformation::certify;
use tubedef_core::fixtures::{klein4, kronecker};
use tubedef_core::format::{morphism_from_spec, morphism_to_spec};
use tubedef_core::rep::hom_basis;
use tubedef_core::{AlgebraFile, CertificateReport, Field, FormatError, ModuleFile, TowerSource};

#[test]
fn algebra_round_trip() {
    for alg in [klein4(Field::Rationals), kronecker(Field::prime(7).unwrap())] {
        let file = AlgebraFile::from_algebra(&alg);
        let text = file.to_json();
        let back = AlgebraFile::parse(&text).unwrap();
        assert_eq!(back, file);
        let rebuilt = back.build(None).unwrap();
        assert_eq!(rebuilt.quiver(), alg.quiver());
        assert_eq!(rebuilt.dim(), alg.dim());
        assert_eq!(rebuilt.field(), alg.field());
    }
}

#[test]
fn module_round_trip() {
    let v = klein_band(Field::Rationals, 3, 2);
    let file = ModuleFile::from_representation(&v);
    let back = ModuleFile::parse(&file.to_json()).unwrap();
    assert_eq!(back.to_representation(v.algebra()).unwrap(), v);
}

#[test]
fn morphism_round_trip() {
    let v = klein_band(Field::Rationals, 3, 1);
    for m in hom_basis(&v, &v).unwrap() {
        let spec = morphism_to_spec(&m);
        assert_eq!(morphism_from_spec(&spec, &v, &v).unwrap(), m);
    }
}

#[test]
fn certificate_report_round_trip() {
    let v = klein_band(Field::Rationals, 3, 1);
    let cert = certify(&v, 3, &TowerSource::ExtPushout, 4).unwrap();
    let report = CertificateReport::from_certificate(&cert);
    let text = report.to_json();
    let back = CertificateReport::parse(&text).unwrap();
    assert_eq!(back, report);
    let rebuilt = back.to_certificate(None).unwrap();
    assert_eq!(rebuilt.verdict, cert.verdict);
    assert_eq!(rebuilt.module, cert.module);
    assert_eq!(rebuilt.lifts.len(), cert.lifts.len());
    assert_eq!(CertificateReport::from_certificate(&rebuilt).to_json(), text);
}

#[test]
fn unknown_keys_are_rejected() {
    let text = r#"{"field": {"kind": "Q"}, "vertices": ["0"], "arrows": [], "extra": 1}"#;
    assert!(matches!(AlgebraFile::parse(text), Err(FormatError::Json(_))));
    let text = r#"{"dims": {"0": 1}, "actions": {}}"#;
    assert!(matches!(ModuleFile::parse(text), Err(FormatError::Json(_))));
}

#[test]
fn missing_arrows_are_zero_and_names_are_checked() {
    let alg = kronecker(Field::Rationals);
    let file = ModuleFile::parse(r#"{"dims": {"0": 1, "1": 2}}"#).unwrap();
    let v = file.to_representation(&alg).unwrap();
    assert!(v.actions().iter().all(|m| m.is_zero()));
    let bad = ModuleFile::parse(r#"{"dims": {"7": 1}}"#).unwrap();
    assert!(matches!(bad.to_representation(&alg), Err(FormatError::UnknownVertex(_))));
    let bad = ModuleFile::parse(r#"{"dims": {"0": 1}, "action": {"z": [["1"]]}}"#).unwrap();
    assert!(matches!(bad.to_representation(&alg), Err(FormatError::UnknownArrow(_))));
}

#[test]
fn relation_violations_are_reported() {
    let alg = klein4(Field::Rationals);
    let file = ModuleFile::parse(r#"{"dims": {"v": 2}, "action": {"a": [["0","0"],["1","0"]], "b": [["1","0"],["0","1"]]}}"#).unwrap();
    let err = file.to_representation(&alg).unwrap_err();
    assert!(matches!(err, FormatError::Rep(_)), "{err:?}");
    assert!(file.to_representation_unchecked(&alg).is_ok());
}
