//! Small algebras used throughout the test suites and by `fixtures emit`.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{BoundAlgebra, Quiver, Relation, DEFAULT_MAX_DEGREE};
use crate::band::{band_module, parse_band, BandError, BandModuleSpec};
use crate::euclidean::{
    build_euclidean, simple_regular_a, simple_regular_search, EuclideanError, EuclideanSpec, DEFAULT_SEARCH_ATTEMPTS,
};
use crate::format::{AlgebraFile, ModuleFile};
use crate::linalg::Field;

/// One vertex, loops `a`, `b`, relations `a a`, `b b`, `a b - b a`.
///
/// This is the group algebra of the Klein four group in characteristic 2
/// and a symmetric special biserial algebra in every characteristic.
pub fn klein4(field: Field) -> Arc<BoundAlgebra> {
    let q = Quiver::new(["v"], [("a", "v", "v"), ("b", "v", "v")]).unwrap();
    let aa = q.path(&["a", "a"]).unwrap();
    let bb = q.path(&["b", "b"]).unwrap();
    let ab = q.path(&["a", "b"]).unwrap();
    let ba = q.path(&["b", "a"]).unwrap();
    let rels = vec![
        Relation::monomial(field, aa),
        Relation::monomial(field, bb),
        Relation::new(vec![(field.one(), ab), (field.from_i64(-1), ba)]),
    ];
    BoundAlgebra::build(q, rels, field, DEFAULT_MAX_DEGREE).unwrap()
}

/// The Kronecker quiver: two arrows `a`, `b` from vertex `1` to vertex `0`.
pub fn kronecker(field: Field) -> Arc<BoundAlgebra> {
    path_algebra(build_euclidean(EuclideanSpec::ATilde { p: 1, q: 1 }).unwrap(), field)
}

pub fn path_algebra(quiver: Quiver, field: Field) -> Arc<BoundAlgebra> {
    BoundAlgebra::build(quiver, Vec::new(), field, DEFAULT_MAX_DEGREE).unwrap()
}

/// `k[x]/(x^n)`.
pub fn truncated_polynomial(field: Field, n: usize) -> Arc<BoundAlgebra> {
    let q = Quiver::new(["v"], [("x", "v", "v")]).unwrap();
    let p = q.path(&vec!["x"; n]).unwrap();
    BoundAlgebra::build(q, vec![Relation::monomial(field, p)], field, DEFAULT_MAX_DEGREE).unwrap()
}

/// Path algebra of `A_2`: a single arrow `a` from `1` to `0`.
pub fn a2(field: Field) -> Arc<BoundAlgebra> {
    path_algebra(Quiver::new(["0", "1"], [("a", "1", "0")]).unwrap(), field)
}

/// λ used by the emitted canonical modules.
pub const FIXTURE_LAMBDA: i64 = 3;

pub const FIXTURE_NAMES: [&str; 7] = ["kronecker", "klein4", "dtilde4", "etilde6", "etilde7", "etilde8", "atilde(p,q)"];

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Euclidean(#[from] EuclideanError),
    #[error(transparent)]
    Band(#[from] BandError),
}

/// Algebra and canonical module of a named fixture, over `Q`.
pub fn emit(name: &str) -> Result<(AlgebraFile, Option<ModuleFile>), FixtureError> {
    let f = Field::Rationals;
    let lambda = f.from_i64(FIXTURE_LAMBDA);
    if name == "klein4" {
        let alg = klein4(f);
        let band = parse_band("a b^-", &alg)?;
        let v = band_module(&BandModuleSpec { band, lambda, m: 1 })?;
        return Ok((AlgebraFile::from_algebra(&alg), Some(ModuleFile::from_representation(&v))));
    }
    let spec: EuclideanSpec = name.parse().map_err(|_| FixtureError::Unknown(name.to_string()))?;
    let alg = path_algebra(build_euclidean(spec)?, f);
    let v = match spec {
        EuclideanSpec::ATilde { .. } => simple_regular_a(&alg, &lambda)?,
        _ => simple_regular_search(&alg, 0, DEFAULT_SEARCH_ATTEMPTS)?.0,
    };
    Ok((AlgebraFile::from_algebra(&alg), Some(ModuleFile::from_representation(&v))))
}
