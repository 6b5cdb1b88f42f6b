//! The Auslander-Reiten translate `τ = D Tr` and its cross-checks.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{BoundAlgebra, Element};
use crate::homological::{map_between_projectives, projective_cover};
use crate::linalg::{Field, Matrix, Scalar};
use crate::rep::{cokernel_of, is_isomorphic, IsoVerdict, Morphism, RepError, Representation};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArError {
    #[error("Coxeter check needs a path algebra without relations")]
    NotHereditary,
    #[error("module is projective")]
    ProjectiveInput,
    #[error("Cartan matrix is singular")]
    SingularCartan,
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// `D V` as a module over the opposite algebra: dual spaces, transposed matrices.
pub fn dualize(v: &Representation) -> Representation {
    dualize_over(v, v.algebra().opposite())
}

/// `D V` over a given algebra whose quiver is the opposite of `v`'s.
pub(crate) fn dualize_over(v: &Representation, alg: Arc<BoundAlgebra>) -> Representation {
    let action = v.actions().iter().map(Matrix::transpose).collect();
    Representation::new_unchecked(alg, v.dims().to_vec(), action).expect("transposes have dual shapes")
}

/// Minimal presentation `⊕P(v_i) -> ⊕P(u_j) -> V -> 0` as a matrix over `Λ`.
#[derive(Debug, Clone)]
pub struct PresentationMatrix {
    /// Vertices of the summands of `P_1`.
    pub p1_vertices: Vec<usize>,
    /// Vertices of the summands of `P_0`.
    pub p0_vertices: Vec<usize>,
    /// `entries[j][i] ∈ e_{u_j} Λ e_{v_i}`: image of the `i`-th generator of `P_1`.
    pub entries: Vec<Vec<Element>>,
}

pub fn presentation_matrix(v: &Representation) -> Result<PresentationMatrix, RepError> {
    let alg = v.algebra();
    let pres0 = projective_cover(v)?;
    let pres1 = projective_cover(&pres0.syzygy)?;
    let d = pres0.inclusion.compose(&pres1.cover)?;
    let p1 = &pres1.p0_vertices;
    let p0 = &pres0.p0_vertices;
    let mut entries = vec![vec![Vec::new(); p1.len()]; p0.len()];
    for (i, &vi) in p1.iter().enumerate() {
        // column of the generator e_{v_i} inside P_1 at vertex v_i
        let mut col = 0;
        for &earlier in &p1[..i] {
            col += alg.paths_between(earlier, vi).len();
        }
        let trivial = alg.trivial_index(vi);
        col += alg.paths_between(vi, vi).iter().position(|&p| p == trivial).expect("e_v is a basis path");
        let image = d.block(vi).col(col);
        let mut row = 0;
        for (j, &uj) in p0.iter().enumerate() {
            for p in alg.paths_between(uj, vi) {
                if !image[row].is_zero() {
                    entries[j][i].push((p, image[row].clone()));
                }
                row += 1;
            }
        }
    }
    Ok(PresentationMatrix { p1_vertices: p1.clone(), p0_vertices: p0.clone(), entries })
}

/// `Tr V` as a module over `Λ^op`: cokernel of `Hom_Λ(P_0, Λ) -> Hom_Λ(P_1, Λ)`.
pub fn transpose(v: &Representation) -> Result<Representation, RepError> {
    let alg = v.algebra();
    let op = alg.opposite();
    let pm = presentation_matrix(v)?;
    let z: Vec<Vec<Element>> = (0..pm.p1_vertices.len())
        .map(|i| {
            (0..pm.p0_vertices.len())
                .map(|j| {
                    let terms: Vec<(Scalar, crate::algebra::Path)> =
                        pm.entries[j][i].iter().map(|(k, c)| (c.clone(), alg.basis()[*k].reversed())).collect();
                    op.normal_form(&terms).expect("reversed paths live in the opposite quiver")
                })
                .collect()
        })
        .collect();
    let map = map_between_projectives(&op, &pm.p0_vertices, &pm.p1_vertices, &z)?;
    Ok(cokernel_of(&map)?.0)
}

/// `τ V = D Tr V`; zero for projective modules.
pub fn tau(v: &Representation) -> Result<Representation, RepError> {
    let tr = transpose(v)?;
    Ok(dualize_over(&tr, Arc::clone(v.algebra())))
}

/// The isomorphism `τ V ≅ V`, when found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TubeVerdict {
    Yes,
    ProbablyNo,
    No,
}

#[derive(Debug, Clone)]
pub struct TubeMembership {
    pub verdict: TubeVerdict,
    pub tau: Representation,
    pub witness: Option<Morphism>,
}

pub fn homogeneous_tube_membership(v: &Representation, seed: u64) -> Result<TubeMembership, RepError> {
    let t = tau(v)?;
    if t.is_zero() {
        return Ok(TubeMembership { verdict: TubeVerdict::No, tau: t, witness: None });
    }
    let iso = is_isomorphic(&t, v, seed)?;
    let verdict = match iso.verdict {
        IsoVerdict::Yes => TubeVerdict::Yes,
        IsoVerdict::No => TubeVerdict::No,
        IsoVerdict::ProbablyNo => TubeVerdict::ProbablyNo,
    };
    Ok(TubeMembership { verdict, tau: t, witness: iso.witness })
}

/// `Φ = -C C^{-T}`, with `C[v][w]` the number of paths from `v` to `w`.
pub fn coxeter_matrix(alg: &BoundAlgebra) -> Result<Matrix, ArError> {
    if !alg.is_hereditary() {
        return Err(ArError::NotHereditary);
    }
    let c = alg.cartan_matrix();
    let rows: Vec<&[i64]> = c.iter().map(Vec::as_slice).collect();
    let c = Matrix::from_i64(Field::Rationals, &rows);
    let inv_t = c.transpose().inverse().ok_or(ArError::SingularCartan)?;
    Ok(-&(&c * &inv_t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterCheck {
    pub predicted: Vec<i64>,
    pub actual: Vec<i64>,
    pub agrees: bool,
}

pub fn coxeter_check(v: &Representation) -> Result<CoxeterCheck, ArError> {
    let phi = coxeter_matrix(v.algebra())?;
    if projective_cover(v)?.syzygy.is_zero() {
        return Err(ArError::ProjectiveInput);
    }
    let dims: Vec<Scalar> = v.dims().iter().map(|&d| Field::Rationals.from_i64(d as i64)).collect();
    let predicted: Vec<i64> = (&phi * &Matrix::column(Field::Rationals, dims))
        .col(0)
        .iter()
        .map(|s| s.to_i64().expect("Coxeter matrix is integral"))
        .collect();
    let actual: Vec<i64> = tau(v)?.dims().iter().map(|&d| d as i64).collect();
    Ok(CoxeterCheck { agrees: predicted == actual, predicted, actual })
}
