//! Projective covers, syzygies, stable Hom, Ext and extension realization.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{BoundAlgebra, Element};
use crate::linalg::{Matrix, Scalar};
use crate::rep::{
    self, cokernel_of, direct_sum_with_maps, hom_basis, kernel_of, pair_into, span_rank, Morphism, RepError,
    Representation,
};
use crate::structure::StructureConstants;

/// Position of every basis path among the basis paths with the same endpoints.
fn local_positions(alg: &BoundAlgebra) -> Vec<usize> {
    let nv = alg.quiver().num_vertices();
    let mut counts = vec![vec![0usize; nv]; nv];
    alg.basis()
        .iter()
        .map(|p| {
            let c = &mut counts[p.start()][p.end()];
            *c += 1;
            *c - 1
        })
        .collect()
}

/// `⊕_i P(v_i)` with basis at `w` ordered by summand, then by basis path.
pub fn projective_sum(alg: &Arc<BoundAlgebra>, vertices: &[usize]) -> Representation {
    let q = alg.quiver();
    let f = alg.field();
    let nv = q.num_vertices();
    let local = local_positions(alg);
    let mut offsets = vec![vec![0usize; nv]; vertices.len()];
    let mut dims = vec![0usize; nv];
    for (i, &v) in vertices.iter().enumerate() {
        offsets[i].copy_from_slice(&dims);
        for (w, d) in dims.iter_mut().enumerate() {
            *d += alg.paths_between(v, w).len();
        }
    }
    let action = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            let arrow = alg.arrow_index(ai);
            for (i, &v) in vertices.iter().enumerate() {
                for (col, p) in alg.paths_between(v, a.source).into_iter().enumerate() {
                    for (k, c) in alg.mul_basis(p, arrow) {
                        m.set(offsets[i][a.target] + local[*k], offsets[i][a.source] + col, c.clone());
                    }
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(Arc::clone(alg), dims, action).expect("projective shapes are consistent")
}

/// `P(v) = e_v Λ`: normal-form paths starting at `v`.
pub fn indecomposable_projective(alg: &Arc<BoundAlgebra>, v: usize) -> Result<Representation, RepError> {
    if v >= alg.quiver().num_vertices() {
        return Err(RepError::Shape(format!("unknown vertex {v}")));
    }
    Ok(projective_sum(alg, &[v]))
}

/// `I(u) = D(Λ e_u)`: duals of normal-form paths ending at `u`.
pub fn indecomposable_injective(alg: &Arc<BoundAlgebra>, u: usize) -> Result<Representation, RepError> {
    let q = alg.quiver();
    if u >= q.num_vertices() {
        return Err(RepError::Shape(format!("unknown vertex {u}")));
    }
    let f = alg.field();
    let local = local_positions(alg);
    let dims: Vec<usize> = (0..q.num_vertices()).map(|w| alg.paths_between(w, u).len()).collect();
    let action = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // (φ·a)(y) = φ(a y) for y a path from target(a) to u
            let arrow = alg.arrow_index(ai);
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            for (row, y) in alg.paths_between(a.target, u).into_iter().enumerate() {
                for (k, c) in alg.mul_basis(arrow, y) {
                    m.set(row, local[*k], c.clone());
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(Arc::clone(alg), dims, action)
}

/// Morphism `⊕ P(v_i) -> target` sending the generator `e_{v_i}` to `images[i]`.
pub fn map_from_projectives(
    source: &Representation,
    vertices: &[usize],
    images: &[Vec<Scalar>],
    target: &Representation,
) -> Result<Morphism, RepError> {
    let alg = source.algebra();
    let f = alg.field();
    let nv = alg.quiver().num_vertices();
    let mut blocks: Vec<Matrix> = (0..nv).map(|w| Matrix::zeros(f, target.dim_at(w), source.dim_at(w))).collect();
    let mut offsets = vec![0usize; nv];
    for (i, &v) in vertices.iter().enumerate() {
        let g = Matrix::column(f, images[i].clone());
        for (w, block) in blocks.iter_mut().enumerate() {
            for p in alg.paths_between(v, w) {
                let image = &target.path_matrix(&alg.basis()[p]) * &g;
                block.paste(0, offsets[w], &image);
                offsets[w] += 1;
            }
        }
    }
    Morphism::new(source.clone(), target.clone(), blocks)
}

/// `Ψ: ⊕ P(a_i) -> ⊕ P(b_j)` given by `e_{a_i} ↦ Σ_j z[j][i]` with
/// `z[j][i] ∈ e_{b_j} Λ e_{a_i}`.
pub fn map_between_projectives(
    alg: &Arc<BoundAlgebra>,
    sources: &[usize],
    targets: &[usize],
    z: &[Vec<Element>],
) -> Result<Morphism, RepError> {
    let src = projective_sum(alg, sources);
    let tgt = projective_sum(alg, targets);
    let f = alg.field();
    let local = local_positions(alg);
    let nv = alg.quiver().num_vertices();
    let mut target_offsets = vec![vec![0usize; nv]; targets.len()];
    let mut acc = vec![0usize; nv];
    for (j, &b) in targets.iter().enumerate() {
        target_offsets[j].copy_from_slice(&acc);
        for (w, a) in acc.iter_mut().enumerate() {
            *a += alg.paths_between(b, w).len();
        }
    }
    let images: Vec<Vec<Scalar>> = sources
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let mut g = vec![f.zero(); tgt.dim_at(a)];
            for (j, row) in z.iter().enumerate() {
                for (k, c) in &row[i] {
                    let p = &alg.basis()[*k];
                    debug_assert_eq!((p.start(), p.end()), (targets[j], a));
                    g[target_offsets[j][a] + local[*k]] = c.clone();
                }
            }
            g
        })
        .collect();
    map_from_projectives(&src, sources, &images, &tgt)
}

/// `0 -> ΩV -> P_0 -> V -> 0` with `P_0 -> V` a projective cover.
#[derive(Debug, Clone)]
pub struct ProjectivePresentation {
    pub module: Representation,
    pub p0: Representation,
    /// Vertex of each indecomposable summand of `p0`, in order.
    pub p0_vertices: Vec<usize>,
    pub cover: Morphism,
    pub syzygy: Representation,
    pub inclusion: Morphism,
}

/// Lifts of a basis of `top(V)_v = V_v / Σ im V_a` at every vertex.
pub fn top_lifts(v: &Representation) -> Vec<Vec<Vec<Scalar>>> {
    let alg = v.algebra();
    let q = alg.quiver();
    let f = v.field();
    (0..q.num_vertices())
        .map(|x| {
            let d = v.dim_at(x);
            let mut rad = Matrix::zeros(f, d, 0);
            for a in q.arrows_to(x) {
                rad = rad.hstack(v.action(a)).expect("same height");
            }
            let rad = rad.column_space_basis();
            let r = rad.cols();
            let extended = rad.hstack(&Matrix::identity(f, d)).expect("same height");
            let (_, pivots) = extended.rref();
            pivots.into_iter().filter(|&c| c >= r).map(|c| extended.col(c)).collect()
        })
        .collect()
}

pub fn projective_cover(v: &Representation) -> Result<ProjectivePresentation, RepError> {
    let alg = v.algebra();
    let lifts = top_lifts(v);
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for (x, ls) in lifts.into_iter().enumerate() {
        for l in ls {
            vertices.push(x);
            images.push(l);
        }
    }
    let p0 = projective_sum(alg, &vertices);
    let cover = map_from_projectives(&p0, &vertices, &images, v)?;
    debug_assert!(cover.is_surjective());
    let (syzygy, inclusion) = kernel_of(&cover)?;
    Ok(ProjectivePresentation { module: v.clone(), p0, p0_vertices: vertices, cover, syzygy, inclusion })
}

/// `Ω^n V`.
pub fn syzygy(v: &Representation, n: usize) -> Result<Representation, RepError> {
    let mut cur = v.clone();
    for _ in 0..n {
        cur = projective_cover(&cur)?.syzygy;
    }
    Ok(cur)
}

/// Presentation of `Ω^{n-1} V` (so its syzygy is `Ω^n V`).
pub fn presentation_at(v: &Representation, n: usize) -> Result<ProjectivePresentation, RepError> {
    assert!(n >= 1, "syzygy index starts at 1");
    projective_cover(&syzygy(v, n - 1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StableHom {
    pub hom_dim: usize,
    pub projectively_trivial_dim: usize,
    pub stable_dim: usize,
}

/// Maps `v -> w` of the form `cover_w ∘ g` with `g: v -> P_0(w)`.
fn projectively_trivial(v: &Representation, w: &Representation) -> Result<Vec<Morphism>, RepError> {
    let pres = projective_cover(w)?;
    hom_basis(v, &pres.p0)?.iter().map(|g| pres.cover.compose(g)).collect()
}

pub fn stable_hom_dim(v: &Representation, w: &Representation) -> Result<StableHom, RepError> {
    let hom_dim = rep::hom_dim(v, w)?;
    let trivial = projectively_trivial(v, w)?;
    let projectively_trivial_dim = span_rank(v.field(), &trivial);
    Ok(StableHom { hom_dim, projectively_trivial_dim, stable_dim: hom_dim - projectively_trivial_dim })
}

/// `End(v)` modulo maps factoring through projectives, as structure constants.
pub fn stable_end_algebra(v: &Representation) -> Result<StructureConstants, RepError> {
    let (basis, sc) = rep::end_algebra(v)?;
    let trivial = projectively_trivial(v, v)?;
    if basis.is_empty() || trivial.is_empty() {
        return Ok(sc);
    }
    let f = v.field();
    let len = basis[0].flatten().len();
    let flat_basis: Vec<Vec<Scalar>> = basis.iter().map(Morphism::flatten).collect();
    let coords = Matrix::from_fn(f, len, basis.len(), |i, j| flat_basis[j][i].clone());
    let flat_trivial: Vec<Vec<Scalar>> = trivial.iter().map(Morphism::flatten).collect();
    let rhs = Matrix::from_fn(f, len, trivial.len(), |i, j| flat_trivial[j][i].clone());
    let ideal = coords.solve(&rhs)?.expect("trivial maps are endomorphisms").column_space_basis();
    Ok(sc.quotient(&ideal))
}

/// Element of `Ext^n(A, B)` represented by a cocycle `Ω^n A -> B`.
#[derive(Debug, Clone)]
pub struct ExtClass {
    pub source: Representation,
    pub target: Representation,
    pub cocycle: Morphism,
    pub presentation: Arc<ProjectivePresentation>,
}

#[derive(Debug, Clone)]
pub struct ExtGroup {
    pub dim: usize,
    pub presentation: Arc<ProjectivePresentation>,
    /// Spanning set of the coboundaries inside `Hom(Ω^n A, B)`.
    pub coboundaries: Vec<Morphism>,
    /// Cocycles representing a basis of the quotient.
    pub classes: Vec<ExtClass>,
}

impl ExtGroup {
    /// Whether a cocycle `Ω^n A -> B` is a coboundary.
    pub fn is_zero_class(&self, cocycle: &Morphism) -> bool {
        let f = cocycle.source().field();
        let base = span_rank(f, &self.coboundaries);
        let mut with = self.coboundaries.clone();
        with.push(cocycle.clone());
        span_rank(f, &with) == base
    }
}

pub fn ext(a: &Representation, b: &Representation, n: usize) -> Result<ExtGroup, RepError> {
    if n == 0 {
        return Err(RepError::Shape("Ext degree must be at least 1".into()));
    }
    if !rep::same_algebra(a.algebra(), b.algebra()) {
        return Err(RepError::AlgebraMismatch);
    }
    let pres = Arc::new(presentation_at(a, n)?);
    let f = a.field();
    let omega = &pres.syzygy;
    let mut coboundaries = Vec::new();
    for (i, &v) in pres.p0_vertices.iter().enumerate() {
        for k in 0..b.dim_at(v) {
            let images: Vec<Vec<Scalar>> = pres
                .p0_vertices
                .iter()
                .enumerate()
                .map(|(j, &u)| (0..b.dim_at(u)).map(|r| if j == i && r == k { f.one() } else { f.zero() }).collect())
                .collect();
            let g = map_from_projectives(&pres.p0, &pres.p0_vertices, &images, b)?;
            coboundaries.push(g.compose(&pres.inclusion)?);
        }
    }
    let homs = hom_basis(omega, b)?;
    let mut classes = Vec::new();
    if !homs.is_empty() {
        let len = homs[0].flatten().len();
        let all: Vec<Vec<Scalar>> = coboundaries.iter().chain(&homs).map(Morphism::flatten).collect();
        let m = Matrix::from_fn(f, len, all.len(), |i, j| all[j][i].clone());
        let (_, pivots) = m.rref();
        for c in pivots.into_iter().filter(|&c| c >= coboundaries.len()) {
            classes.push(ExtClass {
                source: a.clone(),
                target: b.clone(),
                cocycle: homs[c - coboundaries.len()].clone(),
                presentation: Arc::clone(&pres),
            });
        }
    }
    Ok(ExtGroup { dim: classes.len(), presentation: pres, coboundaries, classes })
}

pub fn ext_dim(a: &Representation, b: &Representation, n: usize) -> Result<usize, RepError> {
    Ok(ext(a, b, n)?.dim)
}

/// `0 -> B -> E -> A -> 0` realizing an `Ext^1` class.
#[derive(Debug, Clone)]
pub struct Extension {
    pub middle: Representation,
    pub incl: Morphism,
    pub proj: Morphism,
}

/// Pushout of `0 -> ΩA -> P_0 -> A -> 0` along the cocycle.
pub fn realize_extension(eta: &ExtClass) -> Result<Extension, RepError> {
    let pres = &eta.presentation;
    if pres.module != eta.source || eta.cocycle.source() != &pres.syzygy || eta.cocycle.target() != &eta.target {
        return Err(RepError::Shape("malformed extension class: cocycle must be a map ΩA -> B".into()));
    }
    let sum = direct_sum_with_maps(&pres.p0, &eta.target)?;
    let glue = pair_into(&sum, &pres.inclusion, &eta.cocycle.neg())?;
    let (middle, quotient) = cokernel_of(&glue)?;
    let incl = quotient.compose(&sum.inj[1])?;
    // E -> A induced by (cover, 0) through a section of the quotient map
    let f = middle.field();
    let to_a = pres.cover.compose(&sum.proj[0])?;
    let blocks = quotient
        .blocks()
        .iter()
        .zip(to_a.blocks())
        .map(|(qm, t)| {
            let section = qm.solve(&Matrix::identity(f, qm.rows()))?.expect("quotient map is surjective");
            Ok(t * &section)
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    let proj = Morphism::new(middle.clone(), eta.source.clone(), blocks)?;
    Ok(Extension { middle, incl, proj })
}
