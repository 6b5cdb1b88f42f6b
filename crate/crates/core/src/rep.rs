//! Representations of bound quivers (right modules) and their morphisms.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BoundAlgebra, Path};
use crate::linalg::{random_scalar, Field, LinalgError, Matrix, Scalar};
use crate::structure::{DivisionEvidence, StructureConstants};

/// Number of random Hom elements tried by [`is_isomorphic`].
pub const ISO_SAMPLES: usize = 64;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a module: relation {relation} evaluates to a nonzero matrix")]
    RelationViolated { relation: usize },
    #[error("blocks do not commute with arrow {0}")]
    NotAMorphism(String),
    #[error("trace-form radical needs characteristic 0 or p > {dim} (got p = {p})")]
    UnsupportedCharacteristic { p: u64, dim: usize },
    #[error("source and target of the composition do not match")]
    Composition,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

struct RepData {
    alg: Arc<BoundAlgebra>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

/// A finite-dimensional representation; cloning is cheap.
#[derive(Clone)]
pub struct Representation(Arc<RepData>);

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.0.alg.quiver();
        let mut s = f.debug_struct("Representation");
        s.field("dims", &self.0.dims);
        for (a, m) in q.arrows().iter().zip(&self.0.action) {
            s.field(&a.name, m);
        }
        s.finish()
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.0.alg, &other.0.alg) && self.0.dims == other.0.dims && self.0.action == other.0.action
    }
}

impl Eq for Representation {}

pub(crate) fn same_algebra(a: &Arc<BoundAlgebra>, b: &Arc<BoundAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Outcome of [`Representation::check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleReport {
    pub valid: bool,
    pub shape_errors: Vec<String>,
    /// Violated relations with their (nonzero) evaluation.
    pub violations: Vec<(usize, Matrix)>,
}

impl Representation {
    /// Representation with shape checks only; see [`Representation::check`].
    pub fn new_unchecked(alg: Arc<BoundAlgebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self, RepError> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || action.len() != q.num_arrows() {
            return Err(RepError::Shape(format!(
                "expected {} dims and {} arrow matrices, got {} and {}",
                q.num_vertices(),
                q.num_arrows(),
                dims.len(),
                action.len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&action) {
            if m.field() != alg.field() {
                return Err(LinalgError::FieldMismatch(m.field(), alg.field()).into());
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(RepError::Shape(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation(Arc::new(RepData { alg, dims, action })))
    }

    /// Representation satisfying all relations.
    pub fn new(alg: Arc<BoundAlgebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self, RepError> {
        let r = Self::new_unchecked(alg, dims, action)?;
        if let Some((relation, _)) = r.check().violations.first() {
            return Err(RepError::RelationViolated { relation: *relation });
        }
        Ok(r)
    }

    pub fn zero(alg: Arc<BoundAlgebra>) -> Self {
        let dims = vec![0; alg.quiver().num_vertices()];
        let action = alg.quiver().arrows().iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect();
        Representation(Arc::new(RepData { alg, dims, action }))
    }

    /// The simple module at vertex `v`.
    pub fn simple(alg: Arc<BoundAlgebra>, v: usize) -> Self {
        let mut dims = vec![0; alg.quiver().num_vertices()];
        dims[v] = 1;
        let action = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
            .collect();
        Representation(Arc::new(RepData { alg, dims, action }))
    }

    /// Random matrices of the given dimension vector. Only meaningful for
    /// algebras without relations (otherwise the result may fail `check`).
    pub fn random<R: Rng>(alg: Arc<BoundAlgebra>, dims: Vec<usize>, rng: &mut R) -> Self {
        let f = alg.field();
        let action = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::random_with(rng, f, dims[a.target], dims[a.source]))
            .collect();
        Representation(Arc::new(RepData { alg, dims, action }))
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.0.alg
    }

    pub fn field(&self) -> Field {
        self.0.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.0.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    /// Matrix of a path: `V_{a_n} ... V_{a_1}`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dim_at(p.start()));
        for &a in p.arrows() {
            m = self.action(a) * &m;
        }
        m
    }

    /// Verifies matrix shapes and that every relation evaluates to zero.
    pub fn check(&self) -> ModuleReport {
        let alg = &self.0.alg;
        let mut violations = Vec::new();
        for (i, r) in alg.relations().iter().enumerate() {
            let Some((_, first)) = r.terms().first() else { continue };
            let mut acc = Matrix::zeros(self.field(), self.dim_at(first.end()), self.dim_at(first.start()));
            for (c, p) in r.terms() {
                acc = &acc + &self.path_matrix(p).scale(c);
            }
            if !acc.is_zero() {
                violations.push((i, acc));
            }
        }
        ModuleReport { valid: violations.is_empty(), shape_errors: Vec::new(), violations }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        if !same_algebra(self.algebra(), other.algebra()) {
            return Err(RepError::AlgebraMismatch);
        }
        let dims = self.dims().iter().zip(other.dims()).map(|(a, b)| a + b).collect();
        let action = self.actions().iter().zip(other.actions()).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Representation(Arc::new(RepData { alg: Arc::clone(self.algebra()), dims, action })))
    }

    /// The module with every matrix conjugated by the given vertex bases:
    /// `blocks[v]` is an invertible change of basis at `v`.
    pub fn transport(&self, blocks: &[Matrix]) -> Result<Representation, RepError> {
        let q = self.algebra().quiver();
        let mut action = Vec::with_capacity(q.num_arrows());
        for (a, m) in q.arrows().iter().zip(self.actions()) {
            let inv = blocks[a.source].inverse().ok_or_else(|| RepError::Shape("singular change of basis".into()))?;
            action.push(&(&blocks[a.target] * m) * &inv);
        }
        Representation::new_unchecked(Arc::clone(self.algebra()), self.dims().to_vec(), action)
    }
}

/// Element of `Hom(source, target)`: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    blocks: Vec<Matrix>,
}

impl Morphism {
    /// Checked constructor: shapes and commutation with every arrow.
    pub fn new(source: Representation, target: Representation, blocks: Vec<Matrix>) -> Result<Self, RepError> {
        let m = Self::new_unchecked(source, target, blocks)?;
        if let Some(a) = m.violated_arrow() {
            return Err(RepError::NotAMorphism(m.source.algebra().quiver().arrows()[a].name.clone()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, blocks: Vec<Matrix>) -> Result<Self, RepError> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(RepError::AlgebraMismatch);
        }
        if blocks.len() != source.dims().len() {
            return Err(RepError::Shape("one block per vertex required".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dim_at(v), source.dim_at(v)) {
                return Err(RepError::Shape(format!(
                    "block at vertex {v} must be {}x{}, got {}x{}",
                    target.dim_at(v),
                    source.dim_at(v),
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(Morphism { source, target, blocks })
    }

    pub fn identity(v: &Representation) -> Self {
        let blocks = v.dims().iter().map(|&d| Matrix::identity(v.field(), d)).collect();
        Morphism { source: v.clone(), target: v.clone(), blocks }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let blocks = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| Matrix::zeros(source.field(), t, s))
            .collect();
        Morphism { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    /// First arrow `a: s -> t` with `f_t V_a != W_a f_s`.
    pub fn violated_arrow(&self) -> Option<usize> {
        let q = self.source.algebra().quiver();
        q.arrows().iter().enumerate().find_map(|(i, a)| {
            let lhs = &self.blocks[a.target] * self.source.action(i);
            let rhs = self.target.action(i) * &self.blocks[a.source];
            (lhs != rhs).then_some(i)
        })
    }

    pub fn is_morphism(&self) -> bool {
        self.violated_arrow().is_none()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism, RepError> {
        if first.target != self.source {
            return Err(RepError::Composition);
        }
        let blocks = self.blocks.iter().zip(&first.blocks).map(|(a, b)| a * b).collect();
        Ok(Morphism { source: first.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        let blocks = self.blocks.iter().map(|b| b.scale(s)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn neg(&self) -> Morphism {
        self.scale(&-self.source.field().one())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    /// Every vertex block is square and invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// `self^s` for an endomorphism.
    pub fn power(&self, s: u32) -> Result<Morphism, RepError> {
        if self.source != self.target {
            return Err(RepError::Composition);
        }
        let blocks = self.blocks.iter().map(|b| b.pow(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), blocks })
    }

    /// Sum of vertex traces of an endomorphism.
    pub fn trace(&self) -> Scalar {
        let f = self.source.field();
        self.blocks.iter().fold(f.zero(), |acc, b| &acc + &b.trace())
    }

    /// All block entries concatenated (vertex-major, row-major).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    pub(crate) fn from_flat(source: &Representation, target: &Representation, flat: &[Scalar]) -> Morphism {
        let f = source.field();
        let mut offset = 0;
        let blocks = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| {
                let b = Matrix::from_fn(f, t, s, |i, j| flat[offset + i * s + j].clone());
                offset += s * t;
                b
            })
            .collect();
        Morphism { source: source.clone(), target: target.clone(), blocks }
    }
}

/// Basis of `Hom(v, w)`, from the commuting equations `X_t V_a = W_a X_s`.
pub fn hom_basis(v: &Representation, w: &Representation) -> Result<Vec<Morphism>, RepError> {
    if !same_algebra(v.algebra(), w.algebra()) {
        return Err(RepError::AlgebraMismatch);
    }
    let system = hom_system(v, w);
    let kernel = if system.rows() == 0 { Matrix::identity(v.field(), system.cols()) } else { system.kernel_basis() };
    Ok((0..kernel.cols()).map(|j| Morphism::from_flat(v, w, &kernel.col(j))).collect())
}

pub fn hom_dim(v: &Representation, w: &Representation) -> Result<usize, RepError> {
    if !same_algebra(v.algebra(), w.algebra()) {
        return Err(RepError::AlgebraMismatch);
    }
    let system = hom_system(v, w);
    Ok(system.cols() - system.rank())
}

/// Linear system whose kernel is `Hom(v, w)` in flattened coordinates.
fn hom_system(v: &Representation, w: &Representation) -> Matrix {
    let f = v.field();
    let nv = v.dims().len();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for x in 0..nv {
        offsets.push(total);
        total += v.dim_at(x) * w.dim_at(x);
    }
    let q = v.algebra().quiver();
    let rows: usize = q.arrows().iter().map(|a| w.dim_at(a.target) * v.dim_at(a.source)).sum();
    let mut sys = Matrix::zeros(f, rows, total);
    let mut r = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (va, wa) = (v.action(ai), w.action(ai));
        let (vs, vt, ws, wt) = (v.dim_at(s), v.dim_at(t), w.dim_at(s), w.dim_at(t));
        for i in 0..wt {
            for j in 0..vs {
                // (X_t V_a)[i][j] = sum_k X_t[i][k] V_a[k][j]
                for k in 0..vt {
                    let c = va.get(k, j);
                    if !c.is_zero() {
                        let col = offsets[t] + i * vt + k;
                        sys.set(r, col, sys.get(r, col) + c);
                    }
                }
                // (W_a X_s)[i][j] = sum_k W_a[i][k] X_s[k][j]
                for k in 0..ws {
                    let c = wa.get(i, k);
                    if !c.is_zero() {
                        let col = offsets[s] + k * vs + j;
                        sys.set(r, col, sys.get(r, col) - c);
                    }
                }
                r += 1;
            }
        }
    }
    sys
}

/// Random linear combination of the given morphisms (which share endpoints).
pub fn random_combination<R: Rng>(basis: &[Morphism], source: &Representation, target: &Representation, rng: &mut R) -> Morphism {
    let f = source.field();
    let mut acc = Morphism::zero(source, target);
    for m in basis {
        let c = random_scalar(rng, f);
        if !c.is_zero() {
            acc = acc.add(&m.scale(&c));
        }
    }
    acc
}

/// Structure constants of `End(v)` in the basis returned by [`hom_basis`].
pub fn end_algebra(v: &Representation) -> Result<(Vec<Morphism>, StructureConstants), RepError> {
    let basis = hom_basis(v, v)?;
    let sc = structure_constants(v.field(), &basis)?;
    Ok((basis, sc))
}

fn structure_constants(field: Field, basis: &[Morphism]) -> Result<StructureConstants, RepError> {
    let n = basis.len();
    if n == 0 {
        return Ok(StructureConstants::new(field, Vec::new()));
    }
    let flat: Vec<Vec<Scalar>> = basis.iter().map(Morphism::flatten).collect();
    let len = flat[0].len();
    let coords = Matrix::from_fn(field, len, n, |i, j| flat[j][i].clone());
    let mut products = Vec::with_capacity(n * n);
    for x in basis {
        for y in basis {
            products.push(x.compose(y)?.flatten());
        }
    }
    let rhs = Matrix::from_fn(field, len, n * n, |i, j| products[j][i].clone());
    let sol = coords.solve(&rhs)?.expect("End is closed under composition");
    let table = (0..n)
        .map(|i| (0..n).map(|j| sol.col(i * n + j)).collect())
        .collect();
    Ok(StructureConstants::new(field, table))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EndStructure {
    pub dim_end: usize,
    pub radical_dim: usize,
    pub top_dim: usize,
}

/// `End(v)`, its radical (kernel of the trace form `tr(xy)` on `v`) and top.
pub fn end_structure(v: &Representation) -> Result<EndStructure, RepError> {
    let basis = hom_basis(v, v)?;
    let n = basis.len();
    if let Field::Prime(p) = v.field() {
        if p <= n as u64 {
            return Err(RepError::UnsupportedCharacteristic { p, dim: n });
        }
    }
    let radical_dim = trace_radical(v.field(), &basis)?.cols();
    Ok(EndStructure { dim_end: n, radical_dim, top_dim: n - radical_dim })
}

/// Coordinates (columns) of the trace-form radical of a set of endomorphisms.
pub(crate) fn trace_radical(field: Field, basis: &[Morphism]) -> Result<Matrix, RepError> {
    let n = basis.len();
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, basis[i].compose(&basis[j])?.trace());
        }
    }
    Ok(gram.kernel_basis())
}

/// `dim End(v) = 1`.
pub fn is_brick(v: &Representation) -> Result<bool, RepError> {
    Ok(hom_dim(v, v)? == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndecVerdict {
    Yes,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndecomposabilityReport {
    pub verdict: IndecVerdict,
    pub top_dim: usize,
    /// Set for the zero module.
    pub degenerate: bool,
}

/// `Yes` iff `End(v)` is local with residue field `k` (top dimension 1).
pub fn is_indecomposable(v: &Representation) -> Result<IndecomposabilityReport, RepError> {
    let e = end_structure(v)?;
    let verdict = if e.top_dim == 1 { IndecVerdict::Yes } else { IndecVerdict::Inconclusive };
    Ok(IndecomposabilityReport { verdict, top_dim: e.top_dim, degenerate: v.is_zero() })
}

/// Division-ring evidence for `End(v)/rad End(v)`.
pub fn end_top_division_evidence(v: &Representation, seed: u64) -> Result<DivisionEvidence, RepError> {
    let (basis, sc) = end_algebra(v)?;
    if let Field::Prime(p) = v.field() {
        if p <= basis.len() as u64 {
            return Err(RepError::UnsupportedCharacteristic { p, dim: basis.len() });
        }
    }
    let rad = trace_radical(v.field(), &basis)?;
    Ok(sc.quotient(&rad).division_evidence(seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoVerdict {
    Yes,
    No,
    ProbablyNo,
}

#[derive(Debug, Clone)]
pub struct IsoResult {
    pub verdict: IsoVerdict,
    pub witness: Option<Morphism>,
}

/// Randomized isomorphism test with an exact witness.
pub fn is_isomorphic(v: &Representation, w: &Representation, seed: u64) -> Result<IsoResult, RepError> {
    if !same_algebra(v.algebra(), w.algebra()) {
        return Err(RepError::AlgebraMismatch);
    }
    let no = IsoResult { verdict: IsoVerdict::No, witness: None };
    if v.dims() != w.dims() {
        return Ok(no);
    }
    if v.is_zero() {
        return Ok(IsoResult { verdict: IsoVerdict::Yes, witness: Some(Morphism::zero(v, w)) });
    }
    if v == w {
        return Ok(IsoResult { verdict: IsoVerdict::Yes, witness: Some(Morphism::identity(v)) });
    }
    let basis = hom_basis(v, w)?;
    if basis.len() != hom_dim(w, v)? {
        return Ok(no);
    }
    if basis.is_empty() {
        return Ok(no);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_SAMPLES {
        let m = random_combination(&basis, v, w, &mut rng);
        if m.is_isomorphism() {
            debug_assert!(m.is_morphism());
            return Ok(IsoResult { verdict: IsoVerdict::Yes, witness: Some(m) });
        }
    }
    Ok(IsoResult { verdict: IsoVerdict::ProbablyNo, witness: None })
}

/// Kernel with its inclusion.
pub fn kernel_of(m: &Morphism) -> Result<(Representation, Morphism), RepError> {
    let src = m.source();
    let q = src.algebra().quiver();
    let bases: Vec<Matrix> = m.blocks().iter().map(Matrix::kernel_basis).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut action = Vec::with_capacity(q.num_arrows());
    for (ai, a) in q.arrows().iter().enumerate() {
        let image = src.action(ai) * &bases[a.source];
        let induced = bases[a.target].solve(&image)?.ok_or_else(|| RepError::NotAMorphism(a.name.clone()))?;
        action.push(induced);
    }
    let k = Representation::new_unchecked(Arc::clone(src.algebra()), dims, action)?;
    let incl = Morphism::new_unchecked(k.clone(), src.clone(), bases)?;
    Ok((k, incl))
}

/// Cokernel with its projection.
pub fn cokernel_of(m: &Morphism) -> Result<(Representation, Morphism), RepError> {
    let tgt = m.target();
    let q = tgt.algebra().quiver();
    let f = tgt.field();
    let quotients: Vec<Matrix> = m
        .blocks()
        .iter()
        .enumerate()
        .map(|(v, b)| if b.cols() == 0 { Matrix::identity(f, tgt.dim_at(v)) } else { b.left_kernel_basis() })
        .collect();
    let sections: Vec<Matrix> = quotients
        .iter()
        .map(|qm| qm.solve(&Matrix::identity(f, qm.rows())).map(|s| s.expect("quotient map has full row rank")))
        .collect::<Result<_, _>>()?;
    let dims: Vec<usize> = quotients.iter().map(Matrix::rows).collect();
    let action = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| &(&quotients[a.target] * tgt.action(ai)) * &sections[a.source])
        .collect();
    let c = Representation::new_unchecked(Arc::clone(tgt.algebra()), dims, action)?;
    let proj = Morphism::new_unchecked(tgt.clone(), c.clone(), quotients)?;
    Ok((c, proj))
}

/// Image `Im` with the surjection `V -> Im` and the inclusion `Im -> W`.
pub fn image_of(m: &Morphism) -> Result<(Representation, Morphism, Morphism), RepError> {
    let (src, tgt) = (m.source(), m.target());
    let q = tgt.algebra().quiver();
    let bases: Vec<Matrix> = m.blocks().iter().map(Matrix::column_space_basis).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut action = Vec::with_capacity(q.num_arrows());
    for (ai, a) in q.arrows().iter().enumerate() {
        let image = tgt.action(ai) * &bases[a.source];
        action.push(bases[a.target].solve(&image)?.ok_or_else(|| RepError::NotAMorphism(a.name.clone()))?);
    }
    let im = Representation::new_unchecked(Arc::clone(tgt.algebra()), dims, action)?;
    let coreach = m
        .blocks()
        .iter()
        .zip(&bases)
        .map(|(b, basis)| basis.solve(b).map(|x| x.expect("block factors through its image")))
        .collect::<Result<Vec<_>, _>>()?;
    let onto = Morphism::new_unchecked(src.clone(), im.clone(), coreach)?;
    let incl = Morphism::new_unchecked(im.clone(), tgt.clone(), bases)?;
    Ok((im, onto, incl))
}

/// Canonical injections and projections of `v ⊕ w`.
pub struct DirectSum {
    pub sum: Representation,
    pub inj: [Morphism; 2],
    pub proj: [Morphism; 2],
}

pub fn direct_sum_with_maps(v: &Representation, w: &Representation) -> Result<DirectSum, RepError> {
    let sum = v.direct_sum(w)?;
    let f = v.field();
    let n = v.dims().len();
    let block = |rows: usize, cols: usize, r0: usize, c0: usize, d: usize| {
        let mut m = Matrix::zeros(f, rows, cols);
        m.paste(r0, c0, &Matrix::identity(f, d));
        m
    };
    let inj0 = (0..n).map(|x| block(sum.dim_at(x), v.dim_at(x), 0, 0, v.dim_at(x))).collect();
    let inj1 = (0..n).map(|x| block(sum.dim_at(x), w.dim_at(x), v.dim_at(x), 0, w.dim_at(x))).collect();
    let proj0 = (0..n).map(|x| block(v.dim_at(x), sum.dim_at(x), 0, 0, v.dim_at(x))).collect();
    let proj1 = (0..n).map(|x| block(w.dim_at(x), sum.dim_at(x), 0, v.dim_at(x), w.dim_at(x))).collect();
    Ok(DirectSum {
        inj: [
            Morphism::new_unchecked(v.clone(), sum.clone(), inj0)?,
            Morphism::new_unchecked(w.clone(), sum.clone(), inj1)?,
        ],
        proj: [
            Morphism::new_unchecked(sum.clone(), v.clone(), proj0)?,
            Morphism::new_unchecked(sum.clone(), w.clone(), proj1)?,
        ],
        sum,
    })
}

/// Morphism into a direct sum from its two components.
pub fn pair_into(sum: &DirectSum, first: &Morphism, second: &Morphism) -> Result<Morphism, RepError> {
    let a = sum.inj[0].compose(first)?;
    let b = sum.inj[1].compose(second)?;
    Ok(a.add(&b))
}

/// Rank of `span(ms)` inside the flattened Hom space.
pub fn span_rank(field: Field, ms: &[Morphism]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = ms.iter().map(Morphism::flatten).collect();
    if rows[0].is_empty() {
        return 0;
    }
    Matrix::from_rows(field, rows).expect("same Hom space").rank()
}
