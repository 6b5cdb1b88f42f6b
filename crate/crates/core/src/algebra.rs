//! Bound quiver algebras `kQ/I`.
//!
//! Paths are read left to right: `a b` traverses `a` first, so
//! `source(a b) = source(a)`. A representation assigns to `a b` the matrix
//! product `V_b * V_a` acting on column vectors, which makes every
//! representation a right module.
//!
//! The ideal is handled by degreewise linear algebra. For increasing `D` the
//! two-sided closure of the relations is computed inside `kQ / J^{D+1}`; once
//! every path of length `D` lies in that closure, `J^D` is contained in the
//! ideal and the non-pivot paths of length `< D` form the normal-form basis.
//! Columns are ordered by length and then reverse-lexicographically, so a
//! relation rewrites its shortest, lexicographically largest term in terms of
//! the others (`b a -> a b` for the commutativity relation `a b - b a`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Field, LinalgError, Matrix, Scalar};

pub const DEFAULT_MAX_DEGREE: usize = 50;

/// Upper bound on the number of paths enumerated while building an algebra.
pub const PATH_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("duplicate identifier {0:?}")]
    Duplicate(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("relation {0} is empty")]
    EmptyRelation(usize),
    #[error("relation {0} has terms that are not parallel")]
    NonParallelRelation(usize),
    #[error("relation {0} has a term of length < 2")]
    RelationTooShort(usize),
    #[error("relation coefficient {0} is not in {1}")]
    ForeignCoefficient(String, Field),
    #[error("max degree must be at least 2")]
    MaxDegreeTooSmall,
    #[error("not finite dimensional within degree {max_degree}: path {path} survives")]
    NotFiniteDimensional { max_degree: usize, path: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<V, A, S, T>(vertices: V, arrows: A) -> Result<Self, AlgebraError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        A: IntoIterator<Item = (T, T, T)>,
        T: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(AlgebraError::Duplicate(v.clone()));
            }
        }
        let mut q = Quiver { vertices, arrows: Vec::new() };
        for (name, from, to) in arrows {
            let name = name.as_ref().to_string();
            if q.arrows.iter().any(|a| a.name == name) || q.vertices.contains(&name) {
                return Err(AlgebraError::Duplicate(name));
            }
            let source = q.vertex(from.as_ref())?;
            let target = q.vertex(to.as_ref())?;
            q.arrows.push(Arrow { name, source, target });
        }
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| AlgebraError::UnknownVertex(name.into()))
    }

    pub fn arrow(&self, name: &str) -> Result<usize, AlgebraError> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| AlgebraError::UnknownArrow(name.into()))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Same vertices and arrow names, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// Arrow path from names, checking composability.
    pub fn path(&self, names: &[&str]) -> Result<Path, AlgebraError> {
        let arrows = names.iter().map(|n| self.arrow(n)).collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(self, arrows)
    }

    /// Graphviz rendering of the quiver.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for a in &self.arrows {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[a.source], self.vertices[a.target], a.name
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// A path of the quiver: a trivial path `e_v` or a composable arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Result<Self, AlgebraError> {
        let Some(&first) = arrows.first() else {
            return Err(AlgebraError::NotComposable("empty arrow list".into()));
        };
        if arrows.iter().any(|&a| a >= quiver.num_arrows()) {
            return Err(AlgebraError::NotComposable("arrow index out of range".into()));
        }
        for w in arrows.windows(2) {
            if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                let names: Vec<&str> = arrows.iter().map(|&a| quiver.arrows[a].name.as_str()).collect();
                return Err(AlgebraError::NotComposable(names.join(" ")));
            }
        }
        let start = quiver.arrows[first].source;
        let end = quiver.arrows[*arrows.last().unwrap()].target;
        Ok(Path { start, end, arrows })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if the endpoints match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }

    fn push_arrow(&self, quiver: &Quiver, a: usize) -> Option<Path> {
        let arrow = &quiver.arrows[a];
        if arrow.source != self.end {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Some(Path { start: self.start, end: arrow.target, arrows })
    }

    fn prepend_arrow(&self, quiver: &Quiver, a: usize) -> Option<Path> {
        let arrow = &quiver.arrows[a];
        if arrow.target != self.start {
            return None;
        }
        let mut arrows = vec![a];
        arrows.extend_from_slice(&self.arrows);
        Some(Path { start: arrow.source, end: self.end, arrows })
    }

    /// The same path in the opposite quiver (arrow order reversed).
    pub fn reversed(&self) -> Path {
        Path { start: self.end, end: self.start, arrows: self.arrows.iter().rev().copied().collect() }
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }

    /// Arrow names, or `["e_v"]`-style for trivial paths.
    pub fn names(&self, quiver: &Quiver) -> Vec<String> {
        self.arrows.iter().map(|&a| quiver.arrows[a].name.clone()).collect()
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertices[self.path.start]);
        }
        let names: Vec<&str> = self.path.arrows.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect();
        write!(f, "{}", names.join(" "))
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Self {
        Relation { terms }
    }

    /// Single-term (monomial) relation.
    pub fn monomial(field: Field, path: Path) -> Self {
        Relation { terms: vec![(field.one(), path)] }
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    fn validate(&self, index: usize, field: Field) -> Result<(), AlgebraError> {
        let Some((_, first)) = self.terms.first() else {
            return Err(AlgebraError::EmptyRelation(index));
        };
        for (c, p) in &self.terms {
            if !field.contains(c) {
                return Err(AlgebraError::ForeignCoefficient(c.to_string(), field));
            }
            if p.len() < 2 {
                return Err(AlgebraError::RelationTooShort(index));
            }
            if p.start != first.start || p.end != first.end {
                return Err(AlgebraError::NonParallelRelation(index));
            }
        }
        Ok(())
    }

    fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() }
    }
}

/// Sparse linear combination of basis elements, sorted by basis index.
pub type Element = Vec<(usize, Scalar)>;

/// A finite-dimensional algebra `kQ/I` with a fixed normal-form basis.
#[derive(Debug)]
pub struct BoundAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    basis: Vec<Path>,
    nilpotency: usize,
    /// Every path of length below the nilpotency degree, with its normal form.
    reductions: HashMap<Path, Element>,
    basis_index: HashMap<Path, usize>,
    /// `products[i][j]` is the normal form of `basis[i] * basis[j]`.
    products: Vec<Vec<Element>>,
    opposite: OnceLock<Arc<BoundAlgebra>>,
}

impl PartialEq for BoundAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations && self.field == other.field
    }
}

impl Eq for BoundAlgebra {}

impl BoundAlgebra {
    pub fn build(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: Field,
        max_degree: usize,
    ) -> Result<Arc<Self>, AlgebraError> {
        if max_degree < 2 {
            return Err(AlgebraError::MaxDegreeTooSmall);
        }
        for (i, r) in relations.iter().enumerate() {
            r.validate(i, field)?;
        }
        let mut survivor = None;
        for d in 2..=max_degree {
            match Self::try_degree(&quiver, &relations, field, d)? {
                Ok(alg) => return Ok(Arc::new(alg)),
                Err(p) => survivor = Some(p),
            }
        }
        Err(AlgebraError::NotFiniteDimensional {
            max_degree,
            path: survivor.map(|p| p.display(&quiver).to_string()).unwrap_or_default(),
        })
    }

    /// Works in `kQ / J^{d+1}`. Returns the algebra when `J^d` lies in the
    /// ideal, otherwise a path of length `d` that is not yet reducible.
    fn try_degree(
        quiver: &Quiver,
        relations: &[Relation],
        field: Field,
        d: usize,
    ) -> Result<Result<Self, Path>, AlgebraError> {
        let mut paths: Vec<Path> = (0..quiver.num_vertices()).map(Path::trivial).collect();
        let mut frontier = paths.clone();
        for _ in 0..d {
            let mut next = Vec::new();
            for p in &frontier {
                for a in quiver.arrows_from(p.end) {
                    next.push(p.push_arrow(quiver, a).unwrap());
                }
            }
            paths.extend(next.iter().cloned());
            if paths.len() > PATH_BUDGET {
                return Err(AlgebraError::NotFiniteDimensional {
                    max_degree: d,
                    path: next[0].display(quiver).to_string(),
                });
            }
            frontier = next;
        }
        // length ascending, then reverse lexicographic
        paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.arrows.cmp(&a.arrows)));
        let column: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

        let mut ideal = Echelon::default();
        let mut queue: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        for r in relations {
            let mut v = BTreeMap::new();
            for (c, p) in &r.terms {
                if let Some(&col) = column.get(p) {
                    add_entry(&mut v, col, c.clone());
                }
            }
            queue.push(v);
        }
        while let Some(v) = queue.pop() {
            let Some(v) = ideal.insert(v) else { continue };
            for a in 0..quiver.num_arrows() {
                for side in [true, false] {
                    let mut w = BTreeMap::new();
                    for (&col, c) in &v {
                        let p = &paths[col];
                        let q = if side { p.push_arrow(quiver, a) } else { p.prepend_arrow(quiver, a) };
                        if let Some(q) = q {
                            if let Some(&qc) = column.get(&q) {
                                add_entry(&mut w, qc, c.clone());
                            }
                        }
                    }
                    if !w.is_empty() {
                        queue.push(w);
                    }
                }
            }
        }

        let top: Vec<usize> = (0..paths.len()).filter(|&c| paths[c].len() == d).collect();
        if let Some(&survivor) = top.iter().find(|c| !ideal.rows.contains_key(c)) {
            return Ok(Err(paths[survivor].clone()));
        }

        let reduced = ideal.fully_reduced();
        let basis: Vec<Path> = paths.iter().filter(|p| p.len() < d && !reduced.contains_key(&column[*p])).cloned().collect();
        let basis_index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut reductions = HashMap::new();
        for (col, p) in paths.iter().enumerate() {
            if p.len() >= d {
                continue;
            }
            let nf: Element = match reduced.get(&col) {
                None => vec![(basis_index[p], field.one())],
                Some(row) => {
                    let mut e: Element = row
                        .iter()
                        .filter(|(&c, _)| c != col)
                        .map(|(&c, s)| (basis_index[&paths[c]], -s))
                        .collect();
                    e.sort_by_key(|(i, _)| *i);
                    e
                }
            };
            reductions.insert(p.clone(), nf);
        }
        let products = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| match x.concat(y) {
                        Some(xy) if xy.len() < d => reductions[&xy].clone(),
                        _ => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        Ok(Ok(BoundAlgebra {
            quiver: quiver.clone(),
            relations: relations.to_vec(),
            field,
            basis,
            nilpotency: d,
            reductions,
            basis_index,
            products,
            opposite: OnceLock::new(),
        }))
    }

}

fn add_entry(v: &mut BTreeMap<usize, Scalar>, col: usize, c: Scalar) {
    match v.get_mut(&col) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                v.remove(&col);
            }
        }
        None => {
            if !c.is_zero() {
                v.insert(col, c);
            }
        }
    }
}

/// Incremental sparse row echelon form keyed by pivot column.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl Echelon {
    /// Reduces `v`; stores and returns it (pivot normalized to 1) if independent.
    fn insert(&mut self, mut v: BTreeMap<usize, Scalar>) -> Option<BTreeMap<usize, Scalar>> {
        let mut cursor = 0;
        loop {
            let (&col, coeff) = v.range(cursor..).next()?;
            match self.rows.get(&col) {
                Some(row) => {
                    let f = coeff.clone();
                    for (&c, s) in row {
                        add_entry(&mut v, c, -(&f * s));
                    }
                    cursor = col + 1;
                }
                None => {
                    let inv = coeff.inv().unwrap();
                    for x in v.values_mut() {
                        *x = &*x * &inv;
                    }
                    self.rows.insert(col, v.clone());
                    return Some(v);
                }
            }
        }
    }

    /// Back-substituted copy: every row is zero in every other pivot column.
    fn fully_reduced(&self) -> BTreeMap<usize, BTreeMap<usize, Scalar>> {
        let mut out: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let cols: Vec<usize> = r.keys().copied().filter(|&c| c != p).collect();
            for c in cols {
                if let Some(other) = out.get(&c) {
                    let f = r[&c].clone();
                    for (&k, s) in other {
                        add_entry(&mut r, k, -(&f * s));
                    }
                }
            }
            out.insert(p, r);
        }
        out
    }
}

impl BoundAlgebra {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Every path of length `>= N` is zero in the algebra.
    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn basis_position(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        self.basis_index[&Path::trivial(v)]
    }

    pub fn arrow_index(&self, a: usize) -> usize {
        let arrow = &self.quiver.arrows[a];
        self.basis_index[&Path { start: arrow.source, end: arrow.target, arrows: vec![a] }]
    }

    /// Basis indices of normal-form paths from `v` to `w`, in basis order.
    pub fn paths_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].start == v && self.basis[i].end == w).collect()
    }

    /// Normal form of a single path (zero beyond the nilpotency degree).
    pub fn reduce_path(&self, p: &Path) -> Element {
        if p.len() >= self.nilpotency {
            return Vec::new();
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    /// Normal form of a linear combination of paths.
    pub fn normal_form(&self, expr: &[(Scalar, Path)]) -> Result<Element, AlgebraError> {
        let mut acc = BTreeMap::new();
        for (c, p) in expr {
            if !self.field.contains(c) {
                return Err(AlgebraError::ForeignCoefficient(c.to_string(), self.field));
            }
            if !p.is_trivial() {
                Path::from_arrows(&self.quiver, p.arrows.clone())?;
            } else if p.start >= self.quiver.num_vertices() {
                return Err(AlgebraError::UnknownVertex(p.start.to_string()));
            }
            for (i, s) in self.reduce_path(p) {
                add_entry(&mut acc, i, c * &s);
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// Normal form of `basis[i] * basis[j]`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &Element {
        &self.products[i][j]
    }

    /// Product of two elements given as dense coefficient vectors over the basis.
    pub fn mul_dense(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, s) in &self.products[i][j] {
                    out[*k] = &out[*k] + &(&ab * s);
                }
            }
        }
        out
    }

    /// `Λ^op`: same vertices and arrow names, arrows and relation paths reversed.
    pub fn opposite(self: &Arc<Self>) -> Arc<BoundAlgebra> {
        self.opposite
            .get_or_init(|| {
                let rels = self.relations.iter().map(Relation::reversed).collect();
                BoundAlgebra::build(self.quiver.opposite(), rels, self.field, self.nilpotency.max(2) + 1)
                    .expect("opposite of a finite-dimensional algebra is finite dimensional")
            })
            .clone()
    }

    /// Checks the special biserial conditions.
    pub fn validate_special_biserial(&self) -> SpecialBiserialReport {
        let q = &self.quiver;
        let mut violations = quiver_degree_violations(q);
        let nonzero = |x: usize, y: usize| -> bool {
            let (ax, ay) = (&q.arrows[x], &q.arrows[y]);
            ax.target == ay.source && !self.reduce_path(&Path { start: ax.source, end: ay.target, arrows: vec![x, y] }).is_empty()
        };
        for b in 0..q.num_arrows() {
            let after: Vec<&str> = (0..q.num_arrows()).filter(|&g| nonzero(b, g)).map(|g| q.arrows[g].name.as_str()).collect();
            if after.len() > 1 {
                violations.push(format!("arrow {} has nonzero continuations {}", q.arrows[b].name, after.join(", ")));
            }
            let before: Vec<&str> = (0..q.num_arrows()).filter(|&d| nonzero(d, b)).map(|d| q.arrows[d].name.as_str()).collect();
            if before.len() > 1 {
                violations.push(format!("arrow {} has nonzero predecessors {}", q.arrows[b].name, before.join(", ")));
            }
        }
        SpecialBiserialReport { is_special_biserial: violations.is_empty(), violations }
    }

    /// Searches for a nondegenerate symmetric associative form.
    ///
    /// The space of functionals with `φ(xy) = φ(yx)` is computed exactly;
    /// nondegeneracy of `(x, y) ↦ φ(xy)` is a Zariski-open condition on it,
    /// so random elements are tried. Over small prime fields the whole space is
    /// enumerated when it has at most [`SYMMETRIC_EXHAUSTIVE_LIMIT`] elements.
    pub fn is_symmetric(&self, seed: u64) -> SymmetricReport {
        let n = self.dim();
        let f = self.field;
        let mut constraints = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut row = vec![f.zero(); n];
                for (k, s) in &self.products[i][j] {
                    row[*k] = &row[*k] + s;
                }
                for (k, s) in &self.products[j][i] {
                    row[*k] = &row[*k] - s;
                }
                if row.iter().any(|s| !s.is_zero()) {
                    constraints.push(row);
                }
            }
        }
        let space = if constraints.is_empty() {
            Matrix::identity(f, n)
        } else {
            Matrix::from_rows(f, constraints).expect("well-formed").kernel_basis()
        };
        let gram = |phi: &[Scalar]| -> Matrix {
            Matrix::from_fn(f, n, n, |i, j| {
                self.products[i][j].iter().fold(f.zero(), |acc, (k, s)| &acc + &(s * &phi[*k]))
            })
        };
        let combine = |coeffs: &[Scalar]| -> Vec<Scalar> {
            (0..n)
                .map(|r| (0..space.cols()).fold(f.zero(), |acc, c| &acc + &(space.get(r, c) * &coeffs[c])))
                .collect()
        };
        let dim_space = space.cols();
        if let Field::Prime(p) = f {
            if (p as f64).powi(dim_space as i32) <= SYMMETRIC_EXHAUSTIVE_LIMIT as f64 {
                let total = p.pow(dim_space as u32);
                for idx in 0..total {
                    let mut x = idx;
                    let coeffs: Vec<Scalar> = (0..dim_space)
                        .map(|_| {
                            let r = x % p;
                            x /= p;
                            Scalar::Mod { r, p }
                        })
                        .collect();
                    let phi = combine(&coeffs);
                    if gram(&phi).is_invertible() {
                        return SymmetricReport { verdict: SymmetricVerdict::Yes, witness: Some(phi), functional_space_dim: dim_space };
                    }
                }
                return SymmetricReport { verdict: SymmetricVerdict::NoEvidence, witness: None, functional_space_dim: dim_space };
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SYMMETRIC_RETRIES {
            let coeffs = Matrix::random_with(&mut rng, f, dim_space, 1).col(0);
            let phi = combine(&coeffs);
            if gram(&phi).is_invertible() {
                return SymmetricReport { verdict: SymmetricVerdict::Yes, witness: Some(phi), functional_space_dim: dim_space };
            }
        }
        SymmetricReport { verdict: SymmetricVerdict::NoEvidence, witness: None, functional_space_dim: dim_space }
    }

    /// `C[v][w]` = number of normal-form paths from `v` to `w`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let nv = self.quiver.num_vertices();
        let mut c = vec![vec![0i64; nv]; nv];
        for p in &self.basis {
            c[p.start][p.end] += 1;
        }
        c
    }

    /// Symmetrized Euler form and null root of a hereditary algebra.
    pub fn euler_data(&self) -> Result<EulerData, AlgebraError> {
        if !self.is_hereditary() {
            return Err(AlgebraError::Unsupported("Euler form requires a path algebra without relations".into()));
        }
        let nv = self.quiver.num_vertices();
        let mut sym = vec![vec![0i64; nv]; nv];
        for (v, row) in sym.iter_mut().enumerate() {
            row[v] = 2;
        }
        for a in &self.quiver.arrows {
            sym[a.source][a.target] -= 1;
            sym[a.target][a.source] -= 1;
        }
        let null_root = null_root_of(&sym);
        Ok(EulerData { symmetrized: sym, null_root })
    }

    pub fn cartan_euler(&self) -> Result<CartanEuler, AlgebraError> {
        let e = self.euler_data()?;
        Ok(CartanEuler { cartan: self.cartan_matrix(), euler_symmetrization: e.symmetrized, null_root: e.null_root })
    }
}

pub const SYMMETRIC_RETRIES: usize = 32;
pub const SYMMETRIC_EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Violations of "at most two arrows start and end at each vertex".
pub fn quiver_degree_violations(q: &Quiver) -> Vec<String> {
    let mut v = Vec::new();
    for (i, name) in q.vertices.iter().enumerate() {
        let out = q.arrows_from(i).count();
        let inc = q.arrows_to(i).count();
        if out > 2 {
            v.push(format!("{out} arrows start at vertex {name}"));
        }
        if inc > 2 {
            v.push(format!("{inc} arrows end at vertex {name}"));
        }
    }
    v
}

/// Positive primitive integer generator of a one-dimensional kernel.
fn null_root_of(sym: &[Vec<i64>]) -> Option<Vec<i64>> {
    let refs: Vec<&[i64]> = sym.iter().map(Vec::as_slice).collect();
    let k = Matrix::from_i64(Field::Rationals, &refs).kernel_basis();
    if k.cols() != 1 {
        return None;
    }
    let col = k.col(0);
    let rats: Vec<num_rational::BigRational> = col
        .iter()
        .map(|s| match s {
            Scalar::Rat(q) => q.clone(),
            Scalar::Mod { .. } => unreachable!(),
        })
        .collect();
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive, Zero};
    let lcm = rats.iter().fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<num_bigint::BigInt> = rats.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let mut ints: Vec<num_bigint::BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if ints.iter().any(|x| x.is_negative()) {
        ints = ints.into_iter().map(|x| -x).collect();
    }
    if ints.iter().any(|x| !x.is_positive()) {
        return None;
    }
    ints.iter().map(|x| x.to_i64()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialBiserialReport {
    pub is_special_biserial: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetricVerdict {
    Yes,
    NoEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricReport {
    pub verdict: SymmetricVerdict,
    /// Values of the symmetrizing functional on the basis.
    pub witness: Option<Vec<Scalar>>,
    pub functional_space_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerData {
    pub symmetrized: Vec<Vec<i64>>,
    pub null_root: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanEuler {
    pub cartan: Vec<Vec<i64>>,
    pub euler_symmetrization: Vec<Vec<i64>>,
    pub null_root: Option<Vec<i64>>,
}
