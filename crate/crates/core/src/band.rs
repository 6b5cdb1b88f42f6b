//! Band words, band modules `V(b, λ, m)` and the short exact sequence
//! `0 -> V(b,λ,m-1) -> V(b,λ,m) -> V(b,λ,1) -> 0`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BoundAlgebra, Path, Quiver};
use crate::homological::stable_hom_dim;
use crate::linalg::{random_scalar, Field, Matrix, Scalar};
use crate::rep::{self, is_isomorphic, kernel_of, IsoVerdict, Morphism, RepError, Representation};

/// Fixed λ values tried by [`brick_band_search`] before the random ones.
pub const LAMBDA_LIST: [i64; 5] = [1, 2, 3, 5, 7];

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BandError {
    #[error("empty band word")]
    Empty,
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("letters {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("letter {0} is immediately followed by its inverse")]
    ImmediateInverse(usize),
    #[error("letters {0} and {1} compose to zero")]
    ZeroComposition(usize, usize),
    #[error("band is a proper power of a shorter word")]
    ProperPower,
    #[error("band needs both direct and inverse letters")]
    OneDirection,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("m must be at least {0}")]
    BadM(usize),
    #[error("band module violates relation {0} of the algebra")]
    InvalidForAlgebra(usize),
    #[error("the row map onto V(b, λ, 1) does not commute with arrow {0}")]
    Convention(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    fn start(&self, q: &Quiver) -> usize {
        let a = &q.arrows()[self.arrow];
        if self.inverse { a.target } else { a.source }
    }

    fn end(&self, q: &Quiver) -> usize {
        let a = &q.arrows()[self.arrow];
        if self.inverse { a.source } else { a.target }
    }

    fn flipped(&self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }
}

/// A cyclic walk `α_1 ... α_r` satisfying the band conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandWord {
    alg: Arc<BoundAlgebra>,
    letters: Vec<Letter>,
    /// Set when the algebra is not special biserial.
    pub warning: Option<String>,
}

impl BandWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.alg
    }

    /// Least rotation of the word or of its formal inverse.
    pub fn canonical_key(&self) -> Vec<Letter> {
        canonical_key(&self.letters)
    }
}

impl fmt::Display for BandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.alg.quiver();
        let words: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let name = &q.arrows()[l.arrow].name;
                if l.inverse { format!("{name}^-") } else { name.clone() }
            })
            .collect();
        write!(f, "{}", words.join(" "))
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    (0..letters.len())
        .map(|k| letters[k..].iter().chain(&letters[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

fn formal_inverse(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(Letter::flipped).collect()
}

fn canonical_key(letters: &[Letter]) -> Vec<Letter> {
    least_rotation(letters).min(least_rotation(&formal_inverse(letters)))
}

/// Checks the walk conditions between letter `i` and its successor `j`.
fn check_adjacent(alg: &BoundAlgebra, x: Letter, y: Letter, i: usize, j: usize) -> Result<(), BandError> {
    let q = alg.quiver();
    if x.end(q) != y.start(q) {
        return Err(BandError::NotComposable(i, j));
    }
    if x.arrow == y.arrow && x.inverse != y.inverse {
        return Err(BandError::ImmediateInverse(i));
    }
    if x.inverse == y.inverse {
        let arrows = if x.inverse { vec![y.arrow, x.arrow] } else { vec![x.arrow, y.arrow] };
        let path = Path::from_arrows(q, arrows).map_err(|_| BandError::NotComposable(i, j))?;
        if alg.reduce_path(&path).is_empty() {
            return Err(BandError::ZeroComposition(i, j));
        }
    }
    Ok(())
}

fn validate_letters(alg: &BoundAlgebra, letters: &[Letter]) -> Result<(), BandError> {
    let r = letters.len();
    if r == 0 {
        return Err(BandError::Empty);
    }
    for i in 0..r {
        let j = (i + 1) % r;
        check_adjacent(alg, letters[i], letters[j], i, j)?;
    }
    if letters.iter().all(|l| l.inverse) || letters.iter().all(|l| !l.inverse) {
        return Err(BandError::OneDirection);
    }
    if (1..r).any(|d| r.is_multiple_of(d) && (0..r).all(|i| letters[i] == letters[i % d])) {
        return Err(BandError::ProperPower);
    }
    Ok(())
}

/// Parses `"a b^- c ..."`; the result is rotated to its least rotation.
pub fn parse_band(text: &str, alg: &Arc<BoundAlgebra>) -> Result<BandWord, BandError> {
    let q = alg.quiver();
    let letters = text
        .split_whitespace()
        .map(|tok| {
            let (name, inverse) = match tok.strip_suffix("^-") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let arrow = q.arrow(name).map_err(|_| BandError::UnknownArrow(name.to_string()))?;
            Ok(Letter { arrow, inverse })
        })
        .collect::<Result<Vec<_>, BandError>>()?;
    validate_letters(alg, &letters)?;
    let report = alg.validate_special_biserial();
    let warning = (!report.is_special_biserial).then(|| format!("algebra is not special biserial: {}", report.violations.join("; ")));
    Ok(BandWord { alg: Arc::clone(alg), letters: least_rotation(&letters), warning })
}

/// `J_m(μ)`: `μ` on the diagonal, ones on the subdiagonal.
pub fn jordan_block(mu: &Scalar, m: usize) -> Matrix {
    let f = mu.field();
    Matrix::from_fn(f, m, m, |i, j| {
        if i == j {
            mu.clone()
        } else if i == j + 1 {
            f.one()
        } else {
            f.zero()
        }
    })
}

#[derive(Debug, Clone)]
pub struct BandModuleSpec {
    pub band: BandWord,
    pub lambda: Scalar,
    pub m: usize,
}

/// `V(b, λ, m)`: a copy of `k^m` per letter position.
pub fn band_module(spec: &BandModuleSpec) -> Result<Representation, BandError> {
    let BandModuleSpec { band, lambda, m } = spec;
    let m = *m;
    if lambda.is_zero() {
        return Err(BandError::ZeroLambda);
    }
    if m == 0 {
        return Err(BandError::BadM(1));
    }
    let alg = band.algebra();
    let q = alg.quiver();
    let f = alg.field();
    let r = band.len();
    let vertex: Vec<usize> = band.letters().iter().map(|l| l.start(q)).collect();
    let mut dims = vec![0usize; q.num_vertices()];
    let mut offset = vec![0usize; r];
    for i in 0..r {
        offset[i] = dims[vertex[i]];
        dims[vertex[i]] += m;
    }
    let mut action: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    for (i, l) in band.letters().iter().enumerate() {
        let next = (i + 1) % r;
        let block = if i + 1 < r {
            Matrix::identity(f, m)
        } else if l.inverse {
            jordan_block(&lambda.inv().expect("nonzero"), m)
        } else {
            jordan_block(lambda, m)
        };
        let (from, to) = if l.inverse { (next, i) } else { (i, next) };
        action[l.arrow].paste(offset[to], offset[from], &block);
    }
    let v = Representation::new_unchecked(Arc::clone(alg), dims, action)?;
    if let Some((relation, _)) = v.check().violations.first() {
        return Err(BandError::InvalidForAlgebra(*relation));
    }
    Ok(v)
}

/// The sequence `0 -> V(b,λ,m-1) --g--> V(b,λ,m) --f--> V(b,λ,1) -> 0`.
#[derive(Debug, Clone)]
pub struct Lemma1Ses {
    pub f: Morphism,
    pub g: Morphism,
    pub verified: bool,
}

/// Row map `k^m -> k` applied to every copy of `V(b, λ, m)`.
fn row_map(source: &Representation, target: &Representation, m: usize, reversed: bool) -> Result<Morphism, RepError> {
    let f = source.field();
    let blocks = (0..source.dims().len())
        .map(|v| {
            let copies = target.dim_at(v);
            Matrix::from_fn(f, copies, source.dim_at(v), |i, j| {
                let hot = if reversed { i * m + m - 1 } else { i * m };
                if j == hot { f.one() } else { f.zero() }
            })
        })
        .collect();
    Morphism::new(source.clone(), target.clone(), blocks)
}

pub fn lemma1_ses(spec: &BandModuleSpec, seed: u64) -> Result<Lemma1Ses, BandError> {
    if spec.m < 2 {
        return Err(BandError::BadM(2));
    }
    let at = |m: usize| band_module(&BandModuleSpec { m, ..spec.clone() });
    let (vm, v1, vprev) = (at(spec.m)?, at(1)?, at(spec.m - 1)?);
    let f = match row_map(&vm, &v1, spec.m, false) {
        Ok(f) => f,
        Err(RepError::NotAMorphism(_)) => row_map(&vm, &v1, spec.m, true).map_err(|e| match e {
            RepError::NotAMorphism(a) => BandError::Convention(a),
            other => other.into(),
        })?,
        Err(e) => return Err(e.into()),
    };
    let (ker, incl) = kernel_of(&f)?;
    let iso = is_isomorphic(&vprev, &ker, seed)?;
    let Some(witness) = iso.witness.filter(|_| iso.verdict == IsoVerdict::Yes) else {
        let g = Morphism::zero(&vprev, &vm);
        return Ok(Lemma1Ses { f, g, verified: false });
    };
    let g = incl.compose(&witness)?;
    let verified = verify_ses(&g, &f);
    Ok(Lemma1Ses { f, g, verified })
}

/// Exactness of `0 -> A --g--> B --f--> C -> 0`, vertex by vertex.
pub fn verify_ses(g: &Morphism, f: &Morphism) -> bool {
    if !g.is_morphism() || !f.is_morphism() || !g.is_injective() || !f.is_surjective() {
        return false;
    }
    let Ok(fg) = f.compose(g) else { return false };
    fg.is_zero()
        && g.blocks().iter().zip(f.blocks()).all(|(gb, fb)| gb.rank() + fb.rank() == fb.cols())
}

#[derive(Debug, Clone)]
pub struct BandEnumeration {
    pub bands: Vec<BandWord>,
    pub truncated: bool,
}

/// Depth-first enumeration of bands of length at most `max_length`, one per
/// rotation/inversion class.
pub fn enumerate_bands(alg: &Arc<BoundAlgebra>, max_length: usize, limit: usize) -> BandEnumeration {
    let q = alg.quiver();
    let all: Vec<Letter> = (0..q.num_arrows())
        .flat_map(|a| [Letter { arrow: a, inverse: false }, Letter { arrow: a, inverse: true }])
        .collect();
    let report = alg.validate_special_biserial();
    let warning = (!report.is_special_biserial).then(|| format!("algebra is not special biserial: {}", report.violations.join("; ")));
    let mut out = BandEnumeration { bands: Vec::new(), truncated: false };
    let mut seen = HashSet::new();
    let mut stack = Vec::new();
    for &first in &all {
        stack.push(first);
        if dfs(alg, &all, &mut stack, max_length, limit, &mut seen, &mut out, &warning) {
            break;
        }
        stack.pop();
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    alg: &Arc<BoundAlgebra>,
    all: &[Letter],
    stack: &mut Vec<Letter>,
    max_length: usize,
    limit: usize,
    seen: &mut HashSet<Vec<Letter>>,
    out: &mut BandEnumeration,
    warning: &Option<String>,
) -> bool {
    if stack.len() >= 2 && validate_letters(alg, stack).is_ok() {
        let key = canonical_key(stack);
        if seen.insert(key.clone()) {
            if out.bands.len() == limit {
                out.truncated = true;
                return true;
            }
            out.bands.push(BandWord { alg: Arc::clone(alg), letters: key, warning: warning.clone() });
        }
    }
    if stack.len() == max_length {
        return false;
    }
    let last = *stack.last().expect("nonempty");
    let n = stack.len();
    for &next in all {
        if check_adjacent(alg, last, next, n - 1, n).is_err() {
            continue;
        }
        stack.push(next);
        let stop = dfs(alg, all, stack, max_length, limit, seen, out, warning);
        stack.pop();
        if stop {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandBrick {
    pub band: String,
    pub lambda: String,
    pub brick: bool,
    pub stable_brick: bool,
}

/// λ values: the fixed list (units only) followed by `random` seeded units.
pub fn lambda_samples(field: Field, random: usize, seed: u64) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for l in LAMBDA_LIST {
        let s = field.from_i64(l);
        if !s.is_zero() && !out.contains(&s) {
            out.push(s);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    let mut tries = 0;
    while added < random && tries < 64 * (random + 1) {
        tries += 1;
        let s = random_scalar(&mut rng, field);
        if !s.is_zero() {
            out.push(s);
            added += 1;
        }
    }
    out
}

/// Brick and stable-brick status of `V(b, λ, 1)` for each λ.
pub fn band_brick_status(band: &BandWord, lambdas: &[Scalar]) -> Result<Vec<BandBrick>, BandError> {
    let mut out = Vec::new();
    for lambda in lambdas {
        let v = match band_module(&BandModuleSpec { band: band.clone(), lambda: lambda.clone(), m: 1 }) {
            Ok(v) => v,
            Err(BandError::InvalidForAlgebra(_)) => continue,
            Err(e) => return Err(e),
        };
        let brick = rep::is_brick(&v)?;
        let stable_brick = stable_hom_dim(&v, &v)?.stable_dim == 1;
        out.push(BandBrick { band: band.to_string(), lambda: lambda.to_string(), brick, stable_brick });
    }
    Ok(out)
}

/// [`band_brick_status`] for every enumerated band.
pub fn brick_band_search(
    alg: &Arc<BoundAlgebra>,
    max_length: usize,
    random_lambdas: usize,
    seed: u64,
) -> Result<Vec<BandBrick>, BandError> {
    let bands = enumerate_bands(alg, max_length, usize::MAX).bands;
    let lambdas = lambda_samples(alg.field(), random_lambdas, seed);
    let mut out = Vec::new();
    for band in &bands {
        out.extend(band_brick_status(band, &lambdas)?);
    }
    Ok(out)
}
