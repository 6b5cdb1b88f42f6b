//! Canonically oriented Euclidean quivers and mouth modules of their
//! homogeneous tubes.
//!
//! For `Ã(p,q)` the mouth module `E^(λ)` is written down directly. For the
//! `D̃` and `Ẽ` families a module of dimension vector `δ` (the null root) is
//! found by seeded random search and accepted only after it is certified to
//! be a brick fixed by `τ`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, BoundAlgebra, Quiver};
use crate::ar::{self, TubeVerdict};
use crate::linalg::{Matrix, Scalar};
use crate::rep::{self, RepError, Representation};

pub const DEFAULT_SEARCH_ATTEMPTS: usize = 512;

#[derive(Debug, Error)]
pub enum EuclideanError {
    #[error("invalid Euclidean parameters: {0}")]
    InvalidSpec(String),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("{0}")]
    WrongFamily(String),
    #[error("algebra has no null root")]
    NoNullRoot,
    #[error("no mouth module found after {attempts} attempts ({stats})")]
    NotFound { attempts: usize, stats: SearchStats },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EuclideanSpec {
    ATilde { p: usize, q: usize },
    DTilde { m: usize },
    ETilde6,
    ETilde7,
    ETilde8,
}

impl EuclideanSpec {
    pub fn validate(&self) -> Result<(), EuclideanError> {
        match *self {
            EuclideanSpec::ATilde { p, q } if p < 1 || q < 1 => {
                Err(EuclideanError::InvalidSpec(format!("A-tilde needs p, q >= 1 (got {p}, {q})")))
            }
            EuclideanSpec::DTilde { m } if m < 4 => {
                Err(EuclideanError::InvalidSpec(format!("D-tilde needs m >= 4 (got {m})")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for EuclideanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EuclideanSpec::ATilde { p, q } => write!(f, "atilde({p},{q})"),
            EuclideanSpec::DTilde { m } => write!(f, "dtilde{m}"),
            EuclideanSpec::ETilde6 => write!(f, "etilde6"),
            EuclideanSpec::ETilde7 => write!(f, "etilde7"),
            EuclideanSpec::ETilde8 => write!(f, "etilde8"),
        }
    }
}

impl FromStr for EuclideanSpec {
    type Err = EuclideanError;

    /// Accepts `atilde(p,q)`, `kronecker`, `dtilde<m>`, `etilde6|7|8`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || EuclideanError::InvalidSpec(s.clone());
        let spec = if s == "kronecker" {
            EuclideanSpec::ATilde { p: 1, q: 1 }
        } else if let Some(args) = s.strip_prefix("atilde(").and_then(|r| r.strip_suffix(')')) {
            let (p, q) = args.split_once(',').ok_or_else(bad)?;
            EuclideanSpec::ATilde { p: p.trim().parse().map_err(|_| bad())?, q: q.trim().parse().map_err(|_| bad())? }
        } else if let Some(m) = s.strip_prefix("dtilde") {
            EuclideanSpec::DTilde { m: m.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())? }
        } else {
            match s.as_str() {
                "etilde6" => EuclideanSpec::ETilde6,
                "etilde7" => EuclideanSpec::ETilde7,
                "etilde8" => EuclideanSpec::ETilde8,
                _ => return Err(bad()),
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Canonical orientation: every arrow points towards vertex `0` (`Ã`) or
/// vertex `1` (`D̃`, `Ẽ`), except the two outer arrows of `D̃`.
pub fn build_euclidean(spec: EuclideanSpec) -> Result<Quiver, EuclideanError> {
    spec.validate()?;
    let (nv, arrows, first_vertex): (usize, Vec<(String, usize, usize)>, usize) = match spec {
        EuclideanSpec::ATilde { p, q } => {
            let top = p + q - 1;
            let mut arrows = Vec::new();
            let name = |letter: &str, i: usize, len: usize| if len == 1 { letter.to_string() } else { format!("{letter}{i}") };
            // upper branch top -> p-1 -> ... -> 1 -> 0
            for i in 1..=p {
                let target = i - 1;
                let source = if i == p { top } else { i };
                arrows.push((name("a", i, p), source, target));
            }
            // lower branch top -> p+q-2 -> ... -> p -> 0
            for i in 1..=q {
                let target = if i == 1 { 0 } else { p + i - 2 };
                let source = if i == q { top } else { p + i - 1 };
                arrows.push((name("b", i, q), source, target));
            }
            (p + q, arrows, 0)
        }
        EuclideanSpec::DTilde { m } => {
            let mut edges = vec![(3, 1), (3, 2)];
            for i in 4..m {
                edges.push((i, i - 1));
            }
            edges.push((m, m - 1));
            edges.push((m + 1, m - 1));
            (m + 1, numbered(edges), 1)
        }
        EuclideanSpec::ETilde6 => (7, numbered(vec![(2, 1), (3, 2), (4, 1), (5, 4), (6, 1), (7, 6)]), 1),
        EuclideanSpec::ETilde7 => (8, numbered(vec![(2, 1), (3, 2), (4, 3), (5, 1), (6, 1), (7, 6), (8, 7)]), 1),
        EuclideanSpec::ETilde8 => {
            (9, numbered(vec![(2, 1), (3, 2), (4, 1), (5, 1), (6, 5), (7, 6), (8, 7), (9, 8)]), 1)
        }
    };
    let vertices: Vec<String> = (first_vertex..first_vertex + nv).map(|v| v.to_string()).collect();
    let arrows: Vec<(String, String, String)> =
        arrows.into_iter().map(|(n, s, t)| (n, s.to_string(), t.to_string())).collect();
    Ok(Quiver::new(vertices, arrows)?)
}

fn numbered(edges: Vec<(usize, usize)>) -> Vec<(String, usize, usize)> {
    edges.into_iter().enumerate().map(|(i, (s, t))| (format!("a{}", i + 1), s, t)).collect()
}

/// `E^(λ)` over `Ã(p,q)`: every space `k`, every map `1` except `λ` on the
/// lower arrow ending at vertex `0`.
pub fn simple_regular_a(alg: &Arc<BoundAlgebra>, lambda: &Scalar) -> Result<Representation, EuclideanError> {
    if lambda.is_zero() {
        return Err(EuclideanError::ZeroLambda);
    }
    let q = alg.quiver();
    let family = euclidean_family(alg);
    if !matches!(family, Some(EuclideanSpec::ATilde { .. })) {
        return Err(EuclideanError::WrongFamily("E^(λ) is defined for canonically oriented A-tilde quivers".into()));
    }
    let f = alg.field();
    let lower = q.arrows().iter().position(|a| a.target == 0 && a.name.starts_with('b')).expect("lower branch");
    let action = (0..q.num_arrows())
        .map(|i| Matrix::from_fn(f, 1, 1, |_, _| if i == lower { lambda.clone() } else { f.one() }))
        .collect();
    Ok(Representation::new(Arc::clone(alg), vec![1; q.num_vertices()], action)?)
}

/// The canonical family whose quiver equals the algebra's, if any.
pub fn euclidean_family(alg: &BoundAlgebra) -> Option<EuclideanSpec> {
    if !alg.is_hereditary() {
        return None;
    }
    let q = alg.quiver();
    let n = q.num_vertices();
    let mut candidates = vec![EuclideanSpec::ETilde6, EuclideanSpec::ETilde7, EuclideanSpec::ETilde8];
    if n >= 5 {
        candidates.push(EuclideanSpec::DTilde { m: n - 1 });
    }
    for p in 1..n {
        candidates.push(EuclideanSpec::ATilde { p, q: n - p });
    }
    candidates.into_iter().find(|s| build_euclidean(*s).is_ok_and(|b| &b == q))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub attempts: usize,
    pub not_bricks: usize,
    pub not_tau_fixed: usize,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} not bricks, {} not fixed by tau", self.not_bricks, self.not_tau_fixed)
    }
}

/// A certified simple regular module of dimension vector `δ` in a
/// homogeneous tube, found by seeded random search.
pub fn simple_regular_search(
    alg: &Arc<BoundAlgebra>,
    seed: u64,
    attempts: usize,
) -> Result<(Representation, SearchStats), EuclideanError> {
    if let Some(EuclideanSpec::ATilde { .. }) = euclidean_family(alg) {
        return Err(EuclideanError::WrongFamily("A-tilde mouth modules are built directly, not searched".into()));
    }
    let delta = alg.euler_data()?.null_root.ok_or(EuclideanError::NoNullRoot)?;
    let dims: Vec<usize> = delta.iter().map(|&d| d as usize).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SearchStats::default();
    for attempt in 0..attempts {
        stats.attempts += 1;
        let v = Representation::random(Arc::clone(alg), dims.clone(), &mut rng);
        if !rep::is_brick(&v)? {
            stats.not_bricks += 1;
            continue;
        }
        let membership = ar::homogeneous_tube_membership(&v, seed.wrapping_add(attempt as u64))?;
        if membership.verdict != TubeVerdict::Yes {
            stats.not_tau_fixed += 1;
            continue;
        }
        return Ok((v, stats));
    }
    Err(EuclideanError::NotFound { attempts, stats })
}
