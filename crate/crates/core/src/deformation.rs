//! Tube towers `V[ℓ]`, free-lift certificates over `k[t]/(t^ℓ)` and the
//! deformation certificate for a tube-mouth module.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ar::{homogeneous_tube_membership, TubeVerdict};
use crate::band::{band_module, lemma1_ses, BandError, BandModuleSpec};
use crate::homological::{ext, realize_extension, stable_end_algebra, stable_hom_dim};
use crate::linalg::{random_scalar, Field, Matrix, Scalar};
use crate::rep::{
    self, cokernel_of, end_top_division_evidence, hom_basis, is_isomorphic, kernel_of, IsoVerdict, Morphism, RepError,
    Representation,
};
use crate::structure::DivisionEvidence;

pub const DEFAULT_LEVELS: usize = 5;
/// Samples tried when searching for the surjection `π`.
pub const SURJECTION_SAMPLES: usize = 256;

/// Verdict text of a certificate that passes every check.
pub const CERTIFIED_TEXT: &str = "dim Ext¹ = 1 and free lifts exist over k[t]/(t^ℓ) for all ℓ ≤ L; by Remark rem0(i) R(Λ,V) is a quotient of k[[t]], and every surjection k[[t]] ↠ R compatible with the level-ℓ lifts is an isomorphism modulo t^L; full Theorem 1 conclusion holds by the paper's Claim 3, which this artifact verifies only at finite level.";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DeformationError {
    #[error("levels must be at least 2")]
    LevelsTooSmall,
    #[error("tube hypothesis violated at level {level}: dim Ext^1(V[1], V[{prev}]) = {dim}", prev = level - 1)]
    TubeHypothesis { level: usize, dim: usize },
    #[error("no surjection V[{level}] -> V[{prev}] with kernel V[1] found", prev = level - 1)]
    SurjectionSearch { level: usize },
    #[error("level {0} is outside the tower")]
    NoSuchLevel(usize),
    #[error("module is not the band module V(b, λ, 1) of the given band")]
    BandMismatch,
    #[error("band sequence at level {0} failed verification")]
    BandSequence(usize),
    #[error(transparent)]
    Band(#[from] BandError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerMode {
    Band,
    ExtPushout,
}

/// How to build the levels of a tower.
#[derive(Debug, Clone)]
pub enum TowerSource {
    Band(BandModuleSpec),
    ExtPushout,
}

impl TowerSource {
    pub fn mode(&self) -> TowerMode {
        match self {
            TowerSource::Band(_) => TowerMode::Band,
            TowerSource::ExtPushout => TowerMode::ExtPushout,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub module: Representation,
    /// `ι: V[ℓ-1] -> V[ℓ]`.
    pub iota: Morphism,
    /// `π: V[ℓ] -> V[ℓ-1]`.
    pub pi: Morphism,
    /// `V[ℓ] -> V[1]` completing `0 -> V[ℓ-1] -> V[ℓ] -> V[1] -> 0`.
    pub to_base: Morphism,
}

#[derive(Debug, Clone)]
pub struct TubeTower {
    pub mode: TowerMode,
    /// `levels[ℓ - 1]` holds `V[ℓ]`; level 1 has zero maps to and from `V[0] = 0`.
    pub levels: Vec<TowerLevel>,
}

impl TubeTower {
    pub fn base(&self) -> &Representation {
        &self.levels[0].module
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, l: usize) -> Result<&TowerLevel, DeformationError> {
        if l == 0 || l > self.levels.len() {
            return Err(DeformationError::NoSuchLevel(l));
        }
        Ok(&self.levels[l - 1])
    }
}

fn level_seed(seed: u64, level: usize) -> u64 {
    seed ^ (level as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

pub fn build_tower(v: &Representation, levels: usize, source: &TowerSource, seed: u64) -> Result<TubeTower, DeformationError> {
    if levels < 2 {
        return Err(DeformationError::LevelsTooSmall);
    }
    let zero = Representation::zero(std::sync::Arc::clone(v.algebra()));
    if let TowerSource::Band(spec) = source {
        if band_module(&BandModuleSpec { m: 1, ..spec.clone() })? != *v {
            return Err(DeformationError::BandMismatch);
        }
    }
    let mut tower = TubeTower {
        mode: source.mode(),
        levels: vec![TowerLevel {
            module: v.clone(),
            iota: Morphism::zero(&zero, v),
            pi: Morphism::zero(v, &zero),
            to_base: Morphism::identity(v),
        }],
    };
    for l in 2..=levels {
        let s = level_seed(seed, l);
        let prev = tower.levels[l - 2].clone();
        let (module, iota, to_base) = match source {
            TowerSource::Band(spec) => {
                let spec = BandModuleSpec { m: l, ..spec.clone() };
                let ses = lemma1_ses(&spec, s)?;
                if !ses.verified {
                    return Err(DeformationError::BandSequence(l));
                }
                let module = band_module(&spec)?;
                let (iota, to_base) = (ses.g, ses.f);
                (module, iota, to_base)
            }
            TowerSource::ExtPushout => {
                let group = ext(v, &prev.module, 1)?;
                if group.dim != 1 {
                    return Err(DeformationError::TubeHypothesis { level: l, dim: group.dim });
                }
                let e = realize_extension(&group.classes[0])?;
                (e.middle, e.incl, e.proj)
            }
        };
        let pi = search_surjection(&module, &iota, &prev, v, l, s)?;
        tower.levels.push(TowerLevel { module, iota, pi, to_base });
    }
    Ok(tower)
}

/// `π: V[ℓ] -> V[ℓ-1]`, surjective with kernel `≅ V[1]`, subject to
/// `π_{ℓ-1} ∘ ι_{ℓ-1} = ι_{ℓ-2} ∘ π_{ℓ-2}`.
fn search_surjection(
    module: &Representation,
    iota: &Morphism,
    prev: &TowerLevel,
    base: &Representation,
    level: usize,
    seed: u64,
) -> Result<Morphism, DeformationError> {
    let f = module.field();
    let fail = DeformationError::SurjectionSearch { level };
    let homs = hom_basis(module, &prev.module)?;
    if homs.is_empty() {
        return Err(fail);
    }
    let target = prev.iota.compose(&prev.pi)?.flatten();
    let restricted: Vec<Vec<Scalar>> =
        homs.iter().map(|h| h.compose(iota).map(|m| m.flatten())).collect::<Result<_, _>>()?;
    let (particular, free) = if target.is_empty() {
        (vec![f.zero(); homs.len()], Matrix::identity(f, homs.len()))
    } else {
        let a = Matrix::from_fn(f, target.len(), homs.len(), |i, j| restricted[j][i].clone());
        let Some(p) = a.solve(&Matrix::column(f, target)).map_err(RepError::from)? else { return Err(fail) };
        (p.col(0), a.kernel_basis())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..SURJECTION_SAMPLES {
        let mut coeffs = particular.clone();
        for k in 0..free.cols() {
            let r = random_scalar(&mut rng, f);
            for (i, c) in coeffs.iter_mut().enumerate() {
                *c = &*c + &(&r * free.get(i, k));
            }
        }
        let mut pi = Morphism::zero(module, &prev.module);
        for (h, c) in homs.iter().zip(&coeffs) {
            if !c.is_zero() {
                pi = pi.add(&h.scale(c));
            }
        }
        if !pi.is_surjective() {
            continue;
        }
        let (ker, _) = kernel_of(&pi)?;
        if is_isomorphic(&ker, base, seed.wrapping_add(attempt as u64))?.verdict == IsoVerdict::Yes {
            return Ok(pi);
        }
    }
    Err(fail)
}

/// Evidence that `V[ℓ]` with `t` acting as `N = ι ∘ π` is free over `k[t]/(t^ℓ)`
/// with `V[ℓ]/t V[ℓ] ≅ V[1]`.
#[derive(Debug, Clone)]
pub struct LiftCertificate {
    pub level: usize,
    pub module: Representation,
    pub nilpotent: Morphism,
    pub rank_profile: Vec<usize>,
    pub expected_profile: Vec<usize>,
    pub is_endomorphism: bool,
    pub nilpotent_vanishes: bool,
    pub cokernel: Representation,
    pub quotient_iso_witness: Option<Morphism>,
    pub failure: Option<String>,
}

impl LiftCertificate {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn lift_certificate(tower: &TubeTower, level: usize, seed: u64) -> Result<LiftCertificate, DeformationError> {
    if level < 2 {
        return Err(DeformationError::NoSuchLevel(level));
    }
    let lv = tower.level(level)?;
    let n = lv.iota.compose(&lv.pi)?;
    check_lift(level, &lv.module, &n, tower.base(), None, level_seed(seed, level))
}

/// Checks a candidate `t`-action; reuses a stored witness when given.
fn check_lift(
    level: usize,
    module: &Representation,
    n: &Morphism,
    base: &Representation,
    stored: Option<(&Representation, &Morphism)>,
    seed: u64,
) -> Result<LiftCertificate, DeformationError> {
    let d = base.total_dim();
    let expected_profile: Vec<usize> = (0..=level).map(|s| d * (level - s)).collect();
    let is_endomorphism = n.source() == module && n.target() == module && n.is_morphism();
    let mut rank_profile = Vec::with_capacity(level + 1);
    let mut power = Morphism::identity(module);
    for s in 0..=level {
        if s > 0 {
            power = n.compose(&power)?;
        }
        rank_profile.push(power.rank());
    }
    let nilpotent_vanishes = power.is_zero();
    let (cokernel, _) = cokernel_of(n)?;
    let quotient_iso_witness = match stored {
        Some((stored_coker, w)) => {
            let valid = stored_coker == &cokernel
                && w.source() == &cokernel
                && w.target() == base
                && w.is_morphism()
                && w.is_isomorphism();
            valid.then(|| w.clone())
        }
        None => {
            let iso = is_isomorphic(&cokernel, base, seed)?;
            iso.witness.filter(|_| iso.verdict == IsoVerdict::Yes)
        }
    };
    let failure = if !is_endomorphism {
        Some("N is not an endomorphism of V[ℓ]".to_string())
    } else if rank_profile != expected_profile {
        Some(format!("rank profile {rank_profile:?} differs from {expected_profile:?}"))
    } else if !nilpotent_vanishes {
        Some(format!("N^{level} is not zero"))
    } else if quotient_iso_witness.is_none() {
        Some("cokernel of N is not isomorphic to V[1]".to_string())
    } else {
        None
    };
    Ok(LiftCertificate {
        level,
        module: module.clone(),
        nilpotent: n.clone(),
        rank_profile,
        expected_profile,
        is_endomorphism,
        nilpotent_vanishes,
        cokernel,
        quotient_iso_witness,
        failure,
    })
}

#[derive(Debug, Clone)]
pub struct IndecomposableHypothesis {
    pub passed: bool,
    /// `yes`, `division-top`, `decomposable`, `inconclusive`, `degenerate` or `unsupported`.
    pub verdict: String,
    pub top_dim: Option<usize>,
    pub evidence: Option<DivisionEvidence>,
}

#[derive(Debug, Clone)]
pub struct StableEndHypothesis {
    pub passed: bool,
    pub dim: usize,
    pub evidence: DivisionEvidence,
}

#[derive(Debug, Clone)]
pub struct TauHypothesis {
    pub passed: bool,
    pub verdict: TubeVerdict,
    pub tau: Representation,
    pub witness: Option<Morphism>,
}

#[derive(Debug, Clone)]
pub struct Hypotheses {
    pub indecomposable: IndecomposableHypothesis,
    pub stable_end: StableEndHypothesis,
    pub tau_periodic: TauHypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub certified: bool,
    pub certified_to_level: Option<usize>,
    pub failing: Vec<String>,
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct DeformationCertificate {
    pub module: Representation,
    pub field: Field,
    pub levels: usize,
    pub seed: u64,
    pub hypotheses: Hypotheses,
    pub ext1_dim: usize,
    pub tower_mode: Option<TowerMode>,
    pub lifts: Vec<LiftCertificate>,
    pub verdict: Verdict,
}

/// `dim Ext^1(V, V)`.
pub fn tangent_dimension(v: &Representation) -> Result<usize, DeformationError> {
    Ok(ext(v, v, 1)?.dim)
}

/// Interpretation of the tangent dimension `r`.
pub fn tangent_interpretation(r: usize) -> String {
    match r {
        0 => "R(Λ,V) ≅ k (universal)".to_string(),
        1 => "R(Λ,V) is a quotient of k[[t]]".to_string(),
        r => format!("R(Λ,V) is a quotient of a power series ring in {r} variables"),
    }
}

fn indecomposable_hypothesis(v: &Representation, seed: u64) -> Result<IndecomposableHypothesis, DeformationError> {
    if v.is_zero() {
        return Ok(IndecomposableHypothesis { passed: false, verdict: "degenerate".into(), top_dim: Some(0), evidence: None });
    }
    let report = match rep::is_indecomposable(v) {
        Ok(r) => r,
        Err(RepError::UnsupportedCharacteristic { .. }) => {
            return Ok(IndecomposableHypothesis { passed: false, verdict: "unsupported".into(), top_dim: None, evidence: None });
        }
        Err(e) => return Err(e.into()),
    };
    if report.top_dim == 1 {
        return Ok(IndecomposableHypothesis { passed: true, verdict: "yes".into(), top_dim: Some(1), evidence: None });
    }
    let evidence = end_top_division_evidence(v, seed)?;
    let verdict = match &evidence {
        DivisionEvidence::Positive { .. } => "division-top",
        DivisionEvidence::Negative { .. } => "decomposable",
        DivisionEvidence::Inconclusive { .. } => "inconclusive",
    };
    Ok(IndecomposableHypothesis {
        passed: evidence.is_positive(),
        verdict: verdict.into(),
        top_dim: Some(report.top_dim),
        evidence: Some(evidence),
    })
}

fn stable_end_hypothesis(v: &Representation, seed: u64) -> Result<StableEndHypothesis, DeformationError> {
    let stable = stable_hom_dim(v, v)?;
    let evidence = if stable.stable_dim == 1 {
        DivisionEvidence::Positive { reason: "one-dimensional".into() }
    } else {
        stable_end_algebra(v)?.division_evidence(seed)
    };
    Ok(StableEndHypothesis { passed: evidence.is_positive(), dim: stable.stable_dim, evidence })
}

fn tau_hypothesis(v: &Representation, seed: u64) -> Result<TauHypothesis, DeformationError> {
    let m = homogeneous_tube_membership(v, seed)?;
    Ok(TauHypothesis { passed: m.verdict == TubeVerdict::Yes, verdict: m.verdict, tau: m.tau, witness: m.witness })
}

fn verdict_for(hyp: &Hypotheses, ext1: usize, tau_zero: bool, lifts: &[LiftCertificate], tower_error: Option<String>, levels: usize) -> Verdict {
    let mut failing = Vec::new();
    if !hyp.indecomposable.passed {
        failing.push("indecomposable".to_string());
    }
    if !hyp.stable_end.passed {
        failing.push("stable-end".to_string());
    }
    if !hyp.tau_periodic.passed {
        failing.push("tau-periodic".to_string());
    }
    if ext1 != 1 {
        failing.push("tangent".to_string());
    }
    if let Some(e) = &tower_error {
        failing.push(format!("tower: {e}"));
    }
    for l in lifts {
        if !l.passed() {
            failing.push(format!("lift-{}", l.level));
        }
    }
    if failing.is_empty() {
        return Verdict { certified: true, certified_to_level: Some(levels), failing, text: CERTIFIED_TEXT.to_string() };
    }
    let text = if ext1 == 0 {
        let what = if tau_zero { "rigid projective" } else { "rigid module" };
        format!("{what}; R ≅ k (dim Ext¹ = 0, universal deformation ring is k); not certified: {}", failing.join(", "))
    } else {
        format!("not certified: failing component(s): {}", failing.join(", "))
    };
    Verdict { certified: false, certified_to_level: None, failing, text }
}

/// Runs every check of the deformation pipeline up to level `levels`.
pub fn certify(
    v: &Representation,
    levels: usize,
    source: &TowerSource,
    seed: u64,
) -> Result<DeformationCertificate, DeformationError> {
    if levels < 2 {
        return Err(DeformationError::LevelsTooSmall);
    }
    let hypotheses = Hypotheses {
        indecomposable: indecomposable_hypothesis(v, seed)?,
        stable_end: stable_end_hypothesis(v, seed)?,
        tau_periodic: tau_hypothesis(v, seed)?,
    };
    let ext1_dim = tangent_dimension(v)?;
    let all_pass = hypotheses.indecomposable.passed && hypotheses.stable_end.passed && hypotheses.tau_periodic.passed && ext1_dim == 1;
    let mut lifts = Vec::new();
    let mut tower_error = None;
    let mut tower_mode = None;
    if all_pass {
        tower_mode = Some(source.mode());
        match build_tower(v, levels, source, seed) {
            Ok(tower) => {
                for l in 2..=levels {
                    lifts.push(lift_certificate(&tower, l, seed)?);
                }
            }
            Err(e @ (DeformationError::TubeHypothesis { .. } | DeformationError::SurjectionSearch { .. } | DeformationError::BandSequence(_))) => {
                tower_error = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    let tau_zero = hypotheses.tau_periodic.tau.is_zero();
    let verdict = verdict_for(&hypotheses, ext1_dim, tau_zero, &lifts, tower_error, levels);
    Ok(DeformationCertificate {
        module: v.clone(),
        field: v.field(),
        levels,
        seed,
        hypotheses,
        ext1_dim,
        tower_mode,
        lifts,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecheckReport {
    pub agrees: bool,
    pub verdict: Verdict,
    pub failures: Vec<String>,
}

/// Re-verifies a certificate: lift equations are checked on the stored
/// matrices; hypotheses are re-derived from the stored module.
pub fn recheck(cert: &DeformationCertificate) -> Result<RecheckReport, DeformationError> {
    let v = &cert.module;
    let mut failures = Vec::new();
    let indecomposable = indecomposable_hypothesis(v, cert.seed)?;
    if indecomposable.passed != cert.hypotheses.indecomposable.passed {
        failures.push("indecomposable hypothesis disagrees".to_string());
    }
    let stable_end = stable_end_hypothesis(v, cert.seed)?;
    if stable_end.passed != cert.hypotheses.stable_end.passed || stable_end.dim != cert.hypotheses.stable_end.dim {
        failures.push("stable End hypothesis disagrees".to_string());
    }
    let stored_tau = &cert.hypotheses.tau_periodic;
    let tau = crate::ar::tau(v)?;
    if tau != stored_tau.tau {
        failures.push("stored τV differs from the recomputed one".to_string());
    }
    let witness_ok = stored_tau
        .witness
        .as_ref()
        .is_some_and(|w| w.source() == &tau && w.target() == v && w.is_morphism() && w.is_isomorphism());
    let tau_periodic = TauHypothesis {
        passed: witness_ok,
        verdict: if witness_ok { TubeVerdict::Yes } else { stored_tau.verdict },
        tau,
        witness: stored_tau.witness.clone(),
    };
    if tau_periodic.passed != stored_tau.passed {
        failures.push("τ-periodicity witness disagrees".to_string());
    }
    let ext1_dim = tangent_dimension(v)?;
    if ext1_dim != cert.ext1_dim {
        failures.push(format!("dim Ext¹ recomputed as {ext1_dim}, stored {}", cert.ext1_dim));
    }
    let mut lifts = Vec::new();
    for (i, stored) in cert.lifts.iter().enumerate() {
        let level = i + 2;
        if stored.level != level {
            failures.push(format!("lift levels out of order at position {i}"));
        }
        if !stored.module.check().valid {
            failures.push(format!("V[{level}] violates a relation"));
        }
        let witness = stored.quotient_iso_witness.as_ref().map(|w| (&stored.cokernel, w));
        let lift = check_lift(level, &stored.module, &stored.nilpotent, v, witness, cert.seed)?;
        if lift.rank_profile != stored.rank_profile || lift.passed() != stored.passed() {
            failures.push(format!("lift certificate at level {level} disagrees"));
        }
        lifts.push(lift);
    }
    let hypotheses = Hypotheses { indecomposable, stable_end, tau_periodic };
    let tower_error = cert
        .verdict
        .failing
        .iter()
        .find_map(|f| f.strip_prefix("tower: ").map(str::to_string));
    let verdict = verdict_for(&hypotheses, ext1_dim, hypotheses.tau_periodic.tau.is_zero(), &lifts, tower_error, cert.levels);
    if verdict.certified && lifts.len() + 1 != cert.levels {
        failures.push("certificate is missing lift levels".to_string());
    }
    let agrees = verdict == cert.verdict && failures.is_empty();
    Ok(RecheckReport { agrees, verdict, failures })
}

/// The level-`l` prefix of a certified certificate.
pub fn truncate_certificate(cert: &DeformationCertificate, l: usize) -> DeformationCertificate {
    let mut out = cert.clone();
    out.levels = l;
    out.lifts.truncate(l.saturating_sub(1));
    if out.verdict.certified {
        out.verdict.certified_to_level = Some(l);
    }
    out
}
