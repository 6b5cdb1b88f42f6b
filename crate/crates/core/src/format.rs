//! JSON file formats: algebras, modules, morphisms and certificate reports.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, BoundAlgebra, Quiver, Relation, DEFAULT_MAX_DEGREE};
use crate::ar::TubeVerdict;
use crate::deformation::{
    tangent_interpretation, DeformationCertificate, Hypotheses, IndecomposableHypothesis, LiftCertificate,
    StableEndHypothesis, TauHypothesis, TowerMode, Verdict,
};
use crate::linalg::{Field, LinalgError, Matrix};
use crate::rep::{Morphism, RepError, Representation};
use crate::structure::DivisionEvidence;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

impl FieldSpec {
    pub fn to_field(self) -> Result<Field, FormatError> {
        match self {
            FieldSpec::Q => Ok(Field::Rationals),
            FieldSpec::Fp { p } => Ok(Field::prime(p)?),
        }
    }

    pub fn from_field(f: Field) -> Self {
        match f {
            Field::Rationals => FieldSpec::Q,
            Field::Prime(p) => FieldSpec::Fp { p },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn quiver(&self) -> Result<Quiver, FormatError> {
        Ok(Quiver::new(
            self.vertices.iter().cloned(),
            self.arrows.iter().map(|a| (a.id.clone(), a.from.clone(), a.to.clone())),
        )?)
    }

    pub fn relations(&self, quiver: &Quiver, field: Field) -> Result<Vec<Relation>, FormatError> {
        self.relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|t| {
                        let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
                        Ok((field.parse(&t.coeff)?, quiver.path(&names)?))
                    })
                    .collect::<Result<Vec<_>, FormatError>>()?;
                Ok(Relation::new(terms))
            })
            .collect()
    }

    pub fn build(&self, max_degree: Option<usize>) -> Result<Arc<BoundAlgebra>, FormatError> {
        let field = self.field.to_field()?;
        let quiver = self.quiver()?;
        let relations = self.relations(&quiver, field)?;
        Ok(BoundAlgebra::build(quiver, relations, field, max_degree.unwrap_or(DEFAULT_MAX_DEGREE))?)
    }

    pub fn from_algebra(alg: &BoundAlgebra) -> Self {
        let q = alg.quiver();
        AlgebraFile {
            field: FieldSpec::from_field(alg.field()),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    id: a.name.clone(),
                    from: q.vertices()[a.source].clone(),
                    to: q.vertices()[a.target].clone(),
                })
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| {
                    r.terms()
                        .iter()
                        .map(|(c, p)| TermSpec { coeff: c.to_string(), path: p.names(q) })
                        .collect()
                })
                .collect(),
        }
    }
}

pub type MatrixSpec = Vec<Vec<String>>;

pub fn matrix_to_spec(m: &Matrix) -> MatrixSpec {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

pub fn matrix_from_spec(field: Field, rows: usize, cols: usize, spec: &MatrixSpec, what: &str) -> Result<Matrix, FormatError> {
    if rows == 0 || cols == 0 {
        if !(spec.is_empty() || (spec.len() == rows && spec.iter().all(Vec::is_empty))) {
            return Err(FormatError::Shape(format!("{what}: expected a {rows}x{cols} matrix")));
        }
        return Ok(Matrix::zeros(field, rows, cols));
    }
    if spec.len() != rows || spec.iter().any(|r| r.len() != cols) {
        return Err(FormatError::Shape(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, row) in spec.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, field.parse(s)?);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub action: BTreeMap<String, MatrixSpec>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_representation(v: &Representation) -> Self {
        let q = v.algebra().quiver();
        ModuleFile {
            dims: q.vertices().iter().cloned().zip(v.dims().iter().copied()).collect(),
            action: q.arrows().iter().zip(v.actions()).map(|(a, m)| (a.name.clone(), matrix_to_spec(m))).collect(),
        }
    }

    /// Shape-checked representation; relations are not verified.
    pub fn to_representation_unchecked(&self, alg: &Arc<BoundAlgebra>) -> Result<Representation, FormatError> {
        let q = alg.quiver();
        for name in self.dims.keys() {
            q.vertex(name).map_err(|_| FormatError::UnknownVertex(name.clone()))?;
        }
        for name in self.action.keys() {
            q.arrow(name).map_err(|_| FormatError::UnknownArrow(name.clone()))?;
        }
        let dims: Vec<usize> = q.vertices().iter().map(|v| self.dims.get(v).copied().unwrap_or(0)).collect();
        let action = q
            .arrows()
            .iter()
            .map(|a| {
                let (rows, cols) = (dims[a.target], dims[a.source]);
                let Some(spec) = self.action.get(&a.name) else {
                    return Ok(Matrix::zeros(alg.field(), rows, cols));
                };
                matrix_from_spec(alg.field(), rows, cols, spec, &format!("arrow {}", a.name))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Representation::new_unchecked(Arc::clone(alg), dims, action)?)
    }

    pub fn to_representation(&self, alg: &Arc<BoundAlgebra>) -> Result<Representation, FormatError> {
        let v = self.to_representation_unchecked(alg)?;
        if let Some((relation, _)) = v.check().violations.first() {
            return Err(RepError::RelationViolated { relation: *relation }.into());
        }
        Ok(v)
    }
}

/// Morphism blocks keyed by vertex name.
pub type MorphismSpec = BTreeMap<String, MatrixSpec>;

pub fn morphism_to_spec(m: &Morphism) -> MorphismSpec {
    let q = m.source().algebra().quiver();
    q.vertices().iter().cloned().zip(m.blocks().iter().map(matrix_to_spec)).collect()
}

/// Blocks read against the given endpoints; the commuting condition is not checked.
pub fn morphism_from_spec(spec: &MorphismSpec, source: &Representation, target: &Representation) -> Result<Morphism, FormatError> {
    let q = source.algebra().quiver();
    for name in spec.keys() {
        q.vertex(name).map_err(|_| FormatError::UnknownVertex(name.clone()))?;
    }
    let blocks = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, name)| {
            let (rows, cols) = (target.dim_at(v), source.dim_at(v));
            let Some(s) = spec.get(name) else {
                return Ok(Matrix::zeros(source.field(), rows, cols));
            };
            matrix_from_spec(source.field(), rows, cols, s, &format!("block at {name}"))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(Morphism::new_unchecked(source.clone(), target.clone(), blocks)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndecomposableReport {
    pub passed: bool,
    pub verdict: String,
    pub top_dim: Option<usize>,
    pub evidence: Option<DivisionEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableEndReport {
    pub passed: bool,
    pub dim: usize,
    pub division_evidence: DivisionEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauReport {
    pub passed: bool,
    pub verdict: TubeVerdict,
    pub tau: ModuleFile,
    pub witness: Option<MorphismSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesesReport {
    pub indecomposable: IndecomposableReport,
    pub stable_end: StableEndReport,
    pub tau_periodic: TauReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangentReport {
    pub ext1_dim: usize,
    pub interpretation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftChecks {
    pub is_endomorphism: bool,
    pub rank_profile_exact: bool,
    pub nilpotent_vanishes: bool,
    pub cokernel_iso_base: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftReport {
    pub level: usize,
    pub rank_profile: Vec<usize>,
    pub expected_profile: Vec<usize>,
    pub checks: LiftChecks,
    pub passed: bool,
    pub failure: Option<String>,
    pub module: ModuleFile,
    pub nilpotent: MorphismSpec,
    pub cokernel: ModuleFile,
    pub quotient_iso_witness: Option<MorphismSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub seed: u64,
    pub field: String,
    pub tool_version: String,
    pub levels: usize,
}

/// Self-contained JSON form of a [`DeformationCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateReport {
    pub algebra: AlgebraFile,
    pub module: ModuleFile,
    pub hypotheses: HypothesesReport,
    pub tangent: TangentReport,
    pub tower_mode: Option<TowerMode>,
    pub lifts: Vec<LiftReport>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl CertificateReport {
    pub fn from_certificate(c: &DeformationCertificate) -> Self {
        let h = &c.hypotheses;
        CertificateReport {
            algebra: AlgebraFile::from_algebra(c.module.algebra()),
            module: ModuleFile::from_representation(&c.module),
            hypotheses: HypothesesReport {
                indecomposable: IndecomposableReport {
                    passed: h.indecomposable.passed,
                    verdict: h.indecomposable.verdict.clone(),
                    top_dim: h.indecomposable.top_dim,
                    evidence: h.indecomposable.evidence.clone(),
                },
                stable_end: StableEndReport {
                    passed: h.stable_end.passed,
                    dim: h.stable_end.dim,
                    division_evidence: h.stable_end.evidence.clone(),
                },
                tau_periodic: TauReport {
                    passed: h.tau_periodic.passed,
                    verdict: h.tau_periodic.verdict,
                    tau: ModuleFile::from_representation(&h.tau_periodic.tau),
                    witness: h.tau_periodic.witness.as_ref().map(morphism_to_spec),
                },
            },
            tangent: TangentReport { ext1_dim: c.ext1_dim, interpretation: tangent_interpretation(c.ext1_dim) },
            tower_mode: c.tower_mode,
            lifts: c
                .lifts
                .iter()
                .map(|l| LiftReport {
                    level: l.level,
                    rank_profile: l.rank_profile.clone(),
                    expected_profile: l.expected_profile.clone(),
                    checks: LiftChecks {
                        is_endomorphism: l.is_endomorphism,
                        rank_profile_exact: l.rank_profile == l.expected_profile,
                        nilpotent_vanishes: l.nilpotent_vanishes,
                        cokernel_iso_base: l.quotient_iso_witness.is_some(),
                    },
                    passed: l.passed(),
                    failure: l.failure.clone(),
                    module: ModuleFile::from_representation(&l.module),
                    nilpotent: morphism_to_spec(&l.nilpotent),
                    cokernel: ModuleFile::from_representation(&l.cokernel),
                    quotient_iso_witness: l.quotient_iso_witness.as_ref().map(morphism_to_spec),
                })
                .collect(),
            verdict: c.verdict.clone(),
            provenance: Provenance {
                seed: c.seed,
                field: c.field.to_string(),
                tool_version: TOOL_VERSION.to_string(),
                levels: c.levels,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the certificate using only the report contents.
    pub fn to_certificate(&self, max_degree: Option<usize>) -> Result<DeformationCertificate, FormatError> {
        let alg = self.algebra.build(max_degree)?;
        let module = self.module.to_representation_unchecked(&alg)?;
        let h = &self.hypotheses;
        let tau = h.tau_periodic.tau.to_representation_unchecked(&alg)?;
        let witness = h.tau_periodic.witness.as_ref().map(|w| morphism_from_spec(w, &tau, &module)).transpose()?;
        let lifts = self
            .lifts
            .iter()
            .map(|l| {
                let m = l.module.to_representation_unchecked(&alg)?;
                let coker = l.cokernel.to_representation_unchecked(&alg)?;
                let nilpotent = morphism_from_spec(&l.nilpotent, &m, &m)?;
                let quotient_iso_witness =
                    l.quotient_iso_witness.as_ref().map(|w| morphism_from_spec(w, &coker, &module)).transpose()?;
                Ok(LiftCertificate {
                    level: l.level,
                    module: m,
                    nilpotent,
                    rank_profile: l.rank_profile.clone(),
                    expected_profile: l.expected_profile.clone(),
                    is_endomorphism: l.checks.is_endomorphism,
                    nilpotent_vanishes: l.checks.nilpotent_vanishes,
                    cokernel: coker,
                    quotient_iso_witness,
                    failure: l.failure.clone(),
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(DeformationCertificate {
            field: alg.field(),
            module,
            levels: self.provenance.levels,
            seed: self.provenance.seed,
            hypotheses: Hypotheses {
                indecomposable: IndecomposableHypothesis {
                    passed: h.indecomposable.passed,
                    verdict: h.indecomposable.verdict.clone(),
                    top_dim: h.indecomposable.top_dim,
                    evidence: h.indecomposable.evidence.clone(),
                },
                stable_end: StableEndHypothesis {
                    passed: h.stable_end.passed,
                    dim: h.stable_end.dim,
                    evidence: h.stable_end.division_evidence.clone(),
                },
                tau_periodic: TauHypothesis {
                    passed: h.tau_periodic.passed,
                    verdict: h.tau_periodic.verdict,
                    tau,
                    witness,
                },
            },
            ext1_dim: self.tangent.ext1_dim,
            tower_mode: self.tower_mode,
            lifts,
            verdict: self.verdict.clone(),
        })
    }
}
