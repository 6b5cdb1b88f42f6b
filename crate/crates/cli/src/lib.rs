//! The `tubedef` command line. Every path through [`run`] produces a JSON
//! document; exit codes are 0 (ok), 1 (usage, parse or computation error)
//! and 2 (the computation succeeded but a verification failed).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use tubedef_core::ar::{self, ArError, TubeVerdict};
use tubedef_core::band::{self, BandModuleSpec};
use tubedef_core::deformation::{self, TowerSource};
use tubedef_core::euclidean::{self, EuclideanSpec, DEFAULT_SEARCH_ATTEMPTS};
use tubedef_core::fixtures::{self, FixtureError, FIXTURE_LAMBDA};
use tubedef_core::format::{matrix_to_spec, morphism_to_spec, AlgebraFile, CertificateReport, FormatError, ModuleFile};
use tubedef_core::homological;
use tubedef_core::rep::{self, IsoVerdict};
use tubedef_core::structure::DivisionEvidence;
use tubedef_core::{
    AlgebraError, BandError, BoundAlgebra, DeformationError, EuclideanError, Field, LinalgError, RepError,
    Representation,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NOT_VERIFIED: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "tubedef", version, about = "Exact module theory and deformation certificates for bound quiver algebras")]
pub struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// AlgebraFile (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    algebra: Option<PathBuf>,
    /// ModuleFile (JSON) over the algebra.
    #[arg(long, global = true, value_name = "FILE")]
    module: Option<PathBuf>,
    /// Second ModuleFile, for two-module commands.
    #[arg(long, global = true, value_name = "FILE")]
    other: Option<PathBuf>,
    #[arg(long, global = true, env = "TUBEDEF_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = deformation::DEFAULT_LEVELS)]
    levels: usize,
    /// Also write the primary artifact here (a directory for `fixtures emit`).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true)]
    max_length: Option<usize>,
    /// Worker threads for `band brick-search`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Include a Graphviz rendering of the quiver.
    #[arg(long, global = true)]
    dot: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound quiver algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Module checks, Hom and End.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Covers, syzygies, Ext and stable End.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Auslander-Reiten translate.
    #[command(subcommand)]
    Tau(TauCmd),
    /// Band words and band modules.
    #[command(subcommand)]
    Band(BandCmd),
    /// Deformation certificates.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Euclidean quivers and their mouth modules.
    #[command(subcommand)]
    Euclid(EuclidCmd),
    /// Write fixture files.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Debug, Subcommand)]
enum AlgebraCmd {
    /// Build the algebra and report its basic properties.
    Validate,
    /// List the path basis with the Cartan and Euler data.
    Basis,
}

#[derive(Debug, Subcommand)]
enum ModuleCmd {
    /// Check shapes and relations.
    Check,
    /// Basis of Hom(module, other); other defaults to module.
    Hom,
    /// Dimensions of End, its radical and its top.
    End,
    Brick,
    Indec,
    Iso,
}

#[derive(Debug, Subcommand)]
enum HomologyCmd {
    Cover,
    Syzygy {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// dim Ext^n(module, other); other defaults to module.
    Ext {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    StableEnd,
}

#[derive(Debug, Subcommand)]
enum TauCmd {
    Translate,
    Homogeneous,
    /// Coxeter matrix; with --module also compares Φ·dim V to dim τV.
    Coxeter,
}

#[derive(Debug, Subcommand)]
enum BandCmd {
    Parse {
        band: String,
    },
    Make {
        band: String,
        #[arg(long, default_value_t = FIXTURE_LAMBDA.to_string())]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    Ses {
        band: String,
        #[arg(long, default_value_t = FIXTURE_LAMBDA.to_string())]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    Enumerate {
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    BrickSearch {
        /// Seeded random λ values tried on top of the fixed list.
        #[arg(long, default_value_t = 0)]
        random_lambdas: usize,
    },
}

#[derive(Debug, Subcommand)]
enum DeformCmd {
    /// Certificate for the module; --band selects band-mode towers.
    Certify {
        #[arg(long)]
        band: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Re-verify a CertificateReport from its own contents.
    Recheck {
        report: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum EuclidCmd {
    /// AlgebraFile for atilde(p,q), kronecker, dtilde<m>, etilde6|7|8.
    Build {
        spec: String,
    },
    SimpleRegular {
        #[arg(long, default_value_t = FIXTURE_LAMBDA.to_string())]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_ATTEMPTS)]
        attempts: usize,
    },
}

#[derive(Debug, Subcommand)]
enum FixturesCmd {
    Emit { name: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Ar(#[from] ArError),
    #[error(transparent)]
    Band(#[from] BandError),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error(transparent)]
    Euclidean(#[from] EuclideanError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

const WRAPPERS: [&str; 9] =
    ["Format", "Linalg", "Algebra", "Rep", "Ar", "Band", "Deformation", "Euclidean", "Fixture"];

impl CliError {
    /// Kebab-case name of the innermost error variant.
    pub fn kind(&self) -> String {
        if let CliError::Usage(_) = self {
            return "usage".into();
        }
        if let CliError::Io { .. } = self {
            return "io".into();
        }
        let debug = format!("{self:?}");
        let mut rest = debug.as_str();
        loop {
            let head: &str = &rest[..rest.find(|c: char| !c.is_alphanumeric()).unwrap_or(rest.len())];
            let inner = rest[head.len()..].strip_prefix('(');
            match inner {
                Some(inner) if WRAPPERS.contains(&head) && inner.starts_with(|c: char| c.is_ascii_uppercase()) => {
                    rest = inner
                }
                _ => return kebab(head),
            }
        }
    }
}

fn kebab(name: &str) -> String {
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

/// Result of one subcommand.
struct Output {
    doc: Value,
    /// What `--out` writes, when it differs from `doc`.
    artifact: Option<String>,
    verified: bool,
}

impl Output {
    fn ok(doc: Value) -> Self {
        Output { doc, artifact: None, verified: true }
    }

    fn checked(doc: Value, verified: bool) -> Self {
        Output { doc, artifact: None, verified }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn error_doc(kind: &str, detail: &str) -> String {
    pretty(&json!({ "error": { "kind": kind, "detail": detail } }))
}

/// Runs the command line and returns the exit code with the stdout text.
pub fn run<I, T>(argv: I) -> (u8, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, pretty(&json!({ "help": e.to_string() }))),
                _ => (EXIT_ERROR, error_doc("usage", e.to_string().trim())),
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let code = if out.verified { EXIT_OK } else { EXIT_NOT_VERIFIED };
            (code, pretty(&out.doc))
        }
        Err(e) => (EXIT_ERROR, error_doc(&e.kind(), &e.to_string())),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

impl Global {
    fn algebra(&self) -> Result<Arc<BoundAlgebra>, CliError> {
        let path = self.algebra.as_ref().ok_or_else(|| CliError::Usage("--algebra FILE is required".into()))?;
        Ok(AlgebraFile::parse(&read(path)?)?.build(self.max_degree)?)
    }

    fn module_file(&self) -> Result<ModuleFile, CliError> {
        let path = self.module.as_ref().ok_or_else(|| CliError::Usage("--module FILE is required".into()))?;
        Ok(ModuleFile::parse(&read(path)?)?)
    }

    fn module(&self, alg: &Arc<BoundAlgebra>) -> Result<Representation, CliError> {
        Ok(self.module_file()?.to_representation(alg)?)
    }

    /// `--other`, defaulting to `--module`.
    fn other(&self, alg: &Arc<BoundAlgebra>, v: &Representation) -> Result<Representation, CliError> {
        match &self.other {
            Some(path) => Ok(ModuleFile::parse(&read(path)?)?.to_representation(alg)?),
            None => Ok(v.clone()),
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    let out = match &cli.command {
        Command::Algebra(cmd) => algebra_cmd(g, cmd)?,
        Command::Module(cmd) => module_cmd(g, cmd)?,
        Command::Homology(cmd) => homology_cmd(g, cmd)?,
        Command::Tau(cmd) => tau_cmd(g, cmd)?,
        Command::Band(cmd) => band_cmd(g, cmd)?,
        Command::Deform(cmd) => deform_cmd(g, cmd)?,
        Command::Euclid(cmd) => euclid_cmd(g, cmd)?,
        Command::Fixtures(FixturesCmd::Emit { name }) => return fixtures_emit(g, name),
    };
    if let Some(path) = &g.out {
        let text = out.artifact.clone().unwrap_or_else(|| pretty(&out.doc));
        write(path, &text)?;
    }
    Ok(out)
}

fn vertex_names(alg: &BoundAlgebra, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| alg.quiver().vertices()[v].clone()).collect()
}

fn algebra_cmd(g: &Global, cmd: &AlgebraCmd) -> Result<Output, CliError> {
    let alg = g.algebra()?;
    let q = alg.quiver();
    let mut doc = match cmd {
        AlgebraCmd::Validate => {
            let sb = alg.validate_special_biserial();
            let sym = alg.is_symmetric(g.seed);
            json!({
                "valid": true,
                "field": alg.field().to_string(),
                "vertices": q.num_vertices(),
                "arrows": q.num_arrows(),
                "dim": alg.dim(),
                "nilpotency_degree": alg.nilpotency_degree(),
                "hereditary": alg.is_hereditary(),
                "special_biserial": { "holds": sb.is_special_biserial, "violations": sb.violations },
                "symmetric": {
                    "verdict": sym.verdict,
                    "witness": sym.witness.map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>()),
                },
                "euclidean_family": euclidean::euclidean_family(&alg).map(|s| s.to_string()),
            })
        }
        AlgebraCmd::Basis => {
            let basis: Vec<Value> = alg
                .basis()
                .iter()
                .map(|p| {
                    json!({
                        "path": p.names(q),
                        "from": q.vertices()[p.start()],
                        "to": q.vertices()[p.end()],
                    })
                })
                .collect();
            let euler = alg.cartan_euler().ok();
            json!({
                "dim": alg.dim(),
                "basis": basis,
                "cartan": alg.cartan_matrix(),
                "euler_symmetrization": euler.as_ref().map(|e| e.euler_symmetrization.clone()),
                "null_root": euler.and_then(|e| e.null_root),
            })
        }
    };
    if g.dot {
        doc["dot"] = Value::String(q.to_dot());
    }
    Ok(Output::ok(doc))
}

fn module_cmd(g: &Global, cmd: &ModuleCmd) -> Result<Output, CliError> {
    let alg = g.algebra()?;
    if let ModuleCmd::Check = cmd {
        let v = g.module_file()?.to_representation_unchecked(&alg)?;
        let report = v.check();
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(|(r, m)| json!({ "relation": r, "value": matrix_to_spec(m) }))
            .collect();
        let doc = json!({
            "valid": report.valid,
            "dims": v.dims(),
            "total_dim": v.total_dim(),
            "shape_errors": report.shape_errors,
            "violations": violations,
        });
        return Ok(Output::checked(doc, report.valid));
    }
    let v = g.module(&alg)?;
    Ok(match cmd {
        ModuleCmd::Check => unreachable!(),
        ModuleCmd::Hom => {
            let w = g.other(&alg, &v)?;
            let basis = rep::hom_basis(&v, &w)?;
            let maps: Vec<_> = basis.iter().map(morphism_to_spec).collect();
            Output::ok(json!({ "dim": basis.len(), "basis": maps }))
        }
        ModuleCmd::End => {
            let e = rep::end_structure(&v)?;
            Output::ok(to_value(&e))
        }
        ModuleCmd::Brick => {
            let brick = rep::is_brick(&v)?;
            Output::checked(json!({ "brick": brick }), brick)
        }
        ModuleCmd::Indec => {
            let r = rep::is_indecomposable(&v)?;
            let evidence = if r.top_dim > 1 { Some(rep::end_top_division_evidence(&v, g.seed)?) } else { None };
            let verdict = match &evidence {
                _ if r.degenerate => "degenerate",
                None => "yes",
                Some(DivisionEvidence::Positive { .. }) => "division-top",
                Some(DivisionEvidence::Negative { .. }) => "decomposable",
                Some(DivisionEvidence::Inconclusive { .. }) => "inconclusive",
            };
            let passed = matches!(verdict, "yes" | "division-top");
            let doc = json!({ "verdict": verdict, "top_dim": r.top_dim, "evidence": evidence });
            Output::checked(doc, passed)
        }
        ModuleCmd::Iso => {
            let w = g.other(&alg, &v)?;
            let r = rep::is_isomorphic(&v, &w, g.seed)?;
            let doc = json!({ "verdict": r.verdict, "witness": r.witness.as_ref().map(morphism_to_spec) });
            Output::checked(doc, r.verdict == IsoVerdict::Yes)
        }
    })
}

fn homology_cmd(g: &Global, cmd: &HomologyCmd) -> Result<Output, CliError> {
    let alg = g.algebra()?;
    let v = g.module(&alg)?;
    Ok(Output::ok(match cmd {
        HomologyCmd::Cover => {
            let p = homological::projective_cover(&v)?;
            json!({
                "p0_vertices": vertex_names(&alg, &p.p0_vertices),
                "p0_dims": p.p0.dims(),
                "cover": morphism_to_spec(&p.cover),
                "syzygy": ModuleFile::from_representation(&p.syzygy),
            })
        }
        HomologyCmd::Syzygy { n } => {
            let s = homological::syzygy(&v, *n)?;
            json!({ "n": n, "dims": s.dims(), "module": ModuleFile::from_representation(&s) })
        }
        HomologyCmd::Ext { n } => {
            let w = g.other(&alg, &v)?;
            json!({ "n": n, "dim": homological::ext_dim(&v, &w, *n)? })
        }
        HomologyCmd::StableEnd => {
            let s = homological::stable_hom_dim(&v, &v)?;
            let evidence = homological::stable_end_algebra(&v)?.division_evidence(g.seed);
            json!({
                "hom_dim": s.hom_dim,
                "projectively_trivial_dim": s.projectively_trivial_dim,
                "stable_dim": s.stable_dim,
                "division_evidence": evidence,
            })
        }
    }))
}

fn tau_cmd(g: &Global, cmd: &TauCmd) -> Result<Output, CliError> {
    let alg = g.algebra()?;
    if let TauCmd::Coxeter = cmd {
        let phi = ar::coxeter_matrix(&alg)?;
        let mut doc = json!({ "coxeter": matrix_to_spec(&phi) });
        let mut verified = true;
        if g.module.is_some() {
            let check = ar::coxeter_check(&g.module(&alg)?)?;
            verified = check.agrees;
            doc["check"] = to_value(&check);
        }
        return Ok(Output::checked(doc, verified));
    }
    let v = g.module(&alg)?;
    Ok(match cmd {
        TauCmd::Coxeter => unreachable!(),
        TauCmd::Translate => {
            let t = ar::tau(&v)?;
            let file = ModuleFile::from_representation(&t);
            Output {
                doc: json!({ "dims": t.dims(), "zero": t.is_zero(), "tau": file }),
                artifact: Some(file.to_json()),
                verified: true,
            }
        }
        TauCmd::Homogeneous => {
            let m = ar::homogeneous_tube_membership(&v, g.seed)?;
            let doc = json!({
                "verdict": m.verdict,
                "tau": ModuleFile::from_representation(&m.tau),
                "witness": m.witness.as_ref().map(morphism_to_spec),
            });
            Output::checked(doc, m.verdict == TubeVerdict::Yes)
        }
    })
}

fn band_spec(alg: &Arc<BoundAlgebra>, text: &str, lambda: &str, m: usize) -> Result<BandModuleSpec, CliError> {
    let band = band::parse_band(text, alg)?;
    let lambda = alg.field().parse(lambda)?;
    Ok(BandModuleSpec { band, lambda, m })
}

fn band_doc(b: &tubedef_core::BandWord) -> Value {
    let q = b.algebra().quiver();
    let letters: Vec<Value> = b
        .letters()
        .iter()
        .map(|l| json!({ "arrow": q.arrows()[l.arrow].name, "inverse": l.inverse }))
        .collect();
    json!({ "band": b.to_string(), "length": b.len(), "letters": letters, "warning": b.warning })
}

fn band_cmd(g: &Global, cmd: &BandCmd) -> Result<Output, CliError> {
    let alg = g.algebra()?;
    Ok(match cmd {
        BandCmd::Parse { band } => Output::ok(band_doc(&band::parse_band(band, &alg)?)),
        BandCmd::Make { band, lambda, m } => {
            let v = band::band_module(&band_spec(&alg, band, lambda, *m)?)?;
            Output::ok(to_value(&ModuleFile::from_representation(&v)))
        }
        BandCmd::Ses { band, lambda, m } => {
            let ses = band::lemma1_ses(&band_spec(&alg, band, lambda, *m)?, g.seed)?;
            let doc = json!({
                "verified": ses.verified,
                "g": morphism_to_spec(&ses.g),
                "f": morphism_to_spec(&ses.f),
                "kernel_dims": ses.g.source().dims(),
                "middle_dims": ses.f.source().dims(),
                "quotient_dims": ses.f.target().dims(),
            });
            Output::checked(doc, ses.verified)
        }
        BandCmd::Enumerate { limit } => {
            let e = band::enumerate_bands(&alg, g.max_length.unwrap_or(4), *limit);
            let bands: Vec<String> = e.bands.iter().map(ToString::to_string).collect();
            let warning = e.bands.first().and_then(|b| b.warning.clone());
            Output::ok(json!({ "count": bands.len(), "truncated": e.truncated, "bands": bands, "warning": warning }))
        }
        BandCmd::BrickSearch { random_lambdas } => {
            let bands = band::enumerate_bands(&alg, g.max_length.unwrap_or(4), usize::MAX).bands;
            let lambdas = band::lambda_samples(alg.field(), *random_lambdas, g.seed);
            let results = parallel_bricks(&bands, &lambdas, g.jobs.max(1))?;
            let bricks = results.iter().filter(|r| r.brick).count();
            Output::ok(json!({ "tested": results.len(), "bricks": bricks, "results": results }))
        }
    })
}

fn parallel_bricks(
    bands: &[tubedef_core::BandWord],
    lambdas: &[tubedef_core::Scalar],
    jobs: usize,
) -> Result<Vec<band::BandBrick>, CliError> {
    if bands.is_empty() {
        return Ok(Vec::new());
    }
    let chunk = bands.len().div_ceil(jobs);
    let parts: Vec<Result<Vec<band::BandBrick>, BandError>> = std::thread::scope(|s| {
        let handles: Vec<_> = bands
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    let mut out = Vec::new();
                    for b in part {
                        out.extend(band::band_brick_status(b, lambdas)?);
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn deform_cmd(g: &Global, cmd: &DeformCmd) -> Result<Output, CliError> {
    match cmd {
        DeformCmd::Certify { band, lambda } => {
            let alg = g.algebra()?;
            let v = g.module(&alg)?;
            let source = match band {
                Some(text) => {
                    let lambda = lambda.as_deref().ok_or_else(|| CliError::Usage("--band needs --lambda".into()))?;
                    TowerSource::Band(band_spec(&alg, text, lambda, 1)?)
                }
                None if lambda.is_some() => return Err(CliError::Usage("--lambda needs --band".into())),
                None => TowerSource::ExtPushout,
            };
            let cert = deformation::certify(&v, g.levels, &source, g.seed)?;
            let report = CertificateReport::from_certificate(&cert);
            Ok(Output { doc: to_value(&report), artifact: Some(report.to_json()), verified: cert.verdict.certified })
        }
        DeformCmd::Recheck { report } => {
            let report = CertificateReport::parse(&read(report)?)?;
            let cert = report.to_certificate(g.max_degree)?;
            let r = deformation::recheck(&cert)?;
            let verified = r.agrees && r.verdict.certified;
            Ok(Output::checked(to_value(&r), verified))
        }
    }
}

fn euclid_cmd(g: &Global, cmd: &EuclidCmd) -> Result<Output, CliError> {
    match cmd {
        EuclidCmd::Build { spec } => {
            let spec: EuclideanSpec = spec.parse()?;
            let alg = fixtures::path_algebra(euclidean::build_euclidean(spec)?, Field::Rationals);
            let mut doc = to_value(&AlgebraFile::from_algebra(&alg));
            let artifact = Some(AlgebraFile::from_algebra(&alg).to_json());
            if g.dot {
                doc = json!({ "algebra": doc, "dot": alg.quiver().to_dot() });
            }
            Ok(Output { doc, artifact, verified: true })
        }
        EuclidCmd::SimpleRegular { lambda, attempts } => {
            let alg = g.algebra()?;
            let family = euclidean::euclidean_family(&alg);
            let null_root = alg.euler_data()?.null_root;
            let (v, stats) = match family {
                Some(EuclideanSpec::ATilde { .. }) => {
                    (euclidean::simple_regular_a(&alg, &alg.field().parse(lambda)?)?, None)
                }
                _ => {
                    let (v, stats) = euclidean::simple_regular_search(&alg, g.seed, *attempts)?;
                    (v, Some(stats))
                }
            };
            let file = ModuleFile::from_representation(&v);
            let doc = json!({
                "family": family.map(|f| f.to_string()),
                "null_root": null_root,
                "dims": v.dims(),
                "stats": stats,
                "scope": "existence of one mouth module of dimension vector δ; the λ-indexed family is not enumerated",
                "module": file,
            });
            Ok(Output { doc, artifact: Some(file.to_json()), verified: true })
        }
    }
}

/// File stem for fixture names such as `atilde(2,3)`.
pub fn fixture_stem(name: &str) -> String {
    name.chars()
        .filter_map(|c| match c {
            '(' | ',' => Some('_'),
            ')' | ' ' => None,
            c => Some(c),
        })
        .collect()
}

/// File names of a fixture's algebra and canonical module.
pub fn fixture_files(name: &str) -> (String, String) {
    let stem = fixture_stem(name);
    let module = if stem == "klein4" { format!("band_ab_l{FIXTURE_LAMBDA}.json") } else { format!("{stem}_mouth.json") };
    (format!("{stem}.json"), module)
}

fn fixtures_emit(g: &Global, name: &str) -> Result<Output, CliError> {
    let (alg, module) = fixtures::emit(name)?;
    let (alg_name, module_name) = fixture_files(name);
    let doc = match &g.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
            let alg_path = dir.join(&alg_name);
            write(&alg_path, &alg.to_json())?;
            let module_path = match &module {
                Some(m) => {
                    let p = dir.join(&module_name);
                    write(&p, &m.to_json())?;
                    Some(p.display().to_string())
                }
                None => None,
            };
            json!({ "algebra": alg_path.display().to_string(), "module": module_path })
        }
        None => json!({ "algebra": alg, "module": module }),
    };
    Ok(Output::ok(doc))
}
