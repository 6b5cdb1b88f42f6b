//! Exact representation theory of bound quiver algebras: Hom and Ext,
//! Auslander-Reiten translates, band modules, and finite-level deformation
//! certificates for modules at the mouth of a homogeneous tube.

pub mod algebra;
pub mod ar;
pub mod band;
pub mod deformation;
pub mod euclidean;
pub mod fixtures;
pub mod format;
pub mod homological;
pub mod linalg;
pub mod rep;
pub mod structure;

pub use algebra::{AlgebraError, BoundAlgebra, Path, Quiver, Relation};
pub use band::{BandError, BandModuleSpec, BandWord};
pub use deformation::{DeformationCertificate, DeformationError, TowerMode, TowerSource};
pub use euclidean::{EuclideanError, EuclideanSpec};
pub use format::{AlgebraFile, CertificateReport, FormatError, ModuleFile};
pub use linalg::{Field, LinalgError, Matrix, Scalar};
pub use rep::{Morphism, RepError, Representation};
