//! Exact algebra engine for silting questions about idempotent ideals of
//! finite-dimensional algebras.
//!
//! Everything is generic over a [`Field`] context; the aliases below fix the
//! two fields that are provided.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod field;
pub mod linalg;
pub mod meataxe;
pub mod module;
pub mod oracle;
pub mod quiver;
pub mod recollement;
pub mod semiperfect;
pub mod silting;
pub mod ttf;

pub use algebra::{Algebra, AlgebraSpec, QuiverProvenance, Side, ValidationReport};
pub use error::{Diagnostic, Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, Scalar};
pub use linalg::{Matrix, Subspace};
pub use module::{ModuleMap, ModuleRep, Provenance};
pub use quiver::{build_path_algebra, parse_quiver_spec, QuiverSpec};
pub use semiperfect::Semiperfect;
pub use ttf::{Ideal, TtfTriple};

pub type GfMatrix = Matrix<PrimeField>;
pub type QMatrix = Matrix<Rationals>;
pub type GfSubspace = Subspace<PrimeField>;
pub type QSubspace = Subspace<Rationals>;
pub type GfAlgebra = Algebra<PrimeField>;
pub type QAlgebra = Algebra<Rationals>;
pub type GfModule = ModuleRep<PrimeField>;
pub type QModule = ModuleRep<Rationals>;
pub type GfIdeal = Ideal<PrimeField>;
