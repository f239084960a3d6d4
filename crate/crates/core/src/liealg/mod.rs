//! Lie algebras by structure constants, a catalog of four-dimensional
//! solvable examples, and structural invariants.

mod algebra;
mod automorphism;
mod catalog;
mod extension;
pub mod random;
mod structure;

pub use algebra::{unit, AlgebraJson, BracketJson, JacobiEntry, LieAlgebra};
pub use automorphism::{
    abelian_hyperideal, orientation_reversing_automorphism, AutomorphismKind,
    OrientationReversal,
};
pub use catalog::{catalog, g_tau, CATALOG_NAMES};
pub use extension::ExtensionSpec;
pub use structure::{
    ad_on_derived, bracket_span, center, derived_series, iso_invariant, span, DerivedSeries,
    IsoInvariant,
};

use crate::exactmath::MathError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },
    #[error("bracket [f{i}, f{j}] must be antisymmetric")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("{operation} needs numeric structure constants; specialize {params:?} first")]
    NeedsSpecialization { operation: String, params: Vec<String> },
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invariant undefined: {0}")]
    Invariant(String),
    #[error("map {0} is not a derivation")]
    NotDerivation(usize),
    #[error("derivations {0} and {1} do not commute")]
    NonCommutingDerivations(usize, usize),
    #[error("structure constants violate the Jacobi identity")]
    NotLie,
    #[error(transparent)]
    Math(#[from] MathError),
}
