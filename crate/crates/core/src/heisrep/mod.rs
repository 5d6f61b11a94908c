//! The Heisenberg group H₇, its extension G₇ = H₇ ⋊ ⟨ι⟩, the normalizer
//! generators μ, ν, δ and the character tables of G₇ and SL₂(F₇).
//!
//! Group elements come in two forms that are cross-checked against each
//! other: the abstract [`HElem`] law and explicit monomial matrices
//! ([`MonoMat`]) on the basis e_0..e_6.

mod character;
mod classes;
mod formulas;
mod helem;
mod monomat;
mod nelem;
mod restrict;
mod sl2;
mod tables;

pub use character::{newton, CharTable, Character, Decomposition, TableExport};
pub use classes::{canonical_pair, canonical_pairs, ClassData, G7Classes, GroupKind};
pub use formulas::*;
pub use helem::{HElem, COCYCLE, PHI_TWIST};
pub use monomat::{omega_exp, omega_parts, MonoMat};
pub use nelem::{complement_lifts, delta_matrix, verify_normalizer_relations, Lift, NElem, RelationCheck, RelationReport};
pub use restrict::*;
pub use sl2::{closure_words, Sl2, Sl2Classes, SL2_LABELS};
pub use tables::{g7_table, g7_table_printed_labels, sl2_table, v_label, v_sharp_label, G7Table, Sl2Table, SL2_IRREPS};

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::polylin::PolyError;

#[derive(Debug, Error)]
pub enum HeisError {
    #[error("group law mismatch at {left:?} * {right:?}")]
    LawMismatch { left: HElem, right: HElem },
    #[error("generated group has order {got}, expected {expected}")]
    GroupOrder { expected: usize, got: usize },
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("not a character: multiplicity of {label} is {value}")]
    NotACharacter { label: String, value: String },
    #[error("span is not stable under {0}")]
    Unstable(String),
    #[error("the central element does not act by a scalar")]
    NonScalarCenter,
    #[error("two different lifts over {0:?}")]
    InconsistentLift(Sl2),
    #[error("cannot read decomposition `{0}`")]
    BadDecomposition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type HeisResult<T> = Result<T, HeisError>;
