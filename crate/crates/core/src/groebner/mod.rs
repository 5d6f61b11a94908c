//! Groebner bases, Hilbert series, syzygies and graded free resolutions for
//! homogeneous ideals and submodules of graded free modules.

mod burch;
mod engine;
mod hilbert;
mod ideal;
mod koszul;
mod linear;
mod module;
mod resolution;
mod syzygy;

pub use burch::{hilbert_burch, intersect, same_span};
pub use engine::{module_gb, GbConfig, GbStats, ModuleGb};
pub use hilbert::{hilbert_numerator, HilbertData};
pub use ideal::{buchberger, hilbert, GradedIdeal, GroebnerBasis};
pub use koszul::{koszul_betti, CyclicGrading};
pub use linear::{dense_rank, rank_mod_p};
pub use module::{FreeModule, Term, Vector};
pub use resolution::{free_resolution, nonminimal_resolution, BettiEntry, BettiTable, Resolution};
pub use syzygy::{ideal_syzygies, minimal_generators, syzygies, SyzygyModule};

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::polylin::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {0} is not homogeneous for the cyclic grading")]
    NotWeightHomogeneous(usize),
    #[error("element {0} is zero")]
    ZeroGenerator(usize),
    #[error("element {index} has a component outside a module of rank {rank}")]
    RankMismatch { rank: usize, index: usize },
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("degree {degree} lies beyond the degree budget {budget}")]
    BeyondBudget { degree: u32, budget: u32 },
    #[error("not Hilbert-Burch: {0}")]
    NotHilbertBurch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type GroebnerResult<T> = Result<T, GroebnerError>;
