//! The constructions around the Klein quartic: wedge representatives and
//! their compositions, the Δ-operators and the apolar ideal J, the three
//! models of V₂₂ (net of quadrics, alternating net η_klein, Pfaffians), and
//! the rational family Ψ(t), α(t), D of surface ideals in P⁶.

mod apolar;
mod family;
mod sample;
mod surface;
mod wedge;

pub use apolar::{
    epsilon_identity, eta_klein, j_ideal, klein_invariance, klein_quartic, l_basis, net_discriminant, net_matrices, pfaffian_apolarity, w_basis,
    w_prime_basis, EpsilonReport, InvarianceReport, JIdeal, NetDiscriminant, PfaffianReport, L_ORDER, SPEC_L_ORDER,
};
pub use family::{
    alpha_t, alpha_t_matrix, equational_point, grass_membership, minor_span_matches_psi, psi, psi_matrix, AlphaFamily, GrassPoint, Membership,
};
pub use sample::{random_alpha, random_rat, sample_parameters, Sampler};
pub use surface::{
    d_vector, d_vector_printed_variant, expected_surface_betti, surface_betti, surface_checks, surface_hilbert, surface_ideal, tau_weights, Coeff, SurfaceBetti, SurfaceChecks, SurfaceExport,
    SurfaceIdeal,
};
pub use wedge::{
    alpha_compose, b_matrix_report, compose_u, delta_criterion, delta_ops, minors_and_independence, printed_b, probe_point, wedge_reps, AlphaMatrix, BReport, Compositions,
    MinorReport, Wedge3, WedgeRep, WedgeReps,
};

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::groebner::GroebnerError;
use crate::heisrep::HeisError;
use crate::polylin::PolyError;

#[derive(Debug, Error)]
pub enum KleinError {
    #[error("the zero vector is not a point of P³")]
    ZeroParameter,
    #[error("degenerate parameter {0}: t₁ = t₂ = t₃ = 0")]
    DegenerateParameter(String),
    #[error("unknown coefficient field {0:?}; expected q or fp:<prime>")]
    BadCoeff(String),
    #[error("the 3×7 matrix has rank {0}, not 3")]
    RankDeficient(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Heis(#[from] HeisError),
}

pub type KleinResult<T> = Result<T, KleinError>;
