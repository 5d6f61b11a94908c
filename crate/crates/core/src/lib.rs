//! Exact algebra behind Heisenberg-invariant (1,7) abelian surfaces in P⁶.
//!
//! Layers, bottom up: coefficient fields, polynomials and linear algebra,
//! the Heisenberg group and its normaliser, a Groebner/syzygy engine, and the
//! moduli constructions built on top of them. [`veritool`] assembles the
//! verification suites used by the command-line front end.

pub mod exactfield;
pub mod exec;
pub mod groebner;
pub mod heisrep;
pub mod kleinmoduli;
pub mod veritool;
pub mod polylin;
