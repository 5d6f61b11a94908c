//! Exact coefficient domains: Q, Q(ζ₇), Q(ζ₇)(√2), F_p and dual numbers.
//!
//! Everything generic in the crate is written against [`Ring`] / [`Field`].
//! The trait methods take references so that big rationals are not cloned
//! on every operation.

mod cyc7;
mod dual;
mod fp;
mod parse;
mod quad;
mod rat;

use std::fmt;
use std::hash::Hash;

pub use cyc7::{gauss_sum, Cyc7};
pub use dual::DualNum;
pub use fp::{Fp, Modulus};
pub use parse::{parse_expr, parse_expr_in, ExprTarget};
pub use quad::FieldElem;
pub use rat::Rat;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("modulus {0} is not an admissible prime (must be prime, not 2 or 7, below 2^31)")]
    BadModulus(u64),
    #[error("{0} has no image in F_{1}")]
    NoReduction(String, u32),
}

pub type FieldResult<T> = Result<T, FieldError>;

/// Commutative ring with a runtime context (the modulus for F_p, `()` otherwise).
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    fn ctx(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn add_assign(&mut self, o: &Self) {
        *self = Ring::add(self, o);
    }

    fn sub_assign(&mut self, o: &Self) {
        *self = Ring::sub(self, o);
    }

    /// self += a * b
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = Ring::mul(a, b);
        self.add_assign(&p);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Ring::mul(&base, &base);
            }
        }
        acc
    }

    /// True when the element is an integer multiple of one with no other
    /// structure; used to decide whether a coefficient needs parentheses.
    fn is_plain_rational(&self) -> bool {
        true
    }

    /// Named constants accepted by the text grammar (`z`, `r2`).
    fn named_constant(_ctx: &Self::Ctx, _name: &str) -> Option<Self> {
        None
    }
}

pub trait Field: Ring {
    fn inv(&self) -> FieldResult<Self>;

    fn div(&self, o: &Self) -> FieldResult<Self> {
        Ok(Ring::mul(self, &o.inv()?))
    }

    /// Image of a rational number; fails in F_p when p divides the denominator.
    fn from_rat(ctx: &Self::Ctx, r: &Rat) -> FieldResult<Self>;
}
