use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Cyc7, Field, FieldError, FieldResult, Rat, Ring};

/// a + b·√2 with a, b ∈ Q(ζ₇).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    pub a: Cyc7,
    pub b: Cyc7,
}

impl FieldElem {
    pub fn new(a: Cyc7, b: Cyc7) -> FieldElem {
        FieldElem { a, b }
    }

    pub fn int(n: i64) -> FieldElem {
        FieldElem { a: Cyc7::int(n), b: Cyc7::zero() }
    }

    pub fn zero() -> FieldElem {
        FieldElem::int(0)
    }

    pub fn one() -> FieldElem {
        FieldElem::int(1)
    }

    pub fn sqrt2() -> FieldElem {
        FieldElem { a: Cyc7::zero(), b: Cyc7::one() }
    }

    pub fn from_rat(r: &Rat) -> FieldElem {
        FieldElem { a: Cyc7::from_rat(r), b: Cyc7::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_cyc(&self) -> Option<&Cyc7> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.as_cyc().and_then(|c| c.as_rational())
    }

    /// θ acts on the Q(ζ₇) part only; √2 is fixed.
    pub fn galois_theta(&self, power: i64) -> FieldElem {
        FieldElem { a: self.a.galois_theta(power), b: self.b.galois_theta(power) }
    }

    /// Complex conjugation (√2 is real).
    pub fn conj(&self) -> FieldElem {
        FieldElem { a: self.a.conj(), b: self.b.conj() }
    }

    pub fn scale(&self, r: &Rat) -> FieldElem {
        FieldElem { a: self.a.scale(r), b: self.b.scale(r) }
    }

    pub fn inverse(&self) -> FieldResult<FieldElem> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // (a + b√2)(a − b√2) = a² − 2b², nonzero since √2 ∉ Q(ζ₇)
        let n = &(&self.a * &self.a) - &(&self.b * &self.b).scale(&Rat::int(2));
        let ni = n.inverse()?;
        Ok(FieldElem { a: &self.a * &ni, b: -&(&self.b * &ni) })
    }
}

impl From<Cyc7> for FieldElem {
    fn from(a: Cyc7) -> FieldElem {
        FieldElem { a, b: Cyc7::zero() }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{} + ", self.a)?;
        }
        write!(f, "({})*r2", self.b)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for FieldElem {
    type Err = FieldError;
    fn from_str(s: &str) -> FieldResult<FieldElem> {
        super::parse_expr::<FieldElem>(s)
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        if self.b.is_zero() && o.b.is_zero() {
            return FieldElem { a: &self.a * &o.a, b: Cyc7::zero() };
        }
        let bb = (&self.b * &o.b).scale(&Rat::int(2));
        FieldElem { a: &(&self.a * &o.a) + &bb, b: &(&self.a * &o.b) + &(&self.b * &o.a) }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { a: -&self.a, b: -&self.b }
    }
}

impl Ring for FieldElem {
    type Ctx = ();
    fn zero(_: &()) -> FieldElem {
        FieldElem::zero()
    }
    fn one(_: &()) -> FieldElem {
        FieldElem::one()
    }
    fn from_int(_: &(), n: i64) -> FieldElem {
        FieldElem::int(n)
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.b.is_zero() && Ring::is_one(&self.a)
    }
    fn add(&self, o: &FieldElem) -> FieldElem {
        self + o
    }
    fn sub(&self, o: &FieldElem) -> FieldElem {
        self - o
    }
    fn mul(&self, o: &FieldElem) -> FieldElem {
        self * o
    }
    fn neg(&self) -> FieldElem {
        -self
    }
    fn is_plain_rational(&self) -> bool {
        self.b.is_zero() && self.a.is_rational()
    }
    fn named_constant(_: &(), name: &str) -> Option<FieldElem> {
        match name {
            "z" => Some(FieldElem::from(Cyc7::zeta())),
            "r2" => Some(FieldElem::sqrt2()),
            _ => None,
        }
    }
}

impl Field for FieldElem {
    fn inv(&self) -> FieldResult<FieldElem> {
        self.inverse()
    }
    fn from_rat(_: &(), r: &Rat) -> FieldResult<FieldElem> {
        Ok(FieldElem::from_rat(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let r = FieldElem::sqrt2();
        assert_eq!(&r * &r, FieldElem::int(2));
    }

    #[test]
    fn inverse_mixed() {
        let x = FieldElem::new(Cyc7::zeta_pow(2), Cyc7::int(3));
        assert_eq!(&x * &x.inverse().unwrap(), FieldElem::one());
    }

    #[test]
    fn display_and_parse() {
        let x = FieldElem::new(Cyc7::int(1), Cyc7::zeta_pow(1));
        assert_eq!(x.to_string(), "1 + (z)*r2");
        let y: FieldElem = "1 + (z)*r2".parse().unwrap();
        assert_eq!(x, y);
        let w: FieldElem = "-(r2)".parse().unwrap();
        assert_eq!(w.to_string(), "(-1)*r2");
    }
}
