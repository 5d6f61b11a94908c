use std::fmt;

use super::Ring;

/// a + b·ε with ε² = 0, over any coefficient ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualNum<R> {
    pub a: R,
    pub b: R,
}

impl<R: Ring> DualNum<R> {
    pub fn new(a: R, b: R) -> Self {
        DualNum { a, b }
    }

    pub fn real(a: R) -> Self {
        let b = R::zero(&a.ctx());
        DualNum { a, b }
    }

    pub fn eps(ctx: &R::Ctx) -> Self {
        DualNum { a: R::zero(ctx), b: R::one(ctx) }
    }
}

impl<R: Ring> fmt::Display for DualNum<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*eps", self.b)
        } else {
            write!(f, "{} + ({})*eps", self.a, self.b)
        }
    }
}

impl<R: Ring> fmt::Debug for DualNum<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Ring> Ring for DualNum<R> {
    type Ctx = R::Ctx;

    fn zero(c: &R::Ctx) -> Self {
        DualNum { a: R::zero(c), b: R::zero(c) }
    }
    fn one(c: &R::Ctx) -> Self {
        DualNum { a: R::one(c), b: R::zero(c) }
    }
    fn from_int(c: &R::Ctx, n: i64) -> Self {
        DualNum { a: R::from_int(c, n), b: R::zero(c) }
    }
    fn ctx(&self) -> R::Ctx {
        self.a.ctx()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        DualNum { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }
    fn sub(&self, o: &Self) -> Self {
        DualNum { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut b = self.a.mul(&o.b);
        b.add_mul_assign(&self.b, &o.a);
        DualNum { a: self.a.mul(&o.a), b }
    }
    fn neg(&self) -> Self {
        DualNum { a: self.a.neg(), b: self.b.neg() }
    }
    fn is_plain_rational(&self) -> bool {
        self.b.is_zero() && self.a.is_plain_rational()
    }
    fn named_constant(c: &R::Ctx, name: &str) -> Option<Self> {
        if name == "eps" {
            return Some(DualNum::eps(c));
        }
        R::named_constant(c, name).map(DualNum::real)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;

    #[test]
    fn eps_squared_vanishes() {
        let e = DualNum::<Rat>::eps(&());
        assert!(e.mul(&e).is_zero());
        let one = DualNum::<Rat>::one(&());
        assert!(one.add(&e).mul(&one.sub(&e)).is_one());
    }

    #[test]
    fn fourth_power_truncates() {
        let x = DualNum::new(Rat::int(3), Rat::int(5));
        let p = x.pow(4);
        assert_eq!(p.a, Rat::int(81));
        assert_eq!(p.b, Rat::int(4 * 27 * 5));
    }
}
