use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{Field, FieldError, FieldResult, Rat, Ring};

/// A prime modulus p ∉ {2, 7}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u64) -> FieldResult<Modulus> {
        if p < 3 || p == 7 || p >= (1 << 31) || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(Modulus(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for Modulus {
    fn default() -> Modulus {
        Modulus(31)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of F_p; carries its modulus so that values are self-describing.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(m: Modulus, v: i64) -> Fp {
        Fp { v: v.rem_euclid(m.0 as i64) as u32, p: m.0 }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn modulus(self) -> Modulus {
        Modulus(self.p)
    }

    /// Centered representative in (−p/2, p/2].
    pub fn centered(self) -> i64 {
        let v = self.v as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    fn reduce_big(n: &BigInt, p: u32) -> u32 {
        let r = n % BigInt::from(p);
        let r = if r.is_negative() { r + BigInt::from(p) } else { r };
        r.to_u32().expect("residue fits")
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(mod {})", self.v, self.p)
    }
}

impl Ring for Fp {
    type Ctx = Modulus;

    fn zero(m: &Modulus) -> Fp {
        Fp { v: 0, p: m.0 }
    }
    fn one(m: &Modulus) -> Fp {
        Fp { v: 1, p: m.0 }
    }
    fn from_int(m: &Modulus, n: i64) -> Fp {
        Fp::new(*m, n)
    }
    fn ctx(&self) -> Modulus {
        Modulus(self.p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    #[inline]
    fn add(&self, o: &Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        let s = self.v as u64 + o.v as u64;
        Fp { v: (s % self.p as u64) as u32, p: self.p }
    }
    #[inline]
    fn sub(&self, o: &Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        let s = self.v as u64 + self.p as u64 - o.v as u64;
        Fp { v: (s % self.p as u64) as u32, p: self.p }
    }
    #[inline]
    fn mul(&self, o: &Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }
    fn neg(&self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl Field for Fp {
    fn inv(&self) -> FieldResult<Fp> {
        if self.v == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Ring::pow(self, self.p - 2))
    }

    fn from_rat(m: &Modulus, r: &Rat) -> FieldResult<Fp> {
        let n = Fp::reduce_big(r.numer(), m.0);
        let d = Fp::reduce_big(r.denom(), m.0);
        if d == 0 {
            return Err(FieldError::NoReduction(r.to_string(), m.0));
        }
        let num = Fp { v: n, p: m.0 };
        let den = Fp { v: d, p: m.0 };
        Ok(Ring::mul(&num, &den.inv()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_validation() {
        assert!(Modulus::new(31).is_ok());
        for bad in [0u64, 1, 2, 7, 9, 33] {
            assert!(Modulus::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rational_reduction() {
        let m = Modulus::new(31).unwrap();
        let h = Fp::from_rat(&m, &Rat::new(1, 2)).unwrap();
        assert_eq!(Ring::mul(&h, &Fp::new(m, 2)), Fp::one(&m));
        assert!(Fp::from_rat(&m, &Rat::new(1, 31)).is_err());
        assert_eq!(Fp::new(m, -1).centered(), -1);
    }
}
