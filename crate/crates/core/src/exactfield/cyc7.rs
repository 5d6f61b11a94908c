use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldError, FieldResult, Rat, Ring};

/// Element of Q(ζ₇) in the power basis 1, ζ, …, ζ⁵ (ζ⁶ = −1 − ζ − … − ζ⁵).
///
/// Stored with a single common denominator; the representation is canonical
/// (den > 0, gcd of all numerators and den is 1), so derived equality is
/// field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc7 {
    num: [BigInt; 6],
    den: BigInt,
}

fn zeros6() -> [BigInt; 6] {
    std::array::from_fn(|_| BigInt::zero())
}

impl Cyc7 {
    pub fn zero() -> Cyc7 {
        Cyc7 { num: zeros6(), den: BigInt::one() }
    }

    pub fn one() -> Cyc7 {
        Cyc7::int(1)
    }

    pub fn int(n: i64) -> Cyc7 {
        let mut num = zeros6();
        num[0] = BigInt::from(n);
        Cyc7 { num, den: BigInt::one() }
    }

    pub fn from_rat(r: &Rat) -> Cyc7 {
        let mut num = zeros6();
        num[0] = r.numer().clone();
        Cyc7 { num, den: r.denom().clone() }
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Cyc7 {
        let mut seven = [0i64; 7];
        seven[k.rem_euclid(7) as usize] = 1;
        Cyc7::from_seven_int(&seven)
    }

    pub fn zeta() -> Cyc7 {
        Cyc7::zeta_pow(1)
    }

    /// Builds Σ c_k ζ^k from coefficients over all seven powers (redundant basis).
    pub fn from_seven_int(c: &[i64; 7]) -> Cyc7 {
        let num: [BigInt; 6] = std::array::from_fn(|i| BigInt::from(c[i] - c[6]));
        Cyc7::normalized(num, BigInt::one())
    }

    pub fn from_rats(c: &[Rat; 6]) -> Cyc7 {
        let mut den = BigInt::one();
        for r in c {
            den = den.lcm(r.denom());
        }
        let num: [BigInt; 6] = std::array::from_fn(|i| c[i].numer() * (&den / c[i].denom()));
        Cyc7::normalized(num, den)
    }

    fn normalized(mut num: [BigInt; 6], mut den: BigInt) -> Cyc7 {
        if den.is_negative() {
            den = -den;
            for n in num.iter_mut() {
                *n = -&*n;
            }
        }
        let mut g = den.clone();
        for n in num.iter() {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if num.iter().all(|n| n.is_zero()) {
            return Cyc7::zero();
        }
        if !g.is_one() {
            for n in num.iter_mut() {
                *n = &*n / &g;
            }
            den /= &g;
        }
        Cyc7 { num, den }
    }

    /// Coefficient of ζ^i in the power basis, i in 0..6.
    pub fn coeff(&self, i: usize) -> Rat {
        Rat::from_big(self.num[i].clone(), self.den.clone()).expect("nonzero denominator")
    }

    pub fn coeffs(&self) -> [Rat; 6] {
        std::array::from_fn(|i| self.coeff(i))
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|n| n.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    /// Integer coefficients over all seven powers when the element is integral,
    /// normalised so that the ζ⁶ coefficient is zero.
    pub fn to_int_coeffs(&self) -> Option<[BigInt; 6]> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    fn mul_impl(&self, o: &Cyc7) -> Cyc7 {
        if self.is_zero() || o.is_zero() {
            return Cyc7::zero();
        }
        let mut acc: [BigInt; 11] = std::array::from_fn(|_| BigInt::zero());
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += a * b;
            }
        }
        let mut seven: [BigInt; 7] = std::array::from_fn(|_| BigInt::zero());
        for (k, v) in acc.into_iter().enumerate() {
            seven[k % 7] += v;
        }
        let top = seven[6].clone();
        let num: [BigInt; 6] = std::array::from_fn(|i| &seven[i] - &top);
        Cyc7::normalized(num, &self.den * &o.den)
    }

    fn add_impl(&self, o: &Cyc7, sign: bool) -> Cyc7 {
        let num: [BigInt; 6] = if self.den == o.den {
            std::array::from_fn(|i| if sign { &self.num[i] + &o.num[i] } else { &self.num[i] - &o.num[i] })
        } else {
            std::array::from_fn(|i| {
                let a = &self.num[i] * &o.den;
                let b = &o.num[i] * &self.den;
                if sign {
                    a + b
                } else {
                    a - b
                }
            })
        };
        let den = if self.den == o.den { self.den.clone() } else { &self.den * &o.den };
        Cyc7::normalized(num, den)
    }

    /// θ^power with θ(ζ) = ζ³. θ has order 6; θ³ is complex conjugation.
    pub fn galois_theta(&self, power: i64) -> Cyc7 {
        let mut mult = 1i64;
        for _ in 0..power.rem_euclid(6) {
            mult = (mult * 3) % 7;
        }
        self.galois(mult)
    }

    /// The automorphism ζ ↦ ζ^k, k a unit mod 7.
    pub fn galois(&self, k: i64) -> Cyc7 {
        let k = k.rem_euclid(7);
        assert!(k != 0, "ζ ↦ 1 is not an automorphism");
        let mut seven: [BigInt; 7] = std::array::from_fn(|_| BigInt::zero());
        for (i, c) in self.num.iter().enumerate() {
            seven[(i as i64 * k % 7) as usize] += c;
        }
        let top = seven[6].clone();
        let num: [BigInt; 6] = std::array::from_fn(|i| &seven[i] - &top);
        Cyc7::normalized(num, self.den.clone())
    }

    pub fn conj(&self) -> Cyc7 {
        self.galois(6)
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rat {
        let mut p = self.clone();
        for k in 2..7 {
            p = p.mul_impl(&self.galois(k));
        }
        p.as_rational().expect("norm is rational")
    }

    pub fn inverse(&self) -> FieldResult<Cyc7> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut rest = Cyc7::one();
        for k in 2..7 {
            rest = rest.mul_impl(&self.galois(k));
        }
        let n = self.mul_impl(&rest).as_rational().expect("norm is rational");
        Ok(rest.scale(&n.recip()?))
    }

    pub fn scale(&self, r: &Rat) -> Cyc7 {
        let num: [BigInt; 6] = std::array::from_fn(|i| &self.num[i] * r.numer());
        Cyc7::normalized(num, &self.den * r.denom())
    }

    pub fn pow_i(&self, e: i64) -> FieldResult<Cyc7> {
        if e >= 0 {
            Ok(Ring::pow(self, e as u32))
        } else {
            Ok(Ring::pow(&self.inverse()?, (-e) as u32))
        }
    }
}

/// Σ_{k=0}^{6} ζ^{k²} = 1 + 2(ζ + ζ² + ζ⁴), a square root of −7.
pub fn gauss_sum() -> Cyc7 {
    let mut c = [0i64; 7];
    for k in 0..7 {
        c[(k * k) % 7] += 1;
    }
    Cyc7::from_seven_int(&c)
}

impl Default for Cyc7 {
    fn default() -> Cyc7 {
        Cyc7::zero()
    }
}

impl fmt::Display for Cyc7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in 0..6 {
            if self.num[i].is_zero() {
                continue;
            }
            let c = self.coeff(i);
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != Rat::one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Cyc7 {
    type Err = FieldError;
    fn from_str(s: &str) -> FieldResult<Cyc7> {
        super::parse_expr::<Cyc7>(s)
    }
}

impl Add for &Cyc7 {
    type Output = Cyc7;
    fn add(self, o: &Cyc7) -> Cyc7 {
        self.add_impl(o, true)
    }
}

impl Sub for &Cyc7 {
    type Output = Cyc7;
    fn sub(self, o: &Cyc7) -> Cyc7 {
        self.add_impl(o, false)
    }
}

impl Mul for &Cyc7 {
    type Output = Cyc7;
    fn mul(self, o: &Cyc7) -> Cyc7 {
        self.mul_impl(o)
    }
}

impl Add for Cyc7 {
    type Output = Cyc7;
    fn add(self, o: Cyc7) -> Cyc7 {
        self.add_impl(&o, true)
    }
}

impl Sub for Cyc7 {
    type Output = Cyc7;
    fn sub(self, o: Cyc7) -> Cyc7 {
        self.add_impl(&o, false)
    }
}

impl Mul for Cyc7 {
    type Output = Cyc7;
    fn mul(self, o: Cyc7) -> Cyc7 {
        self.mul_impl(&o)
    }
}

impl Neg for Cyc7 {
    type Output = Cyc7;
    fn neg(self) -> Cyc7 {
        Cyc7 { num: self.num.map(|n| -n), den: self.den }
    }
}

impl Neg for &Cyc7 {
    type Output = Cyc7;
    fn neg(self) -> Cyc7 {
        Cyc7 { num: std::array::from_fn(|i| -&self.num[i]), den: self.den.clone() }
    }
}

impl Ring for Cyc7 {
    type Ctx = ();
    fn zero(_: &()) -> Cyc7 {
        Cyc7::zero()
    }
    fn one(_: &()) -> Cyc7 {
        Cyc7::one()
    }
    fn from_int(_: &(), n: i64) -> Cyc7 {
        Cyc7::int(n)
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Cyc7::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|n| n.is_zero())
    }
    fn add(&self, o: &Cyc7) -> Cyc7 {
        self.add_impl(o, true)
    }
    fn sub(&self, o: &Cyc7) -> Cyc7 {
        self.add_impl(o, false)
    }
    fn mul(&self, o: &Cyc7) -> Cyc7 {
        self.mul_impl(o)
    }
    fn neg(&self) -> Cyc7 {
        -self
    }
    fn is_plain_rational(&self) -> bool {
        self.is_rational()
    }
    fn named_constant(_: &(), name: &str) -> Option<Cyc7> {
        (name == "z").then(Cyc7::zeta)
    }
}

impl Field for Cyc7 {
    fn inv(&self) -> FieldResult<Cyc7> {
        self.inverse()
    }
    fn from_rat(_: &(), r: &Rat) -> FieldResult<Cyc7> {
        Ok(Cyc7::from_rat(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> Cyc7 {
        Cyc7::zeta_pow(k)
    }

    #[test]
    fn zeta_relations() {
        assert_eq!(&z(1) * &z(6), Cyc7::one());
        let mut s = Cyc7::zero();
        for k in 0..7 {
            s = &s + &z(k);
        }
        assert!(s.is_zero());
        assert_eq!(Ring::pow(&z(1), 7), Cyc7::one());
    }

    #[test]
    fn gauss_sum_squares_to_minus_seven() {
        let g = gauss_sum();
        assert_eq!(&g * &g, Cyc7::int(-7));
    }

    #[test]
    fn theta_order_six_and_conjugation() {
        let x = &z(1) + &Cyc7::int(3);
        assert_eq!(z(1).galois_theta(1), z(3));
        assert_eq!(z(1).galois_theta(3), z(-1));
        assert_eq!(x.galois_theta(6), x);
        assert_ne!(x.galois_theta(2), x);
    }

    #[test]
    fn inverse_via_norm() {
        let x = &(&z(1) + &z(3)).scale(&Rat::new(2, 3)) - &Cyc7::int(5);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Cyc7::one());
        assert!(Cyc7::zero().inverse().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Cyc7::zero().to_string(), "0");
        assert_eq!(z(6).to_string(), "-1 - z - z^2 - z^3 - z^4 - z^5");
        assert_eq!(Cyc7::int(3).scale(&Rat::new(1, 2)).to_string(), "3/2");
    }
}
