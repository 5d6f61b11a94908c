use std::fmt;

use super::monomat::MonoMat;

/// Exponent k in Φ(m,n) = ζ^{k·mn} σ^m τ^n. Forced to 3 by requiring the
/// cocycle to be alternating in (m,n) on the basis model where στ = ζτσ.
pub const PHI_TWIST: i64 = 3;
/// Cocycle exponent: Φ(z)Φ(z′) = ζ^{c(mn′−m′n)} Φ(z+z′).
pub const COCYCLE: i64 = 4;

/// Element ζ^phase · Φ(m,n) · ι^iota of G₇ = H₇ ⋊ ⟨ι⟩.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HElem {
    pub phase: u8,
    pub m: u8,
    pub n: u8,
    pub iota: bool,
}

fn md(x: i64) -> u8 {
    x.rem_euclid(7) as u8
}

impl HElem {
    pub fn new(phase: i64, m: i64, n: i64, iota: bool) -> HElem {
        HElem { phase: md(phase), m: md(m), n: md(n), iota }
    }

    pub fn identity() -> HElem {
        HElem::new(0, 0, 0, false)
    }

    pub fn sigma() -> HElem {
        HElem::new(0, 1, 0, false)
    }

    pub fn tau() -> HElem {
        HElem::new(0, 0, 1, false)
    }

    pub fn iota_elem() -> HElem {
        HElem::new(0, 0, 0, true)
    }

    pub fn mul(&self, o: &HElem) -> HElem {
        // ι Φ(m,n) ι = Φ(−m,−n)
        let s = if self.iota { -1 } else { 1 };
        let (m, n) = (self.m as i64, self.n as i64);
        let (m2, n2) = (s * o.m as i64, s * o.n as i64);
        let phase = self.phase as i64 + o.phase as i64 + COCYCLE * (m * n2 - m2 * n);
        HElem::new(phase, m + m2, n + n2, self.iota ^ o.iota)
    }

    pub fn inv(&self) -> HElem {
        let x = if self.iota {
            HElem::new(-(self.phase as i64), self.m as i64, self.n as i64, true)
        } else {
            HElem::new(-(self.phase as i64), -(self.m as i64), -(self.n as i64), false)
        };
        debug_assert_eq!(self.mul(&x), HElem::identity());
        x
    }

    pub fn is_central(&self) -> bool {
        !self.iota && self.m == 0 && self.n == 0
    }

    /// The explicit matrix on the basis e_0..e_6.
    pub fn to_monomat(&self) -> MonoMat {
        let (m, n) = (self.m as i64, self.n as i64);
        let phi = MonoMat::central(PHI_TWIST * m * n)
            .mul(&MonoMat::sigma().pow(self.m as u32))
            .mul(&MonoMat::tau().pow(self.n as u32));
        let base = MonoMat::central(self.phase as i64).mul(&phi);
        if self.iota {
            base.mul(&MonoMat::iota())
        } else {
            base
        }
    }

    /// All 686 elements, H₇ first.
    pub fn all() -> Vec<HElem> {
        let mut v = Vec::with_capacity(686);
        for iota in [false, true] {
            for a in 0..7 {
                for m in 0..7 {
                    for n in 0..7 {
                        v.push(HElem::new(a, m, n, iota));
                    }
                }
            }
        }
        v
    }
}

impl fmt::Debug for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}){}", self.phase, self.m, self.n, if self.iota { "ι" } else { "" })
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_identity() {
        for g in HElem::all() {
            assert_eq!(g.mul(&g.inv()), HElem::identity());
            assert_eq!(g.inv().mul(&g), HElem::identity());
        }
    }

    #[test]
    fn generators_match_matrices() {
        assert_eq!(HElem::sigma().to_monomat(), MonoMat::sigma());
        assert_eq!(HElem::tau().to_monomat(), MonoMat::tau());
        assert_eq!(HElem::iota_elem().to_monomat(), MonoMat::iota());
    }
}
