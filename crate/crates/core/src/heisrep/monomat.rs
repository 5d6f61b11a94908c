use std::fmt;

use crate::exactfield::Cyc7;
use crate::polylin::Matrix;

/// Monomial 7×7 matrix with entries in μ₁₄ = {±ζ^a}: column j has its only
/// nonzero entry ω^{phase[j]} in row perm[j], where ω = −ζ^4 is a primitive
/// 14th root of unity with ω² = ζ and ω⁷ = −1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonoMat {
    perm: [u8; 7],
    phase: [u8; 7],
}

/// Exponent of ω for ±ζ^a.
pub fn omega_exp(negative: bool, zeta_exp: i64) -> u8 {
    let a = zeta_exp.rem_euclid(7) as u8;
    // ω^(2a) = ζ^a; ω^7 = -1
    (2 * a + if negative { 7 } else { 0 }) % 14
}

/// (sign, ζ-exponent) of ω^k.
pub fn omega_parts(k: u8) -> (bool, u8) {
    let k = k % 14;
    if k.is_multiple_of(2) {
        (false, k / 2)
    } else {
        (true, ((k + 7) % 14) / 2)
    }
}

impl MonoMat {
    pub fn identity() -> MonoMat {
        MonoMat { perm: [0, 1, 2, 3, 4, 5, 6], phase: [0; 7] }
    }

    /// Column j ↦ coef(j)·e_{target(j)}, with coef given as (negative, ζ-exponent).
    pub fn from_fn(f: impl Fn(usize) -> (usize, bool, i64)) -> MonoMat {
        let mut perm = [0u8; 7];
        let mut phase = [0u8; 7];
        for j in 0..7 {
            let (t, neg, a) = f(j);
            perm[j] = (t % 7) as u8;
            phase[j] = omega_exp(neg, a);
        }
        let m = MonoMat { perm, phase };
        debug_assert!(m.is_permutation());
        m
    }

    fn is_permutation(&self) -> bool {
        let mut seen = [false; 7];
        for &p in &self.perm {
            seen[p as usize] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// σ e_j = e_{j−1}
    pub fn sigma() -> MonoMat {
        MonoMat::from_fn(|j| ((j + 6) % 7, false, 0))
    }

    /// τ e_j = ζ^j e_j
    pub fn tau() -> MonoMat {
        MonoMat::from_fn(|j| (j, false, j as i64))
    }

    /// ι e_j = −e_{−j}
    pub fn iota() -> MonoMat {
        MonoMat::from_fn(|j| ((7 - j) % 7, true, 0))
    }

    /// Scalar ζ^a.
    pub fn central(a: i64) -> MonoMat {
        MonoMat::from_fn(|j| (j, false, a))
    }

    /// μ e_j = e_{4j}
    pub fn mu() -> MonoMat {
        MonoMat::from_fn(|j| ((4 * j) % 7, false, 0))
    }

    /// ν e_j = ζ^{j²} e_j
    pub fn nu() -> MonoMat {
        MonoMat::from_fn(|j| (j, false, (j * j) as i64))
    }

    pub fn mul(&self, o: &MonoMat) -> MonoMat {
        // (self·o) e_j = self(coef_o(j) e_{o(j)})
        let mut perm = [0u8; 7];
        let mut phase = [0u8; 7];
        for j in 0..7 {
            let k = o.perm[j] as usize;
            perm[j] = self.perm[k];
            phase[j] = (o.phase[j] + self.phase[k]) % 14;
        }
        MonoMat { perm, phase }
    }

    pub fn inv(&self) -> MonoMat {
        let mut perm = [0u8; 7];
        let mut phase = [0u8; 7];
        for j in 0..7 {
            let k = self.perm[j] as usize;
            perm[k] = j as u8;
            phase[k] = (14 - self.phase[j]) % 14;
        }
        MonoMat { perm, phase }
    }

    pub fn pow(&self, e: u32) -> MonoMat {
        let mut acc = MonoMat::identity();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn order(&self) -> u32 {
        let mut k = 1;
        let mut acc = *self;
        while acc != MonoMat::identity() {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }

    pub fn target(&self, j: usize) -> usize {
        self.perm[j] as usize
    }

    pub fn coef(&self, j: usize) -> Cyc7 {
        let (neg, a) = omega_parts(self.phase[j]);
        let z = Cyc7::zeta_pow(a as i64);
        if neg {
            -z
        } else {
            z
        }
    }

    pub fn trace(&self) -> Cyc7 {
        let mut acc = Cyc7::zero();
        for j in 0..7 {
            if self.perm[j] as usize == j {
                acc = acc + self.coef(j);
            }
        }
        acc
    }

    pub fn to_matrix(&self) -> Matrix<Cyc7> {
        let mut m = Matrix::zeros(7, 7, &());
        for j in 0..7 {
            m[(self.perm[j] as usize, j)] = self.coef(j);
        }
        m
    }

    /// Matrix of the contragredient action on coordinates, (g⁻¹)ᵀ.
    pub fn dual_matrix(&self) -> Matrix<Cyc7> {
        self.inv().to_matrix().transpose()
    }

    pub fn is_scalar(&self) -> bool {
        (0..7).all(|j| self.perm[j] as usize == j && self.phase[j] == self.phase[0])
    }
}

impl fmt::Debug for MonoMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoMat[")?;
        for j in 0..7 {
            let (neg, a) = omega_parts(self.phase[j]);
            write!(f, "{}{}z^{}->e{}", if j > 0 { ", " } else { "" }, if neg { "-" } else { "" }, a, self.perm[j])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Ring;

    #[test]
    fn omega_round_trip() {
        for neg in [false, true] {
            for a in 0..7 {
                let k = omega_exp(neg, a);
                assert_eq!(omega_parts(k), (neg, a as u8));
            }
        }
    }

    #[test]
    fn matches_dense_product() {
        let s = MonoMat::sigma();
        let t = MonoMat::tau();
        let i = MonoMat::iota();
        for (a, b) in [(s, t), (t, i), (i, s), (s.mul(&t), i.mul(&t))] {
            let dense = a.to_matrix().mul(&b.to_matrix()).unwrap();
            assert_eq!(a.mul(&b).to_matrix(), dense);
        }
        assert_eq!(s.mul(&s.inv()), MonoMat::identity());
    }

    #[test]
    fn sigma_tau_commutator_is_central() {
        let s = MonoMat::sigma();
        let t = MonoMat::tau();
        // στ = ζ·τσ
        assert_eq!(s.mul(&t), MonoMat::central(1).mul(&t.mul(&s)));
        assert!(MonoMat::iota().trace().add(&Cyc7::one()).is_zero());
    }
}
