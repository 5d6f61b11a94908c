use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::wedge::AlphaMatrix;
use crate::exactfield::Rat;

/// Largest numerator magnitude and denominator of sampled rationals.
const HEIGHT: i64 = 13;

/// Seeded source of small rationals. Same seed, same stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rat(&mut self) -> Rat {
        random_rat(&mut self.rng)
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if r != Rat::zero() {
                return r;
            }
        }
    }

    /// A parameter point with t1·t2·t3 ≠ 0.
    pub fn parameter(&mut self) -> Vec<Rat> {
        let t0 = self.rat();
        vec![t0, self.nonzero_rat(), self.nonzero_rat(), self.nonzero_rat()]
    }

    /// A 3×2 matrix whose 24 coefficients are independent samples.
    pub fn alpha(&mut self) -> AlphaMatrix<Rat> {
        let coeffs = (0..3).map(|_| (0..2).map(|_| std::array::from_fn(|_| self.rat())).collect()).collect();
        AlphaMatrix { coeffs }
    }

    /// A 3×7 rational matrix.
    pub fn matrix_rows(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rat>> {
        (0..rows).map(|_| (0..cols).map(|_| self.rat()).collect()).collect()
    }
}

/// n/d with |n| ≤ 13 and 1 ≤ d ≤ 13.
pub fn random_rat<G: Rng>(rng: &mut G) -> Rat {
    Rat::new(rng.gen_range(-HEIGHT..=HEIGHT), rng.gen_range(1..=HEIGHT))
}

/// `count` admissible parameter points from `seed`.
pub fn sample_parameters(seed: u64, count: usize) -> Vec<Vec<Rat>> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.parameter()).collect()
}

/// `count` random 3×2 matrices from `seed`.
pub fn random_alpha(seed: u64, count: usize) -> Vec<AlphaMatrix<Rat>> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.alpha()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Ring;

    #[test]
    fn deterministic_and_bounded() {
        let a = sample_parameters(42, 20);
        assert_eq!(a, sample_parameters(42, 20));
        assert_ne!(a, sample_parameters(43, 20));
        for t in &a {
            assert!(t[1..].iter().all(|c| !c.is_zero()));
            for c in t {
                assert!(c.numer().magnitude() <= &13u32.into() && c.denom() <= &13.into());
            }
        }
        assert_eq!(random_alpha(7, 3).len(), 3);
    }
}
