use serde::Serialize;

use super::module::binomial;
use crate::exactfield::Rat;
use crate::polylin::{Mono, MAX_VARS};

/// Hilbert data of S/I with S in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// Coefficients of N(s) with H(s) = N(s)/(1−s)^nvars.
    pub numerator: Vec<i64>,
    /// Q(s) with N(s) = (1−s)^(nvars − dimension)·Q(s), Q(1) ≠ 0.
    pub reduced: Vec<i64>,
    /// Krull dimension of S/I.
    pub dimension: usize,
    pub degree: i64,
    /// Hilbert function on 0..=range.
    pub values: Vec<i64>,
    /// Set when the Groebner basis behind this data was truncated.
    pub exact_through: Option<u32>,
}

impl HilbertData {
    pub fn from_numerator(nvars: usize, numerator: Vec<i64>, range: u32, exact_through: Option<u32>) -> Self {
        let mut reduced = numerator.clone();
        let mut k = 0;
        while k < nvars && !reduced.iter().all(|&c| c == 0) && reduced.iter().sum::<i64>() == 0 {
            reduced = divide_one_minus_s(&reduced);
            k += 1;
        }
        let dimension = if reduced.iter().all(|&c| c == 0) { 0 } else { nvars - k };
        let degree = reduced.iter().sum();
        let mut h = HilbertData { nvars, numerator, reduced, dimension, degree, values: Vec::new(), exact_through };
        h.values = (0..=range).map(|d| h.value(d)).collect();
        h
    }

    /// HF(d) from the series.
    pub fn value(&self, d: u32) -> i64 {
        let n = self.nvars as u32;
        if n == 0 {
            return self.numerator.get(d as usize).copied().unwrap_or(0);
        }
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| *k as u32 <= d)
            .map(|(k, &c)| c * binomial(d - k as u32 + n - 1, n - 1) as i64)
            .sum()
    }

    /// Dimension of the projective scheme (−1 when empty).
    pub fn projective_dimension(&self) -> i64 {
        self.dimension as i64 - 1
    }

    /// Hilbert polynomial evaluated at d.
    pub fn polynomial_at(&self, d: i64) -> i64 {
        if self.dimension == 0 {
            return 0;
        }
        let r = self.dimension as i64 - 1;
        self.reduced.iter().enumerate().map(|(k, &q)| q * binom_poly(d - k as i64 + r, r)).sum()
    }

    /// Coefficients of the Hilbert polynomial in d, constant term first.
    pub fn polynomial_coefficients(&self) -> Vec<Rat> {
        let m = self.dimension;
        if m == 0 {
            return Vec::new();
        }
        // Newton interpolation at d = 0..m−1
        let ys: Vec<Rat> = (0..m as i64).map(|d| Rat::int(self.polynomial_at(d))).collect();
        let mut coeffs = vec![Rat::int(0); m];
        for (i, yi) in ys.iter().enumerate() {
            // Lagrange basis polynomial for node i
            let mut basis = vec![Rat::int(1)];
            let mut denom = Rat::int(1);
            for j in 0..m {
                if j == i {
                    continue;
                }
                let mut next = vec![Rat::int(0); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] = &next[k + 1] + b;
                    next[k] = &next[k] - &(b * &Rat::int(j as i64));
                }
                basis = next;
                denom = &denom * &Rat::int(i as i64 - j as i64);
            }
            let f = yi / &denom;
            for (k, b) in basis.iter().enumerate() {
                coeffs[k] = &coeffs[k] + &(b * &f);
            }
        }
        coeffs
    }

    /// First degree from which HF agrees with the Hilbert polynomial.
    pub fn regularity_index(&self) -> i64 {
        (self.reduced.len() as i64 - 1) - self.dimension as i64 + 1
    }
}

/// C(x, r) as a polynomial in x, valid for negative x.
fn binom_poly(x: i64, r: i64) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..r {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

fn divide_one_minus_s(p: &[i64]) -> Vec<i64> {
    // p = (1 − s)·q  ⇒  q_k = Σ_{i≤k} p_i
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    q
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn minimize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_by_key(|m| m.deg());
    let mut out: Vec<Mono> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of S/(gens) by pivot recursion:
/// N(I) = N(I + (p)) + s^deg(p)·N(I : p) for a variable power p.
pub fn hilbert_numerator(gens: &[Mono], nvars: usize) -> Vec<i64> {
    assert!(nvars <= MAX_VARS);
    numerator_rec(minimize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Mono>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let simple = |m: &Mono| m.support().count() == 1;
    if gens.iter().all(simple) {
        return gens.iter().fold(vec![1], |acc, m| {
            let mut f = vec![0; m.deg() as usize + 1];
            f[0] = 1;
            f[m.deg() as usize] = -1;
            poly_mul(&acc, &f)
        });
    }
    let mut count = [0usize; MAX_VARS];
    for m in gens.iter().filter(|m| !simple(m)) {
        for v in m.support() {
            count[v] += 1;
        }
    }
    let v = (0..MAX_VARS).max_by_key(|&i| (count[i], std::cmp::Reverse(i))).expect("nonempty");
    let e = gens.iter().filter(|m| !simple(m)).map(|m| m.exp(v)).filter(|&x| x > 0).min().expect("variable occurs");
    let pivot = Mono::one().with_exp(v, e);
    let mut plus: Vec<Mono> = gens.iter().filter(|m| !pivot.divides(m)).copied().collect();
    plus.push(pivot);
    let colon: Vec<Mono> = gens.iter().map(|m| m.with_exp(v, m.exp(v).saturating_sub(e))).collect();
    let a = numerator_rec(minimize(plus));
    let mut b = vec![0; e as usize];
    b.extend(numerator_rec(minimize(colon)));
    poly_add(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylin::monomials_of_degree;

    fn brute(gens: &[Mono], n: usize, d: u32) -> i64 {
        monomials_of_degree(n, d).iter().filter(|m| !gens.iter().any(|g| g.divides(m))).count() as i64
    }

    #[test]
    fn coordinate_cross() {
        let g = vec![Mono::from_exps(&[1, 1, 0]), Mono::from_exps(&[0, 1, 1]), Mono::from_exps(&[1, 0, 1])];
        let h = HilbertData::from_numerator(3, hilbert_numerator(&g, 3), 6, None);
        assert_eq!(h.values, vec![1, 3, 3, 3, 3, 3, 3]);
        assert_eq!(h.dimension, 1);
        assert_eq!(h.degree, 3);
        assert_eq!(h.polynomial_coefficients(), vec![Rat::int(3)]);
    }

    #[test]
    fn matches_monomial_count() {
        let g = vec![
            Mono::from_exps(&[2, 1, 0, 0]),
            Mono::from_exps(&[0, 3, 1, 0]),
            Mono::from_exps(&[1, 0, 0, 2]),
            Mono::from_exps(&[0, 0, 4, 0]),
            Mono::from_exps(&[1, 1, 1, 1]),
        ];
        let h = HilbertData::from_numerator(4, hilbert_numerator(&g, 4), 9, None);
        for d in 0..=9 {
            assert_eq!(h.values[d as usize], brute(&g, 4, d), "degree {d}");
        }
        for d in h.regularity_index().max(0)..12 {
            assert_eq!(h.polynomial_at(d), h.value(d as u32));
        }
    }

    #[test]
    fn whole_ring_and_zero_ideal() {
        assert_eq!(hilbert_numerator(&[Mono::one()], 3), vec![0]);
        let h = HilbertData::from_numerator(3, hilbert_numerator(&[], 3), 3, None);
        assert_eq!(h.values, vec![1, 3, 6, 10]);
        assert_eq!(h.dimension, 3);
    }
}
