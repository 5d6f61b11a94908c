use std::cmp::Ordering;
use std::sync::Arc;

use crate::exactfield::Ring;
use crate::polylin::{Mono, Poly, PolyRing};

/// A monomial times a basis vector of a free module.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub comp: u32,
    pub mono: Mono,
}

impl Term {
    pub fn new(comp: usize, mono: Mono) -> Term {
        Term { comp: comp as u32, mono }
    }

    pub fn mul(&self, m: &Mono) -> Term {
        Term { comp: self.comp, mono: self.mono.mul(m) }
    }
}

/// Graded free module ⊕ S(−shift_c) over a polynomial ring.
///
/// Terms compare position-over-term: a lower component index is larger,
/// ties broken by the ring's monomial order. With one component this is the
/// ring order itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: Arc<PolyRing>,
    pub shifts: Vec<u32>,
}

impl FreeModule {
    pub fn new(ring: Arc<PolyRing>, shifts: Vec<u32>) -> FreeModule {
        FreeModule { ring, shifts }
    }

    /// The ring itself as a module of rank one.
    pub fn ring_module(ring: &Arc<PolyRing>) -> FreeModule {
        FreeModule { ring: ring.clone(), shifts: vec![0] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn degree(&self, t: &Term) -> u32 {
        t.mono.deg() + self.shifts[t.comp as usize]
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match b.comp.cmp(&a.comp) {
            Ordering::Equal => self.ring.cmp(&a.mono, &b.mono),
            o => o,
        }
    }

    /// All terms of degree d, largest first.
    pub fn terms_of_degree(&self, d: u32) -> Vec<Term> {
        let mut out = Vec::new();
        for (c, &s) in self.shifts.iter().enumerate() {
            if s <= d {
                out.extend(self.ring.monomials(d - s).into_iter().map(|m| Term::new(c, m)));
            }
        }
        out
    }

    pub fn dim_of_degree(&self, d: u32) -> usize {
        let n = self.ring.nvars() as u64;
        self.shifts.iter().filter(|&&s| s <= d).map(|&s| binomial(d - s + n as u32 - 1, n as u32 - 1) as usize).sum()
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Homogeneous or inhomogeneous element of a free module, terms strictly
/// decreasing in the module order.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<R: Ring> {
    terms: Vec<(Term, R)>,
}

impl<R: Ring> Vector<R> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(module: &FreeModule, terms: impl IntoIterator<Item = (Term, R)>) -> Self {
        let mut v: Vec<(Term, R)> = terms.into_iter().filter(|t| !t.1.is_zero()).collect();
        v.sort_by(|a, b| module.cmp(&b.0, &a.0));
        let mut out: Vec<(Term, R)> = Vec::with_capacity(v.len());
        for (t, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == t => last.1.add_assign(&c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Vector { terms: out }
    }

    /// Trusts the caller on ordering and nonzero coefficients.
    pub(crate) fn from_sorted(terms: Vec<(Term, R)>) -> Self {
        Vector { terms }
    }

    pub fn from_poly(p: &Poly<R>, comp: usize) -> Self {
        Vector { terms: p.terms().iter().map(|(m, c)| (Term::new(comp, *m), c.clone())).collect() }
    }

    /// Component-wise construction; `polys[c]` is the coefficient of basis vector c.
    pub fn from_polys(module: &FreeModule, polys: &[Poly<R>]) -> Self {
        let mut terms = Vec::new();
        for (c, p) in polys.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, x)| (Term::new(c, *m), x.clone())));
        }
        Vector::from_terms(module, terms)
    }

    pub fn terms(&self) -> &[(Term, R)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Term, R)> {
        self.terms.first()
    }

    pub fn lead_term(&self) -> Option<Term> {
        self.terms.first().map(|t| t.0)
    }

    /// Degree when all terms share it.
    pub fn homogeneous_degree(&self, module: &FreeModule) -> Option<u32> {
        let d = module.degree(&self.terms.first()?.0);
        self.terms.iter().all(|(t, _)| module.degree(t) == d).then_some(d)
    }

    pub fn component(&self, ring: &Arc<PolyRing>, ctx: &R::Ctx, c: usize) -> Poly<R> {
        Poly::from_terms(ring, ctx, self.terms.iter().filter(|(t, _)| t.comp as usize == c).map(|(t, x)| (t.mono, x.clone())))
    }

    pub fn to_polys(&self, module: &FreeModule, ctx: &R::Ctx) -> Vec<Poly<R>> {
        (0..module.rank()).map(|c| self.component(&module.ring, ctx, c)).collect()
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, x)| (*t, x.mul(c))).filter(|t| !t.1.is_zero()).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &R) -> Self {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(t, x)| (t.mul(m), x.mul(c))).filter(|t| !t.1.is_zero()).collect() }
    }

    pub fn mul_poly(&self, module: &FreeModule, p: &Poly<R>) -> Self {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.add(module, &self.mul_term(m, c));
        }
        acc
    }

    pub fn add(&self, module: &FreeModule, o: &Self) -> Self {
        self.merge(module, o, false)
    }

    pub fn sub(&self, module: &FreeModule, o: &Self) -> Self {
        self.merge(module, o, true)
    }

    fn merge(&self, module: &FreeModule, o: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let flip = |c: &R| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match module.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, flip(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(t, c)| (*t, flip(c))));
        Vector { terms: out }
    }

    /// Keeps the components in `range`, renumbered from zero.
    pub fn project(&self, range: std::ops::Range<usize>) -> Self {
        let start = range.start as u32;
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| range.contains(&(t.comp as usize)))
                .map(|(t, c)| (Term { comp: t.comp - start, mono: t.mono }, c.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;

    #[test]
    fn pot_order_and_merge() {
        let ring = PolyRing::grevlex(&["a", "b"]);
        let m = FreeModule::new(ring.clone(), vec![0, 1]);
        let a = Term::new(0, Mono::var(1));
        let b = Term::new(1, Mono::from_exps(&[2, 0]));
        assert_eq!(m.cmp(&a, &b), Ordering::Greater);
        let v = Vector::from_terms(&m, vec![(b, Rat::int(1)), (a, Rat::int(2)), (b, Rat::int(-1))]);
        assert_eq!(v.terms().len(), 1);
        assert_eq!(v.sub(&m, &v), Vector::zero());
        assert_eq!(m.dim_of_degree(2), 3 + 2);
    }
}
