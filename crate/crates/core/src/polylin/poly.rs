use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::matrix::Matrix;
use super::ring::{Mono, PolyRing};
use super::{PolyError, PolyResult};
use crate::exactfield::{Field, FieldResult, Ring};

/// Ring context of a polynomial: the variable set plus the coefficient context.
pub struct PolyCtx<R: Ring> {
    pub ring: Arc<PolyRing>,
    pub coeff: R::Ctx,
}

impl<R: Ring> Clone for PolyCtx<R> {
    fn clone(&self) -> Self {
        PolyCtx { ring: self.ring.clone(), coeff: self.coeff.clone() }
    }
}

impl<R: Ring> PartialEq for PolyCtx<R> {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.coeff == o.coeff
    }
}

impl<R: Ring> Eq for PolyCtx<R> {}

impl<R: Ring> std::hash::Hash for PolyCtx<R> {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.ring.hash(h);
        self.coeff.hash(h);
    }
}

impl<R: Ring> fmt::Debug for PolyCtx<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {:?}", self.ring, self.coeff)
    }
}

impl<R: Ring> PolyCtx<R> {
    pub fn new(ring: Arc<PolyRing>, coeff: R::Ctx) -> Self {
        PolyCtx { ring, coeff }
    }
}

/// Sparse polynomial. Terms are kept strictly decreasing in the ring's term
/// order with no zero coefficients, so equality is structural.
#[derive(Clone)]
pub struct Poly<R: Ring> {
    ring: Arc<PolyRing>,
    ctx: R::Ctx,
    terms: Vec<(Mono, R)>,
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.terms == o.terms
    }
}

impl<R: Ring> Poly<R> {
    pub fn zero(ring: &Arc<PolyRing>, ctx: &R::Ctx) -> Self {
        Poly { ring: ring.clone(), ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: R) -> Self {
        Poly::monomial(ring, Mono::one(), c)
    }

    pub fn one(ring: &Arc<PolyRing>, ctx: &R::Ctx) -> Self {
        Poly::constant(ring, R::one(ctx))
    }

    pub fn var(ring: &Arc<PolyRing>, ctx: &R::Ctx, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Poly::monomial(ring, Mono::var(i), R::one(ctx))
    }

    pub fn var_named(ring: &Arc<PolyRing>, ctx: &R::Ctx, name: &str) -> PolyResult<Self> {
        let i = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(ring, ctx, i))
    }

    /// All variables of the ring, in index order.
    pub fn vars(ring: &Arc<PolyRing>, ctx: &R::Ctx) -> Vec<Self> {
        (0..ring.nvars()).map(|i| Poly::var(ring, ctx, i)).collect()
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Mono, c: R) -> Self {
        let ctx = c.ctx();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { ring: ring.clone(), ctx, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining repeats.
    pub fn from_terms(ring: &Arc<PolyRing>, ctx: &R::Ctx, terms: impl IntoIterator<Item = (Mono, R)>) -> Self {
        let mut acc: HashMap<Mono, R> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => v.add_assign(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(ring, ctx, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, ctx: &R::Ctx, acc: HashMap<Mono, R>) -> Self {
        let mut terms: Vec<(Mono, R)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), ctx: ctx.clone(), terms }
    }

    /// Trusts the caller that `terms` is sorted and free of zeros.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, ctx: &R::Ctx, terms: Vec<(Mono, R)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { ring: ring.clone(), ctx: ctx.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn coeff_ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn poly_ctx(&self) -> PolyCtx<R> {
        PolyCtx::new(self.ring.clone(), self.ctx.clone())
    }

    pub fn terms(&self) -> &[(Mono, R)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, R)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Mono, R)> {
        self.terms.first()
    }

    pub fn lead_mono(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    pub fn coeff(&self, m: &Mono) -> R {
        match self.terms.binary_search_by(|t| self.ring.cmp(m, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(&self.ctx),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.deg();
        self.terms.iter().all(|t| t.0.deg() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.is_empty() || self.homogeneous_degree().is_some()
    }

    /// Per-block degree, if every term shares it.
    pub fn multidegree(&self) -> Option<Vec<u32>> {
        let d = self.ring.multidegree(&self.terms.first()?.0);
        self.terms.iter().all(|t| self.ring.multidegree(&t.0) == d).then_some(d)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|t| t.0.deg() == d).cloned().collect();
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&Mono::one())
    }

    fn check_ring(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring,
            "polynomials from different rings: {:?} vs {:?}",
            self.ring,
            o.ring
        );
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        self.check_ring(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
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
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring, &self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (*m, x.mul(c)))
            .filter(|t| !t.1.is_zero())
            .collect();
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms }
    }

    /// Multiplication by c·m; the term order is compatible so order is preserved.
    pub fn mul_term(&self, m: &Mono, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring, &self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(x, d)| (x.mul(m), d.mul(c)))
            .filter(|t| !t.1.is_zero())
            .collect();
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_ring(o);
        if self.terms.is_empty() || o.terms.is_empty() {
            return Poly::zero(&self.ring, &self.ctx);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        let mut acc: HashMap<Mono, R> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(v) => v.add_mul_assign(c1, c2),
                    None => {
                        acc.insert(m, c1.mul(c2));
                    }
                }
            }
        }
        Poly::from_map(&self.ring, &self.ctx, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring, &self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Poly<S> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|t| !t.1.is_zero())
            .collect();
        Poly { ring: self.ring.clone(), ctx: ctx.clone(), terms }
    }

    pub fn try_map_coeffs<S: Ring, E>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> Result<S, E>) -> Result<Poly<S>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.push((*m, v));
            }
        }
        Ok(Poly { ring: self.ring.clone(), ctx: ctx.clone(), terms })
    }

    /// Evaluates at a point given by one value per variable.
    pub fn eval(&self, point: &[R]) -> PolyResult<R> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(PolyError::Dimension { expected: n, got: point.len() });
        }
        let mut acc = R::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t = t.mul(&point[i].pow(m.exp(i)));
            }
            acc.add_assign(&t);
        }
        Ok(acc)
    }

    /// Replaces x_i by `images[i]`; the images may live in any ring.
    pub fn compose(&self, images: &[Poly<R>]) -> PolyResult<Poly<R>> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(PolyError::Dimension { expected: n, got: images.len() });
        }
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut powers: Vec<Vec<Poly<R>>> = vec![Vec::new(); n];
        for (m, _) in &self.terms {
            for i in m.support() {
                let e = m.exp(i) as usize;
                while powers[i].len() <= e {
                    let next = match powers[i].last() {
                        None => Poly::one(&target, &self.ctx),
                        Some(p) => p.mul(&images[i]),
                    };
                    powers[i].push(next);
                }
            }
        }
        let mut acc: HashMap<Mono, R> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for i in m.support() {
                t = t.mul(&powers[i][m.exp(i) as usize]);
            }
            for (mm, cc) in t.terms {
                match acc.get_mut(&mm) {
                    Some(v) => v.add_assign(&cc),
                    None => {
                        acc.insert(mm, cc);
                    }
                }
            }
        }
        Ok(Poly::from_map(&target, &self.ctx, acc))
    }

    /// Linear change of variables x_j ↦ Σ_i a[i][j]·x_i, i.e. column j of `a`
    /// is the image of x_j. With this convention
    /// `f.substitute(g·h) == f.substitute(h).substitute(g)`.
    pub fn substitute(&self, a: &Matrix<R>) -> PolyResult<Poly<R>> {
        let n = self.ring.nvars();
        if a.rows() != n || a.cols() != n {
            return Err(PolyError::Dimension { expected: n, got: a.rows().max(a.cols()) });
        }
        let images: Vec<Poly<R>> = (0..n)
            .map(|j| {
                let terms = (0..n).filter(|&i| !a[(i, j)].is_zero()).map(|i| (Mono::var(i), a[(i, j)].clone()));
                Poly::from_terms(&self.ring, &self.ctx, terms)
            })
            .collect();
        self.compose(&images)
    }

    /// Renames variables into another ring: x_i ↦ y_{map[i]}.
    pub fn embed(&self, target: &Arc<PolyRing>, map: &[usize]) -> PolyResult<Poly<R>> {
        let n = self.ring.nvars();
        if map.len() != n {
            return Err(PolyError::Dimension { expected: n, got: map.len() });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; target.nvars()];
            for i in m.support() {
                exps[map[i]] += m.exp(i);
            }
            (Mono::from_exps(&exps), c.clone())
        });
        Ok(Poly::from_terms(target, &self.ctx, terms))
    }

    pub fn partial(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(i) > 0).map(|(m, c)| {
            let e = m.exp(i);
            (m.with_exp(i, e - 1), c.mul(&R::from_int(&self.ctx, e as i64)))
        });
        Poly::from_terms(&self.ring, &self.ctx, terms)
    }

    /// Coefficients on a list of monomials (for linear algebra on graded pieces).
    pub fn coords(&self, basis: &[Mono], index: &HashMap<Mono, usize>) -> Option<Vec<R>> {
        let mut v = vec![R::zero(&self.ctx); basis.len()];
        for (m, c) in &self.terms {
            let &i = index.get(m)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn from_coords(ring: &Arc<PolyRing>, ctx: &R::Ctx, basis: &[Mono], v: &[R]) -> Self {
        let terms = basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, c.clone()));
        Poly::from_terms(ring, ctx, terms)
    }
}

impl<R: Field> Poly<R> {
    /// Divides by the leading coefficient.
    pub fn monic(&self) -> FieldResult<Self> {
        match self.terms.first() {
            None => Ok(self.clone()),
            Some((_, c)) if c.is_one() => Ok(self.clone()),
            Some((_, c)) => Ok(self.scale(&c.inv()?)),
        }
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render(self))
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Ring> Ring for Poly<R> {
    type Ctx = PolyCtx<R>;

    fn zero(c: &PolyCtx<R>) -> Self {
        Poly::zero(&c.ring, &c.coeff)
    }
    fn one(c: &PolyCtx<R>) -> Self {
        Poly::one(&c.ring, &c.coeff)
    }
    fn from_int(c: &PolyCtx<R>, n: i64) -> Self {
        Poly::constant(&c.ring, R::from_int(&c.coeff, n))
    }
    fn ctx(&self) -> PolyCtx<R> {
        self.poly_ctx()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn pow(&self, e: u32) -> Self {
        Poly::pow(self, e)
    }
    fn is_plain_rational(&self) -> bool {
        false
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> std::ops::$tr<&Poly<R>> for &Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: &Poly<R>) -> Poly<R> {
                Poly::$m(self, o)
            }
        }
        impl<R: Ring> std::ops::$tr<Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                Poly::$m(&self, &o)
            }
        }
        impl<R: Ring> std::ops::$tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: &Poly<R>) -> Poly<R> {
                Poly::$m(&self, o)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl<R: Ring> std::ops::Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::neg(self)
    }
}

impl<R: Ring> std::ops::Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Cyc7, Rat};
    use crate::polylin::Registry;

    fn xring() -> Arc<PolyRing> {
        PolyRing::registry(Registry::X)
    }

    #[test]
    fn arithmetic_and_ordering() {
        let r = xring();
        let x = Poly::<Rat>::vars(&r, &());
        let f = &(&x[0] + &x[1]) * &(&x[0] - &x[1]);
        let g = &(&x[0] * &x[0]) - &(&x[1] * &x[1]);
        assert_eq!(f, g);
        assert_eq!(f.homogeneous_degree(), Some(2));
        assert_eq!(f.lead_mono(), Some(Mono::from_exps(&[2])));
        assert!((&f - &g).is_empty());
    }

    #[test]
    fn shift_substitution() {
        // x_j -> x_{j-1}
        let r = xring();
        let x = Poly::<Rat>::vars(&r, &());
        let mut a = Matrix::<Rat>::zeros(7, 7, &());
        for j in 0..7 {
            a[((j + 6) % 7, j)] = Rat::one();
        }
        let f = &(&x[0] * &x[1]) * &x[2];
        let g = f.substitute(&a).unwrap();
        assert_eq!(g, &(&x[6] * &x[0]) * &x[1]);
    }

    #[test]
    fn diagonal_substitution_over_cyclotomics() {
        let r = xring();
        let x = Poly::<Cyc7>::vars(&r, &());
        let mut a = Matrix::<Cyc7>::zeros(7, 7, &());
        for j in 0..7 {
            a[(j, j)] = Cyc7::zeta_pow(-(j as i64));
        }
        let g = x[3].substitute(&a).unwrap();
        assert_eq!(g, x[3].scale(&Cyc7::zeta_pow(-3)));
    }

    #[test]
    fn partials() {
        let r = xring();
        let x = Poly::<Rat>::vars(&r, &());
        let f = x[0].pow(3).mul(&x[1]);
        assert_eq!(f.partial(0), x[0].pow(2).mul(&x[1]).scale(&Rat::int(3)));
        assert!(f.partial(2).is_empty());
    }
}
