use std::collections::BTreeMap;

use super::engine::{module_gb, DegreeSpace, GbConfig};
use super::ideal::GradedIdeal;
use super::linear::{Echelon, Row};
use super::module::{FreeModule, Term, Vector};
use super::{GroebnerError, GroebnerResult};
use crate::exactfield::Field;

/// Graded syzygies of a list of module elements.
#[derive(Clone, Debug)]
pub struct SyzygyModule<R: Field> {
    /// ⊕ S(−deg vᵢ), one summand per input element.
    pub source: FreeModule,
    /// Minimal generators, by increasing degree.
    pub generators: Vec<Vector<R>>,
    pub degrees: Vec<u32>,
    /// Size of the Groebner basis of the syzygy module found on the way.
    pub gb_size: usize,
    /// False when the lifting computation hit the degree or pair budget;
    /// generators up to that degree are still exact.
    pub complete: bool,
    pub max_degree: u32,
}

pub(crate) fn as_row<R: Field>(space: &DegreeSpace, v: &Vector<R>) -> Row<R> {
    let mut r: Row<R> = v.terms().iter().map(|(t, c)| (space.idx(t), c.clone())).collect();
    r.sort_by_key(|e| e.0);
    r
}

/// Syzygies of `elems` ⊂ `target`, by a Groebner basis of the graph
/// {(Σ pᵢvᵢ, p)} ⊂ target ⊕ F in position-over-term order with the target
/// components on top: the basis elements that live entirely in F generate
/// the syzygy module.
pub fn syzygies<R: Field>(target: &FreeModule, elems: &[Vector<R>], cfg: &GbConfig) -> GroebnerResult<SyzygyModule<R>> {
    let n0 = target.rank();
    let mut degs = Vec::with_capacity(elems.len());
    for (i, v) in elems.iter().enumerate() {
        if v.is_zero() {
            return Err(GroebnerError::ZeroGenerator(i));
        }
        degs.push(v.homogeneous_degree(target).ok_or(GroebnerError::NotHomogeneous(i))?);
    }
    let source = FreeModule::new(target.ring.clone(), degs.clone());
    if elems.is_empty() {
        return Ok(SyzygyModule { source, generators: Vec::new(), degrees: Vec::new(), gb_size: 0, complete: true, max_degree: cfg.max_degree });
    }
    let one = R::one(&elems[0].lead().expect("nonzero").1.ctx());
    let mut shifts = target.shifts.clone();
    shifts.extend(degs.iter().copied());
    let lifted_module = FreeModule::new(target.ring.clone(), shifts);
    let lifted: Vec<Vector<R>> = elems
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut terms = v.terms().to_vec();
            terms.push((Term::new(n0 + i, crate::polylin::Mono::one()), one.clone()));
            Vector::from_terms(&lifted_module, terms)
        })
        .collect();
    let gb = module_gb(&lifted_module, &lifted, cfg)?;
    let syz: Vec<Vector<R>> = gb
        .basis
        .iter()
        .filter(|g| g.lead_term().expect("nonzero").comp as usize >= n0)
        .map(|g| g.project(n0..n0 + elems.len()))
        .collect();
    let keep = minimal_generators(&source, &syz)?;
    let generators: Vec<Vector<R>> = keep.iter().map(|&i| syz[i].clone()).collect();
    let degrees = generators.iter().map(|g| g.homogeneous_degree(&source).expect("homogeneous")).collect();
    Ok(SyzygyModule { source, generators, degrees, gb_size: syz.len(), complete: gb.complete, max_degree: cfg.max_degree })
}

/// Syzygies among the generators of an ideal.
pub fn ideal_syzygies<R: Field>(ideal: &GradedIdeal<R>, cfg: &GbConfig) -> GroebnerResult<SyzygyModule<R>> {
    syzygies(&FreeModule::ring_module(ideal.ring()), &ideal.vectors(), cfg)
}

/// Indices of a minimal generating subset, chosen degree by degree: an
/// element is kept when it is not in the span of S·(kept elements of lower
/// degree) plus the kept elements of its own degree. Ties go to the earlier
/// element.
pub fn minimal_generators<R: Field>(module: &FreeModule, elems: &[Vector<R>]) -> GroebnerResult<Vec<usize>> {
    let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, v) in elems.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let d = v.homogeneous_degree(module).ok_or(GroebnerError::NotHomogeneous(i))?;
        by_degree.entry(d).or_default().push(i);
    }
    let mut kept: Vec<(usize, u32)> = Vec::new();
    for (&d, idxs) in &by_degree {
        let space = DegreeSpace::new(module, d);
        let mut ech = Echelon::new();
        for &(k, e) in &kept {
            for m in module.ring.monomials(d - e) {
                let prod = elems[k].mul_term(&m, &R::one(&elems[k].lead().expect("nonzero").1.ctx()));
                ech.insert(&as_row(&space, &prod));
            }
        }
        for &i in idxs {
            if ech.insert(&as_row(&space, &elems[i])).is_some() {
                kept.push((i, d));
            }
        }
    }
    Ok(kept.into_iter().map(|(i, _)| i).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;
    use crate::polylin::{Matrix, Poly, PolyCtx, PolyRing};

    fn p(ctx: &PolyCtx<Rat>, s: &str) -> Poly<Rat> {
        Poly::parse(ctx, s).unwrap()
    }

    /// dim of the degree-d syzygies of f₁..f_r by linear algebra.
    fn kernel_dim(ctx: &PolyCtx<Rat>, gens: &[Poly<Rat>], d: u32) -> usize {
        let ring = &ctx.ring;
        let target = ring.monomials(d);
        let idx = target.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut cols = Vec::new();
        for g in gens {
            let e = g.total_degree().unwrap();
            if e > d {
                continue;
            }
            for m in ring.monomials(d - e) {
                cols.push(g.mul_term(&m, &Rat::int(1)).coords(&target, &idx).unwrap());
            }
        }
        let n = cols.len();
        if n == 0 {
            return 0;
        }
        let mat = Matrix::from_fn(target.len(), n, &(), |i, j| cols[j][i].clone());
        n - mat.rank()
    }

    #[test]
    fn coordinate_cross_has_two_linear_syzygies() {
        let c = PolyCtx::new(PolyRing::grevlex(&["u1", "u2", "u3"]), ());
        let gens = vec![p(&c, "u1*u2"), p(&c, "u2*u3"), p(&c, "u3*u1")];
        let i = GradedIdeal::new(&c, gens.clone()).unwrap();
        let s = ideal_syzygies(&i, &GbConfig::default()).unwrap();
        assert_eq!(s.degrees, vec![3, 3]);
        assert!(s.complete);
        for d in 2..=5 {
            // the module generated by the two syzygies has the oracle dimension
            let space = DegreeSpace::new(&s.source, d);
            let mut e = Echelon::new();
            for (g, &gd) in s.generators.iter().zip(&s.degrees) {
                if gd > d {
                    continue;
                }
                for m in c.ring.monomials(d - gd) {
                    e.insert(&as_row(&space, &g.mul_term(&m, &Rat::int(1))));
                }
            }
            assert_eq!(e.rank(), kernel_dim(&c, &gens, d), "degree {d}");
        }
    }

    #[test]
    fn principal_ideal_has_no_syzygies() {
        let c = PolyCtx::new(PolyRing::grevlex(&["a", "b"]), ());
        let i = GradedIdeal::new(&c, vec![p(&c, "a^2 + a*b")]).unwrap();
        assert!(ideal_syzygies(&i, &GbConfig::default()).unwrap().generators.is_empty());
    }

    #[test]
    fn syzygies_annihilate() {
        let c = PolyCtx::new(PolyRing::grevlex(&["a", "b", "c", "d"]), ());
        let gens = vec![p(&c, "a*c - b^2"), p(&c, "b*d - c^2"), p(&c, "a*d - b*c"), p(&c, "a^2*d")];
        let i = GradedIdeal::new(&c, gens.clone()).unwrap();
        let s = ideal_syzygies(&i, &GbConfig::default()).unwrap();
        for g in &s.generators {
            let comps = g.to_polys(&s.source, &());
            let total = comps.iter().zip(&gens).fold(Poly::zero(&c.ring, &()), |acc, (a, b)| acc.add(&a.mul(b)));
            assert!(total.is_empty());
        }
        for d in 2..=6 {
            let space = DegreeSpace::new(&s.source, d);
            let mut e = Echelon::new();
            for (g, &gd) in s.generators.iter().zip(&s.degrees) {
                if gd <= d {
                    for m in c.ring.monomials(d - gd) {
                        e.insert(&as_row(&space, &g.mul_term(&m, &Rat::int(1))));
                    }
                }
            }
            assert_eq!(e.rank(), kernel_dim(&c, &gens, d), "degree {d}");
        }
    }
}
