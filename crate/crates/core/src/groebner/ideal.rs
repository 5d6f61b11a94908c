use std::sync::Arc;

use super::engine::{module_gb, GbConfig, GbStats, ModuleGb};
use super::hilbert::{hilbert_numerator, HilbertData};
use super::module::{FreeModule, Vector};
use super::{GroebnerError, GroebnerResult};
use crate::exactfield::Field;
use crate::polylin::{Mono, Poly, PolyCtx, PolyRing};

/// Homogeneous ideal given by generators. Zero generators and repeats up to
/// a scalar are dropped, first occurrence kept.
#[derive(Clone, Debug)]
pub struct GradedIdeal<R: Field> {
    ctx: PolyCtx<R>,
    generators: Vec<Poly<R>>,
}

impl<R: Field> GradedIdeal<R> {
    pub fn new(ctx: &PolyCtx<R>, gens: Vec<Poly<R>>) -> GroebnerResult<Self> {
        let mut kept: Vec<Poly<R>> = Vec::new();
        let mut seen: Vec<Poly<R>> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            if g.ring() != &ctx.ring {
                return Err(GroebnerError::RingMismatch);
            }
            if g.is_empty() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(GroebnerError::NotHomogeneous(i));
            }
            let m = g.monic()?;
            if seen.contains(&m) {
                continue;
            }
            seen.push(m);
            kept.push(g);
        }
        Ok(GradedIdeal { ctx: ctx.clone(), generators: kept })
    }

    pub fn ctx(&self) -> &PolyCtx<R> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ctx.ring
    }

    pub fn generators(&self) -> &[Poly<R>] {
        &self.generators
    }

    pub fn unit(ctx: &PolyCtx<R>) -> Self {
        GradedIdeal { ctx: ctx.clone(), generators: vec![Poly::one(&ctx.ring, &ctx.coeff)] }
    }

    pub fn vectors(&self) -> Vec<Vector<R>> {
        self.generators.iter().map(|g| Vector::from_poly(g, 0)).collect()
    }
}

/// Reduced Groebner basis of an ideal, truncated at a degree budget.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<R: Field> {
    ctx: PolyCtx<R>,
    inner: ModuleGb<R>,
    polys: Vec<Poly<R>>,
}

pub fn buchberger<R: Field>(ideal: &GradedIdeal<R>, cfg: &GbConfig) -> GroebnerResult<GroebnerBasis<R>> {
    let module = FreeModule::ring_module(ideal.ring());
    let inner = module_gb(&module, &ideal.vectors(), cfg)?;
    let polys = inner.basis.iter().map(|v| vector_to_poly(ideal.ring(), &ideal.ctx.coeff, v)).collect();
    Ok(GroebnerBasis { ctx: ideal.ctx.clone(), inner, polys })
}

fn vector_to_poly<R: Field>(ring: &Arc<PolyRing>, ctx: &R::Ctx, v: &Vector<R>) -> Poly<R> {
    Poly::from_sorted(ring, ctx, v.terms().iter().map(|(t, c)| (t.mono, c.clone())).collect())
}

impl<R: Field> GroebnerBasis<R> {
    pub fn ctx(&self) -> &PolyCtx<R> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ctx.ring
    }

    pub fn polys(&self) -> &[Poly<R>] {
        &self.polys
    }

    pub fn leads(&self) -> Vec<Mono> {
        self.inner.leads().into_iter().map(|t| t.mono).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.inner.complete
    }

    pub fn max_degree(&self) -> u32 {
        self.inner.max_degree
    }

    pub fn stats(&self) -> &GbStats {
        &self.inner.stats
    }

    pub fn module_gb(&self) -> &ModuleGb<R> {
        &self.inner
    }

    /// Degree up to which the basis is known to be exact.
    pub fn exact_through(&self) -> Option<u32> {
        if self.inner.complete {
            None
        } else {
            Some(self.inner.max_degree)
        }
    }

    pub fn normal_form(&self, f: &Poly<R>) -> Poly<R> {
        let v = self.inner.normal_form(&Vector::from_poly(f, 0));
        vector_to_poly(self.ring(), &self.ctx.coeff, &v)
    }

    /// Ideal membership. A truncated basis decides it only up to its budget.
    pub fn contains(&self, f: &Poly<R>) -> GroebnerResult<bool> {
        if let (Some(b), Some(d)) = (self.exact_through(), f.total_degree()) {
            if d > b || !f.is_homogeneous() {
                return Err(GroebnerError::BeyondBudget { degree: d, budget: b });
            }
        }
        Ok(self.normal_form(f).is_empty())
    }

    /// Monomials of degree d outside the leading-term ideal, largest first.
    pub fn standard_monomials(&self, d: u32) -> Vec<Mono> {
        let leads = self.leads();
        self.ring().monomials(d).into_iter().filter(|m| !leads.iter().any(|l| l.divides(m))).collect()
    }

    pub fn hilbert(&self, range: u32) -> HilbertData {
        HilbertData::from_numerator(self.ring().nvars(), hilbert_numerator(&self.leads(), self.ring().nvars()), range, self.exact_through())
    }
}

/// Shortcut: Groebner basis then Hilbert data on 0..=range.
pub fn hilbert<R: Field>(ideal: &GradedIdeal<R>, range: u32, cfg: &GbConfig) -> GroebnerResult<HilbertData> {
    Ok(buchberger(ideal, cfg)?.hilbert(range))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fp, Modulus, Rat, Ring};
    use crate::polylin::PolyCtx;

    fn qctx(names: &[&str]) -> PolyCtx<Rat> {
        PolyCtx::new(PolyRing::grevlex(names), ())
    }

    fn p(ctx: &PolyCtx<Rat>, s: &str) -> Poly<Rat> {
        Poly::parse(ctx, s).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let c = qctx(&["u1", "u2", "u3"]);
        let i = GradedIdeal::new(&c, vec![p(&c, "u1*u2"), p(&c, "u2*u3"), p(&c, "u3*u1")]).unwrap();
        let gb = buchberger(&i, &GbConfig::default()).unwrap();
        assert_eq!(gb.polys().len(), 3);
        assert!(gb.is_complete());
        assert_eq!(gb.stats().pairs_reduced + gb.stats().chain_skipped + gb.stats().product_skipped, 3);
    }

    #[test]
    fn twisted_cubic_basis_and_membership() {
        let c = qctx(&["a", "b", "c", "d"]);
        let gens = vec![p(&c, "a*c - b^2"), p(&c, "b*d - c^2"), p(&c, "a*d - b*c")];
        let gb = buchberger(&GradedIdeal::new(&c, gens).unwrap(), &GbConfig::default()).unwrap();
        assert!(gb.is_complete());
        assert!(gb.contains(&p(&c, "a*(b*d - c^2) + d*(a*c - b^2)")).unwrap());
        assert!(!gb.contains(&p(&c, "a*d")).unwrap());
        // reduced: no lead divides any other term
        let leads = gb.leads();
        for g in gb.polys() {
            for (m, _) in &g.terms()[1..] {
                assert!(!leads.iter().any(|l| l.divides(m)));
            }
            assert!(g.lead().unwrap().1.is_one());
        }
        let h = gb.hilbert(6);
        for d in 1..=6 {
            assert_eq!(h.value(d), 3 * d as i64 + 1);
        }
    }

    #[test]
    fn dedup_up_to_scalar() {
        let c = qctx(&["a", "b"]);
        let i = GradedIdeal::new(&c, vec![p(&c, "a*b"), p(&c, "3*a*b"), Poly::zero(&c.ring, &())]).unwrap();
        assert_eq!(i.generators().len(), 1);
        assert!(GradedIdeal::new(&c, vec![p(&c, "a*b + a")]).is_err());
    }

    #[test]
    fn fp_and_q_agree_on_leads() {
        let c = qctx(&["a", "b", "c"]);
        let gens = vec![p(&c, "a^2 + 2*b*c"), p(&c, "b^2 - 3*a*c"), p(&c, "c^2 + a*b")];
        let gq = buchberger(&GradedIdeal::new(&c, gens.clone()).unwrap(), &GbConfig::default()).unwrap();
        let m = Modulus::new(31).unwrap();
        let cf: PolyCtx<Fp> = PolyCtx::new(c.ring.clone(), m);
        let gf: Vec<Poly<Fp>> = gens.iter().map(|g| g.map_coeffs(&m, |x| Fp::from_rat(&m, x).unwrap())).collect();
        let gp = buchberger(&GradedIdeal::new(&cf, gf).unwrap(), &GbConfig::default()).unwrap();
        assert_eq!(gq.leads(), gp.leads());
    }
}
