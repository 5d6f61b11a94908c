use super::engine::GbConfig;
use super::ideal::GradedIdeal;
use super::module::FreeModule;
use super::resolution::{free_resolution, BettiTable};
use super::syzygy::{minimal_generators, syzygies};
use super::{GroebnerError, GroebnerResult};
use crate::exactfield::Field;
use crate::polylin::{FormMatrix, Matrix, Poly};

/// The 3×2 matrix of linear syzygies of a codimension-2 Cohen–Macaulay
/// ideal with three quadric generators, resolution shape (1; 3 2).
///
/// Column k holds the coefficients of the k-th syzygy; the 2×2 minors
/// regenerate the ideal up to scalars, which is checked before returning.
pub fn hilbert_burch<R: Field>(ideal: &GradedIdeal<R>, cfg: &GbConfig) -> GroebnerResult<FormMatrix<R>> {
    let res = free_resolution(ideal, cfg)?;
    let expected = BettiTable::from_rows(&[&[1], &[0, 3, 2]]);
    if res.betti != expected {
        return Err(GroebnerError::NotHilbertBurch(res.betti.to_string()));
    }
    let ctx = ideal.ctx();
    let gens: Vec<Poly<R>> = res.maps[0].iter().map(|v| v.component(&ctx.ring, &ctx.coeff, 0)).collect();
    let syz = &res.maps[1];
    let rows: Vec<Vec<Poly<R>>> = (0..3).map(|r| syz.iter().map(|col| col.component(&ctx.ring, &ctx.coeff, r)).collect()).collect();
    let m = FormMatrix::from_rows(ctx, rows)?;
    let minors = m.minors(2)?;
    if !same_span(&minors, &gens) {
        return Err(GroebnerError::NotHilbertBurch("2x2 minors do not regenerate the ideal".into()));
    }
    Ok(m)
}

/// Whether two lists of forms of one degree span the same space.
pub fn same_span<R: Field>(a: &[Poly<R>], b: &[Poly<R>]) -> bool {
    let Some(first) = a.iter().chain(b).find(|p| !p.is_empty()) else { return true };
    let Some(d) = first.total_degree() else { return true };
    let ring = first.ring().clone();
    let ctx = first.coeff_ctx().clone();
    let basis = ring.monomials(d);
    let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mat = |v: &[Poly<R>]| -> Option<Matrix<R>> {
        let rows: Option<Vec<Vec<R>>> = v.iter().map(|p| if p.is_empty() { Some(vec![R::zero(&ctx); basis.len()]) } else { p.coords(&basis, &index) }).collect();
        Matrix::from_rows(&ctx, rows?).ok()
    };
    match (mat(a), mat(b)) {
        (Some(x), Some(y)) => x.same_row_space(&y),
        _ => false,
    }
}

/// I ∩ K. The syzygies (p, q) of (f₁..f_a, −g₁..−g_b) are computed by the
/// lifting Groebner basis, which is an elimination of the target component;
/// each Σ pᵢfᵢ lies in both ideals and together they generate I ∩ K up to
/// the degree budget.
pub fn intersect<R: Field>(i: &GradedIdeal<R>, k: &GradedIdeal<R>, cfg: &GbConfig) -> GroebnerResult<GradedIdeal<R>> {
    if i.ring() != k.ring() {
        return Err(GroebnerError::RingMismatch);
    }
    let ctx = i.ctx();
    if i.generators().is_empty() || k.generators().is_empty() {
        return GradedIdeal::new(ctx, Vec::new());
    }
    let mut gens: Vec<Poly<R>> = i.generators().to_vec();
    gens.extend(k.generators().iter().map(|g| g.neg()));
    let f0 = FreeModule::ring_module(i.ring());
    let vecs: Vec<_> = gens.iter().map(|g| super::module::Vector::from_poly(g, 0)).collect();
    let syz = syzygies(&f0, &vecs, cfg)?;
    let a = i.generators().len();
    let mut out = Vec::new();
    for s in &syz.generators {
        let comps = s.to_polys(&syz.source, &ctx.coeff);
        let f = comps[..a].iter().zip(i.generators()).fold(Poly::zero(&ctx.ring, &ctx.coeff), |acc, (p, g)| acc.add(&p.mul(g)));
        if !f.is_empty() {
            out.push(f);
        }
    }
    let vecs: Vec<_> = out.iter().map(|g| super::module::Vector::from_poly(g, 0)).collect();
    let keep = minimal_generators(&f0, &vecs)?;
    GradedIdeal::new(ctx, keep.into_iter().map(|j| out[j].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;
    use crate::groebner::buchberger;
    use crate::polylin::{PolyCtx, PolyRing};

    fn ctx(names: &[&str]) -> PolyCtx<Rat> {
        PolyCtx::new(PolyRing::grevlex(names), ())
    }

    fn ideal(c: &PolyCtx<Rat>, gens: &[&str]) -> GradedIdeal<Rat> {
        GradedIdeal::new(c, gens.iter().map(|s| Poly::parse(c, s).unwrap()).collect()).unwrap()
    }

    /// dim (I ∩ K)_d by intersecting the degree-d pieces.
    fn intersection_dim(i: &GradedIdeal<Rat>, k: &GradedIdeal<Rat>, d: u32) -> usize {
        let piece = |j: &GradedIdeal<Rat>| -> Vec<Vec<Rat>> {
            let ring = j.ring();
            let basis = ring.monomials(d);
            let idx = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut rows = Vec::new();
            for g in j.generators() {
                let e = g.total_degree().unwrap();
                if e <= d {
                    for m in ring.monomials(d - e) {
                        rows.push(g.mul_term(&m, &Rat::int(1)).coords(&basis, &idx).unwrap());
                    }
                }
            }
            if rows.is_empty() {
                return rows;
            }
            Matrix::from_rows(&(), rows).unwrap().row_space_basis()
        };
        let (a, b) = (piece(i), piece(k));
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let sum: Vec<Vec<Rat>> = a.iter().chain(&b).cloned().collect();
        a.len() + b.len() - Matrix::from_rows(&(), sum).unwrap().rank()
    }

    #[test]
    fn coordinate_cross_matrix() {
        let c = ctx(&["u0", "u1", "u2", "u3"]);
        let i = ideal(&c, &["u1*u2", "u2*u3", "u3*u1"]);
        let m = hilbert_burch(&i, &GbConfig::default()).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert!(same_span(&m.minors(2).unwrap(), i.generators()));
    }

    #[test]
    fn common_factor_is_rejected() {
        let c = ctx(&["u0", "u1", "u2", "u3"]);
        let i = ideal(&c, &["u0*u1", "u0*u2", "u0*u3"]);
        assert!(matches!(hilbert_burch(&i, &GbConfig::default()), Err(GroebnerError::NotHilbertBurch(_))));
    }

    #[test]
    fn plane_cubic_union_point() {
        let c = ctx(&["x", "y", "z", "w"]);
        let cubic = ideal(&c, &["w", "x^3 + y^3 + z^3"]);
        let point = ideal(&c, &["x", "y", "z"]);
        let cfg = GbConfig::default();
        let j = intersect(&cubic, &point, &cfg).unwrap();
        for d in 0..=5 {
            let gb = buchberger(&j, &cfg).unwrap();
            let dim_s = c.ring.monomials(d).len() as i64;
            assert_eq!(dim_s - gb.hilbert(5).values[d as usize], intersection_dim(&cubic, &point, d) as i64, "degree {d}");
        }
        let r = free_resolution(&j, &cfg).unwrap();
        assert_eq!(r.betti, BettiTable::from_rows(&[&[1], &[0, 3, 3, 1], &[0, 1, 1]]));
    }

    #[test]
    fn trivial_intersections() {
        let c = ctx(&["a", "b", "c"]);
        let i = ideal(&c, &["a*b", "b*c^2"]);
        let cfg = GbConfig::default();
        let unit = GradedIdeal::unit(&c);
        let ii = intersect(&i, &i, &cfg).unwrap();
        let iu = intersect(&i, &unit, &cfg).unwrap();
        let gb = buchberger(&i, &cfg).unwrap();
        for j in [ii, iu] {
            let gj = buchberger(&j, &cfg).unwrap();
            assert_eq!(gj.polys(), gb.polys());
        }
    }
}
