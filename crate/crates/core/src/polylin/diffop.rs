use std::collections::HashMap;
use std::sync::Arc;

use super::matrix::Matrix;
use super::poly::Poly;
use super::ring::{Mono, PolyRing};
use crate::exactfield::{Field, Ring};

/// Constant-coefficient differential operator Σ c_a ∂^a, stored as the
/// polynomial Σ c_a x^a in the same ring it acts on. No factorial
/// normalisation: ∂²/∂u² applied to u² gives 2.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffOp<R: Ring> {
    symbol: Poly<R>,
}

impl<R: Ring> DiffOp<R> {
    pub fn new(symbol: Poly<R>) -> Self {
        DiffOp { symbol }
    }

    pub fn symbol(&self) -> &Poly<R> {
        &self.symbol
    }

    pub fn order(&self) -> Option<u32> {
        self.symbol.total_degree()
    }

    pub fn apply(&self, f: &Poly<R>) -> Poly<R> {
        let ctx = f.coeff_ctx();
        let mut terms = Vec::new();
        for (a, c) in self.symbol.terms() {
            for (b, d) in f.terms() {
                if !a.divides(b) {
                    continue;
                }
                let mut k = c.mul(d);
                for i in a.support() {
                    let (ea, eb) = (a.exp(i), b.exp(i));
                    for t in 0..ea {
                        k = k.mul(&R::from_int(ctx, (eb - t) as i64));
                    }
                }
                terms.push((b.div(a).expect("divides"), k));
            }
        }
        Poly::from_terms(f.ring(), ctx, terms)
    }
}

/// Basis of the degree-d forms killed by every operator. The basis is the
/// reduced echelon basis of the kernel with respect to the monomials of
/// degree d in decreasing term order.
pub fn kernel_of_operators<R: Field>(ring: &Arc<PolyRing>, ctx: &R::Ctx, ops: &[DiffOp<R>], d: u32) -> Vec<Poly<R>> {
    let basis = ring.monomials(d);
    let mut rows: Vec<Vec<R>> = Vec::new();
    for op in ops {
        let images: Vec<Poly<R>> = basis.iter().map(|m| op.apply(&Poly::monomial(ring, *m, R::one(ctx)))).collect();
        let mut out_index: HashMap<Mono, usize> = HashMap::new();
        let mut out_monos: Vec<Mono> = Vec::new();
        for img in &images {
            for (m, _) in img.terms() {
                out_index.entry(*m).or_insert_with(|| {
                    out_monos.push(*m);
                    out_monos.len() - 1
                });
            }
        }
        let start = rows.len();
        rows.extend((0..out_monos.len()).map(|_| vec![R::zero(ctx); basis.len()]));
        for (j, img) in images.iter().enumerate() {
            for (m, c) in img.terms() {
                rows[start + out_index[m]][j] = c.clone();
            }
        }
    }
    let kernel: Vec<Vec<R>> = if rows.is_empty() {
        (0..basis.len())
            .map(|j| (0..basis.len()).map(|i| if i == j { R::one(ctx) } else { R::zero(ctx) }).collect())
            .collect()
    } else {
        Matrix::from_rows(ctx, rows).expect("rectangular").null_space()
    };
    if kernel.is_empty() {
        return Vec::new();
    }
    let k = Matrix::from_rows(ctx, kernel).expect("rectangular");
    k.row_space_basis().iter().map(|v| Poly::from_coords(ring, ctx, &basis, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;
    use crate::polylin::{PolyCtx, Registry};

    fn u() -> PolyCtx<Rat> {
        PolyCtx::new(PolyRing::registry(Registry::U), ())
    }

    fn op(s: &str) -> DiffOp<Rat> {
        DiffOp::new(Poly::parse(&u(), s).unwrap())
    }

    #[test]
    fn plain_partials_without_factorials() {
        let d1 = op("u0*u1 - 1/2*u2^2");
        let d3 = op("u0*u3 - 1/2*u1^2");
        let p = |s: &str| Poly::parse(&u(), s).unwrap();
        assert_eq!(d1.apply(&p("u0*u1")), p("1"));
        assert_eq!(d1.apply(&p("u2^2")), p("-1"));
        assert!(d3.apply(&p("u1^2 + u0*u3")).is_empty());
        assert_eq!(op("u0^2").apply(&p("u0^3*u1")), p("6*u0*u1"));
    }

    #[test]
    fn kernel_dimensions() {
        let c = u();
        let ops = vec![op("u0*u1 - 1/2*u2^2"), op("u0*u2 - 1/2*u3^2"), op("u0*u3 - 1/2*u1^2")];
        assert_eq!(kernel_of_operators(&c.ring, &(), &ops, 2).len(), 7);
        assert_eq!(kernel_of_operators(&c.ring, &(), &ops, 1).len(), 4);
        assert_eq!(kernel_of_operators::<Rat>(&c.ring, &(), &[], 2).len(), 10);
    }
}
