use std::collections::BTreeMap;

use serde::Serialize;

use super::KleinResult;
use crate::exactfield::{Field, Rat};
use crate::polylin::{DiffOp, FormMatrix, Matrix, Mono, Poly, PolyCtx, PolyRing, Registry};

/// Element of Λ³V as a combination of sorted basis wedges e_a∧e_b∧e_c.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Wedge3 {
    terms: BTreeMap<[u8; 3], i64>,
}

fn perm_sign(seq: &[u8]) -> i64 {
    let mut s = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                s = -s;
            }
        }
    }
    s
}

impl Wedge3 {
    /// c · e_a∧e_b∧e_c, indices taken mod 7.
    pub fn basis(idx: [i64; 3], c: i64) -> Wedge3 {
        let raw = idx.map(|i| i.rem_euclid(7) as u8);
        let mut sorted = raw;
        sorted.sort_unstable();
        let s = perm_sign(&raw);
        let mut terms = BTreeMap::new();
        if s != 0 && c != 0 {
            terms.insert(sorted, s * c);
        }
        Wedge3 { terms }
    }

    pub fn add(&self, o: &Wedge3) -> Wedge3 {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            *terms.entry(*k).or_insert(0) += v;
        }
        terms.retain(|_, v| *v != 0);
        Wedge3 { terms }
    }

    /// Index shift e_j ↦ e_{j+k}.
    pub fn shift(&self, k: i64) -> Wedge3 {
        self.terms.iter().fold(Wedge3::default(), |acc, (idx, c)| {
            acc.add(&Wedge3::basis([idx[0] as i64 + k, idx[1] as i64 + k, idx[2] as i64 + k], *c))
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u8; 3], i64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    /// a∧b ∈ Λ⁶V read as a linear form: e_{i₁}∧…∧e_{i₆} ↦ sgn(i₁..i₆, k)·x_k
    /// with k the missing index. Returns the coefficients of x_0..x_6.
    pub fn pair(&self, o: &Wedge3) -> [i64; 7] {
        let mut out = [0i64; 7];
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut seq = [a[0], a[1], a[2], b[0], b[1], b[2], 0];
                let used: u8 = seq[..6].iter().fold(0u8, |m, &i| m | 1 << i);
                if used.count_ones() != 6 {
                    continue;
                }
                let k = (0..7).find(|i| used >> i & 1 == 0).expect("one index missing");
                seq[6] = k;
                out[k as usize] += ca * cb * perm_sign(&seq);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeRep {
    pub name: &'static str,
    /// Entry k, k ∈ Z₇.
    pub entries: Vec<Wedge3>,
}

impl WedgeRep {
    fn orbit(name: &'static str, first: impl Fn(i64) -> Wedge3) -> WedgeRep {
        WedgeRep { name, entries: (0..7).map(first).collect() }
    }

    /// Entry k+1 is entry k shifted by one.
    pub fn is_shift_equivariant(&self) -> bool {
        (0..7).all(|k| self.entries[(k + 1) % 7] == self.entries[k].shift(1))
    }
}

#[derive(Clone, Debug)]
pub struct WedgeReps {
    pub u: [WedgeRep; 4],
    /// Generated by e₁∧e₄∧e₂ + e₆∧e₃∧e₅, the invariant line left over.
    pub complement: WedgeRep,
}

pub fn wedge_reps() -> WedgeReps {
    let w = |a, b, c, k, s| Wedge3::basis([a + k, b + k, c + k], s);
    WedgeReps {
        u: [
            WedgeRep::orbit("u0", |k| w(1, 4, 2, k, 1).add(&w(6, 3, 5, k, -1))),
            WedgeRep::orbit("u1", |k| w(0, 1, 6, k, 1)),
            WedgeRep::orbit("u2", |k| w(0, 2, 5, k, 1)),
            WedgeRep::orbit("u3", |k| w(0, 4, 3, k, 1)),
        ],
        complement: WedgeRep::orbit("w", |k| w(1, 4, 2, k, 1).add(&w(6, 3, 5, k, 1))),
    }
}

fn linear_form<R: Field>(ctx: &PolyCtx<R>, c: &[i64; 7]) -> Poly<R> {
    Poly::from_terms(&ctx.ring, &ctx.coeff, c.iter().enumerate().map(|(k, &v)| (Mono::var(k), R::from_int(&ctx.coeff, v))))
}

/// u_i u_j as a 7×7 matrix of linear forms in x: entry (r, c) pairs entry r
/// of u_i with entry c of u_j.
pub fn compose_u<R: Field>(ctx: &PolyCtx<R>, reps: &WedgeReps, i: usize, j: usize) -> FormMatrix<R> {
    let mut m = FormMatrix::zeros(ctx, 7, 7);
    for r in 0..7 {
        for c in 0..7 {
            m.set(r, c, linear_form(ctx, &reps.u[i].entries[r].pair(&reps.u[j].entries[c])));
        }
    }
    m
}

/// The displayed B₁, B₂, B₃.
pub fn printed_b<R: Field>(ctx: &PolyCtx<R>) -> KleinResult<[FormMatrix<R>; 3]> {
    let rows = |s: [[&'static str; 7]; 7]| s.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let b1 = rows([
        ["0", "x4", "0", "0", "0", "0", "-x3"],
        ["-x4", "0", "x5", "0", "0", "0", "0"],
        ["0", "-x5", "0", "x6", "0", "0", "0"],
        ["0", "0", "-x6", "0", "x0", "0", "0"],
        ["0", "0", "0", "-x0", "0", "x1", "0"],
        ["0", "0", "0", "0", "-x1", "0", "x2"],
        ["x3", "0", "0", "0", "0", "-x2", "0"],
    ]);
    let b2 = rows([
        ["0", "0", "x1", "0", "0", "-x6", "0"],
        ["0", "0", "0", "x2", "0", "0", "-x0"],
        ["-x1", "0", "0", "0", "x3", "0", "0"],
        ["0", "-x2", "0", "0", "0", "x4", "0"],
        ["0", "0", "-x3", "0", "0", "0", "x5"],
        ["x6", "0", "0", "-x4", "0", "0", "0"],
        ["0", "x0", "0", "0", "-x5", "0", "0"],
    ]);
    let b3 = rows([
        ["0", "0", "0", "-x5", "x2", "0", "0"],
        ["0", "0", "0", "0", "-x6", "x3", "0"],
        ["0", "0", "0", "0", "0", "-x0", "x4"],
        ["x5", "0", "0", "0", "0", "0", "-x1"],
        ["-x2", "x6", "0", "0", "0", "0", "0"],
        ["0", "-x3", "x0", "0", "0", "0", "0"],
        ["0", "0", "-x4", "x1", "0", "0", "0"],
    ]);
    Ok([FormMatrix::parse(ctx, &b1)?, FormMatrix::parse(ctx, &b2)?, FormMatrix::parse(ctx, &b3)?])
}

/// All sixteen compositions u_i u_j.
#[derive(Clone, Debug)]
pub struct Compositions<R: Field> {
    pub ctx: PolyCtx<R>,
    pub table: Vec<Vec<FormMatrix<R>>>,
}

impl<R: Field> Compositions<R> {
    pub fn new(ctx: &PolyCtx<R>) -> Self {
        let reps = wedge_reps();
        let table = (0..4).map(|i| (0..4).map(|j| compose_u(ctx, &reps, i, j)).collect()).collect();
        Compositions { ctx: ctx.clone(), table }
    }

    pub fn get(&self, i: usize, j: usize) -> &FormMatrix<R> {
        &self.table[i][j]
    }

    /// Σ c_kl u_k u_l for a quadric Σ c_kl u_k u_l in u0..u3.
    pub fn apply_quadric(&self, q: &Poly<R>) -> KleinResult<FormMatrix<R>> {
        let mut acc = FormMatrix::zeros(&self.ctx, 7, 7);
        for (m, c) in q.terms() {
            let idx: Vec<usize> = m.support().flat_map(|i| std::iter::repeat_n(i, m.exp(i) as usize)).collect();
            let block = self.get(idx[0], idx[1]).scale(&Poly::constant(&self.ctx.ring, c.clone()));
            acc = acc.add(&block)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BReport {
    /// (composition, matches) for u0u1 = B1, u0u2 = B2, u0u3 = B3.
    pub printed: Vec<(String, bool)>,
    /// u2u2 = −B1, u3u3 = −B2, u1u1 = −B3.
    pub sign_relations: bool,
    pub symmetric: bool,
    /// Nonzero entries of the 4×4 table; nine when only the listed ones survive.
    pub nonzero: usize,
    /// Ranks of B1, B2, B3 at the probe point.
    pub probe_ranks: Vec<usize>,
}

impl BReport {
    pub fn holds(&self) -> bool {
        self.printed.iter().all(|p| p.1) && self.sign_relations && self.symmetric && self.nonzero == 9 && self.probe_ranks.iter().all(|&r| r == 6)
    }
}

/// Compares the computed compositions with B1, B2, B3 over Q.
pub fn b_matrix_report() -> KleinResult<BReport> {
    let x = PolyCtx::<Rat>::new(PolyRing::registry(Registry::X), ());
    let comp = Compositions::new(&x);
    let b = printed_b(&x)?;
    let printed = (1..4).map(|k| (format!("u0u{k}"), comp.get(0, k) == &b[k - 1])).collect();
    let sign_relations = comp.get(2, 2) == &b[0].neg() && comp.get(3, 3) == &b[1].neg() && comp.get(1, 1) == &b[2].neg();
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
    let symmetric = pairs.iter().all(|&(i, j)| comp.get(i, j) == comp.get(j, i));
    let nonzero = pairs.iter().filter(|&&(i, j)| !comp.get(i, j).is_zero()).count();
    let point = probe_point::<Rat>(&());
    let probe_ranks = b.iter().map(|m| Ok(m.eval(&point)?.rank())).collect::<KleinResult<_>>()?;
    Ok(BReport { printed, sign_relations, symmetric, nonzero, probe_ranks })
}

/// 3×2 matrix with entries Σ_k a_ij^k u_k.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaMatrix<R: Field> {
    /// coeffs[i][j][k] = a_ij^k
    pub coeffs: Vec<Vec<[R; 4]>>,
}

impl<R: Field> AlphaMatrix<R> {
    /// Reads a 3×2 matrix of linear forms in u0..u3.
    pub fn from_forms(m: &FormMatrix<R>) -> Self {
        let coeffs = (0..3)
            .map(|i| (0..2).map(|j| std::array::from_fn(|k| m.get(i, j).coeff(&Mono::var(k)))).collect())
            .collect();
        AlphaMatrix { coeffs }
    }

    pub fn zero(ctx: &R::Ctx) -> Self {
        AlphaMatrix { coeffs: vec![vec![std::array::from_fn(|_| R::zero(ctx)); 2]; 3] }
    }

    pub fn entry(&self, u: &PolyCtx<R>, i: usize, j: usize) -> Poly<R> {
        Poly::from_terms(&u.ring, &u.coeff, self.coeffs[i][j].iter().enumerate().map(|(k, c)| (Mono::var(k), c.clone())))
    }

    pub fn forms(&self, u: &PolyCtx<R>) -> FormMatrix<R> {
        let rows = (0..3).map(|i| (0..2).map(|j| self.entry(u, i, j)).collect()).collect();
        FormMatrix::from_rows(u, rows).expect("3x2")
    }

    /// a_r1·a_s2 − a_r2·a_s1, the (r, s) entry of αα′.
    pub fn product_entry(&self, u: &PolyCtx<R>, r: usize, s: usize) -> Poly<R> {
        self.entry(u, r, 0).mul(&self.entry(u, s, 1)).sub(&self.entry(u, r, 1).mul(&self.entry(u, s, 0)))
    }

    /// The 2×2 minors for row pairs (0,1), (0,2), (1,2).
    pub fn minors(&self, u: &PolyCtx<R>) -> [Poly<R>; 3] {
        [self.product_entry(u, 0, 1), self.product_entry(u, 0, 2), self.product_entry(u, 1, 2)]
    }
}

/// αα′ with α′ = [[0,1],[−1,0]]·ᵗα, as a 21×21 matrix of linear forms in x.
pub fn alpha_compose<R: Field>(comp: &Compositions<R>, u: &PolyCtx<R>, alpha: &AlphaMatrix<R>) -> KleinResult<FormMatrix<R>> {
    let mut out = FormMatrix::zeros(&comp.ctx, 21, 21);
    for r in 0..3 {
        for s in 0..3 {
            let block = comp.apply_quadric(&alpha.product_entry(u, r, s))?;
            for i in 0..7 {
                for j in 0..7 {
                    out.set(7 * r + i, 7 * s + j, block.get(i, j).clone());
                }
            }
        }
    }
    Ok(out)
}

/// Δ₁ = ∂₀∂₁ − ½∂₂², Δ₂ = ∂₀∂₂ − ½∂₃², Δ₃ = ∂₀∂₃ − ½∂₁² on u0..u3.
pub fn delta_ops<R: Field>(u: &PolyCtx<R>) -> KleinResult<[DiffOp<R>; 3]> {
    let op = |s: &str| -> KleinResult<DiffOp<R>> { Ok(DiffOp::new(Poly::parse(u, s)?)) };
    Ok([op("u0*u1 - 1/2*u2^2")?, op("u0*u2 - 1/2*u3^2")?, op("u0*u3 - 1/2*u1^2")?])
}

/// Whether Δ₁, Δ₂, Δ₃ kill all three 2×2 minors.
pub fn delta_criterion<R: Field>(u: &PolyCtx<R>, alpha: &AlphaMatrix<R>) -> KleinResult<bool> {
    let ops = delta_ops(u)?;
    Ok(alpha.minors(u).iter().all(|q| ops.iter().all(|d| d.apply(q).is_empty())))
}

/// x = (1, 2, …, 7).
pub fn probe_point<R: Field>(ctx: &R::Ctx) -> Vec<R> {
    (1..=7).map(|i| R::from_int(ctx, i)).collect()
}

#[derive(Clone, Debug)]
pub struct MinorReport<R: Field> {
    pub minors: [Poly<R>; 3],
    pub rank: usize,
    pub independent: bool,
    /// Ranks at the probe point of Σ_j l_j u_j u_k, k = 0..3, where
    /// a₁₁ = Σ l_j u_j; `None` for a block that vanishes identically.
    pub block_ranks: [Option<usize>; 4],
}

/// Rank of the span of forms of one degree.
pub(crate) fn span_rank<R: Field>(forms: &[Poly<R>], ctx: &PolyCtx<R>, d: u32) -> usize {
    let basis = ctx.ring.monomials(d);
    let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let rows: Vec<Vec<R>> = forms.iter().filter_map(|f| if f.is_empty() { None } else { f.coords(&basis, &index) }).collect();
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(&ctx.coeff, rows).expect("rectangular").rank()
}

pub fn minors_and_independence<R: Field>(comp: &Compositions<R>, u: &PolyCtx<R>, alpha: &AlphaMatrix<R>) -> KleinResult<MinorReport<R>> {
    let minors = alpha.minors(u);
    let rank = span_rank(&minors, u, 2);
    let l = &alpha.coeffs[0][0];
    let point = probe_point::<R>(&comp.ctx.coeff);
    let mut block_ranks = [None; 4];
    for (k, slot) in block_ranks.iter_mut().enumerate() {
        let mut block = FormMatrix::zeros(&comp.ctx, 7, 7);
        for (j, lj) in l.iter().enumerate() {
            block = block.add(&comp.get(j, k).scale(&Poly::constant(&comp.ctx.ring, lj.clone())))?;
        }
        if !block.is_zero() {
            *slot = Some(block.eval(&point)?.rank());
        }
    }
    Ok(MinorReport { minors, rank, independent: rank == 3, block_ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;
    use crate::polylin::{PolyRing, Registry};

    fn x() -> PolyCtx<Rat> {
        PolyCtx::new(PolyRing::registry(Registry::X), ())
    }

    fn u() -> PolyCtx<Rat> {
        PolyCtx::new(PolyRing::registry(Registry::U), ())
    }

    #[test]
    fn representatives_as_listed() {
        let r = wedge_reps();
        assert_eq!(r.u[1].entries[0], Wedge3::basis([0, 1, 6], 1));
        assert_eq!(r.u[3].entries[0], Wedge3::basis([0, 4, 3], 1));
        assert!(r.u.iter().chain([&r.complement]).all(|w| w.is_shift_equivariant()));
        // e0∧e4∧e3 = −e0∧e3∧e4
        assert_eq!(r.u[3].entries[0].terms().collect::<Vec<_>>(), vec![([0, 3, 4], -1)]);
    }

    #[test]
    fn pairing_sign() {
        // e0..e5 ↦ sgn(0,1,2,3,4,5,6)·x6
        let a = Wedge3::basis([0, 1, 2], 1);
        let b = Wedge3::basis([3, 4, 5], 1);
        assert_eq!(a.pair(&b), [0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(b.pair(&a), [0, 0, 0, 0, 0, 0, -1]);
        assert_eq!(a.pair(&a), [0; 7]);
    }

    #[test]
    fn compositions_reproduce_b() {
        let c = x();
        let comp = Compositions::new(&c);
        let [b1, b2, b3] = printed_b(&c).unwrap();
        assert_eq!(comp.get(0, 1), &b1);
        assert_eq!(comp.get(0, 1).get(0, 1), &Poly::parse(&c, "x4").unwrap());
        assert_eq!(comp.get(0, 2), &b2);
        assert_eq!(comp.get(0, 3), &b3);
        assert_eq!(comp.get(2, 2), &b1.neg());
        assert_eq!(comp.get(3, 3), &b2.neg());
        assert_eq!(comp.get(1, 1), &b3.neg());
        assert!(comp.get(1, 2).is_zero());
        let mut nonzero = 0;
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(comp.get(i, j), comp.get(j, i));
                if !comp.get(i, j).is_zero() {
                    nonzero += 1;
                }
            }
        }
        // u0u1, u0u2, u0u3 both ways, plus three squares
        assert_eq!(nonzero, 9);
    }

    #[test]
    fn report_holds() {
        let r = b_matrix_report().unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn b_blocks_have_rank_six_at_probe() {
        let c = x();
        for b in printed_b(&c).unwrap() {
            assert!(b.is_skew());
            assert_eq!(b.eval(&probe_point::<Rat>(&())).unwrap().rank(), 6);
        }
    }

    fn alpha(rows: [[&str; 2]; 3]) -> AlphaMatrix<Rat> {
        let u = u();
        let m = FormMatrix::parse(&u, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        AlphaMatrix::from_forms(&m)
    }

    #[test]
    fn delta_examples() {
        let u = u();
        let [d1, _, d3] = delta_ops(&u).unwrap();
        assert_eq!(d1.apply(&Poly::parse(&u, "u0*u1").unwrap()), Poly::parse(&u, "1").unwrap());
        assert!(d3.apply(&Poly::parse(&u, "u1^2 + u0*u3").unwrap()).is_empty());
        assert_eq!(d1.apply(&Poly::parse(&u, "u2^2").unwrap()), Poly::parse(&u, "-1").unwrap());
        // minor u0·u1
        let a = alpha([["u0", "0"], ["0", "u1"], ["0", "0"]]);
        assert!(!delta_criterion(&u, &a).unwrap());
        assert!(delta_criterion(&u, &AlphaMatrix::zero(&())).unwrap());
    }

    #[test]
    fn composition_vanishes_with_criterion() {
        let (x, u) = (x(), u());
        let comp = Compositions::new(&x);
        let a = alpha([["u0", "0"], ["0", "u0"], ["0", "0"]]);
        assert!(alpha_compose(&comp, &u, &a).unwrap().is_zero());
        assert!(delta_criterion(&u, &a).unwrap());
        let b = alpha([["u0", "0"], ["0", "u1"], ["0", "0"]]);
        let ab = alpha_compose(&comp, &u, &b).unwrap();
        assert!(!ab.is_zero());
        for r in 0..21 {
            assert!(ab.get(r, r).is_empty());
        }
    }

    #[test]
    fn proportional_rows_are_dependent() {
        let (x, u) = (x(), u());
        let comp = Compositions::new(&x);
        let a = alpha([["u0", "u1"], ["2*u0", "2*u1"], ["u2", "u3"]]);
        let r = minors_and_independence(&comp, &u, &a).unwrap();
        assert!(!r.independent);
        assert_eq!(r.block_ranks, [None, Some(6), Some(6), Some(6)]);
    }
}
