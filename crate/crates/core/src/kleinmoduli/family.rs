use super::apolar::{eta_klein, l_basis};
use super::wedge::AlphaMatrix;
use super::{KleinError, KleinResult};
use crate::exactfield::Field;
use crate::groebner::same_span;
use crate::polylin::{FormMatrix, Matrix, Mono, Poly, PolyCtx, PolyRing, Registry};

fn point_label<R: Field>(t: &[R]) -> String {
    format!("({})", t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":"))
}

/// Ψ as a 3×7 matrix of forms in t0..t3; columns follow the ordered basis of L.
pub fn psi_matrix<R: Field>(t: &PolyCtx<R>) -> KleinResult<FormMatrix<R>> {
    let rows: [[&str; 7]; 3] = [
        ["-t0*t3", "t0*t1 + t2^2", "-t3^2", "0", "t1*t3", "-t2*t3", "0"],
        ["t1^2 + t0*t3", "-t2^2", "-t0*t2", "-t1*t2", "0", "t2*t3", "0"],
        ["t0*t1^2 + t1*t2^2 + t0^2*t3", "t2*t3^2", "t1^2*t3 + t0*t3^2", "0", "0", "t0*t2*t3", "t1*t2*t3"],
    ];
    Ok(FormMatrix::parse(t, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())?)
}

/// A 3-dimensional subspace of L, as the row space of a 3×7 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassPoint<R: Field> {
    pub rows: Matrix<R>,
}

impl<R: Field> GrassPoint<R> {
    pub fn new(rows: Matrix<R>) -> KleinResult<Self> {
        if rows.rows() != 3 || rows.cols() != 7 {
            return Err(crate::polylin::PolyError::Dimension { expected: 21, got: rows.rows() * rows.cols() }.into());
        }
        Ok(GrassPoint { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.rank()
    }

    pub fn is_genuine(&self) -> bool {
        self.rank() == 3
    }
}

fn nonzero<R: Field>(t: &[R]) -> KleinResult<()> {
    if t.len() != 4 {
        return Err(crate::polylin::PolyError::Dimension { expected: 4, got: t.len() }.into());
    }
    if t.iter().all(|c| c.is_zero()) {
        return Err(KleinError::ZeroParameter);
    }
    Ok(())
}

/// Ψ(t). Rank below 3 marks the indeterminacy locus; check [`GrassPoint::is_genuine`].
pub fn psi<R: Field>(ctx: &R::Ctx, t: &[R]) -> KleinResult<GrassPoint<R>> {
    nonzero(t)?;
    let tc = PolyCtx::<R>::new(PolyRing::registry(Registry::T), ctx.clone());
    GrassPoint::new(psi_matrix(&tc)?.eval(t)?)
}

/// The point spanned by the first three basis vectors, i.e. by
/// (u1u2, u2u3, u3u1).
pub fn equational_point<R: Field>(ctx: &R::Ctx) -> GrassPoint<R> {
    GrassPoint { rows: Matrix::from_fn(3, 7, ctx, |i, j| if i == j { R::one(ctx) } else { R::zero(ctx) }) }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership<R: Field> {
    /// For the row pairs (0,1), (0,2), (1,2): the y0, y1, y2 coefficients of rₐ·η·r_bᵀ.
    pub values: Vec<R>,
    pub holds: bool,
}

/// Whether Λ²E lies in the kernel of η_klein.
pub fn grass_membership<R: Field>(e: &GrassPoint<R>) -> KleinResult<Membership<R>> {
    let r = e.rank();
    if r != 3 {
        return Err(KleinError::RankDeficient(r));
    }
    let ctx = e.rows.ctx().clone();
    let y = PolyCtx::<R>::new(PolyRing::registry(Registry::Y), ctx.clone());
    let eta = eta_klein(&y)?;
    let mut values = Vec::with_capacity(9);
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let mut form = Poly::zero(&y.ring, &ctx);
        for i in 0..7 {
            for j in 0..7 {
                let c = e.rows[(a, i)].mul(&e.rows[(b, j)]);
                if !c.is_zero() {
                    form = form.add(&eta.get(i, j).scale(&c));
                }
            }
        }
        values.extend((0..3).map(|k| form.coeff(&Mono::var(k))));
    }
    let holds = values.iter().all(|v| v.is_zero());
    Ok(Membership { values, holds })
}

/// The 4×3 matrix of bihomogeneous forms in (t, u); its last row is (t1, t2, t3).
pub fn alpha_t_matrix<R: Field>(tu: &PolyCtx<R>) -> KleinResult<FormMatrix<R>> {
    let rows: [[&str; 3]; 4] = [
        ["t0*u1 + t2*u2", "-t2*u0", "-t1*u1"],
        ["t2*u2", "-t0*u2 - t3*u3", "t3*u0"],
        ["u1", "u2", "u3"],
        ["t1", "t2", "t3"],
    ];
    Ok(FormMatrix::parse(tu, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())?)
}

#[derive(Clone, Debug)]
pub struct AlphaFamily<R: Field> {
    /// The 4×3 matrix at t, entries in u0..u3.
    pub full: FormMatrix<R>,
    /// 3×2 matrix of linear forms left after clearing the last row.
    pub alpha: AlphaMatrix<R>,
}

/// α(t): the 4×3 matrix specialised at t, and the 3×2 matrix obtained by
/// column operations that turn the last row into (0, 0, t_p).
pub fn alpha_t<R: Field>(ctx: &R::Ctx, t: &[R]) -> KleinResult<AlphaFamily<R>> {
    nonzero(t)?;
    let Some(p) = (1..4).find(|&k| !t[k].is_zero()) else {
        return Err(KleinError::DegenerateParameter(point_label(t)));
    };
    let tu_ring = PolyRing::product(&[Registry::T, Registry::U]);
    let tu = PolyCtx::<R>::new(tu_ring, ctx.clone());
    let u = PolyCtx::<R>::new(PolyRing::registry(Registry::U), ctx.clone());
    let images: Vec<Poly<R>> = t.iter().map(|c| Poly::constant(&u.ring, c.clone())).chain(Poly::vars(&u.ring, ctx)).collect();
    let full = alpha_t_matrix(&tu)?.map_entries(&u, |e| e.compose(&images))?;
    let pivot = p - 1;
    let mut cols = Vec::new();
    for c in (0..3).filter(|&c| c != pivot) {
        let factor = t[c + 1].div(&t[p])?;
        cols.push((0..3).map(|r| full.get(r, c).sub(&full.get(r, pivot).scale(&factor))).collect::<Vec<_>>());
    }
    let rows = (0..3).map(|r| vec![cols[0][r].clone(), cols[1][r].clone()]).collect();
    let alpha = AlphaMatrix::from_forms(&FormMatrix::from_rows(&u, rows)?);
    Ok(AlphaFamily { full, alpha })
}

/// Whether the minors of α(t) span the row space of Ψ(t) read against L in
/// the given basis order.
pub fn minor_span_matches_psi<R: Field>(ctx: &R::Ctx, t: &[R], order: &[usize; 7]) -> KleinResult<bool> {
    let u = PolyCtx::<R>::new(PolyRing::registry(Registry::U), ctx.clone());
    let fam = alpha_t(ctx, t)?;
    let e = psi(ctx, t)?;
    let f = l_basis(&u)?;
    let from_psi: Vec<Poly<R>> = (0..3)
        .map(|i| (0..7).fold(Poly::zero(&u.ring, ctx), |acc, j| acc.add(&f[order[j]].scale(&e.rows[(i, j)]))))
        .collect();
    Ok(same_span(&fam.alpha.minors(&u), &from_psi))
}

#[cfg(test)]
mod tests {
    use super::super::apolar::{L_ORDER, SPEC_L_ORDER};
    use super::super::wedge::delta_criterion;
    use super::*;
    use crate::exactfield::Rat;
    use crate::groebner::{free_resolution, hilbert_burch, BettiTable, GbConfig, GradedIdeal};

    fn t(v: [i64; 4]) -> Vec<Rat> {
        v.iter().map(|&c| Rat::int(c)).collect()
    }

    #[test]
    fn psi_at_ones() {
        let e = psi(&(), &t([1, 1, 1, 1])).unwrap();
        let row: Vec<Rat> = e.rows.row(0).to_vec();
        assert_eq!(row, t([-1, 2, -1, 0]).into_iter().chain(t([1, -1, 0, 0]).into_iter().take(3)).collect::<Vec<_>>());
        assert!(e.is_genuine());
        assert!(!psi(&(), &t([1, 0, 0, 0])).unwrap().is_genuine());
        assert!(matches!(psi(&(), &t([0, 0, 0, 0])), Err(KleinError::ZeroParameter)));
    }

    #[test]
    fn memberships() {
        assert!(grass_membership(&psi(&(), &t([1, 1, 1, 1])).unwrap()).unwrap().holds);
        assert!(grass_membership(&psi(&(), &t([2, -1, 3, 5])).unwrap()).unwrap().holds);
        assert!(grass_membership(&equational_point::<Rat>(&())).unwrap().holds);
        let m = Matrix::from_fn(3, 7, &(), |i, j| Rat::int(((i * 7 + j) * (i * 7 + j) % 11) as i64 - 5));
        let r = grass_membership(&GrassPoint::new(m).unwrap()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.values.len(), 9);
    }

    #[test]
    fn alpha_family_at_ones() {
        let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
        let tt = t([1, 1, 1, 1]);
        let fam = alpha_t(&(), &tt).unwrap();
        assert!(delta_criterion(&u, &fam.alpha).unwrap());
        assert!(minor_span_matches_psi(&(), &tt, &L_ORDER).unwrap());
        assert!(!minor_span_matches_psi(&(), &tt, &SPEC_L_ORDER).unwrap());
        let i = GradedIdeal::new(&u, fam.alpha.minors(&u).to_vec()).unwrap();
        let r = free_resolution(&i, &GbConfig::default()).unwrap();
        assert_eq!(r.betti, BettiTable::from_rows(&[&[1], &[0, 3, 2]]));
        hilbert_burch(&i, &GbConfig::default()).unwrap();
    }

    #[test]
    fn degenerate_parameter() {
        assert!(matches!(alpha_t(&(), &t([1, 0, 0, 0])), Err(KleinError::DegenerateParameter(_))));
    }
}
