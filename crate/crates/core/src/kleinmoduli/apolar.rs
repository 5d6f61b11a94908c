use serde::Serialize;

use super::wedge::{delta_ops, span_rank};
use super::KleinResult;
use crate::exactfield::{Cyc7, DualNum, Field, Rat, Ring};
use crate::groebner::{buchberger, GbConfig, GradedIdeal};
use crate::heisrep::{restrict_to, NElem};
use crate::polylin::{kernel_of_operators, DiffOp, FormMatrix, Matrix, Mono, Poly, PolyCtx, PolyRing, Registry};

/// Positions of f_j in the ordered basis of L = J₂: (f3, f1, f2, f4, f6, f5, f0),
/// the order of the generator list of J.
pub const L_ORDER: [usize; 7] = [3, 1, 2, 4, 6, 5, 0];

/// The order (f3, f1, f2, f4, f5, f6, f0); spans computed with it disagree.
pub const SPEC_L_ORDER: [usize; 7] = [3, 1, 2, 4, 5, 6, 0];

/// f_0..f_6 (indexed by j).
pub fn l_basis<R: Field>(u: &PolyCtx<R>) -> KleinResult<Vec<Poly<R>>> {
    ["u0^2", "u2*u3", "u3*u1", "u1*u2", "u0*u3 + u1^2", "u0*u1 + u2^2", "u0*u2 + u3^2"]
        .iter()
        .map(|s| Ok(Poly::parse(u, s)?))
        .collect()
}

/// v_1, v_2, v_3 spanning the complement of L in S²U′.
pub fn w_basis<R: Field>(u: &PolyCtx<R>) -> KleinResult<Vec<Poly<R>>> {
    ["u0*u2 - u3^2", "u0*u1 - u2^2", "u0*u3 - u1^2"].iter().map(|s| Ok(Poly::parse(u, s)?)).collect()
}

#[derive(Clone, Debug)]
pub struct JIdeal<R: Field> {
    pub ideal: GradedIdeal<R>,
    /// Generators in the order of [`L_ORDER`].
    pub generators: Vec<Poly<R>>,
    pub kernel: Vec<Poly<R>>,
    pub kernel_equals_generators: bool,
    /// dim span(f_0..f_6, v_1..v_3); 10 when S²U′ = L ⊕ W′.
    pub split_rank: usize,
}

pub fn j_ideal<R: Field>(u: &PolyCtx<R>) -> KleinResult<JIdeal<R>> {
    let f = l_basis(u)?;
    let generators: Vec<Poly<R>> = L_ORDER.iter().map(|&j| f[j].clone()).collect();
    let kernel = kernel_of_operators(&u.ring, &u.coeff, &delta_ops(u)?, 2);
    let both: Vec<Poly<R>> = kernel.iter().chain(&generators).cloned().collect();
    let kernel_equals_generators = kernel.len() == 7 && span_rank(&generators, u, 2) == 7 && span_rank(&both, u, 2) == 7;
    let split: Vec<Poly<R>> = f.iter().cloned().chain(w_basis(u)?).collect();
    Ok(JIdeal { ideal: GradedIdeal::new(u, generators.clone())?, generators, kernel, kernel_equals_generators, split_rank: span_rank(&split, u, 2) })
}

/// y0³y1 + y1³y2 + y2³y0, with (v1, v2, v3) = (y0, y1, y2).
pub fn klein_quartic<R: Field>(y: &PolyCtx<R>) -> KleinResult<Poly<R>> {
    Ok(Poly::parse(y, "y0^3*y1 + y1^3*y2 + y2^3*y0")?)
}

/// The alternating 7×7 matrix of linear forms in y0, y1, y2.
pub fn eta_klein<R: Field>(y: &PolyCtx<R>) -> KleinResult<FormMatrix<R>> {
    let rows: [[&str; 7]; 7] = [
        ["0", "0", "0", "0", "0", "-y1", "y0"],
        ["0", "0", "0", "0", "-y2", "0", "y1"],
        ["0", "0", "0", "-y0", "0", "0", "y2"],
        ["0", "0", "y0", "0", "y1", "-y2", "0"],
        ["0", "y2", "0", "-y1", "0", "y0", "0"],
        ["y1", "0", "0", "y2", "-y0", "0", "0"],
        ["-y0", "-y1", "-y2", "0", "0", "0", "0"],
    ];
    Ok(FormMatrix::parse(y, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())?)
}

fn basis_columns(cols: &[(usize, usize)]) -> Matrix<Cyc7> {
    let mut b = Matrix::zeros(7, cols.len(), &());
    for (j, &(p, m)) in cols.iter().enumerate() {
        b[(p, j)] = Cyc7::one();
        b[(m, j)] = Cyc7::int(-1);
    }
    b
}

/// W′ ⊂ V with basis (e1−e6, e2−e5, e4−e3).
pub fn w_prime_basis() -> Matrix<Cyc7> {
    basis_columns(&[(1, 6), (2, 5), (4, 3)])
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    /// (generator, f_klein fixed) in the basis (e1−e6, e2−e5, e4−e3).
    pub fixed: Vec<(String, bool)>,
    /// The same with the basis order (e1−e6, e4−e3, e2−e5).
    pub fixed_in_listed_order: Vec<(String, bool)>,
    /// Dimension of the invariant quartics in S⁴W′.
    pub invariant_quartics: usize,
    pub invariant_is_klein: bool,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.fixed.iter().all(|f| f.1) && self.invariant_quartics == 1 && self.invariant_is_klein
    }
}

/// μ⁺, ν⁺, δ⁺ restricted to W′ act on quartics in (v1, v2, v3) by v_i ↦ Σ_j R_ji v_j.
pub fn klein_invariance() -> KleinResult<InvarianceReport> {
    let y = PolyCtx::<Cyc7>::new(PolyRing::registry(Registry::Y), ());
    let f = klein_quartic(&y)?;
    let gens = [("mu+", NElem::mu()), ("nu+", NElem::nu()), ("delta+", NElem::delta())];
    let check = |basis: &Matrix<Cyc7>| -> KleinResult<Vec<(String, bool, Matrix<Cyc7>)>> {
        gens.iter()
            .map(|(name, g)| {
                let r = restrict_to(&g.matrix, basis, name)?;
                Ok((name.to_string(), f.substitute(&r)? == f, r))
            })
            .collect()
    };
    let adopted = check(&w_prime_basis())?;
    let listed = check(&basis_columns(&[(1, 6), (4, 3), (2, 5)]))?;

    // invariants of S⁴: common kernel of g − 1 on the 15 quartic monomials
    let monos = y.ring.monomials(4);
    let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows: Vec<Vec<Cyc7>> = Vec::new();
    for (_, _, r) in &adopted {
        let images: Vec<Vec<Cyc7>> = monos
            .iter()
            .map(|m| Poly::monomial(&y.ring, *m, Cyc7::one()).substitute(r).map(|p| p.coords(&monos, &index).expect("degree 4")))
            .collect::<Result<_, _>>()?;
        // row i of (g − 1)ᵀ: coefficient functional on the image of each monomial
        for i in 0..monos.len() {
            rows.push((0..monos.len()).map(|k| if k == i { images[k][i].clone() - Cyc7::one() } else { images[k][i].clone() }).collect());
        }
    }
    let kernel = Matrix::from_rows(&(), rows)?.null_space();
    let invariant_is_klein = kernel.len() == 1 && {
        let p = Poly::from_coords(&y.ring, &(), &monos, &kernel[0]);
        span_rank(&[p, f.clone()], &y, 4) == 1
    };
    Ok(InvarianceReport {
        fixed: adopted.into_iter().map(|(n, b, _)| (n, b)).collect(),
        fixed_in_listed_order: listed.into_iter().map(|(n, b, _)| (n, b)).collect(),
        invariant_quartics: kernel.len(),
        invariant_is_klein,
    })
}

#[derive(Clone, Debug)]
pub struct PfaffianReport {
    pub pfaffians: Vec<Poly<Rat>>,
    pub annihilate: bool,
    /// dim ker(S³ → S¹, g ↦ g(∂)f_klein).
    pub apolar_kernel_dim: usize,
    pub pfaffian_span_dim: usize,
    pub spans_kernel: bool,
    /// Hilbert function of k[y]/(Pfaffians) in degrees 0..=6.
    pub hilbert: Vec<i64>,
    pub symmetric: bool,
}

pub fn pfaffian_apolarity() -> KleinResult<PfaffianReport> {
    let y = PolyCtx::<Rat>::new(PolyRing::registry(Registry::Y), ());
    let f = klein_quartic(&y)?;
    let pfaffians = eta_klein(&y)?.principal_pfaffians()?;
    let annihilate = pfaffians.iter().all(|p| DiffOp::new(p.clone()).apply(&f).is_empty());
    let cubics = y.ring.monomials(3);
    let images: Vec<Poly<Rat>> = cubics.iter().map(|m| DiffOp::new(Poly::monomial(&y.ring, *m, Rat::one())).apply(&f)).collect();
    let rank = span_rank(&images, &y, 1);
    let apolar_kernel_dim = cubics.len() - rank;
    let pfaffian_span_dim = span_rank(&pfaffians, &y, 3);
    let spans_kernel = annihilate && pfaffian_span_dim == apolar_kernel_dim;
    let gb = buchberger(&GradedIdeal::new(&y, pfaffians.clone())?, &GbConfig::default())?;
    let hilbert = gb.hilbert(6).values;
    let top = hilbert.iter().rposition(|&h| h != 0).unwrap_or(0);
    let symmetric = (0..=top).all(|i| hilbert[i] == hilbert[top - i]);
    Ok(PfaffianReport { pfaffians, annihilate, apolar_kernel_dim, pfaffian_span_dim, spans_kernel, hilbert, symmetric })
}

/// Symmetric matrices of Δ₁, Δ₂, Δ₃: a mixed term c·∂_k∂_l contributes c/2 at
/// (k, l) and (l, k), a square c·∂_k² contributes c at (k, k).
pub fn net_matrices() -> KleinResult<[Matrix<Rat>; 3]> {
    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let ops = delta_ops(&u)?;
    Ok(ops.map(|d| {
        let mut m = Matrix::zeros(4, 4, &());
        for (mono, c) in d.symbol().terms() {
            let idx: Vec<usize> = mono.support().flat_map(|i| std::iter::repeat_n(i, mono.exp(i) as usize)).collect();
            let (k, l) = (idx[0], idx[1]);
            if k == l {
                m[(k, k)] = c.clone();
            } else {
                let h = c.mul(&Rat::half());
                m[(k, l)] = h.clone();
                m[(l, k)] = h;
            }
        }
        m
    }))
}

#[derive(Clone, Debug)]
pub struct NetDiscriminant {
    pub det: Poly<Rat>,
    /// c with det = c·f_klein, if proportional.
    pub scalar: Option<Rat>,
}

/// det(y0·M₁ + y1·M₂ + y2·M₃).
pub fn net_discriminant() -> KleinResult<NetDiscriminant> {
    let y = PolyCtx::<Rat>::new(PolyRing::registry(Registry::Y), ());
    let ms = net_matrices()?;
    let mut net = FormMatrix::zeros(&y, 4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let e = (0..3).fold(Poly::zero(&y.ring, &()), |acc, k| acc.add(&Poly::monomial(&y.ring, Mono::var(k), ms[k][(i, j)].clone())));
            net.set(i, j, e);
        }
    }
    let det = net.det()?;
    let f = klein_quartic(&y)?;
    let lead = f.lead().expect("nonzero").0;
    let c = det.coeff(&lead);
    let scalar = (!c.is_zero() && det == f.scale(&c)).then_some(c);
    Ok(NetDiscriminant { det, scalar })
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonReport {
    pub holds: bool,
    pub constant_part_vanishes: bool,
    pub lhs: String,
}

/// Σ (v_i + ε v_{i+1})⁴ − v_i⁴ = 4ε·f_klein over Q[ε]/(ε²).
pub fn epsilon_identity() -> KleinResult<EpsilonReport> {
    let ring = PolyRing::registry(Registry::Y);
    let v = Poly::<DualNum<Rat>>::vars(&ring, &());
    let eps = Poly::constant(&ring, DualNum::eps(&()));
    let mut lhs = Poly::zero(&ring, &());
    for i in 0..3 {
        let shifted = v[i].add(&eps.mul(&v[(i + 1) % 3]));
        lhs = lhs.add(&shifted.pow(4)).sub(&v[i].pow(4));
    }
    let f = klein_quartic(&PolyCtx::<Rat>::new(ring.clone(), ()))?;
    let rhs = f.map_coeffs(&(), |c| DualNum::new(Rat::zero(), c.mul(&Rat::int(4))));
    let constant_part_vanishes = lhs.terms().iter().all(|(_, c)| c.a.is_zero());
    Ok(EpsilonReport { holds: lhs == rhs, constant_part_vanishes, lhs: lhs.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{free_resolution, BettiTable};

    fn u() -> PolyCtx<Rat> {
        PolyCtx::new(PolyRing::registry(Registry::U), ())
    }

    #[test]
    fn j_is_the_apolar_kernel() {
        let u = u();
        let j = j_ideal(&u).unwrap();
        assert_eq!(j.kernel.len(), 7);
        assert!(j.kernel_equals_generators);
        assert_eq!(j.split_rank, 10);
        let f = l_basis(&u).unwrap();
        assert_eq!(f[4], Poly::parse(&u, "u0*u3 + u1^2").unwrap());
        assert_eq!(w_basis(&u).unwrap()[2], Poly::parse(&u, "u0*u3 - u1^2").unwrap());
        // linear forms are all killed, and without operators everything is
        assert_eq!(kernel_of_operators(&u.ring, &(), &delta_ops(&u).unwrap(), 1).len(), 4);
        assert_eq!(kernel_of_operators::<Rat>(&u.ring, &(), &[], 2).len(), 10);
    }

    #[test]
    fn j_betti_table_over_q() {
        let j = j_ideal(&u()).unwrap();
        let res = free_resolution(&j.ideal, &GbConfig::with_degree(14)).unwrap();
        assert!(res.complete);
        assert_eq!(res.betti, BettiTable::from_rows(&[&[1], &[0, 7, 8], &[0, 0, 3, 8, 3]]));
        let gb = buchberger(&j.ideal, &GbConfig::default()).unwrap();
        assert_eq!(&gb.hilbert(4).values[..4], &[1, 4, 3, 0]);
    }

    #[test]
    fn klein_quartic_invariance() {
        let r = klein_invariance().unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(!r.fixed_in_listed_order.iter().all(|f| f.1));
    }

    #[test]
    fn eta_is_alternating() {
        let y = PolyCtx::<Rat>::new(PolyRing::registry(Registry::Y), ());
        assert!(eta_klein(&y).unwrap().is_skew());
    }

    #[test]
    fn pfaffians_are_apolar() {
        let r = pfaffian_apolarity().unwrap();
        assert!(r.annihilate);
        assert_eq!(r.apolar_kernel_dim, 7);
        assert_eq!(r.pfaffian_span_dim, 7);
        assert_eq!(r.hilbert, vec![1, 3, 6, 3, 1, 0, 0]);
        assert!(r.symmetric);
    }

    #[test]
    fn net_matrix_entries() {
        let [_, _, m3] = net_matrices().unwrap();
        assert_eq!(m3[(0, 3)], Rat::half());
        assert_eq!(m3[(1, 1)], Rat::new(-1, 2));
    }

    #[test]
    fn discriminant_is_klein() {
        let d = net_discriminant().unwrap();
        assert_eq!(d.scalar, Some(Rat::new(-1, 16)));
    }

    #[test]
    fn discriminant_scales_by_fourth_power() {
        let y = PolyCtx::<Rat>::new(PolyRing::registry(Registry::Y), ());
        let lam = Rat::int(3);
        let ms = net_matrices().unwrap();
        let mut net = FormMatrix::zeros(&y, 4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let e = (0..3).fold(Poly::zero(&y.ring, &()), |acc, k| acc.add(&Poly::monomial(&y.ring, Mono::var(k), ms[k][(i, j)].mul(&lam))));
                net.set(i, j, e);
            }
        }
        let d = net_discriminant().unwrap();
        assert_eq!(net.det().unwrap(), d.det.scale(&lam.pow(4)));
    }

    #[test]
    fn epsilon_identity_holds() {
        let r = epsilon_identity().unwrap();
        assert!(r.holds && r.constant_part_vanishes);
        let ring = PolyRing::registry(Registry::Y);
        let v = Poly::<DualNum<Rat>>::vars(&ring, &());
        let eps = Poly::constant(&ring, DualNum::eps(&()));
        let single = v[0].add(&eps.mul(&v[1])).pow(4).sub(&v[0].pow(4));
        let expect = Poly::monomial(&ring, Mono::from_exps(&[3, 1, 0]), DualNum::new(Rat::zero(), Rat::int(4)));
        assert_eq!(single, expect);
    }
}
