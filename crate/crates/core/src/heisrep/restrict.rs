use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::character::Character;
use super::helem::HElem;
use super::monomat::MonoMat;
use super::nelem::NElem;
use super::sl2::closure_words;
use super::tables::G7Table;
use super::{HeisError, HeisResult};
use crate::exactfield::{gauss_sum, Cyc7, FieldElem, Rat};
use crate::exec::Exec;
use crate::polylin::{Matrix, Mono, Poly};

/// Basis of V⁺ in the displayed order: e1−e6, e4−e3, e2−e5.
pub fn v_plus_basis() -> Matrix<Cyc7> {
    basis_from_columns(&[&[(1, 1), (6, -1)], &[(4, 1), (3, -1)], &[(2, 1), (5, -1)]])
}

/// Basis of V⁻: 2e0, e1+e6, e4+e3, e2+e5.
pub fn v_minus_basis() -> Matrix<Cyc7> {
    basis_from_columns(&[&[(0, 2)], &[(1, 1), (6, 1)], &[(4, 1), (3, 1)], &[(2, 1), (5, 1)]])
}

fn basis_from_columns(cols: &[&[(usize, i64)]]) -> Matrix<Cyc7> {
    let mut b = Matrix::zeros(7, cols.len(), &());
    for (j, col) in cols.iter().enumerate() {
        for &(i, c) in col.iter() {
            b[(i, j)] = Cyc7::int(c);
        }
    }
    b
}

/// R with g·B = B·R, or an error if the column span of B is not g-stable.
pub fn restrict_to(g: &Matrix<Cyc7>, basis: &Matrix<Cyc7>, name: &str) -> HeisResult<Matrix<Cyc7>> {
    let k = basis.cols();
    let image = g.mul(basis)?;
    // solve B·R = image column by column through the augmented echelon form
    let aug = Matrix::from_fn(basis.rows(), k + image.cols(), &(), |i, j| if j < k { basis[(i, j)].clone() } else { image[(i, j - k)].clone() });
    let e = aug.rref();
    if e.pivots.iter().any(|&p| p >= k) || e.pivots.len() != k {
        return Err(HeisError::Unstable(name.to_string()));
    }
    Ok(Matrix::from_fn(k, image.cols(), &(), |i, j| e.matrix[(i, k + j)].clone()))
}

#[derive(Clone, Debug)]
pub struct Restriction {
    pub name: &'static str,
    pub computed: Matrix<Cyc7>,
    pub printed: Matrix<Cyc7>,
}

impl Restriction {
    pub fn matches(&self) -> bool {
        self.computed == self.printed
    }
}

fn z(k: i64) -> Cyc7 {
    Cyc7::zeta_pow(k)
}

/// The displayed μ±, ν±, δ±.
pub fn printed_restrictions() -> Vec<(&'static str, Matrix<Cyc7>)> {
    let c = gauss_sum().scale(&Rat::new(1, 7));
    let i = |n: i64| Cyc7::int(n);
    let lam = [z(1) - z(6), z(4) - z(3), z(2) - z(5)];
    let eta = [z(1) + z(6), z(4) + z(3), z(2) + z(5)];
    let mk = |rows: Vec<Vec<Cyc7>>| Matrix::from_rows(&(), rows).expect("rectangular");
    let scaled = |m: Matrix<Cyc7>| m.scale(&c);
    vec![
        ("mu+", mk(vec![vec![i(0), i(0), i(1)], vec![i(1), i(0), i(0)], vec![i(0), i(1), i(0)]])),
        ("nu+", mk(vec![vec![z(1), i(0), i(0)], vec![i(0), z(2), i(0)], vec![i(0), i(0), z(4)]])),
        (
            "delta+",
            scaled(mk(vec![
                vec![lam[0].clone(), lam[1].clone(), lam[2].clone()],
                vec![lam[1].clone(), lam[2].clone(), lam[0].clone()],
                vec![lam[2].clone(), lam[0].clone(), lam[1].clone()],
            ])),
        ),
        (
            "mu-",
            mk(vec![vec![i(1), i(0), i(0), i(0)], vec![i(0), i(0), i(0), i(1)], vec![i(0), i(1), i(0), i(0)], vec![i(0), i(0), i(1), i(0)]]),
        ),
        (
            "nu-",
            mk(vec![vec![i(1), i(0), i(0), i(0)], vec![i(0), z(1), i(0), i(0)], vec![i(0), i(0), z(2), i(0)], vec![i(0), i(0), i(0), z(4)]]),
        ),
        (
            "delta-",
            scaled(mk(vec![
                vec![i(1), i(1), i(1), i(1)],
                vec![i(2), eta[0].clone(), eta[1].clone(), eta[2].clone()],
                vec![i(2), eta[1].clone(), eta[2].clone(), eta[0].clone()],
                vec![i(2), eta[2].clone(), eta[0].clone(), eta[1].clone()],
            ])),
        ),
    ]
}

/// Restrictions of μ, ν, δ (acting on e_0..e_6) to V⁺ and V⁻, next to the
/// displayed matrices.
pub fn restriction_matrices() -> HeisResult<Vec<Restriction>> {
    let gens = [NElem::mu(), NElem::nu(), NElem::delta()];
    let printed: HashMap<&str, Matrix<Cyc7>> = printed_restrictions().into_iter().collect();
    let mut out = Vec::new();
    for (sign, basis) in [("+", v_plus_basis()), ("-", v_minus_basis())] {
        for (g, base) in gens.iter().zip(["mu", "nu", "delta"]) {
            let name: &'static str = match (base, sign) {
                ("mu", "+") => "mu+",
                ("nu", "+") => "nu+",
                ("delta", "+") => "delta+",
                ("mu", _) => "mu-",
                ("nu", _) => "nu-",
                _ => "delta-",
            };
            let computed = restrict_to(&g.matrix, &basis, name)?;
            out.push(Restriction { name, computed, printed: printed[name].clone() });
        }
    }
    Ok(out)
}

/// Traces of the action f ↦ f(x·A) of each matrix on the span of `basis`
/// (substitution x_j ↦ Σ_i A_ij x_i). Fails, naming the element, if an
/// image leaves the span.
pub fn subspace_character(basis: &[Poly<Cyc7>], elements: &[(String, Matrix<Cyc7>)], exec: Exec) -> HeisResult<Vec<Cyc7>> {
    let k = basis.len();
    if k == 0 {
        return Ok(vec![Cyc7::zero(); elements.len()]);
    }
    let mut seen = HashSet::new();
    let monos: Vec<Mono> = basis.iter().flat_map(|p| p.terms().iter().map(|(m, _)| *m)).filter(|m| seen.insert(*m)).collect();
    let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let rows: Vec<Vec<Cyc7>> = basis.iter().map(|p| p.coords(&monos, &index).expect("own support")).collect();
    let b = Matrix::from_rows(&(), rows)?;
    let e = b.rref();
    if e.pivots.len() != k {
        return Err(HeisError::Unstable("basis is linearly dependent".into()));
    }
    // coordinates in the basis are read off on the pivot monomials
    let bp = Matrix::from_fn(k, k, &(), |i, j| b[(i, e.pivots[j])].clone());
    let bp_inv = bp.inverse()?;
    let res: Vec<HeisResult<Cyc7>> = exec.map(elements, |(name, a)| {
        let mut tr = Cyc7::zero();
        for (i, f) in basis.iter().enumerate() {
            let g = f.substitute(a)?;
            let v = g.coords(&monos, &index).ok_or_else(|| HeisError::Unstable(name.clone()))?;
            let vp: Vec<Cyc7> = e.pivots.iter().map(|&p| v[p].clone()).collect();
            // c = vp · bp⁻¹ ; check c·B = v
            let c: Vec<Cyc7> = (0..k).map(|j| (0..k).fold(Cyc7::zero(), |acc, t| acc + &vp[t] * &bp_inv[(t, j)])).collect();
            for (col, want) in v.iter().enumerate() {
                let got = (0..k).fold(Cyc7::zero(), |acc, t| acc + &c[t] * &b[(t, col)]);
                if &got != want {
                    return Err(HeisError::Unstable(name.clone()));
                }
            }
            tr = tr + c[i].clone();
        }
        Ok(tr)
    });
    res.into_iter().collect()
}

/// G₇-character of a span of forms in x0..x6, with group elements acting on
/// coordinates through (g⁻¹)ᵀ.
pub fn g7_subspace_character(g7: &G7Table, basis: &[Poly<Cyc7>], exec: Exec) -> HeisResult<Character> {
    let elements: Vec<(String, Matrix<Cyc7>)> = g7.classes.reps.iter().map(|r| (r.to_string(), r.to_monomat().dual_matrix())).collect();
    let tr = subspace_character(basis, &elements, exec)?;
    Ok(Character::new(tr.into_iter().map(FieldElem::from).collect()))
}

/// Result of [`build_heisenberg`].
#[derive(Clone, Debug, Serialize)]
pub struct HeisenbergReport {
    pub phi_twist: i64,
    pub cocycle: i64,
    pub pairs_checked: usize,
    pub h7_order: usize,
    pub g7_order: usize,
    pub commutator_central_order_7: bool,
    pub sigma_tau_is_zeta_tau_sigma: bool,
}

/// Cross-checks the abstract law against monomial matrices on all of
/// H₇ × H₇ (and the ι-coset), and measures the generated matrix groups.
pub fn build_heisenberg(exec: Exec) -> HeisResult<HeisenbergReport> {
    let all = HElem::all();
    let mats: HashMap<HElem, MonoMat> = all.iter().map(|g| (*g, g.to_monomat())).collect();
    let failures: Vec<Option<(HElem, HElem)>> = exec.map(&all, |a| {
        let ma = mats[a];
        all.iter().find(|b| mats[&a.mul(b)] != ma.mul(&mats[b])).map(|b| (*a, *b))
    });
    if let Some((left, right)) = failures.into_iter().flatten().next() {
        return Err(HeisError::LawMismatch { left, right });
    }
    let s = MonoMat::sigma();
    let t = MonoMat::tau();
    let h7 = closure_words(MonoMat::identity(), &[s, t], |a, b| a.mul(b)).len();
    let g7 = closure_words(MonoMat::identity(), &[s, t, MonoMat::iota()], |a, b| a.mul(b)).len();
    let comm = s.mul(&t).mul(&s.inv()).mul(&t.inv());
    let central = comm.is_scalar() && comm.mul(&s) == s.mul(&comm) && comm.mul(&t) == t.mul(&comm);
    let report = HeisenbergReport {
        phi_twist: super::PHI_TWIST,
        cocycle: super::COCYCLE,
        pairs_checked: all.len() * all.len(),
        h7_order: h7,
        g7_order: g7,
        commutator_central_order_7: central && comm.order() == 7,
        sigma_tau_is_zeta_tau_sigma: s.mul(&t) == MonoMat::central(1).mul(&t.mul(&s)),
    };
    if h7 != 343 {
        return Err(HeisError::GroupOrder { expected: 343, got: h7 });
    }
    if g7 != 686 {
        return Err(HeisError::GroupOrder { expected: 686, got: g7 });
    }
    Ok(report)
}
