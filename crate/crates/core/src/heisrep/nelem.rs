use std::collections::HashMap;

use super::monomat::MonoMat;
use super::sl2::Sl2;
use super::{HeisError, HeisResult};
use crate::exactfield::{gauss_sum, Cyc7, Rat, Ring};
use crate::polylin::Matrix;

/// Element of the normalizer N ⊂ SL₇(Q(ζ₇)) as an explicit matrix on the
/// basis e_0..e_6, with the generator word it came from when known.
#[derive(Clone, Debug, PartialEq)]
pub struct NElem {
    pub matrix: Matrix<Cyc7>,
    pub word: Option<String>,
}

impl NElem {
    pub fn new(matrix: Matrix<Cyc7>, word: impl Into<String>) -> NElem {
        NElem { matrix, word: Some(word.into()) }
    }

    pub fn mono(m: &MonoMat, word: &str) -> NElem {
        NElem::new(m.to_matrix(), word)
    }

    pub fn sigma() -> NElem {
        NElem::mono(&MonoMat::sigma(), "sigma")
    }

    pub fn tau() -> NElem {
        NElem::mono(&MonoMat::tau(), "tau")
    }

    pub fn iota() -> NElem {
        NElem::mono(&MonoMat::iota(), "iota")
    }

    pub fn mu() -> NElem {
        NElem::mono(&MonoMat::mu(), "mu")
    }

    pub fn nu() -> NElem {
        NElem::mono(&MonoMat::nu(), "nu")
    }

    /// δ e_j = (i/√7) Σ_k ζ^{kj} e_k, with i/√7 = g/7 for the Gauss sum g.
    pub fn delta() -> NElem {
        NElem::new(delta_matrix(), "delta")
    }

    pub fn mul(&self, o: &NElem) -> NElem {
        let word = match (&self.word, &o.word) {
            (Some(a), Some(b)) => Some(format!("{a}*{b}")),
            _ => None,
        };
        NElem { matrix: self.matrix.mul(&o.matrix).expect("7x7"), word }
    }

    pub fn trace(&self) -> Cyc7 {
        self.matrix.trace()
    }

    pub fn det(&self) -> Cyc7 {
        self.matrix.det().expect("square")
    }

    /// (g⁻¹)ᵀ, the action on coordinates.
    pub fn dual(&self) -> HeisResult<Matrix<Cyc7>> {
        Ok(self.matrix.inverse()?.transpose())
    }
}

pub fn delta_matrix() -> Matrix<Cyc7> {
    let c = gauss_sum().scale(&Rat::new(1, 7));
    Matrix::from_fn(7, 7, &(), |k, j| &c * &Cyc7::zeta_pow((k * j) as i64))
}

/// N·M for a monomial M: column j of the product is coef_M(j) times column
/// target_M(j) of N.
pub fn dense_mul_mono(n: &Matrix<Cyc7>, m: &MonoMat) -> Matrix<Cyc7> {
    Matrix::from_fn(7, 7, &(), |i, j| &n[(i, m.target(j))] * &m.coef(j))
}

/// M·N for a monomial M: row target_M(j) of the product is coef_M(j) times row j of N.
pub fn mono_mul_dense(m: &MonoMat, n: &Matrix<Cyc7>) -> Matrix<Cyc7> {
    let mut out = Matrix::zeros(7, 7, &());
    for j in 0..7 {
        let c = m.coef(j);
        for col in 0..7 {
            out[(m.target(j), col)] = &c * &n[(j, col)];
        }
    }
    out
}

/// One printed conjugation relation g s g⁻¹ = λ·w.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub printed: &'static str,
    /// Holds with conjugation read as g⁻¹sg on the coordinate action (g⁻¹)ᵀ.
    pub coordinate_reading: bool,
    /// Holds with conjugation read as g⁻¹sg on the basis vectors.
    pub basis_reading: bool,
    /// Holds literally as gsg⁻¹ on the basis vectors.
    pub literal_basis: bool,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub relations: Vec<RelationCheck>,
    pub determinants_one: bool,
    pub delta_squared_is_iota: bool,
}

impl RelationReport {
    /// All printed relations hold under the coordinate reading.
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.coordinate_reading) && self.determinants_one && self.delta_squared_is_iota
    }
}

#[derive(Clone, Copy)]
enum Gen {
    Sigma,
    Tau,
    Iota,
    Mu,
    Nu,
    Delta,
}

struct Model {
    fwd: HashMap<u8, Matrix<Cyc7>>,
    inv: HashMap<u8, Matrix<Cyc7>>,
}

impl Model {
    fn new(coordinate: bool) -> HeisResult<Model> {
        let gens = [
            NElem::sigma(),
            NElem::tau(),
            NElem::iota(),
            NElem::mu(),
            NElem::nu(),
            NElem::delta(),
        ];
        let mut fwd = HashMap::new();
        let mut inv = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            let m = if coordinate { g.dual()? } else { g.matrix.clone() };
            inv.insert(i as u8, m.inverse()?);
            fwd.insert(i as u8, m);
        }
        Ok(Model { fwd, inv })
    }

    fn word(&self, w: &[(Gen, i32)]) -> Matrix<Cyc7> {
        let mut acc = Matrix::identity(7, &());
        for &(g, e) in w {
            let tbl = if e < 0 { &self.inv } else { &self.fwd };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&tbl[&(g as u8)]).expect("7x7");
            }
        }
        acc
    }
}

/// (printed text, g, s, scalar exponent, right-hand word)
type PrintedRelation = (&'static str, Gen, Gen, i64, Vec<(Gen, i32)>);

fn printed_relations() -> Vec<PrintedRelation> {
    use Gen::*;
    vec![
        ("mu sigma mu^-1 = sigma^2", Mu, Sigma, 0, vec![(Sigma, 2)]),
        ("mu tau mu^-1 = tau^4", Mu, Tau, 0, vec![(Tau, 4)]),
        ("iota sigma iota = sigma^-1", Iota, Sigma, 0, vec![(Sigma, -1)]),
        ("iota tau iota = tau^-1", Iota, Tau, 0, vec![(Tau, -1)]),
        ("nu sigma nu^-1 = z^8 sigma tau^2", Nu, Sigma, 8, vec![(Sigma, 1), (Tau, 2)]),
        ("nu tau nu^-1 = tau", Nu, Tau, 0, vec![(Tau, 1)]),
        ("delta sigma delta^-1 = tau", Delta, Sigma, 0, vec![(Tau, 1)]),
        ("delta tau delta^-1 = sigma^-1", Delta, Tau, 0, vec![(Sigma, -1)]),
    ]
}

/// Evaluates the eight printed normalizer relations under three readings
/// and checks det = 1 for every generator and δ² = ι.
pub fn verify_normalizer_relations() -> HeisResult<RelationReport> {
    let coord = Model::new(true)?;
    let basis = Model::new(false)?;
    let holds = |m: &Model, g: Gen, s: Gen, scalar: i64, rhs: &[(Gen, i32)], inverse_first: bool| {
        let lhs = if inverse_first {
            m.word(&[(g, -1), (s, 1), (g, 1)])
        } else {
            m.word(&[(g, 1), (s, 1), (g, -1)])
        };
        lhs == m.word(rhs).scale(&Cyc7::zeta_pow(scalar))
    };
    let relations = printed_relations()
        .into_iter()
        .map(|(printed, g, s, scalar, rhs)| RelationCheck {
            printed,
            coordinate_reading: holds(&coord, g, s, scalar, &rhs, true),
            basis_reading: holds(&basis, g, s, scalar, &rhs, true),
            literal_basis: holds(&basis, g, s, scalar, &rhs, false),
        })
        .collect();
    let gens = [NElem::sigma(), NElem::tau(), NElem::iota(), NElem::mu(), NElem::nu(), NElem::delta()];
    let determinants_one = gens.iter().all(|g| g.det().is_one());
    let d = NElem::delta();
    let delta_squared_is_iota = d.mul(&d).matrix == NElem::iota().matrix;
    Ok(RelationReport { relations, determinants_one, delta_squared_is_iota })
}

/// A lift of an SL₂(F₇) element into the complement ⟨μ, ν, δ⟩ ⊂ N.
#[derive(Clone, Debug)]
pub struct Lift {
    pub image: Sl2,
    pub matrix: Matrix<Cyc7>,
    pub mono: Option<MonoMat>,
}

impl Lift {
    pub fn trace(&self) -> Cyc7 {
        match &self.mono {
            Some(m) => m.trace(),
            None => self.matrix.trace(),
        }
    }

    /// Trace of (self · ι), i.e. the ι-twisted trace.
    pub fn trace_times_iota(&self) -> Cyc7 {
        let iota = MonoMat::iota();
        match &self.mono {
            Some(m) => m.mul(&iota).trace(),
            None => {
                let mut acc = Cyc7::zero();
                for j in 0..7 {
                    acc = acc + &self.matrix[(j, iota.target(j))] * &iota.coef(j);
                }
                acc
            }
        }
    }

    fn times_mono(&self, g: &MonoMat, gbar: &Sl2) -> Lift {
        // the map to SL₂ reverses products
        let image = gbar.mul(&self.image);
        match &self.mono {
            Some(m) => {
                let p = m.mul(g);
                Lift { image, matrix: p.to_matrix(), mono: Some(p) }
            }
            None => Lift { image, matrix: dense_mul_mono(&self.matrix, g), mono: None },
        }
    }
}

/// The complement ⟨μ, ν, δ⟩: 336 elements, one over each element of SL₂(F₇).
///
/// Closure is run on the Bruhat cells: the lower-triangular part is
/// generated by the monomial μ, ν, ι, and each remaining element is bδb′
/// with b, b′ monomial, so no dense×dense product is needed. Every element
/// reached twice must have the same matrix, which certifies that the
/// assignment n ↦ n̄ is well defined.
pub fn complement_lifts() -> HeisResult<Vec<Lift>> {
    let monos = [
        (MonoMat::mu(), Sl2::mu_bar()),
        (MonoMat::nu(), Sl2::nu_bar()),
        (MonoMat::iota(), Sl2::minus_identity()),
    ];
    let delta = delta_matrix();
    let mut index: HashMap<Sl2, usize> = HashMap::new();
    let mut out: Vec<Lift> = Vec::new();
    let id = MonoMat::identity();
    let mut queue = std::collections::VecDeque::new();
    let mut push = |l: Lift, out: &mut Vec<Lift>, queue: &mut std::collections::VecDeque<usize>| -> HeisResult<()> {
        match index.get(&l.image) {
            Some(&i) => {
                if out[i].matrix != l.matrix {
                    return Err(HeisError::InconsistentLift(l.image));
                }
            }
            None => {
                index.insert(l.image, out.len());
                queue.push_back(out.len());
                out.push(l);
            }
        }
        Ok(())
    };
    push(Lift { image: Sl2::identity(), matrix: id.to_matrix(), mono: Some(id) }, &mut out, &mut queue)?;
    while let Some(i) = queue.pop_front() {
        let cur = out[i].clone();
        for (g, gbar) in &monos {
            push(cur.times_mono(g, gbar), &mut out, &mut queue)?;
        }
        if let Some(m) = &cur.mono {
            let l = Lift { image: Sl2::delta_bar().mul(&cur.image), matrix: mono_mul_dense(m, &delta), mono: None };
            push(l, &mut out, &mut queue)?;
        }
    }
    if out.len() != 336 {
        return Err(HeisError::GroupOrder { expected: 336, got: out.len() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_squares_to_iota_and_has_det_one() {
        let d = NElem::delta();
        assert_eq!(d.mul(&d).matrix, NElem::iota().matrix);
        assert!(d.det().is_one());
    }

    #[test]
    fn monomial_products_agree_with_dense() {
        let d = delta_matrix();
        let m = MonoMat::nu().mul(&MonoMat::mu());
        assert_eq!(dense_mul_mono(&d, &m), d.mul(&m.to_matrix()).unwrap());
        assert_eq!(mono_mul_dense(&m, &d), m.to_matrix().mul(&d).unwrap());
    }

    #[test]
    fn relations_hold_on_coordinates() {
        let r = verify_normalizer_relations().unwrap();
        assert!(r.all_hold(), "{r:?}");
        // on the basis vectors only the nu-sigma scalar differs
        let failing: Vec<_> = r.relations.iter().filter(|c| !c.basis_reading).map(|c| c.printed).collect();
        assert_eq!(failing, vec!["nu sigma nu^-1 = z^8 sigma tau^2"]);
    }

    #[test]
    fn complement_has_336_elements() {
        let lifts = complement_lifts().unwrap();
        assert_eq!(lifts.len(), 336);
        assert_eq!(lifts.iter().filter(|l| l.mono.is_some()).count(), 42);
    }
}
