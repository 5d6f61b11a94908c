use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::family::{alpha_t, grass_membership, minor_span_matches_psi, psi};
use super::apolar::L_ORDER;
use super::wedge::delta_criterion;
use super::{KleinError, KleinResult};
use crate::exactfield::{Cyc7, Field, Fp, Modulus, Rat, Ring};
use crate::exec::Exec;
use crate::groebner::{buchberger, free_resolution, hilbert_burch, koszul_betti, same_span, BettiTable, CyclicGrading, GbConfig, GradedIdeal};
use crate::heisrep::{subspace_character, G7Table, HElem, MonoMat};
use crate::polylin::{Matrix, Poly, PolyCtx, PolyRing, Registry};

const D_ENTRIES: [&str; 7] = [
    "x0*x3*x4",
    "x0*x1*x6",
    "x0*x2*x5",
    "x2^2*x3 + x5^2*x4",
    "x1^2*x5 + x6^2*x2",
    "x4^2*x6 + x3^2*x1",
    "x1*x2*x4 + x3*x5*x6 - x0^3",
];

/// The τ-invariant cubics D_j, paired positionally with the columns of Ψ.
pub fn d_vector<R: Field>(x: &PolyCtx<R>) -> KleinResult<Vec<Poly<R>>> {
    D_ENTRIES.iter().map(|s| Ok(Poly::parse(x, s)?)).collect()
}

/// D with the fourth entry as displayed alongside Ψ; it is not homogeneous.
pub fn d_vector_printed_variant<R: Field>(x: &PolyCtx<R>) -> KleinResult<Vec<Poly<R>>> {
    let mut d = d_vector(x)?;
    d[3] = Poly::parse(x, "x2^2*x3 + x4*x5^5")?;
    Ok(d)
}

/// τ acts diagonally; x_j has weight j mod 7.
pub fn tau_weights() -> CyclicGrading {
    CyclicGrading { weights: (0..7).collect(), modulus: 7 }
}

fn label(t: &[Rat]) -> String {
    format!("({})", t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":"))
}

#[derive(Clone, Debug)]
pub struct SurfaceIdeal {
    pub t: Vec<Rat>,
    /// g = D·Ψ(t)ᵀ.
    pub g: Vec<Poly<Rat>>,
    /// σ^k(g_i) for k = 0..6, i = 1..3, ordered by k.
    pub cubics: Vec<Poly<Rat>>,
    pub span_dim: usize,
    pub ideal: GradedIdeal<Rat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceExport {
    pub t: Vec<String>,
    pub generators: Vec<String>,
    pub provenance: Vec<(String, bool)>,
}

impl SurfaceIdeal {
    /// Fewer than 21 independent cubics: the parameter sits on the boundary.
    pub fn is_degenerate(&self) -> bool {
        self.span_dim != 21
    }

    pub fn export(&self, provenance: Vec<(String, bool)>) -> SurfaceExport {
        SurfaceExport { t: self.t.iter().map(|c| c.to_string()).collect(), generators: self.cubics.iter().map(|p| p.to_string()).collect(), provenance }
    }

    /// One generator per line, for external systems.
    pub fn plain_list(&self) -> String {
        self.cubics.iter().map(|p| format!("{p}\n")).collect()
    }

    /// The same generators over another field.
    pub fn over<F: Field>(&self, ctx: &F::Ctx) -> KleinResult<GradedIdeal<F>> {
        let x = PolyCtx::<F>::new(self.ideal.ring().clone(), ctx.clone());
        let gens = self.cubics.iter().map(|c| c.try_map_coeffs(ctx, |r| F::from_rat(ctx, r))).collect::<Result<Vec<_>, _>>()?;
        Ok(GradedIdeal::new(&x, gens)?)
    }

    pub fn over_cyc7(&self) -> Vec<Poly<Cyc7>> {
        self.cubics.iter().map(|c| c.map_coeffs(&(), Cyc7::from_rat)).collect()
    }
}

fn shift<R: Field>(p: &Poly<R>, k: usize) -> KleinResult<Poly<R>> {
    let vars = Poly::vars(p.ring(), p.coeff_ctx());
    let images: Vec<Poly<R>> = (0..7).map(|j| vars[(j + 7 - k) % 7].clone()).collect();
    Ok(p.compose(&images)?)
}

/// The ideal of the surface A(t): the σ-orbit of g = D·Ψ(t)ᵀ.
pub fn surface_ideal(t: &[Rat]) -> KleinResult<SurfaceIdeal> {
    let e = psi(&(), t)?;
    if t[1..].iter().all(|c| c.is_zero()) {
        return Err(KleinError::DegenerateParameter(label(t)));
    }
    let r = e.rank();
    if r != 3 {
        return Err(KleinError::RankDeficient(r));
    }
    let x = PolyCtx::<Rat>::new(PolyRing::registry(Registry::X), ());
    let d = d_vector(&x)?;
    let g: Vec<Poly<Rat>> = (0..3).map(|i| (0..7).fold(Poly::zero(&x.ring, &()), |acc, j| acc.add(&d[j].scale(&e.rows[(i, j)])))).collect();
    let mut cubics = Vec::with_capacity(21);
    for k in 0..7 {
        for gi in &g {
            cubics.push(shift(gi, k)?);
        }
    }
    let span_dim = super::wedge::span_rank(&cubics, &x, 3);
    let ideal = GradedIdeal::new(&x, cubics.clone())?;
    Ok(SurfaceIdeal { t: t.to_vec(), g, cubics, span_dim, ideal })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceChecks {
    pub t: Vec<String>,
    pub cubics: usize,
    pub hilbert: Vec<i64>,
    pub g_tau_invariant: bool,
    /// (element, span stable) for σ, τ, ι.
    pub stable: Vec<(String, bool)>,
    pub character: Option<String>,
    pub character_is_3v4: bool,
    pub ca_betti: String,
    pub ca_betti_ok: bool,
    pub hilbert_burch_round_trip: bool,
    pub minors_in_j: bool,
    pub membership: bool,
    pub minor_span_matches: bool,
}

impl SurfaceChecks {
    pub fn all_pass(&self) -> bool {
        self.cubics == 21
            && self.hilbert == [1, 7, 28, 63, 112]
            && self.g_tau_invariant
            && self.stable.iter().all(|s| s.1)
            && self.character_is_3v4
            && self.ca_betti_ok
            && self.hilbert_burch_round_trip
            && self.minors_in_j
            && self.membership
            && self.minor_span_matches
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let flags = [
            ("cubics", self.cubics == 21),
            ("hilbert", self.hilbert == [1, 7, 28, 63, 112]),
            ("tau", self.g_tau_invariant),
            ("stable", self.stable.iter().all(|s| s.1)),
            ("character", self.character_is_3v4),
            ("ca_betti", self.ca_betti_ok),
            ("hilbert_burch", self.hilbert_burch_round_trip),
            ("minors_in_j", self.minors_in_j),
            ("membership", self.membership),
            ("minor_span", self.minor_span_matches),
        ];
        flags.into_iter().filter(|f| !f.1).map(|f| f.0).collect()
    }
}

fn generators() -> [(&'static str, Matrix<Cyc7>); 3] {
    [
        ("sigma", HElem::sigma().to_monomat().dual_matrix()),
        ("tau", HElem::tau().to_monomat().dual_matrix()),
        ("iota", MonoMat::iota().dual_matrix()),
    ]
}

/// The per-parameter pipeline over Q: cubic count, HF in degrees 0..4,
/// symmetry and G₇-character of the cubic span, the curve C_A(t) and the
/// Grassmannian point Ψ(t).
pub fn surface_checks(t: &[Rat], g7: &G7Table, exec: Exec) -> KleinResult<SurfaceChecks> {
    let s = surface_ideal(t)?;
    let cfg = GbConfig { exec, ..GbConfig::with_degree(4) };
    let hilbert = buchberger(&s.ideal, &cfg)?.hilbert(4).values;

    let weights = tau_weights();
    let g_tau_invariant = s.g.iter().all(|g| g.terms().iter().all(|(m, _)| weights.weight(m) == 0));

    let x = PolyCtx::<Cyc7>::new(s.ideal.ring().clone(), ());
    let basis = independent(&s.over_cyc7(), &x);
    let stable = generators()
        .into_iter()
        .map(|(name, m)| (name.to_string(), subspace_character(&basis, &[(name.to_string(), m)], Exec::Seq).is_ok()))
        .collect();
    let character = crate::heisrep::g7_subspace_character(g7, &basis, exec).ok().and_then(|c| g7.table.decompose(&c).ok());
    let character_is_3v4 = character.as_ref().is_some_and(|d| d.same_as(&crate::heisrep::Decomposition::from_terms(&[("V4", 3)])));

    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let fam = alpha_t(&(), t)?;
    let minors = fam.alpha.minors(&u).to_vec();
    let ca = GradedIdeal::new(&u, minors.clone())?;
    let res = free_resolution(&ca, &GbConfig::default())?;
    let ca_betti_ok = res.betti == BettiTable::from_rows(&[&[1], &[0, 3, 2]]);
    let hb = hilbert_burch(&ca, &GbConfig::default())?;
    let hilbert_burch_round_trip = same_span(&hb.minors(2)?, &minors);

    Ok(SurfaceChecks {
        t: t.iter().map(|c| c.to_string()).collect(),
        cubics: s.span_dim,
        hilbert,
        g_tau_invariant,
        stable,
        character: character.as_ref().map(|d| d.to_string()),
        character_is_3v4,
        ca_betti: res.betti.to_string(),
        ca_betti_ok,
        hilbert_burch_round_trip,
        minors_in_j: delta_criterion(&u, &fam.alpha)?,
        membership: grass_membership(&psi(&(), t)?)?.holds,
        minor_span_matches: minor_span_matches_psi(&(), t, &L_ORDER)?,
    })
}

fn independent<R: Field>(forms: &[Poly<R>], ctx: &PolyCtx<R>) -> Vec<Poly<R>> {
    let mut out: Vec<Poly<R>> = Vec::new();
    for f in forms {
        let mut trial = out.clone();
        trial.push(f.clone());
        if super::wedge::span_rank(&trial, ctx, 3) == trial.len() {
            out = trial;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceBetti {
    pub t: Vec<String>,
    pub coeff: Coeff,
    pub budget: u32,
    pub gb_complete: bool,
    pub table: BettiTable,
    pub expected: BettiTable,
    pub matches_expected: bool,
    /// Alternating sums of the table reproduce the Hilbert numerator.
    pub alternating_sum_ok: bool,
}

/// The graded Betti table the surfaces should have.
pub fn expected_surface_betti() -> BettiTable {
    BettiTable::from_rows(&[&[1], &[], &[0, 21, 49, 42, 14, 2], &[0, 0, 0, 0, 1]])
}

/// Coefficient field for the Groebner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeff {
    Rational,
    Prime(u64),
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational => write!(f, "q"),
            Coeff::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Coeff {
    type Err = KleinError;

    fn from_str(s: &str) -> KleinResult<Coeff> {
        let bad = || KleinError::BadCoeff(s.to_string());
        match s.trim() {
            "q" | "Q" => Ok(Coeff::Rational),
            other => {
                let p = other.strip_prefix("fp:").ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())?;
                Modulus::new(p).map_err(|_| bad())?;
                Ok(Coeff::Prime(p))
            }
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Hilbert function of the surface ideal on 0..=top.
pub fn surface_hilbert(s: &SurfaceIdeal, coeff: Coeff, top: u32, exec: Exec) -> KleinResult<Vec<i64>> {
    fn run<F: Field>(s: &SurfaceIdeal, ctx: &F::Ctx, top: u32, exec: Exec) -> KleinResult<Vec<i64>> {
        let gb = buchberger(&s.over::<F>(ctx)?, &GbConfig { exec, ..GbConfig::with_degree(top) })?;
        Ok(gb.hilbert(top).values)
    }
    match coeff {
        Coeff::Rational => run::<Rat>(s, &(), top, exec),
        Coeff::Prime(p) => run::<Fp>(s, &Modulus::new(p)?, top, exec),
    }
}

/// Betti numbers of the surface ideal through degree `budget`, by Koszul
/// homology split along the τ-weights.
pub fn surface_betti(t: &[Rat], coeff: Coeff, budget: u32, exec: Exec) -> KleinResult<SurfaceBetti> {
    fn run<F: Field>(ideal: &GradedIdeal<F>, budget: u32, exec: Exec) -> KleinResult<(BettiTable, bool, bool)> {
        let gb = buchberger(ideal, &GbConfig { exec, ..GbConfig::with_degree(budget) })?;
        let table = koszul_betti(&gb, budget, Some(&tau_weights()), exec)?;
        let h = gb.hilbert(budget);
        let alternating = table.matches_numerator(&h) && h.numerator.len() <= budget as usize + 1;
        Ok((table, gb.is_complete(), alternating))
    }
    let s = surface_ideal(t)?;
    let (table, gb_complete, alternating_sum_ok) = match coeff {
        Coeff::Rational => run(&s.over::<Rat>(&())?, budget, exec)?,
        Coeff::Prime(p) => run(&s.over::<Fp>(&Modulus::new(p)?)?, budget, exec)?,
    };
    let expected = expected_surface_betti();
    Ok(SurfaceBetti {
        t: t.iter().map(|c| c.to_string()).collect(),
        coeff,
        budget,
        gb_complete,
        matches_expected: table.agrees_with(&expected),
        table,
        expected,
        alternating_sum_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisrep::g7_table;

    fn ones() -> Vec<Rat> {
        vec![Rat::one(); 4]
    }

    #[test]
    fn d_entries() {
        let x = PolyCtx::<Rat>::new(PolyRing::registry(Registry::X), ());
        let d = d_vector(&x).unwrap();
        assert_eq!(d[1].to_string(), Poly::parse(&x, "x0*x1*x6").unwrap().to_string());
        assert!(d.iter().all(|p| p.homogeneous_degree() == Some(3)));
        let w = tau_weights();
        assert!(d.iter().all(|p| p.terms().iter().all(|(m, _)| w.weight(m) == 0)));
        assert!(!d_vector_printed_variant(&x).unwrap()[3].is_homogeneous());
    }

    #[test]
    fn ideal_at_ones() {
        let s = surface_ideal(&ones()).unwrap();
        assert_eq!(s.span_dim, 21);
        assert!(!s.is_degenerate());
        assert_eq!(s.plain_list().lines().count(), 21);
        let h = buchberger(&s.ideal, &GbConfig::with_degree(5)).unwrap().hilbert(5);
        assert_eq!(h.values, vec![1, 7, 28, 63, 112, 175]);
    }

    #[test]
    fn degenerate_parameters() {
        let t = vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()];
        assert!(matches!(surface_ideal(&t), Err(KleinError::DegenerateParameter(_))));
        assert!(matches!(surface_ideal(&vec![Rat::zero(); 4]), Err(KleinError::ZeroParameter)));
    }

    #[test]
    fn betti_over_f31() {
        let b = surface_betti(&ones(), "fp:31".parse().unwrap(), 8, Exec::default()).unwrap();
        assert!(b.matches_expected && b.alternating_sum_ok, "{}", b.table);
        assert_eq!(b.table.get(4, 7), 1);
    }

    #[test]
    fn coeff_strings() {
        assert_eq!("fp:31".parse::<Coeff>().unwrap(), Coeff::Prime(31));
        assert_eq!("q".parse::<Coeff>().unwrap().to_string(), "q");
        assert!("fp:32".parse::<Coeff>().is_err());
        assert!("z".parse::<Coeff>().is_err());
    }

    #[test]
    fn checks_at_ones() {
        let c = surface_checks(&ones(), &g7_table(), Exec::default()).unwrap();
        assert!(c.all_pass(), "{:?}\n{c:?}", c.failures());
    }
}
