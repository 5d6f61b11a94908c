use h7alg::exactfield::{Field, Fp, Modulus, Rat};
use h7alg::exec::Exec;
use h7alg::groebner::{buchberger, free_resolution, hilbert_numerator, koszul_betti, GbConfig, GradedIdeal};
use h7alg::polylin::{monomials_of_degree, Mono, Poly, PolyCtx, PolyRing};
use proptest::prelude::*;

const NVARS: usize = 4;

fn qctx() -> PolyCtx<Rat> {
    PolyCtx::new(PolyRing::grevlex(&["a", "b", "c", "d"]), ())
}

/// Integer coefficient vectors for forms of degree `d`, mostly sparse.
fn coeffs(d: u32) -> impl Strategy<Value = Vec<i64>> {
    let n = monomials_of_degree(NVARS, d).len();
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], n)
}

fn form<R: Field>(c: &PolyCtx<R>, d: u32, cs: &[i64]) -> Poly<R> {
    Poly::from_terms(&c.ring, &c.coeff, monomials_of_degree(NVARS, d).into_iter().zip(cs.iter().map(|&v| R::from_int(&c.coeff, v))))
}

fn ideal<R: Field>(c: &PolyCtx<R>, gens: &[Vec<i64>]) -> Option<GradedIdeal<R>> {
    let polys: Vec<Poly<R>> = gens.iter().map(|g| form(c, 2, g)).filter(|p| !p.is_empty()).collect();
    if polys.is_empty() {
        return None;
    }
    GradedIdeal::new(c, polys).ok()
}

fn quadrics() -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(coeffs(2), 1..=3)
}

fn monomial_gens() -> impl Strategy<Value = Vec<Mono>> {
    proptest::collection::vec(proptest::array::uniform4(0u32..=3), 1..=5)
        .prop_map(|v| v.into_iter().map(|e| Mono::from_exps(&e)).filter(|m| !m.is_one()).collect::<Vec<_>>())
        .prop_filter("nonempty", |v| !v.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_vanishes_exactly_on_members(gens in quadrics(), mult in proptest::collection::vec(coeffs(1), 3), pick in any::<proptest::sample::Index>()) {
        let c = qctx();
        let Some(i) = ideal(&c, &gens) else { return Ok(()) };
        let gb = buchberger(&i, &GbConfig::with_degree(12)).unwrap();
        prop_assume!(gb.is_complete());
        let member = i.generators().iter().zip(&mult).fold(Poly::zero(&c.ring, &()), |acc, (g, h)| acc.add(&g.mul(&form(&c, 1, h))));
        prop_assert!(gb.normal_form(&member).is_empty());
        prop_assert!(gb.contains(&member).unwrap());
        let std = gb.standard_monomials(3);
        if !std.is_empty() {
            let m = Poly::monomial(&c.ring, std[pick.index(std.len())], Rat::one());
            let off = member.add(&m);
            prop_assert_eq!(gb.normal_form(&off), m);
            prop_assert!(!gb.contains(&off).unwrap());
        }
    }

    #[test]
    fn betti_alternating_sums_give_the_hilbert_numerator(gens in quadrics()) {
        let c = qctx();
        let Some(i) = ideal(&c, &gens) else { return Ok(()) };
        let res = free_resolution(&i, &GbConfig::with_degree(12)).unwrap();
        let betti = res.minimal_betti();
        let gb = buchberger(&i, &GbConfig::with_degree(12)).unwrap();
        prop_assert!(res.is_complex());
        prop_assert!(betti.matches_numerator(&gb.hilbert(10)), "{}", betti);
        // second route: Koszul homology of the quotient
        let top = betti.entries().iter().map(|e| e.j).max().unwrap_or(0);
        let kos = koszul_betti(&gb, top, None, Exec::Seq).unwrap();
        prop_assert!(kos.agrees_with(&betti), "{} vs {}", kos, betti);
    }

    #[test]
    fn monomial_numerator_matches_resolution(gens in monomial_gens()) {
        let c = qctx();
        let polys = gens.iter().map(|m| Poly::monomial(&c.ring, *m, Rat::one())).collect();
        let i = GradedIdeal::new(&c, polys).unwrap();
        let betti = free_resolution(&i, &GbConfig::with_degree(16)).unwrap().minimal_betti();
        let num = hilbert_numerator(&gens, NVARS);
        let sums = betti.alternating_sums();
        for (j, &n) in num.iter().enumerate() {
            prop_assert_eq!(sums.get(&(j as u32)).copied().unwrap_or(0), n);
        }
    }

    /// Reduction mod 31 is a specialisation: when the Hilbert functions agree
    /// the F31 table can only gain cancelling pairs.
    #[test]
    fn rational_and_f31_tables_are_compatible(gens in quadrics()) {
        let q = qctx();
        let m = Modulus::new(31).unwrap();
        let p = PolyCtx::<Fp>::new(q.ring.clone(), m);
        let (Some(iq), Some(ip)) = (ideal(&q, &gens), ideal(&p, &gens)) else { return Ok(()) };
        let cfg = GbConfig::with_degree(12);
        let hq = buchberger(&iq, &cfg).unwrap().hilbert(10);
        let hp = buchberger(&ip, &cfg).unwrap().hilbert(10);
        let bq = free_resolution(&iq, &cfg).unwrap().minimal_betti();
        let bp = free_resolution(&ip, &cfg).unwrap().minimal_betti();
        prop_assert!(bq.matches_numerator(&hq) && bp.matches_numerator(&hp));
        if hq.numerator == hp.numerator {
            prop_assert_eq!(bq.alternating_sums(), bp.alternating_sums());
            for e in bq.entries() {
                prop_assert!(bp.get(e.i, e.j) >= e.beta, "{} vs {}", bq, bp);
            }
        }
    }
}
