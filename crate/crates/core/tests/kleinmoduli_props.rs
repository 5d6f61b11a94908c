use std::sync::OnceLock;

use h7alg::exactfield::{Rat, Ring};
use h7alg::exec::Exec;
use h7alg::heisrep::{g7_table, G7Table};
use h7alg::kleinmoduli::{
    alpha_compose, alpha_t, delta_criterion, grass_membership, minor_span_matches_psi, psi, random_alpha, sample_parameters, surface_checks, AlphaMatrix, Compositions, L_ORDER,
};
use h7alg::polylin::{PolyCtx, PolyRing, Registry};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-13i64..=13, 1i64..=13).prop_map(|(n, d)| Rat::new(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

/// Parameters with t1·t2·t3 ≠ 0.
fn parameter() -> impl Strategy<Value = Vec<Rat>> {
    (small_rat(), nonzero_rat(), nonzero_rat(), nonzero_rat()).prop_map(|(a, b, c, d)| vec![a, b, c, d])
}

fn random_alpha_matrix() -> impl Strategy<Value = AlphaMatrix<Rat>> {
    proptest::collection::vec(small_rat(), 24).prop_map(|v| AlphaMatrix { coeffs: (0..3).map(|i| (0..2).map(|j| std::array::from_fn(|k| v[(i * 2 + j) * 4 + k].clone())).collect()).collect() })
}

/// Half random, half on the family where the composition vanishes.
fn alpha() -> impl Strategy<Value = AlphaMatrix<Rat>> {
    prop_oneof![random_alpha_matrix(), parameter().prop_map(|t| alpha_t(&(), &t).unwrap().alpha)]
}

struct Setup {
    u: PolyCtx<Rat>,
    comp: Compositions<Rat>,
    g7: G7Table,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| Setup {
        u: PolyCtx::new(PolyRing::registry(Registry::U), ()),
        comp: Compositions::new(&PolyCtx::new(PolyRing::registry(Registry::X), ())),
        g7: g7_table(),
    })
}

fn equivalence_holds(a: &AlphaMatrix<Rat>) -> bool {
    let s = setup();
    alpha_compose(&s.comp, &s.u, a).unwrap().is_zero() == delta_criterion(&s.u, a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_vanishes_iff_minors_are_annihilated(a in alpha()) {
        prop_assert!(equivalence_holds(&a));
    }

    #[test]
    fn psi_lies_in_the_grassmannian(t in parameter()) {
        prop_assert!(grass_membership(&psi(&(), &t).unwrap()).unwrap().holds);
        prop_assert!(minor_span_matches_psi(&(), &t, &L_ORDER).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn surface_invariants_at_sampled_parameters(t in parameter()) {
        let r = surface_checks(&t, &setup().g7, Exec::default()).unwrap();
        prop_assert!(r.all_pass(), "{:?}", r.failures());
        prop_assert_eq!(r.hilbert.as_slice(), &[1i64, 7, 28, 63, 112][..]);
    }
}

/// The seeded batch the verifier uses, including every pipeline matrix.
#[test]
fn equivalence_on_seeded_batch() {
    let mut alphas = random_alpha(42, 200);
    alphas.extend(sample_parameters(42, 20).iter().map(|t| alpha_t(&(), t).unwrap().alpha));
    let bad: Vec<usize> = alphas.iter().enumerate().filter(|(_, a)| !equivalence_holds(a)).map(|(i, _)| i).collect();
    assert!(bad.is_empty(), "{bad:?}");
}
