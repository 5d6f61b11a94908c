use h7alg::exactfield::{Cyc7, Field, FieldElem, Fp, Modulus, Rat, Ring};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=25).prop_map(|(n, d)| Rat::new(n, d))
}

fn cyc() -> impl Strategy<Value = Cyc7> {
    proptest::array::uniform6(rat()).prop_map(|c| Cyc7::from_rats(&c))
}

fn quad() -> impl Strategy<Value = FieldElem> {
    (cyc(), cyc()).prop_map(|(a, b)| FieldElem::new(a, b))
}

fn fp31() -> impl Strategy<Value = Fp> {
    (-100i64..100).prop_map(|v| Fp::new(Modulus::new(31).unwrap(), v))
}

fn check_axioms<F: Field>(a: &F, b: &F, c: &F) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert!(a.sub(a).is_zero());
    if !a.is_zero() {
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    } else {
        prop_assert!(a.inv().is_err());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rat_axioms_and_normal_form(a in rat(), b in rat(), c in rat()) {
        check_axioms(&a, &b, &c)?;
        let p = a.mul(&b).add(&c);
        prop_assert!(p.denom().is_positive());
        prop_assert!(p.numer().gcd(p.denom()).is_one());
    }

    #[test]
    fn fp_axioms(a in fp31(), b in fp31(), c in fp31()) {
        check_axioms(&a, &b, &c)?;
        prop_assert!(a.value() < 31);
    }

    #[test]
    fn cyc7_axioms(a in cyc(), b in cyc(), c in cyc()) {
        check_axioms(&a, &b, &c)?;
    }

    #[test]
    fn quad_axioms(a in quad(), b in quad(), c in quad()) {
        check_axioms(&a, &b, &c)?;
    }

    #[test]
    fn canonical_form_is_idempotent(c in proptest::array::uniform7(-9i64..9), shift in -3i64..3) {
        let x = Cyc7::from_seven_int(&c);
        prop_assert_eq!(Cyc7::from_rats(&x.coeffs()), x.clone());
        // adding a multiple of 1 + ζ + … + ζ⁶ changes nothing
        let y = Cyc7::from_seven_int(&c.map(|v| v + shift));
        prop_assert_eq!(x, y);
        prop_assert!(Cyc7::zeta().pow(7).is_one());
    }

    #[test]
    fn theta_is_an_automorphism_of_order_six(a in cyc(), b in cyc()) {
        prop_assert_eq!(a.mul(&b).galois_theta(1), a.galois_theta(1).mul(&b.galois_theta(1)));
        prop_assert_eq!(a.add(&b).galois_theta(1), a.galois_theta(1).add(&b.galois_theta(1)));
        prop_assert_eq!(a.galois_theta(6), a.clone());
        // θ³ is complex conjugation
        prop_assert_eq!(a.galois_theta(3), a.conj());
    }

    #[test]
    fn quad_theta_fixes_sqrt2(a in quad(), b in quad()) {
        prop_assert_eq!(a.mul(&b).galois_theta(2), a.galois_theta(2).mul(&b.galois_theta(2)));
        prop_assert_eq!(FieldElem::sqrt2().galois_theta(1), FieldElem::sqrt2());
    }
}

#[test]
fn theta_has_exact_order_six() {
    let z = Cyc7::zeta();
    let orbit: Vec<Cyc7> = (0..6).map(|k| z.galois_theta(k)).collect();
    assert!(orbit[1..].iter().all(|w| *w != z));
    assert_eq!(z.galois_theta(1), Cyc7::zeta_pow(3));
}
