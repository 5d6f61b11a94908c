use h7alg::heisrep::{g7_table, sl2_table, CharTable, Character, HElem};
use proptest::prelude::*;
use std::sync::OnceLock;

fn helem() -> impl Strategy<Value = HElem> {
    (0i64..7, 0i64..7, 0i64..7, any::<bool>()).prop_map(|(a, m, n, i)| HElem::new(a, m, n, i))
}

fn g7() -> &'static CharTable {
    static T: OnceLock<CharTable> = OnceLock::new();
    T.get_or_init(|| g7_table().table)
}

fn sl2() -> &'static CharTable {
    static T: OnceLock<CharTable> = OnceLock::new();
    T.get_or_init(|| sl2_table().table)
}

fn dim(c: &Character) -> i64 {
    c.degree().as_rational().and_then(|r| r.to_string().parse().ok()).expect("integral degree")
}

fn check_genuine(t: &CharTable, chi: &Character) -> Result<(), TestCaseError> {
    let d = t.decompose(chi).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(!d.has_negative(), "{:?}", d);
    let total: i64 = d.terms.iter().map(|(l, m)| m * dim(&t.character_of(l).unwrap())).sum();
    prop_assert_eq!(total, dim(chi));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn law_matches_matrices(a in helem(), b in helem(), c in helem()) {
        prop_assert_eq!(a.mul(&b).to_monomat(), a.to_monomat().mul(&b.to_monomat()));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&a.inv()), HElem::identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn g7_products_and_powers_are_genuine(i in 0..38usize, j in 0..38usize, k in 2..5usize) {
        let t = g7();
        let (a, b) = (&t.rows[i], &t.rows[j]);
        check_genuine(t, &a.mul(b))?;
        check_genuine(t, &a.sym_power(&t.classes, k))?;
        check_genuine(t, &a.ext_power(&t.classes, k))?;
    }

    #[test]
    fn sl2_products_and_powers_are_genuine(i in 0..11usize, j in 0..11usize, k in 2..5usize) {
        let t = sl2();
        let (a, b) = (&t.rows[i], &t.rows[j]);
        check_genuine(t, &a.mul(b))?;
        check_genuine(t, &a.sym_power(&t.classes, k))?;
        check_genuine(t, &a.ext_power(&t.classes, k))?;
    }
}
