use h7alg::exactfield::{Rat, Ring};
use h7alg::polylin::{monomials_of_degree, DiffOp, FormMatrix, Matrix, Poly, PolyCtx, PolyRing};
use proptest::prelude::*;

fn ctx() -> PolyCtx<Rat> {
    PolyCtx::new(PolyRing::grevlex(&["a", "b", "c"]), ())
}

/// A homogeneous form of degree `d` in a, b, c with small integer coefficients.
fn form(d: u32) -> impl Strategy<Value = Poly<Rat>> {
    let basis = monomials_of_degree(3, d);
    proptest::collection::vec(-4i64..=4, basis.len()).prop_map(move |cs| {
        let c = ctx();
        Poly::from_terms(&c.ring, &(), basis.iter().cloned().zip(cs.into_iter().map(|n| Rat::from_int(&(), n))))
    })
}

fn int_matrix(n: usize) -> impl Strategy<Value = Matrix<Rat>> {
    proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| Matrix::from_fn(n, n, &(), |i, j| Rat::from_int(&(), v[i * n + j])))
}

fn skew(n: usize) -> impl Strategy<Value = FormMatrix<Rat>> {
    proptest::collection::vec(-5i64..=5, n * (n - 1) / 2).prop_map(move |v| {
        let c = ctx();
        let mut m = FormMatrix::zeros(&c, n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let p = Poly::constant(&c.ring, Rat::from_int(&(), v[k]));
                m.set(j, i, p.neg());
                m.set(i, j, p);
                k += 1;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_respects_products(f in form(2), g in form(3), a in int_matrix(3), b in int_matrix(3)) {
        let fg = f.mul(&g);
        prop_assert_eq!(fg.substitute(&a).unwrap(), f.substitute(&a).unwrap().mul(&g.substitute(&a).unwrap()));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(f.substitute(&ab).unwrap(), f.substitute(&b).unwrap().substitute(&a).unwrap());
    }

    #[test]
    fn arithmetic_keeps_homogeneity(f in form(2), g in form(3), h in form(3)) {
        let p = f.mul(&g);
        prop_assert!(p.is_homogeneous());
        if !p.is_empty() {
            prop_assert_eq!(p.homogeneous_degree(), Some(5));
        }
        prop_assert!(g.add(&h).is_homogeneous());
        prop_assert!(g.sub(&h).scale(&Rat::new(2, 3)).is_homogeneous());
    }

    #[test]
    fn diffop_is_bilinear_and_lowers_degree(op in form(2), f in form(4), g in form(4), k in -5i64..5) {
        let d = DiffOp::new(op.clone());
        let lam = Rat::from_int(&(), k);
        prop_assert_eq!(d.apply(&f.add(&g.scale(&lam))), d.apply(&f).add(&d.apply(&g).scale(&lam)));
        let e = DiffOp::new(op.scale(&lam));
        prop_assert_eq!(e.apply(&f), d.apply(&f).scale(&lam));
        let r = d.apply(&f);
        prop_assert!(r.is_empty() || r.homogeneous_degree() == Some(2));
    }

    #[test]
    fn pfaffian_squares_to_det(m4 in skew(4), m6 in skew(6), m2 in skew(2)) {
        for m in [m2, m4, m6] {
            prop_assert!(m.is_skew());
            let pf = m.pfaffian().unwrap();
            prop_assert_eq!(pf.mul(&pf), m.det().unwrap());
        }
    }
}

/// Leibniz check on monomials: ∂^α x^β = β!/(β−α)! x^{β−α}.
#[test]
fn diffop_on_monomials_of_degree_at_most_four() {
    let c = ctx();
    for d in 0..=2u32 {
        for alpha in monomials_of_degree(3, d) {
            let op = DiffOp::new(Poly::monomial(&c.ring, alpha, Rat::one()));
            for e in 0..=4u32 {
                for beta in monomials_of_degree(3, e) {
                    let got = op.apply(&Poly::monomial(&c.ring, beta, Rat::one()));
                    let expected = match beta.div(&alpha) {
                        None => Poly::zero(&c.ring, &()),
                        Some(q) => {
                            let coef: i64 = (0..3).map(|i| (beta.exp(i) - alpha.exp(i) + 1..=beta.exp(i)).map(i64::from).product::<i64>()).product();
                            Poly::monomial(&c.ring, q, Rat::from_int(&(), coef))
                        }
                    };
                    assert_eq!(got, expected, "{alpha:?} on {beta:?}");
                }
            }
        }
    }
}
