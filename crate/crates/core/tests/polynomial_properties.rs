use mf_core::exactpoly::{parse_polynomial, rat, Monomial, Polynomial, Rational};
use proptest::prelude::*;

const N: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=3, N), rational()), 0..5).prop_map(
        |terms| {
            Polynomial::from_terms(
                N,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(e), c)),
            )
        },
    )
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), N)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in polynomial(), g in polynomial(), h in polynomial()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in polynomial(), g in polynomial(), pt in point()) {
        let (fv, gv) = (f.eval(&pt).unwrap(), g.eval(&pt).unwrap());
        prop_assert_eq!((&f * &g).eval(&pt).unwrap(), &fv * &gv);
        prop_assert_eq!((&f + &g).eval(&pt).unwrap(), fv + gv);
    }

    #[test]
    fn substitution_composes_with_evaluation(f in polynomial(), a in polynomial(), b in polynomial(), c in polynomial(), pt in point()) {
        let images = vec![a, b, c];
        let inner: Vec<Rational> = images.iter().map(|q| q.eval(&pt).unwrap()).collect();
        prop_assert_eq!(f.substitute(&images).unwrap().eval(&pt).unwrap(), f.eval(&inner).unwrap());
    }

    #[test]
    fn homogeneous_components_sum_back(f in polynomial()) {
        let comps = f.homogeneous_components();
        let mut total = Polynomial::zero(N);
        for (d, c) in &comps {
            prop_assert_eq!(c.homogeneous_degree(), Some(*d));
            prop_assert!(!c.is_zero());
            total = &total + c;
        }
        prop_assert_eq!(total, f);
    }

    #[test]
    fn canonical_text_round_trips(f in polynomial()) {
        prop_assert_eq!(parse_polynomial(&f.to_string(), N).unwrap(), f);
    }

    #[test]
    fn derivative_is_a_derivation(f in polynomial(), g in polynomial(), k in 0usize..N) {
        let lhs = (&f * &g).diff(k).unwrap();
        let rhs = &(&f.diff(k).unwrap() * &g) + &(&f * &g.diff(k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn arithmetic_examples() {
    let p = |t: &str| parse_polynomial(t, 2).unwrap();
    assert_eq!(&p("x0 + x1") + &p("x0 - x1"), p("2*x0"));
    assert!((&p("x0^2") + &p("-x0^2")).is_zero());
    assert_eq!(&p("x0 + x1") * &p("x0 - x1"), p("x0^2 - x1^2"));
    assert_eq!(p("x0 + x1").pow(2), p("x0^2 + 2*x0*x1 + x1^2"));
    assert_eq!(p("x0^2*x1").diff(0).unwrap(), p("2*x0*x1"));
    assert_eq!(p("x0^2*x1").diff(1).unwrap(), p("x0^2"));
    assert!(p("x0").diff(2).is_err());
    assert_eq!(
        p("x0^2 + x1").eval(&[rat(2, 1), rat(3, 1)]).unwrap(),
        rat(7, 1)
    );
    assert_eq!(p("x0*x1").eval(&[rat(1, 2), rat(2, 3)]).unwrap(), rat(1, 3));
    assert!(p("x0").eval(&[rat(1, 1)]).is_err());
    // xy under the swap x <-> y
    assert_eq!(
        p("x0*x1").substitute(&[p("x1"), p("x0")]).unwrap(),
        p("x0*x1")
    );
    // x^2 under x -> x + t y in (x, y, t)
    let q = parse_polynomial("x0^2", 1).unwrap();
    let img = parse_polynomial("x0 + x2*x1", 3).unwrap();
    assert_eq!(
        q.substitute(&[img]).unwrap(),
        parse_polynomial("x0^2 + 2*x0*x1*x2 + x1^2*x2^2", 3).unwrap()
    );
}
