use std::sync::Arc;

use frobenius_core::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial};
use proptest::prelude::*;

fn ring(p: u64) -> Arc<PolyRing> {
    PolyRing::new(p, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
}

fn poly_strategy(p: u64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), 1u32..p as u32), 0..6).prop_map(
        move |terms| {
            let r = ring(p);
            Polynomial::from_terms(
                &r,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), c))
                    .collect(),
            )
        },
    )
}

fn prime_and_pair() -> impl Strategy<Value = (u64, Polynomial, Polynomial)> {
    prop::sample::select(vec![2u64, 3, 5])
        .prop_flat_map(|p| (Just(p), poly_strategy(p), poly_strategy(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frobenius_is_additive((_p, f, g) in prime_and_pair(), e in 0u32..3) {
        let lhs = (&f + &g).frobenius_power(e).unwrap();
        let rhs = &f.frobenius_power(e).unwrap() + &g.frobenius_power(e).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_is_multiplicative((_p, f, g) in prime_and_pair(), e in 0u32..2) {
        let lhs = (&f * &g).frobenius_power(e).unwrap();
        let rhs = &f.frobenius_power(e).unwrap() * &g.frobenius_power(e).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_matches_repeated_multiplication((p, f, _g) in prime_and_pair(), e in 0u32..3) {
        let q = p.pow(e);
        prop_assume!(q <= 25);
        let mut acc = Polynomial::one(f.ring());
        for _ in 0..q {
            acc = &acc * &f;
        }
        prop_assert_eq!(f.frobenius_power(e).unwrap(), acc);
    }

    #[test]
    fn parse_print_roundtrip((_p, f, _g) in prime_and_pair()) {
        let text = f.to_string();
        let back = parse_polynomial(&text, f.ring()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn ring_axioms((_p, f, g) in prime_and_pair()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&(&f + &g) * &f, &(&f * &f) + &(&g * &f));
    }
}

#[test]
fn examples_from_the_grammar() {
    let r = PolyRing::new(2, &["x", "y", "z", "w"], MonomialOrder::Grevlex).unwrap();
    assert_eq!(
        parse_polynomial("x*y - z*w", &r).unwrap().to_string(),
        "x*y + z*w"
    );
    assert_eq!(parse_polynomial("2*x + y", &r).unwrap().to_string(), "y");
    let r3 = PolyRing::new(3, &["x", "y"], MonomialOrder::Grevlex).unwrap();
    let s = parse_polynomial("x + y", &r3).unwrap();
    assert_eq!((&s * &s).to_string(), "x^2 + 2*x*y + y^2");
    assert!(parse_polynomial("x + q", &r3).is_err());
    assert!(parse_polynomial("x^99999999999", &r3).is_err());
    assert!(PolyRing::new(4, &["x"], MonomialOrder::Grevlex).is_err());
}
