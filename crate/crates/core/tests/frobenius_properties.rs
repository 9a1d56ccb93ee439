mod support;

use std::sync::Arc;

use frobenius_core::{
    fedder_is_fpure, frobenius_decompose, splitting_colength, splitting_ideal, splitting_number,
    Ideal, MonomialOrder, PolyRing, Polynomial, RingSpec,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use support::*;

fn poly_ring(p: u64, n: usize) -> Arc<RingSpec> {
    let names = ["x", "y", "z", "w"];
    RingSpec::polynomial(p, &names[..n], MonomialOrder::Grevlex).unwrap()
}

fn quadric() -> Arc<RingSpec> {
    let vars: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    RingSpec::from_parts(2, &vars, MonomialOrder::Grevlex, Some("x*y + z*w")).unwrap()
}

fn random_ideal(g: &mut ChaCha8Rng, ring: &Arc<RingSpec>, count: usize) -> Ideal {
    let gens = (0..g.gen_range(1..=count))
        .map(|_| random_poly(g, ring.base(), 2, 2))
        .collect();
    Ideal::new(ring, gens)
}

fn equal(a: &Ideal, b: &Ideal) -> bool {
    a.contains_ideal(b) && b.contains_ideal(a)
}

#[test]
fn decomposition_reassembles() {
    let mut g = rng(31);
    for trial in 0..100 {
        let p = [2u64, 3, 5][trial % 3];
        let r = PolyRing::new(p, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let f = random_poly(&mut g, &r, 5, 12);
        let e = 1 + (trial % 2) as u32;
        let dec = frobenius_decompose(&f, e).unwrap();
        assert_eq!(dec.reassemble(&r).unwrap(), f, "trial {trial}");
        for b in dec.parts.keys() {
            assert!(b.iter().all(|&x| x < dec.q));
        }
    }
}

#[test]
fn splitting_number_matches_fedder_pairing_rank() {
    let mut g = rng(32);
    for trial in 0..24 {
        let (p, e) = [(2u64, 1u32), (3, 1), (2, 2)][trial % 3];
        let base = PolyRing::new(p, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let f = random_poly(&mut g, &base, 3, 3);
        let ring = RingSpec::hypersurface(base, f.clone()).unwrap();
        let q = ring.base().frobenius_q(e).unwrap();
        let rank = fedder_pairing_rank(&f, q);
        assert_eq!(
            splitting_number(&ring, e).unwrap(),
            rank,
            "trial {trial}: f = {f}"
        );
        assert_eq!(
            fedder_is_fpure(&ring, e).unwrap(),
            rank > 0,
            "trial {trial}: f = {f}"
        );
    }
}

#[test]
fn quadric_cone_anchor_values() {
    let q = quadric();
    let f = q.modulus().unwrap().clone();
    assert_eq!(fedder_pairing_rank(&f, 2), 6);
    assert_eq!(splitting_number(&q, 1).unwrap(), 6);
    assert_eq!(splitting_number(&q, 2).unwrap(), fedder_pairing_rank(&f, 4));
}

#[test]
fn splitting_colength_matches_box_colon() {
    let mut g = rng(33);
    for trial in 0..20 {
        let p = [2u64, 3][trial % 2];
        let base = PolyRing::new(p, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let f = random_poly(&mut g, &base, 3, 3);
        let ring = RingSpec::hypersurface(base.clone(), f.clone()).unwrap();
        let powers: Vec<u32> = (0..3).map(|_| g.gen_range(1..=2)).collect();
        let mut gens: Vec<Polynomial> = powers
            .iter()
            .enumerate()
            .map(|(i, &b)| Polynomial::var(&base, i).pow(u64::from(b)))
            .collect();
        gens.push(random_poly(&mut g, &base, 2, 2));
        let a = Ideal::new(&ring, gens.clone());
        let q = p as u32;
        let mut bracket: Vec<Polynomial> =
            gens.iter().map(|h| h.frobenius_power(1).unwrap()).collect();
        bracket.push(f.frobenius_power(1).unwrap());
        let bounds: Vec<u32> = powers.iter().map(|b| b * q).collect();
        let expected = box_colon_colength(&base, &bracket, &f.pow(u64::from(q - 1)), &bounds);
        assert_eq!(
            splitting_colength(&a, 1).unwrap(),
            expected,
            "trial {trial}: {a} mod {f}"
        );
    }
}

#[test]
fn regular_rings_give_bracket_powers() {
    let mut g = rng(34);
    for trial in 0..20 {
        let ring = poly_ring([2u64, 3, 5][trial % 3], 2 + trial % 2);
        let a = random_ideal(&mut g, &ring, 3);
        for e in 1..=2 {
            let split = splitting_ideal(&a, e).unwrap().result;
            assert!(equal(&split, &a.bracket_power(e).unwrap()), "trial {trial}");
        }
    }
}

/// Items (2), (3), (7), (11) of the splitting-ideal lemma on one random instance.
fn check_lemma_items(g: &mut ChaCha8Rng, ring: &Arc<RingSpec>, e: u32) {
    let a = random_ideal(g, ring, 2);
    let split = splitting_ideal(&a, e).unwrap().result;
    assert!(
        split.contains_ideal(&a.bracket_power(e).unwrap()),
        "(2) for {a}"
    );
    let next = splitting_ideal(&a, e + 1).unwrap().result;
    assert!(
        next.contains_ideal(&split.bracket_power(1).unwrap()),
        "(3) for {a}"
    );
    let b = a.with_generators(&[random_poly(g, ring.base(), 2, 2)]);
    assert!(
        splitting_ideal(&b, e)
            .unwrap()
            .result
            .contains_ideal(&split),
        "(11) for {a} in {b}"
    );
    let j = random_ideal(g, ring, 1);
    let lhs = splitting_ideal(&a.quotient(&j), e).unwrap().result;
    let rhs = split.quotient(&j.bracket_power(e).unwrap());
    assert!(equal(&lhs, &rhs), "(7) for {a} : {j}");
}

#[test]
fn lemma_items_on_random_instances() {
    let mut g = rng(35);
    let plane = poly_ring(2, 2);
    let cone = quadric();
    for trial in 0..12 {
        let e = 1 + (trial % 2) as u32;
        check_lemma_items(&mut g, &plane, e);
        check_lemma_items(&mut g, &cone, 1);
    }
}

#[test]
fn splitting_ideals_of_primes_are_primary() {
    let mut g = rng(36);
    let cases: [(Arc<RingSpec>, &[&str]); 4] = [
        (quadric(), &["x", "z"]),
        (quadric(), &["y", "w"]),
        (poly_ring(2, 2), &["x + y^2"]),
        (poly_ring(3, 3), &["x", "y - z"]),
    ];
    for (ring, gens) in cases {
        let prime = Ideal::parse(&ring, gens).unwrap();
        for e in 1..=2 {
            let split = splitting_ideal(&prime, e).unwrap().result;
            assert!(split.contains_ideal(&prime.bracket_power(e).unwrap()));
            assert!(prime.contains_ideal(&split));
            for _ in 0..3 {
                let r = loop {
                    let r = random_poly(&mut g, ring.base(), 2, 2);
                    if !prime.contains(&r) {
                        break r;
                    }
                };
                let q = ring.base().frobenius_q(e).unwrap();
                let colon =
                    split.ideal_quotient(&Ideal::new(&ring, vec![r.pow(u64::from(q))]), false);
                assert!(equal(&colon, &split), "{prime}, e={e}, r={r}");
            }
        }
    }
}

#[test]
fn regular_elements_transfer_to_splitting_ideals() {
    let mut g = rng(37);
    let cone = quadric();
    let primes = [["x", "z"], ["y", "w"], ["x", "w"]];
    let mut checked = 0;
    for trial in 0..30 {
        let a = Ideal::parse(&cone, &primes[trial % 3]).unwrap();
        let x = random_poly(&mut g, cone.base(), 2, 2);
        if !a.is_regular_sequence(std::slice::from_ref(&x)).regular {
            continue;
        }
        let split = splitting_ideal(&a, 1).unwrap().result;
        assert!(
            split.is_regular_sequence(std::slice::from_ref(&x)).regular,
            "{a}, x = {x}"
        );
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn strict_growth_on_the_fpure_cone() {
    let mut g = rng(38);
    let cone = quadric();
    assert!(fedder_is_fpure(&cone, 1).unwrap());
    let mut checked = 0;
    while checked < 50 {
        let j = random_ideal(&mut g, &cone, 2);
        let extra = random_poly(&mut g, cone.base(), 2, 2);
        if j.contains(&extra) {
            continue;
        }
        let i = j.with_generators(&[extra]);
        let (ij, ii) = (
            splitting_ideal(&j, 1).unwrap().result,
            splitting_ideal(&i, 1).unwrap().result,
        );
        assert!(ii.contains_ideal(&ij));
        let witness = ij.first_missing(&ii);
        assert!(witness.is_some(), "I_1({j}) = I_1({i})");
        checked += 1;
    }
}

#[test]
fn fedder_examples() {
    let ring = |f: &str, n: usize| {
        let names = ["x", "y", "z", "w"];
        let vars: Vec<String> = names[..n].iter().map(|s| s.to_string()).collect();
        RingSpec::from_parts(2, &vars, MonomialOrder::Grevlex, Some(f)).unwrap()
    };
    assert!(fedder_is_fpure(&ring("x*y + z*w", 4), 1).unwrap());
    assert!(!fedder_is_fpure(&ring("x^2", 4), 1).unwrap());
    assert!(!fedder_is_fpure(&ring("x^3 + y^3 + z^3", 3), 1).unwrap());
    assert!(fedder_is_fpure(&poly_ring(2, 2), 1).unwrap());
}
