//! p^e-th root decompositions, Frobenius pushforward presentations, splitting
//! ideals through Fedder's colon formula, and the Fedder F-purity test.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::{Colength, Ideal};
use crate::module::ModuleElement;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::RingSpec;

/// g = Σ_b u_b^(p^e) x^b with every b_i < p^e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    pub level: u32,
    pub q: u32,
    /// Nonzero parts keyed by the residue exponent b.
    pub parts: BTreeMap<Vec<u32>, Polynomial>,
}

impl FrobeniusDecomposition {
    /// Σ_b u_b^(p^e) x^b.
    pub fn reassemble(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        for (b, u) in &self.parts {
            let lifted = u.frobenius_power(self.level)?;
            acc = acc.checked_add(&lifted.mul_term(&Monomial::from_exponents(b), 1))?;
        }
        Ok(acc)
    }
}

pub fn frobenius_decompose(g: &Polynomial, e: u32) -> Result<FrobeniusDecomposition> {
    if e == 0 {
        return Err(Error::Precondition(
            "Frobenius level must be at least 1".into(),
        ));
    }
    let q = g.ring().frobenius_q(e)?;
    let mut buckets: BTreeMap<Vec<u32>, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let b: Vec<u32> = m.exponents().iter().map(|x| x % q).collect();
        let u: Vec<u32> = m.exponents().iter().map(|x| x / q).collect();
        buckets
            .entry(b)
            .or_default()
            .push((Monomial::from_exponents(&u), *c));
    }
    let parts = buckets
        .into_iter()
        .map(|(b, terms)| (b, Polynomial::from_terms(g.ring(), terms)))
        .filter(|(_, u)| !u.is_zero())
        .collect();
    Ok(FrobeniusDecomposition { level: e, q, parts })
}

/// A presentation of F^e_*R over R: generators x^b (b < p^e) and, for a
/// hypersurface, one relation column per basis index a coming from f·x^a.
#[derive(Debug, Clone)]
pub struct PushforwardPresentation {
    pub ring: Arc<RingSpec>,
    pub level: u32,
    pub q: u32,
    pub basis: Vec<Monomial>,
    pub relation_columns: Vec<ModuleElement>,
}

impl PushforwardPresentation {
    pub fn generator_count(&self) -> usize {
        self.basis.len()
    }

    /// Position of x^b in the basis.
    pub fn basis_index(&self, b: &[u32]) -> usize {
        basis_index(self.q, b)
    }
}

/// Index of a residue exponent in the basis; the first variable varies fastest.
fn basis_index(q: u32, b: &[u32]) -> usize {
    b.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

pub fn pushforward_presentation(ring: &Arc<RingSpec>, e: u32) -> Result<PushforwardPresentation> {
    if e == 0 {
        return Err(Error::Precondition(
            "Frobenius level must be at least 1".into(),
        ));
    }
    let base = ring.base();
    let n = base.nvars();
    let q = base.frobenius_q(e)?;
    let count = (q as usize)
        .checked_pow(n as u32)
        .filter(|c| *c <= 1 << 16)
        .ok_or_else(|| Error::Unsupported(format!("pushforward rank {q}^{n} is too large")))?;
    let basis: Vec<Monomial> = (0..count)
        .map(|mut k| {
            let mut b = vec![0u32; n];
            for slot in b.iter_mut() {
                *slot = (k % q as usize) as u32;
                k /= q as usize;
            }
            Monomial::from_exponents(&b)
        })
        .collect();
    let mut relation_columns = Vec::new();
    if let Some(f) = ring.modulus() {
        for a in &basis {
            let dec = frobenius_decompose(&f.mul_term(a, 1), e)?;
            let mut coords = vec![Polynomial::zero(base); count];
            for (b, u) in dec.parts {
                coords[basis_index(q, &b)] = u;
            }
            relation_columns.push(ModuleElement::from_coordinates(base, &coords));
        }
    }
    Ok(PushforwardPresentation {
        ring: ring.clone(),
        level: e,
        q,
        basis,
        relation_columns,
    })
}

/// I_e(𝔞) together with its input.
#[derive(Debug, Clone)]
pub struct SplittingIdeal {
    pub base: Ideal,
    pub level: u32,
    pub result: Ideal,
}

/// I_e(𝔞): the bracket power over a polynomial ring, and the image of
/// (A^[q] :_S f^(q-1)) with A = (lifts of 𝔞, f) over a hypersurface S/(f).
pub fn splitting_ideal(a: &Ideal, e: u32) -> Result<SplittingIdeal> {
    let ring = a.ring();
    let result = match ring.modulus() {
        None => a.bracket_power(e)?,
        Some(f) => {
            let ambient = RingSpec::over(ring.base().clone());
            let lifted = Ideal::new(&ambient, a.preimage_generators());
            let q = ring.base().frobenius_q(e)?;
            let colon = lifted
                .bracket_power(e)?
                .quotient_by(&f.pow(u64::from(q - 1)));
            Ideal::from_gb(ring, colon.gb().clone())
        }
    };
    Ok(SplittingIdeal {
        base: a.clone(),
        level: e,
        result,
    })
}

fn require_local(a: &Ideal) -> Result<()> {
    if a.has_zero_constant_terms() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "ideal {a} has a generator with nonzero constant term"
        )))
    }
}

/// a_e(R) = λ(R/I_e(𝔪)).
pub fn splitting_number(ring: &Arc<RingSpec>, e: u32) -> Result<u64> {
    let m = Ideal::maximal(ring);
    match splitting_ideal(&m, e)?.result.colength() {
        Colength::Finite(n) => Ok(n),
        Colength::Infinite => Err(Error::Failed("R/I_e(m) has positive dimension".into())),
    }
}

/// λ(R/I_e(𝔞)) for an 𝔪-primary 𝔞 with generators vanishing at the origin.
pub fn splitting_colength(a: &Ideal, e: u32) -> Result<u64> {
    require_local(a)?;
    match splitting_ideal(a, e)?.result.colength() {
        Colength::Finite(n) => Ok(n),
        Colength::Infinite => Err(Error::Precondition(format!(
            "{a} is not primary to the maximal ideal"
        ))),
    }
}

/// Fedder: S/(f) is F-pure at the origin iff f^(p^e - 1) ∉ 𝔪^[p^e]. Polynomial rings are F-pure.
pub fn fedder_is_fpure(ring: &Arc<RingSpec>, e: u32) -> Result<bool> {
    let Some(f) = ring.modulus() else {
        return Ok(true);
    };
    let base = ring.base();
    let q = base.frobenius_q(e)?;
    let gens: Vec<Polynomial> = (0..base.nvars())
        .map(|i| Polynomial::var(base, i).pow(u64::from(q)))
        .collect();
    let bracket = GroebnerBasis::compute(base, &gens);
    Ok(!bracket.contains(&f.pow(u64::from(q - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn ring_with(p: u64, vars: &[&str], modulus: Option<&str>) -> Arc<RingSpec> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        RingSpec::from_parts(p, &vars, MonomialOrder::Grevlex, modulus).unwrap()
    }

    fn quadric() -> Arc<RingSpec> {
        ring_with(2, &["x", "y", "z", "w"], Some("x*y + z*w"))
    }

    #[test]
    fn decompositions() {
        let r = ring_with(2, &["x"], None);
        let d = frobenius_decompose(&r.parse("x^3").unwrap(), 1).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[&vec![1]].to_string(), "x");
        let q = quadric();
        let f = q.modulus().unwrap();
        let d = frobenius_decompose(f, 1).unwrap();
        assert_eq!(
            d.parts.keys().cloned().collect::<Vec<_>>(),
            vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0]]
        );
        assert!(d.parts.values().all(|u| u.to_string() == "1"));
        assert_eq!(&d.reassemble(q.base()).unwrap(), f);
    }

    #[test]
    fn pushforward_of_the_node() {
        let r = ring_with(2, &["x", "y"], Some("x*y"));
        let pres = pushforward_presentation(&r, 1).unwrap();
        let names: Vec<String> = pres
            .basis
            .iter()
            .map(|m| Polynomial::term(r.base(), m.clone(), 1).to_string())
            .collect();
        assert_eq!(names, vec!["1", "x", "y", "x*y"]);
        let cols: Vec<String> = pres
            .relation_columns
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            cols,
            vec![
                "[0, 0, 0, 1]",
                "[0, 0, x, 0]",
                "[0, y, 0, 0]",
                "[x*y, 0, 0, 0]"
            ]
        );
        let free = pushforward_presentation(&ring_with(2, &["x"], None), 1).unwrap();
        assert_eq!(free.generator_count(), 2);
        assert!(free.relation_columns.is_empty());
    }

    #[test]
    fn splitting_ideals() {
        let r = ring_with(2, &["x", "y"], None);
        let m = Ideal::maximal(&r);
        assert!(splitting_ideal(&m, 1)
            .unwrap()
            .result
            .same_ideal(&Ideal::parse(&r, &["x^2", "y^2"]).unwrap()));
        let q = quadric();
        let p = Ideal::parse(&q, &["x", "z"]).unwrap();
        let i1 = splitting_ideal(&p, 1).unwrap().result;
        assert!(i1.same_ideal(&Ideal::parse(&q, &["x*z", "x^2", "z^2"]).unwrap()));
        let expected = Ideal::parse(
            &q,
            &["x^2", "y^2", "z^2", "w^2", "x*z", "x*w", "y*z", "y*w"],
        )
        .unwrap();
        assert!(splitting_ideal(&Ideal::maximal(&q), 1)
            .unwrap()
            .result
            .same_ideal(&expected));
    }

    #[test]
    fn splitting_numbers() {
        assert_eq!(
            splitting_number(&ring_with(2, &["x", "y"], None), 1).unwrap(),
            4
        );
        assert_eq!(splitting_number(&quadric(), 1).unwrap(), 6);
        assert_eq!(
            splitting_number(&ring_with(2, &["x", "y"], Some("x*y")), 1).unwrap(),
            1
        );
    }

    #[test]
    fn fedder() {
        assert!(fedder_is_fpure(&quadric(), 1).unwrap());
        assert!(!fedder_is_fpure(&ring_with(2, &["x", "y"], Some("x^2")), 1).unwrap());
        assert!(
            !fedder_is_fpure(&ring_with(2, &["x", "y", "z"], Some("x^3 + y^3 + z^3")), 1).unwrap()
        );
    }
}
