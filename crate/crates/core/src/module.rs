//! Elements of free modules S^r, ordered position-over-term.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::monomial::Monomial;
use crate::poly::{same_ring, PolyRing, Polynomial};

/// Position-over-term comparison: a lower component index dominates, then the
/// ring's monomial order decides.
#[inline]
pub(crate) fn cmp_pot(ring: &PolyRing, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ring.cmp_monomials(a.1, b.1))
}

/// A vector in S^rank, stored as sorted (component, monomial, coefficient) terms.
#[derive(Clone)]
pub struct ModuleElement {
    ring: Arc<PolyRing>,
    rank: usize,
    terms: Vec<(usize, Monomial, u32)>,
}

impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for ModuleElement {}

impl ModuleElement {
    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        ModuleElement {
            ring: ring.clone(),
            rank,
            terms: Vec::new(),
        }
    }

    /// `f * e_i`
    pub fn basis_multiple(ring: &Arc<PolyRing>, rank: usize, i: usize, f: &Polynomial) -> Self {
        assert!(i < rank, "component {i} out of range for rank {rank}");
        let terms = f.terms().iter().map(|(m, c)| (i, m.clone(), *c)).collect();
        ModuleElement {
            ring: ring.clone(),
            rank,
            terms,
        }
    }

    pub fn unit(ring: &Arc<PolyRing>, rank: usize, i: usize) -> Self {
        Self::basis_multiple(ring, rank, i, &Polynomial::one(ring))
    }

    /// Builds a vector from its coordinate polynomials.
    pub fn from_coordinates(ring: &Arc<PolyRing>, coords: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, f) in coords.iter().enumerate() {
            debug_assert!(same_ring(ring, f.ring()));
            terms.extend(f.terms().iter().map(|(m, c)| (i, m.clone(), *c)));
        }
        ModuleElement {
            ring: ring.clone(),
            rank: coords.len(),
            terms,
        }
    }

    pub(crate) fn from_sorted(
        ring: &Arc<PolyRing>,
        rank: usize,
        terms: Vec<(usize, Monomial, u32)>,
    ) -> Self {
        ModuleElement {
            ring: ring.clone(),
            rank,
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn terms(&self) -> &[(usize, Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(usize, &Monomial, u32)> {
        self.terms.first().map(|(i, m, c)| (*i, m, *c))
    }

    pub fn coordinate(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 == i)
            .map(|(_, m, c)| (m.clone(), *c))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn coordinates(&self) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.rank];
        for (i, m, c) in &self.terms {
            buckets[*i].push((m.clone(), *c));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_sorted(&self.ring, t))
            .collect()
    }

    pub fn monic(&self) -> ModuleElement {
        match self.leading_term() {
            None | Some((_, _, 1)) => self.clone(),
            Some((_, _, c)) => self.scale(self.ring.field().inv(c)),
        }
    }

    pub fn scale(&self, c: u32) -> ModuleElement {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Self::zero(&self.ring, self.rank);
        }
        let terms = self
            .terms
            .iter()
            .map(|(i, m, a)| (*i, m.clone(), f.mul(*a, c)))
            .collect();
        ModuleElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms,
        }
    }

    /// `self - c * m * other`
    pub fn sub_mul_term(&self, c: u32, m: &Monomial, other: &ModuleElement) -> ModuleElement {
        debug_assert_eq!(self.rank, other.rank);
        let f = self.ring.field();
        let neg = f.neg(c % f.characteristic());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(i, n, x)| (*i, n.mul(m), f.mul(*x, neg)))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => cmp_pot(&self.ring, (x.0, &x.1), (y.0, &y.1)),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (i, m1, c1) = a.next().unwrap();
                    let (_, _, c2) = b.next().unwrap();
                    let s = f.add(*c1, c2);
                    if s != 0 {
                        out.push((*i, m1.clone(), s));
                    }
                }
            }
        }
        ModuleElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: out,
        }
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        let f = self.ring.field();
        self.sub_mul_term(f.neg(1), &Monomial::one(self.ring.nvars()), other)
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        self.sub_mul_term(1, &Monomial::one(self.ring.nvars()), other)
    }

    /// Scalar multiplication by a polynomial.
    pub fn mul_poly(&self, g: &Polynomial) -> ModuleElement {
        let mut acc = ModuleElement::zero(&self.ring, self.rank);
        let f = self.ring.field();
        for (m, c) in g.terms() {
            acc = acc.sub_mul_term(f.neg(*c), m, self);
        }
        acc
    }

    /// Re-embeds into a free module of rank `new_rank`, moving component i to `offset + i`.
    pub fn shifted(&self, offset: usize, new_rank: usize) -> ModuleElement {
        assert!(offset + self.rank <= new_rank);
        let terms = self
            .terms
            .iter()
            .map(|(i, m, c)| (i + offset, m.clone(), *c))
            .collect();
        ModuleElement {
            ring: self.ring.clone(),
            rank: new_rank,
            terms,
        }
    }

    /// Keeps components in `start..start + len`, renumbered from zero.
    pub fn project(&self, start: usize, len: usize) -> ModuleElement {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 >= start && t.0 < start + len)
            .map(|(i, m, c)| (i - start, m.clone(), *c))
            .collect();
        ModuleElement {
            ring: self.ring.clone(),
            rank: len,
            terms,
        }
    }

    /// Drops component `i`, shifting later components down by one.
    pub fn remove_component(&self, i: usize) -> ModuleElement {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 != i)
            .map(|(j, m, c)| (if *j > i { j - 1 } else { *j }, m.clone(), *c))
            .collect();
        ModuleElement {
            ring: self.ring.clone(),
            rank: self.rank - 1,
            terms,
        }
    }

    /// Reorders terms after a change of ring order.
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> ModuleElement {
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| cmp_pot(ring, (b.0, &b.1), (a.0, &a.1)));
        ModuleElement {
            ring: ring.clone(),
            rank: self.rank,
            terms,
        }
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coordinates().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", coords.join(", "))
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement{self}")
    }
}
