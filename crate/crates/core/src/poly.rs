//! Multivariate polynomials over F_p in canonical (sorted, zero-free) form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::RingError;
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// F_p[x_1..x_n] with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(p: u64, vars: &[&str], order: MonomialOrder) -> Result<Arc<Self>, RingError> {
        Self::from_names(p, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_names(
        p: u64,
        vars: Vec<String>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>, RingError> {
        let field = PrimeField::new(p)?;
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(RingError::InvalidVariables(format!(
                    "bad variable name `{v}`"
                )));
            }
            if vars[..i].contains(v) {
                return Err(RingError::InvalidVariables(format!(
                    "duplicate variable `{v}`"
                )));
            }
        }
        if let MonomialOrder::Elimination(mask) = &order {
            if mask.len() != vars.len() {
                return Err(RingError::InvalidVariables(
                    "elimination mask length".into(),
                ));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            field: self.field,
            vars: self.vars.clone(),
            order,
        })
    }

    /// Prepends a fresh variable that is eliminated first; used for intersections.
    pub(crate) fn with_elimination_variable(&self) -> Arc<PolyRing> {
        let mut name = String::from("_t");
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = vec![name];
        vars.extend(self.vars.iter().cloned());
        let mut mask = vec![false; vars.len()];
        mask[0] = true;
        Arc::new(PolyRing {
            field: self.field,
            vars,
            order: MonomialOrder::Elimination(mask),
        })
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// q = p^e.
    pub fn frobenius_q(&self, e: u32) -> Result<u32, RingError> {
        self.characteristic()
            .checked_pow(e)
            .ok_or(RingError::ExponentOverflow)
    }
}

/// A polynomial; terms are sorted strictly descending in the ring's order and
/// carry nonzero coefficients in [1, p).
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[inline]
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: &[u32]) -> Self {
        Self::term(ring, Monomial::from_exponents(exps), 1)
    }

    /// Canonicalizes an arbitrary list of terms (any order, repeats, zeros).
    pub fn from_terms(ring: &Arc<PolyRing>, mut raw: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field;
        raw.sort_unstable_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut terms: Vec<(Monomial, u32)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            let c = c % f.characteristic();
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusted constructor: `terms` already canonical for `ring`.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| &t.0 == m).map_or(0, |t| t.1)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(c)),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), f.mul(*a, c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        if c.is_multiple_of(f.characteristic()) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, a)| (n.mul(m), f.mul(*a, c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `self - c * m * other`, the workhorse of reduction.
    pub fn sub_mul_term(&self, c: u32, m: &Monomial, other: &Polynomial) -> Polynomial {
        let f = self.ring.field;
        let neg = f.neg(c % f.characteristic());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(n, x)| (n.mul(m), f.mul(*x, neg)))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => self.ring.cmp_monomials(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m1, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let s = f.add(*c1, c2);
                    if s != 0 {
                        out.push((m1.clone(), s));
                    }
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let one = Monomial::one(self.ring.nvars());
        if negate_other {
            self.sub_mul_term(1, &one, other)
        } else {
            let f = self.ring.field;
            self.sub_mul_term(f.neg(1), &one, other)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::MixedRings);
        }
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::MixedRings);
        }
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::MixedRings);
        }
        let n = self.ring.nvars();
        let max_exps = |p: &Polynomial| {
            let mut mx = vec![0u32; n];
            for (m, _) in &p.terms {
                for (slot, &e) in mx.iter_mut().zip(m.exponents()) {
                    *slot = (*slot).max(e);
                }
            }
            mx
        };
        for (a, b) in max_exps(self).into_iter().zip(max_exps(other)) {
            a.checked_add(b).ok_or(RingError::ExponentOverflow)?;
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, *c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, *c);
        }
        let f = self.ring.field;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                raw.push((m.mul(n), f.mul(*a, *b)));
            }
        }
        Polynomial::from_terms(&self.ring, raw)
    }

    pub fn pow(&self, mut n: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// f^(p^e): exponents scaled by p^e, coefficients fixed by Frobenius on F_p.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial, RingError> {
        let q = self.ring.frobenius_q(e)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.scale(q)?, *c));
        }
        // scaling all exponents by q preserves every monomial order used here
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Re-expresses the polynomial in a ring with the same number of variables
    /// (typically a different order).
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        if same_ring(ring, &self.ring) {
            return Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            };
        }
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Maps variable i to variable `index_map[i]` of `ring`.
    pub fn embed(&self, ring: &Arc<PolyRing>, index_map: &[usize]) -> Polynomial {
        let n = ring.nvars();
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[index_map[i]] += x;
                }
                (Monomial::from_exponents(&e), *c)
            })
            .collect();
        Polynomial::from_terms(ring, raw)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = divisor.leading_term()?;
        let f = self.ring.field;
        let inv = f.inv(dc);
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term() {
            if !dm.divides(m) {
                return None;
            }
            let q = dm.quotient_of(m);
            let k = f.mul(c, inv);
            rest = rest.sub_mul_term(k, &q, divisor);
            quotient.push((q, k));
        }
        Some(Polynomial::from_sorted(&self.ring, quotient))
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert!(
            same_ring(&self.ring, &rhs.ring),
            "polynomials from different rings"
        );
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&vars[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                if *c != 1 {
                    write!(f, "{c}*")?;
                }
                write_monomial(f, &self.ring.vars, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn char_two_cancellation() {
        let r = ring(2, &["x", "y"]);
        let s = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        assert!((&s + &s).is_zero());
    }

    #[test]
    fn binomial_square_mod_three() {
        let r = ring(3, &["x", "y"]);
        let s = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        assert_eq!((&s * &s).to_string(), "x^2 + 2*x*y + y^2");
        let xy = &Polynomial::var(&r, 0) * &Polynomial::var(&r, 1);
        assert_eq!(xy.to_string(), "x*y");
    }

    #[test]
    fn frobenius_is_freshmans_dream() {
        let r = ring(3, &["x", "y", "z"]);
        let s = &(&Polynomial::var(&r, 0) + &Polynomial::var(&r, 1)) + &Polynomial::var(&r, 2);
        assert_eq!(s.frobenius_power(1).unwrap(), s.pow(3));
        assert_eq!(s.frobenius_power(1).unwrap().to_string(), "x^3 + y^3 + z^3");
        assert_eq!(s.frobenius_power(0).unwrap(), s);
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = Polynomial::var(&ring(2, &["x"]), 0);
        let b = Polynomial::var(&ring(3, &["x"]), 0);
        assert_eq!(a.checked_add(&b), Err(RingError::MixedRings));
        assert_eq!(a.checked_mul(&b), Err(RingError::MixedRings));
    }

    #[test]
    fn constant_term_and_monic() {
        let r = ring(5, &["x"]);
        let f = Polynomial::from_terms(&r, vec![(Monomial::var(1, 0), 3), (Monomial::one(1), 4)]);
        assert_eq!(f.constant_term(), 4);
        assert_eq!(f.monic().leading_term().unwrap().1, 1);
    }
}
