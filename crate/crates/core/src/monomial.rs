//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::RingError;

pub type Exponents = SmallVec<[u32; 8]>;

/// A monomial x^a, stored as its exponent vector plus cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let degree = exps.iter().map(|&e| e as u64).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree,
        }
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, RingError> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(RingError::ExponentOverflow)?);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    /// Product; panics on u32 exponent overflow, which checked entry points rule out.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().map(|&e| e as u64).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Multiplies every exponent by `k`.
    pub fn scale(&self, k: u32) -> Result<Monomial, RingError> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for e in &self.exps {
            exps.push(e.checked_mul(k).ok_or(RingError::ExponentOverflow)?);
        }
        Ok(Monomial {
            exps,
            degree: self.degree * k as u64,
        })
    }

    /// Indices of the variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.exps.as_slice())
    }
}

/// A monomial order on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Compares the total degree in the flagged variables first, then grevlex.
    /// Any Gröbner basis in this order restricts to one of the elimination ideal.
    Elimination(Vec<bool>),
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Elimination(_) => "elimination",
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Elimination(mask) => {
                let w = |m: &Monomial| -> u64 {
                    m.exps
                        .iter()
                        .zip(mask)
                        .filter(|(_, d)| **d)
                        .map(|(e, _)| *e as u64)
                        .sum()
                };
                w(a).cmp(&w(b)).then_with(|| grevlex(a, b))
            }
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {
            for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_ties_broken_by_last_variable() {
        let o = MonomialOrder::Grevlex;
        // xy > zw in grevlex with x > y > z > w
        assert_eq!(
            o.cmp(&m(&[1, 1, 0, 0]), &m(&[0, 0, 1, 1])),
            Ordering::Greater
        );
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 0, 1]), &m(&[1, 1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn lex_and_elimination() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        let elim = MonomialOrder::Elimination(vec![false, true]);
        assert_eq!(elim.cmp(&m(&[0, 1]), &m(&[7, 0])), Ordering::Greater);
        assert_eq!(elim.cmp(&m(&[2, 1]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        assert!(m(&[1, 0]).divides(&m(&[2, 3])));
        assert!(!m(&[1, 4]).divides(&m(&[2, 3])));
        assert_eq!(m(&[1, 4]).lcm(&m(&[2, 3])), m(&[2, 4]));
        assert_eq!(m(&[1, 0]).quotient_of(&m(&[2, 3])), m(&[1, 3]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 3])));
        assert!(m(&[2, 1]).scale(u32::MAX).is_err());
    }
}
