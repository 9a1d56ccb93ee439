//! The ambient computational context: S = F_p[vars] or a hypersurface R = S/(f).

use std::fmt;
use std::sync::Arc;

use crate::error::{ParseError, RingError};
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::{PolyRing, Polynomial};

/// A polynomial ring over F_p, optionally divided by a single modulus.
///
/// Elements of the quotient are represented by their lifts to S; ideals of the
/// quotient by their full preimages in S.
#[derive(Debug, Clone)]
pub struct RingSpec {
    base: Arc<PolyRing>,
    modulus: Option<Polynomial>,
}

impl RingSpec {
    pub fn polynomial(p: u64, vars: &[&str], order: MonomialOrder) -> Result<Arc<Self>, RingError> {
        Ok(Arc::new(RingSpec {
            base: PolyRing::new(p, vars, order)?,
            modulus: None,
        }))
    }

    /// Quotient by `modulus`, which must be nonzero with zero constant term.
    pub fn hypersurface(base: Arc<PolyRing>, modulus: Polynomial) -> Result<Arc<Self>, RingError> {
        if !crate::poly::same_ring(&base, modulus.ring()) {
            return Err(RingError::MixedRings);
        }
        if modulus.is_zero() {
            return Err(RingError::InvalidModulus("modulus is zero".into()));
        }
        if modulus.constant_term() != 0 {
            return Err(RingError::InvalidModulus(
                "modulus must have zero constant term (the ring is studied at the origin)".into(),
            ));
        }
        Ok(Arc::new(RingSpec {
            base,
            modulus: Some(modulus.monic()),
        }))
    }

    pub fn over(base: Arc<PolyRing>) -> Arc<Self> {
        Arc::new(RingSpec {
            base,
            modulus: None,
        })
    }

    /// Parses a ring description; `modulus` is read in the grammar of [`parse_polynomial`].
    pub fn from_parts(
        p: u64,
        vars: &[String],
        order: MonomialOrder,
        modulus: Option<&str>,
    ) -> Result<Arc<Self>, RingSpecError> {
        let base = PolyRing::from_names(p, vars.to_vec(), order)?;
        match modulus {
            None => Ok(Self::over(base)),
            Some(text) => {
                let f = parse_polynomial(text, &base)?;
                Ok(Self::hypersurface(base, f)?)
            }
        }
    }

    #[inline]
    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    #[inline]
    pub fn modulus(&self) -> Option<&Polynomial> {
        self.modulus.as_ref()
    }

    pub fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    /// Krull dimension of S/(f) (or of S when there is no modulus).
    pub fn dim(&self) -> usize {
        match self.modulus {
            Some(_) => self.base.nvars() - 1,
            None => self.base.nvars(),
        }
    }

    /// rank(F^e_* R) = p^(e * dim R); the residue field F_p is perfect.
    pub fn frobenius_rank(&self, e: u32) -> u64 {
        (self.characteristic() as u64).pow(e * self.dim() as u32)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, ParseError> {
        parse_polynomial(text, &self.base)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.base, i)
    }

    /// The homogeneous maximal ideal (x_1, .., x_n), as generators.
    pub fn maximal_ideal_generators(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn is_regular_ambient(&self) -> bool {
        self.modulus.is_none()
    }

    /// R is regular at the origin: no modulus, or a modulus outside 𝔪².
    pub fn is_regular_at_origin(&self) -> bool {
        match &self.modulus {
            None => true,
            Some(f) => f.terms().iter().any(|(m, _)| m.degree() == 1),
        }
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        *self.base == *other.base && self.modulus == other.modulus
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}]",
            self.characteristic(),
            self.base.vars().join(",")
        )?;
        if let Some(m) = &self.modulus {
            write!(f, "/({m})")?;
        }
        write!(f, " ({})", self.base.order().name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingSpecError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
