//! Ideals of S or of a hypersurface S/(f), represented by their preimages in S.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::groebner::{syzygies, GroebnerBasis};
use crate::linalg::generic_rank;
use crate::module::ModuleElement;
use crate::monomial::Monomial;
use crate::poly::{same_ring, Polynomial};
use crate::ring::RingSpec;

/// An ideal given by generators, with a lazily computed reduced Gröbner basis
/// of its preimage in S (the modulus is always included).
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<RingSpec>,
    generators: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

/// λ(R/I), or infinite when R/I has positive dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

/// Outcome of a regular-sequence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSequenceCheck {
    pub regular: bool,
    /// Index of the first element that is a zero divisor (or makes the quotient vanish).
    pub failed_index: Option<usize>,
    /// An element of ((J, x_1..x_i) : x_{i+1}) outside (J, x_1..x_i).
    pub witness: Option<Polynomial>,
}

/// λ(R_P / J R_P) with the data that produced it.
#[derive(Debug, Clone)]
pub struct LocalLengthCertificate {
    pub prime: Ideal,
    pub primary_component: Ideal,
    /// Generic ranks over R/P of (P^i + Q)/(P^(i+1) + Q); the last entry is 0.
    pub filtration_ranks: Vec<u64>,
    pub total: u64,
}

const MAX_FILTRATION_LENGTH: usize = 64;

impl Ideal {
    pub fn new(ring: &Arc<RingSpec>, generators: Vec<Polynomial>) -> Ideal {
        for g in &generators {
            assert!(
                same_ring(ring.base(), g.ring()),
                "generator from a different ring"
            );
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            generators,
            gb: OnceLock::new(),
        }
    }

    pub fn parse(ring: &Arc<RingSpec>, generators: &[&str]) -> Result<Ideal, ParseError> {
        let gens = generators
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(ring, gens))
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring.base())])
    }

    /// 𝔪 = (x_1, .., x_n), the ideal of the origin.
    pub fn maximal(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, ring.maximal_ideal_generators())
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Generators of the preimage in S (generators plus modulus).
    pub fn preimage_generators(&self) -> Vec<Polynomial> {
        let mut g = self.generators.clone();
        if let Some(f) = self.ring.modulus() {
            g.push(f.clone());
        }
        g
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| GroebnerBasis::compute(self.ring.base(), &self.preimage_generators()))
    }

    /// Ideal with generators replaced by its reduced Gröbner basis.
    pub fn from_gb(ring: &Arc<RingSpec>, gb: GroebnerBasis) -> Ideal {
        let gens = gb.elements().to_vec();
        let lock = OnceLock::new();
        let _ = lock.set(gb);
        Ideal {
            ring: ring.clone(),
            generators: gens,
            gb: lock,
        }
    }

    /// Reduced-GB elements that are not multiples of the modulus: canonical
    /// generators of the ideal of R.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        match self.ring.modulus() {
            None => self.gb().elements().to_vec(),
            Some(f) => {
                let fgb = GroebnerBasis::compute(self.ring.base(), std::slice::from_ref(f));
                self.gb()
                    .elements()
                    .iter()
                    .filter(|g| !fgb.contains(g))
                    .cloned()
                    .collect()
            }
        }
    }

    /// Canonical generators as text, sorted; a deterministic form for reports.
    pub fn canonical_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .canonical_generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(f)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.gb() == other.gb()
    }

    /// First generator of `other` lying outside `self`.
    pub fn first_missing(&self, other: &Ideal) -> Option<Polynomial> {
        other.generators.iter().find(|g| !self.contains(g)).cloned()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn is_zero_ideal(&self) -> bool {
        match self.ring.modulus() {
            None => self.generators.is_empty(),
            Some(f) => {
                let fgb = GroebnerBasis::compute(self.ring.base(), std::slice::from_ref(f));
                self.generators.iter().all(|g| fgb.contains(g))
            }
        }
    }

    /// All generators vanish at the origin.
    pub fn has_zero_constant_terms(&self) -> bool {
        self.generators.iter().all(|g| g.constant_term() == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.is_monomial())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// Generators of I^k as products of k generators (with repetition).
    pub fn power(&self, k: usize) -> Ideal {
        let mut acc = vec![Polynomial::one(self.ring.base())];
        for _ in 0..k {
            let mut next: Vec<Polynomial> = Vec::new();
            for a in &acc {
                for b in &self.generators {
                    let prod = a * b;
                    if !next.contains(&prod) {
                        next.push(prod);
                    }
                }
            }
            acc = next;
        }
        Ideal::new(&self.ring, acc)
    }

    /// I^[p^e] = (g^(p^e) : g a generator); independent of the generating set.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.frobenius_power(e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// I ∩ J, via t*I + (1 - t)*J ∩ S.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let base = self.ring.base();
        let ext = base.with_elimination_variable();
        let map: Vec<usize> = (1..=base.nvars()).collect();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in self.preimage_generators() {
            gens.push(&t * &g.embed(&ext, &map));
        }
        for g in other.preimage_generators() {
            gens.push(&one_minus_t * &g.embed(&ext, &map));
        }
        let gb = GroebnerBasis::compute(&ext, &gens);
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| {
                let raw = g
                    .terms()
                    .iter()
                    .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[1..]), *c))
                    .collect();
                Polynomial::from_terms(base, raw)
            })
            .collect();
        Ideal::from_gb(&self.ring, GroebnerBasis::compute(base, &kept))
    }

    /// (I : g) = (I ∩ (g)) / g.
    pub fn quotient_by(&self, g: &Polynomial) -> Ideal {
        let g = self.ring.modulus().map_or_else(
            || g.clone(),
            |f| GroebnerBasis::compute(self.ring.base(), std::slice::from_ref(f)).normal_form(g),
        );
        if g.is_zero() || self.contains(&g) {
            return Ideal::unit(&self.ring);
        }
        // intersect in S with (g) alone so every generator is a multiple of g
        let principal_s = Ideal::new(&RingSpec::over(self.ring.base().clone()), vec![g.clone()]);
        let own_s = Ideal::new(
            &RingSpec::over(self.ring.base().clone()),
            self.preimage_generators(),
        );
        let meet = own_s.intersect(&principal_s);
        let quotients: Vec<Polynomial> = meet
            .generators()
            .iter()
            .map(|h| {
                h.div_exact(&g)
                    .expect("intersection with (g) consists of multiples of g")
            })
            .collect();
        let out = Ideal::new(&self.ring, quotients);
        Ideal::from_gb(&self.ring, out.gb().clone())
    }

    /// (I : J) = ∩_g (I : g) over the generators of J.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &other.generators {
            let q = self.quotient_by(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring))
    }

    /// (I : J^∞), iterating colons until they stabilize.
    pub fn saturation(&self, other: &Ideal) -> Ideal {
        let mut cur = Ideal::from_gb(&self.ring, self.gb().clone());
        loop {
            let next = cur.quotient(other);
            if next.same_ideal(&cur) {
                return cur;
            }
            cur = next;
        }
    }

    /// The ideal quotient, or the saturation when `saturate` is set.
    pub fn ideal_quotient(&self, other: &Ideal, saturate: bool) -> Ideal {
        if saturate {
            self.saturation(other)
        } else {
            self.quotient(other)
        }
    }

    /// Krull dimension of R/I from the leading-term ideal (maximal independent
    /// sets of variables). `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        let gb = self.gb();
        if gb.is_unit() {
            return None;
        }
        let leads = gb.leading_monomials();
        let n = self.ring.nvars();
        let masks: Vec<u64> = leads
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size > best && masks.iter().all(|&s| s & !subset != 0) {
                best = size;
            }
        }
        Some(best)
    }

    /// Number of standard monomials when R/I is zero-dimensional.
    pub fn colength(&self) -> Colength {
        let gb = self.gb();
        if gb.is_unit() {
            return Colength::Finite(0);
        }
        let leads = gb.leading_monomials();
        let n = self.ring.nvars();
        let mut bounds = vec![u32::MAX; n];
        for m in &leads {
            let support: Vec<usize> = m.support().collect();
            if support.len() == 1 {
                let i = support[0];
                bounds[i] = bounds[i].min(m.exponents()[i]);
            }
        }
        if bounds.contains(&u32::MAX) {
            return Colength::Infinite;
        }
        Colength::Finite(count_standard(&leads, &bounds, &mut vec![0; n], 0))
    }

    /// Minimal primes of a monomial ideal: minimal vertex covers of the
    /// hypergraph of generator supports.
    pub fn monomial_minimal_primes(&self) -> Result<Vec<Ideal>> {
        let gens = self.preimage_generators();
        if let Some(bad) = gens.iter().find(|g| !g.is_monomial()) {
            return Err(Error::Precondition(format!("`{bad}` is not a monomial")));
        }
        let edges: Vec<u64> = gens
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .unwrap()
                    .support()
                    .fold(0u64, |a, i| a | (1 << i))
            })
            .collect();
        if edges.contains(&0) {
            return Ok(Vec::new());
        }
        let n = self.ring.nvars();
        let mut subsets: Vec<u64> = (0u64..(1u64 << n)).collect();
        subsets.sort_by_key(|s| (s.count_ones(), *s));
        let mut covers: Vec<u64> = Vec::new();
        for s in subsets {
            if edges.iter().all(|&e| e & s != 0) && covers.iter().all(|&c| c & !s != 0) {
                covers.push(s);
            }
        }
        Ok(covers
            .into_iter()
            .map(|c| {
                let gens = (0..n)
                    .filter(|i| c & (1 << i) != 0)
                    .map(|i| self.ring.var(i))
                    .collect();
                Ideal::new(&self.ring, gens)
            })
            .collect())
    }

    /// Tests whether `xs` is a regular sequence on R/I.
    pub fn is_regular_sequence(&self, xs: &[Polynomial]) -> RegularSequenceCheck {
        if self.with_generators(xs).is_unit() {
            return RegularSequenceCheck {
                regular: false,
                failed_index: Some(xs.len().saturating_sub(1)),
                witness: None,
            };
        }
        let mut cur = self.clone();
        for (i, x) in xs.iter().enumerate() {
            let colon = cur.quotient_by(x);
            if let Some(w) = cur.first_missing(&colon) {
                return RegularSequenceCheck {
                    regular: false,
                    failed_index: Some(i),
                    witness: Some(w),
                };
            }
            cur = cur.with_generators(std::slice::from_ref(x));
        }
        RegularSequenceCheck {
            regular: true,
            failed_index: None,
            witness: None,
        }
    }

    /// Evidence against primality: returns a reason when I is certainly not prime.
    ///
    /// Checks that I is proper, that a monomial I is generated by variables, and
    /// that no variable outside I is a zero divisor modulo I. Passing does not
    /// prove primality.
    pub fn non_prime_evidence(&self) -> Option<String> {
        if self.is_unit() {
            return Some("the unit ideal is not prime".into());
        }
        let gb = self.gb();
        if gb.elements().iter().all(|g| g.is_monomial()) {
            if let Some(g) = gb.elements().iter().find(|g| g.total_degree() != Some(1)) {
                return Some(format!("monomial ideal with non-variable generator {g}"));
            }
            return None;
        }
        for i in 0..self.ring.nvars() {
            let x = self.ring.var(i);
            if self.contains(&x) {
                continue;
            }
            let colon = self.quotient_by(&x);
            if let Some(w) = self.first_missing(&colon) {
                return Some(format!(
                    "{x} is a zero divisor modulo the ideal (witness {w})"
                ));
            }
        }
        None
    }

    /// λ(R_P / I R_P) through the P-adic filtration of the P-primary component.
    ///
    /// `other_primes` are the remaining minimal primes of I; P must be minimal over I.
    pub fn local_length(
        &self,
        prime: &Ideal,
        other_primes: &[Ideal],
    ) -> Result<LocalLengthCertificate> {
        if !prime.contains_ideal(self) {
            return Err(Error::Precondition(
                "the prime does not contain the ideal".into(),
            ));
        }
        let separator = separating_element(prime, other_primes)?;
        let primary = match &separator {
            Some(s) => self.saturation(&Ideal::new(&self.ring, vec![s.clone()])),
            None => Ideal::from_gb(&self.ring, self.gb().clone()),
        };
        let prime_gb = prime.gb();
        let mut ranks = Vec::new();
        for i in 0..MAX_FILTRATION_LENGTH {
            let layer_top = prime.power(i);
            if primary.contains_ideal(&layer_top) {
                ranks.push(0);
                let total = ranks.iter().sum();
                return Ok(LocalLengthCertificate {
                    prime: prime.clone(),
                    primary_component: primary,
                    filtration_ranks: ranks,
                    total,
                });
            }
            let below = prime.power(i + 1).sum(&primary);
            let below_gb = below.gb();
            let gens: Vec<Polynomial> = layer_top
                .generators()
                .iter()
                .filter(|g| !below_gb.contains(g))
                .cloned()
                .collect();
            let k = gens.len();
            let base = self.ring.base();
            let mut cols: Vec<ModuleElement> = gens
                .iter()
                .map(|g| ModuleElement::from_coordinates(base, std::slice::from_ref(g)))
                .collect();
            cols.extend(
                below_gb
                    .elements()
                    .iter()
                    .map(|h| ModuleElement::from_coordinates(base, std::slice::from_ref(h))),
            );
            let relations: Vec<ModuleElement> = syzygies(base, 1, &cols)
                .iter()
                .map(|s| s.project(0, k))
                .collect();
            let r = generic_rank(&relations, prime_gb, &|_| true)?;
            ranks.push((k - r) as u64);
        }
        Err(Error::Precondition(format!(
            "P-adic filtration did not terminate within {MAX_FILTRATION_LENGTH} steps; P is probably not minimal over the ideal"
        )))
    }
}

/// First product of one generator from each other prime that lies outside P.
fn separating_element(prime: &Ideal, others: &[Ideal]) -> Result<Option<Polynomial>> {
    if others.is_empty() {
        return Ok(None);
    }
    let ring = prime.ring().base();
    let mut candidates = vec![Polynomial::one(ring)];
    for q in others {
        let mut next = Vec::new();
        for c in &candidates {
            for g in q.generators() {
                next.push(c * g);
            }
        }
        candidates = next;
    }
    candidates
        .into_iter()
        .find(|s| !prime.contains(s))
        .map(Some)
        .ok_or_else(|| {
            Error::Precondition("no separating element found among generator products".into())
        })
}

fn count_standard(leads: &[Monomial], bounds: &[u32], exps: &mut Vec<u32>, var: usize) -> u64 {
    if var == bounds.len() {
        let m = Monomial::from_exponents(exps);
        return u64::from(!leads.iter().any(|l| l.divides(&m)));
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        exps[var] = e;
        // prune: once a partial monomial is divisible, every extension is too
        let partial = Monomial::from_exponents(exps);
        if leads.iter().any(|l| l.divides(&partial)) {
            break;
        }
        total += count_standard(leads, bounds, exps, var + 1);
    }
    exps[var] = 0;
    total
}

/// e(x; R/P) = λ(R/(P + x)) for a Cohen–Macaulay R/P on which x is a system of parameters.
pub fn cm_parameter_multiplicity(xs: &[Polynomial], prime: &Ideal) -> Result<u64> {
    if let Some(why) = prime.non_prime_evidence() {
        return Err(Error::Precondition(format!("not a prime: {why}")));
    }
    let dim = prime.dimension().unwrap_or(0);
    if dim != xs.len() {
        return Err(Error::Precondition(format!(
            "dim R/P = {dim} but {} parameters were given",
            xs.len()
        )));
    }
    let check = prime.is_regular_sequence(xs);
    if !check.regular {
        return Err(Error::Precondition(
            "parameters are not a regular sequence on R/P".into(),
        ));
    }
    match prime.with_generators(xs).colength() {
        Colength::Finite(n) => Ok(n),
        Colength::Infinite => Err(Error::Precondition(
            "not a system of parameters on R/P".into(),
        )),
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}
