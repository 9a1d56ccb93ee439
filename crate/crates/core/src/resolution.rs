//! Minimal free resolutions of F^e_*R, local at the origin, with localization
//! at a prime and generic ranks of the syzygy modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frobenius::PushforwardPresentation;
use crate::groebner::{syzygies_over, GroebnerBasis};
use crate::ideal::Ideal;
use crate::linalg::generic_rank;
use crate::module::ModuleElement;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::RingSpec;

/// A dense matrix over S whose entries are kept reduced modulo the ring's modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub ring: Arc<PolyRing>,
    pub rows: usize,
    /// Column-major entries.
    pub columns: Vec<Vec<Polynomial>>,
}

impl Matrix {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.columns[c][r]
    }

    fn from_module_columns(ring: &Arc<PolyRing>, rows: usize, cols: &[ModuleElement]) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            columns: cols.iter().map(|c| c.coordinates()).collect(),
        }
    }

    pub fn module_columns(&self) -> Vec<ModuleElement> {
        self.columns
            .iter()
            .map(|c| {
                if c.is_empty() {
                    ModuleElement::zero(&self.ring, self.rows)
                } else {
                    ModuleElement::from_coordinates(&self.ring, c)
                }
            })
            .collect()
    }

    fn drop_row(&mut self, r: usize) {
        for col in &mut self.columns {
            col.remove(r);
        }
        self.rows -= 1;
    }

    fn drop_zero_columns(&mut self) {
        self.columns.retain(|c| c.iter().any(|x| !x.is_zero()));
    }

    /// Every entry vanishes at the origin.
    pub fn is_minimal(&self) -> bool {
        self.columns
            .iter()
            .flatten()
            .all(|x| x.constant_term() == 0)
    }

    /// `self * other`, reduced by `reduce`.
    pub fn compose(&self, other: &Matrix, reduce: &dyn Fn(&Polynomial) -> Polynomial) -> Matrix {
        assert_eq!(self.ncols(), other.rows);
        let columns = other
            .columns
            .iter()
            .map(|oc| {
                (0..self.rows)
                    .map(|r| {
                        let mut acc = Polynomial::zero(&self.ring);
                        for (k, b) in oc.iter().enumerate() {
                            if !b.is_zero() {
                                acc = &acc + &(self.entry(r, k) * b);
                            }
                        }
                        reduce(&acc)
                    })
                    .collect()
            })
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            columns,
        }
    }
}

/// Differentials d_1..d_(i+1) of a resolution of F^e_*R that is minimal at the
/// origin, with β_0..β_i and the generic ranks of Ω_1..Ω_i.
///
/// Entries are global polynomials, but the complex is exact only after
/// localizing at the origin (pivots divide by local units).
#[derive(Debug, Clone)]
pub struct ResolutionSlice {
    pub ring: Arc<RingSpec>,
    pub level: u32,
    /// d_1..d_(i_max+1); d_j maps F_j to F_(j-1). The last one fixes β_(i_max).
    pub matrices: Vec<Matrix>,
    pub betti: Vec<u64>,
    /// Generic rank of Ω_j = im d_j for j = 1..i_max, or the reason it is unavailable.
    pub syzygy_ranks: std::result::Result<Vec<u64>, String>,
}

impl ResolutionSlice {
    /// d_j ∘ d_(j+1) = 0 modulo the ring's modulus for every stored pair.
    pub fn is_complex(&self) -> bool {
        let reduce = modulus_reducer(&self.ring);
        self.matrices.windows(2).all(|w| {
            w[0].ncols() == 0
                || w[1].ncols() == 0
                || w[0]
                    .compose(&w[1], &reduce)
                    .columns
                    .iter()
                    .flatten()
                    .all(|x| x.is_zero())
        })
    }

    /// Every differential has entries in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.matrices.iter().all(|m| m.is_minimal())
    }
}

/// Which entries count as units in the local ring being minimalized.
enum UnitTest<'a> {
    Origin,
    Prime(&'a GroebnerBasis),
}

impl UnitTest<'_> {
    fn is_unit(&self, x: &Polynomial) -> bool {
        match self {
            UnitTest::Origin => x.constant_term() != 0,
            UnitTest::Prime(gb) => !x.is_zero() && !gb.contains(x),
        }
    }
}

/// Pivots d_j (index `j` into `mats`) until it has no unit entries, keeping
/// the neighbours consistent: row r and column c of d_j are split off together
/// with column r of d_(j-1) and row c of d_(j+1).
fn minimalize_at(
    mats: &mut [Matrix],
    j: usize,
    test: &UnitTest<'_>,
    reduce: &dyn Fn(&Polynomial) -> Polynomial,
) {
    loop {
        let d = &mats[j];
        let mut found = None;
        'scan: for r in 0..d.rows {
            for c in 0..d.ncols() {
                if test.is_unit(d.entry(r, c)) {
                    found = Some((r, c));
                    break 'scan;
                }
            }
        }
        let Some((r, c)) = found else { return };
        let d = &mut mats[j];
        let pivot_col = d.columns[c].clone();
        let u = pivot_col[r].clone();
        for (k, col) in d.columns.iter_mut().enumerate() {
            if k == c || col[r].is_zero() {
                continue;
            }
            let b = col[r].clone();
            for (i, x) in col.iter_mut().enumerate() {
                *x = reduce(&(&(&u * x) - &(&b * &pivot_col[i])));
            }
        }
        d.columns.remove(c);
        d.drop_row(r);
        if j > 0 {
            mats[j - 1].columns.remove(r);
        }
        if j + 1 < mats.len() {
            mats[j + 1].drop_row(c);
        }
    }
}

fn modulus_reducer(ring: &RingSpec) -> impl Fn(&Polynomial) -> Polynomial {
    let gb = ring
        .modulus()
        .map(|f| GroebnerBasis::compute(ring.base(), std::slice::from_ref(f)));
    move |x: &Polynomial| match &gb {
        Some(g) => g.normal_form(x),
        None => x.clone(),
    }
}

/// Resolution of F^e_*R, minimal at the origin, through homological degree `i_max`.
pub fn minimal_resolution(pres: &PushforwardPresentation, i_max: usize) -> Result<ResolutionSlice> {
    let ring = &pres.ring;
    let base = ring.base();
    let reduce = modulus_reducer(ring);
    let first: Vec<ModuleElement> = pres
        .relation_columns
        .iter()
        .map(|c| {
            ModuleElement::from_coordinates(
                base,
                &c.coordinates().iter().map(&reduce).collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut d1 = Matrix::from_module_columns(base, pres.generator_count(), &first);
    d1.drop_zero_columns();
    let mut mats = vec![d1];
    minimalize_at(&mut mats, 0, &UnitTest::Origin, &reduce);
    while mats.len() < i_max + 1 {
        let last = mats.last().unwrap();
        let next = if last.ncols() == 0 {
            Matrix {
                ring: base.clone(),
                rows: 0,
                columns: Vec::new(),
            }
        } else {
            let syz = syzygies_over(ring, last.rows, &last.module_columns());
            let mut m = Matrix::from_module_columns(base, last.ncols(), &syz);
            m.drop_zero_columns();
            m
        };
        mats.push(next);
        let j = mats.len() - 1;
        minimalize_at(&mut mats, j, &UnitTest::Origin, &reduce);
    }
    let mut betti = vec![mats[0].rows as u64];
    betti.extend(mats.iter().take(i_max).map(|m| m.ncols() as u64));
    let syzygy_ranks = match syzygy_module_ranks(ring, &mats[..i_max]) {
        Ok(r) => Ok(r),
        Err(Error::NotDomain(why)) => Err(why),
        Err(e) => return Err(e),
    };
    Ok(ResolutionSlice {
        ring: ring.clone(),
        level: pres.level,
        matrices: mats,
        betti,
        syzygy_ranks,
    })
}

/// Generic ranks of im d_j. Over a ring with several minimal primes all of
/// them are tried and must agree.
fn syzygy_module_ranks(ring: &Arc<RingSpec>, mats: &[Matrix]) -> Result<Vec<u64>> {
    let base = ring.base();
    let rank_of =
        |m: &Matrix, zero: &GroebnerBasis, check: &dyn Fn(&Polynomial) -> bool| -> Result<u64> {
            if m.ncols() == 0 || m.rows == 0 {
                return Ok(0);
            }
            generic_rank(&m.module_columns(), zero, check).map(|r| r as u64)
        };
    match ring.modulus() {
        None => {
            let zero = GroebnerBasis::compute(base, &[]);
            mats.iter().map(|m| rank_of(m, &zero, &|_| true)).collect()
        }
        Some(f) if f.is_monomial() => {
            let primes = Ideal::zero(ring).monomial_minimal_primes()?;
            let mut out = Vec::new();
            for m in mats {
                let ranks: Vec<u64> = primes
                    .iter()
                    .map(|p| rank_of(m, p.gb(), &|_| true))
                    .collect::<Result<_>>()?;
                if ranks.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::NotDomain(format!(
                        "ranks {ranks:?} differ across the minimal primes of the modulus"
                    )));
                }
                out.push(ranks[0]);
            }
            Ok(out)
        }
        Some(_) => {
            let fideal = Ideal::zero(ring);
            let zero = fideal.gb().clone();
            let check = |x: &Polynomial| fideal.quotient_by(x).same_ideal(&fideal);
            mats.iter().map(|m| rank_of(m, &zero, &check)).collect()
        }
    }
}

/// χ_i = Σ_{j≤i} (-1)^j β_(i-j).
pub fn euler_from_betti(betti: &[u64]) -> Vec<i64> {
    (0..betti.len())
        .map(|i| {
            (0..=i)
                .map(|j| {
                    if j % 2 == 0 {
                        betti[i - j] as i64
                    } else {
                        -(betti[i - j] as i64)
                    }
                })
                .sum()
        })
        .collect()
}

/// β_i(R_P) of the same module: the slice minimalized again, treating entries
/// outside P as units. The origin is handled as the identity.
pub fn localize_betti(slice: &ResolutionSlice, prime: &Ideal) -> Result<Vec<u64>> {
    if !prime.has_zero_constant_terms() {
        return Err(Error::Precondition(format!(
            "prime {prime} does not lie in the maximal ideal"
        )));
    }
    if prime.is_unit() {
        return Err(Error::Precondition("the unit ideal is not prime".into()));
    }
    let i_max = slice.betti.len() - 1;
    if prime.same_ideal(&Ideal::maximal(&slice.ring)) {
        return Ok(slice.betti.clone());
    }
    let reduce = modulus_reducer(&slice.ring);
    let mut mats = slice.matrices.clone();
    let test = UnitTest::Prime(prime.gb());
    for j in 0..mats.len() {
        minimalize_at(&mut mats, j, &test, &reduce);
    }
    let mut betti = vec![mats[0].rows as u64];
    betti.extend(mats.iter().take(i_max).map(|m| m.ncols() as u64));
    Ok(betti)
}

/// μ(F^e_*R_P): the generator count after minimalizing the presentation at P.
pub fn local_generator_count(pres: &PushforwardPresentation, prime: &Ideal) -> Result<u64> {
    Ok(localize_betti(&minimal_resolution(pres, 0)?, prime)?[0])
}
