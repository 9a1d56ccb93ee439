//! Buchberger's algorithm with the Gebauer–Möller pair update, for ideals and
//! for submodules of free modules (position-over-term), plus syzygies and
//! elimination built on top of it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::{cmp_pot, ModuleElement};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::RingSpec;

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    ring: &'a Arc<PolyRing>,
    store: Vec<ModuleElement>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    // the product criterion is only sound for ideals (rank one)
    product_criterion: bool,
}

impl<'a> Engine<'a> {
    fn lead(&self, i: usize) -> (usize, &Monomial) {
        let (c, m, _) = self.store[i].leading_term().expect("zero element in basis");
        (c, m)
    }

    fn reduce(&self, f: ModuleElement) -> ModuleElement {
        let basis: Vec<&ModuleElement> = self.active.iter().map(|&i| &self.store[i]).collect();
        reduce_full(f, &basis)
    }

    fn insert(&mut self, h: ModuleElement) {
        let h_idx = self.store.len();
        self.store.push(h);
        let (hc, hm) = {
            let (c, m) = self.lead(h_idx);
            (c, m.clone())
        };

        struct Cand {
            g: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = self
            .active
            .iter()
            .filter(|&&g| self.lead(g).0 == hc)
            .map(|&g| {
                let gm = self.lead(g).1;
                Cand {
                    g,
                    lcm: hm.lcm(gm),
                    coprime: self.product_criterion && hm.is_coprime(gm),
                }
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Cand> = Vec::new();
        while !cands.is_empty() {
            let p = cands.remove(0);
            let dominated = cands.iter().any(|q| q.lcm.divides(&p.lcm))
                || kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if p.coprime || !dominated {
                kept.push(p);
            }
        }

        // prune old pairs whose lcm is hit by the new lead in a strictly smaller way
        let store = &self.store;
        let lead_of = |i: usize| store[i].leading_term().unwrap().1;
        self.pairs.retain(|pair| {
            if pair.comp != hc || !hm.divides(&pair.lcm) {
                return true;
            }
            hm.lcm(lead_of(pair.i)) == pair.lcm || hm.lcm(lead_of(pair.j)) == pair.lcm
        });

        for c in kept.into_iter().filter(|c| !c.coprime) {
            self.pairs.push(Pair {
                i: c.g,
                j: h_idx,
                comp: hc,
                lcm: c.lcm,
            });
        }

        let active: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&g| {
                let (gc, gm) = self.lead(g);
                !(gc == hc && hm.divides(gm))
            })
            .collect();
        self.active = active;
        self.active.push(h_idx);
    }

    /// Normal selection strategy: smallest lcm degree, then smallest lcm in the
    /// module order, then index order.
    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| cmp_pot(ring, (a.comp, &a.lcm), (b.comp, &b.lcm)))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord.is_lt() {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> ModuleElement {
        let f = &self.store[pair.i];
        let g = &self.store[pair.j];
        let (_, fm, fc) = f.leading_term().unwrap();
        let (_, gm, gc) = g.leading_term().unwrap();
        let field = self.ring.field();
        let a = fm.quotient_of(&pair.lcm);
        let b = gm.quotient_of(&pair.lcm);
        // basis elements are monic, but stay general
        let left =
            ModuleElement::zero(self.ring, f.rank()).sub_mul_term(field.neg(field.inv(fc)), &a, f);
        left.sub_mul_term(field.inv(gc), &b, g)
    }
}

/// Fully reduces `f` (leading and tail terms) by `basis`.
pub(crate) fn reduce_full(mut f: ModuleElement, basis: &[&ModuleElement]) -> ModuleElement {
    let ring = f.ring().clone();
    let rank = f.rank();
    let field = *ring.field();
    let mut rem: Vec<(usize, Monomial, u32)> = Vec::new();
    while let Some((c, m, coef)) = f.leading_term() {
        let divisor = basis.iter().find(|g| {
            let (gc, gm, _) = g.leading_term().unwrap();
            gc == c && gm.divides(m)
        });
        match divisor {
            Some(g) => {
                let (_, gm, gcoef) = g.leading_term().unwrap();
                let q = gm.quotient_of(m);
                let k = field.mul(coef, field.inv(gcoef));
                f = f.sub_mul_term(k, &q, g);
            }
            None => {
                let first = f.terms()[0].clone();
                rem.push(first);
                let rest = f.terms()[1..].to_vec();
                f = ModuleElement::from_sorted(&ring, rank, rest);
            }
        }
    }
    ModuleElement::from_sorted(&ring, rank, rem)
}

/// Reduced Gröbner basis of the submodule generated by `gens`; monic, sorted by
/// descending leading term. Zero inputs are ignored.
pub(crate) fn buchberger(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[ModuleElement],
) -> Vec<ModuleElement> {
    let mut engine = Engine {
        ring,
        store: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        product_criterion: rank == 1,
    };
    for g in gens {
        debug_assert_eq!(g.rank(), rank);
        let r = engine.reduce(g.clone());
        if !r.is_zero() {
            engine.insert(r.monic());
        }
    }
    while let Some(pair) = engine.select() {
        let s = engine.s_polynomial(&pair);
        let r = engine.reduce(s);
        if !r.is_zero() {
            engine.insert(r.monic());
        }
    }
    interreduce(
        ring,
        engine
            .active
            .iter()
            .map(|&i| engine.store[i].clone())
            .collect(),
    )
}

fn interreduce(ring: &Arc<PolyRing>, mut elems: Vec<ModuleElement>) -> Vec<ModuleElement> {
    elems.sort_by(|a, b| {
        let (ac, am, _) = a.leading_term().unwrap();
        let (bc, bm, _) = b.leading_term().unwrap();
        cmp_pot(ring, (bc, bm), (ac, am))
    });
    // drop elements whose lead is divisible by another lead
    let mut minimal: Vec<ModuleElement> = Vec::new();
    for (k, e) in elems.iter().enumerate() {
        let (ec, em, _) = e.leading_term().unwrap();
        let redundant = elems.iter().enumerate().any(|(l, o)| {
            let (oc, om, _) = o.leading_term().unwrap();
            l != k && oc == ec && om.divides(em) && (om != em || l < k)
        });
        if !redundant {
            minimal.push(e.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&ModuleElement> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, e)| e)
            .collect();
        let lead = ModuleElement::from_sorted(
            ring,
            minimal[k].rank(),
            vec![minimal[k].terms()[0].clone()],
        );
        let tail =
            ModuleElement::from_sorted(ring, minimal[k].rank(), minimal[k].terms()[1..].to_vec());
        let tail = reduce_full(tail, &others);
        out.push(lead.add(&tail).monic());
    }
    out
}

/// A reduced Gröbner basis of an ideal of S = F_p[vars].
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Computes the reduced basis of the ideal generated by `gens` in S.
    pub fn compute(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> GroebnerBasis {
        let vecs: Vec<ModuleElement> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| ModuleElement::from_coordinates(ring, &[g.in_ring(ring)]))
            .collect();
        let basis = buchberger(ring, 1, &vecs);
        GroebnerBasis {
            ring: ring.clone(),
            elements: basis.iter().map(|v| v.coordinate(0)).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// The unique remainder of `f` with no term divisible by a leading monomial.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ring = &self.ring;
        let field = *ring.field();
        let mut f = f.in_ring(ring);
        let mut rem: Vec<(Monomial, u32)> = Vec::new();
        while let Some((m, c)) = f.leading_term() {
            match self
                .elements
                .iter()
                .find(|g| g.leading_monomial().unwrap().divides(m))
            {
                Some(g) => {
                    let q = g.leading_monomial().unwrap().quotient_of(m);
                    let k = field.mul(c, field.inv(g.leading_term().unwrap().1));
                    f = f.sub_mul_term(k, &q, g);
                }
                None => {
                    let mut terms = f.into_terms();
                    let head = terms.remove(0);
                    rem.push(head);
                    f = Polynomial::from_sorted(ring, terms);
                }
            }
        }
        Polynomial::from_sorted(ring, rem)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every element of `other` lies in this ideal.
    pub fn contains_all(&self, other: &[Polynomial]) -> bool {
        other.iter().all(|g| self.contains(g))
    }
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.elements.iter().map(|g| g.to_string()))
            .finish()
    }
}

/// Reduced basis of the ideal generated by `gens` in the ambient ring: the
/// modulus, if any, is appended, so the result describes the full preimage in S.
pub fn reduced_groebner(gens: &[Polynomial], ring: &RingSpec) -> GroebnerBasis {
    let mut all: Vec<Polynomial> = gens.to_vec();
    if let Some(f) = ring.modulus() {
        all.push(f.clone());
    }
    GroebnerBasis::compute(ring.base(), &all)
}

/// A reduced Gröbner basis of a submodule of S^rank (position over term).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    elements: Vec<ModuleElement>,
}

impl ModuleBasis {
    pub fn compute(ring: &Arc<PolyRing>, rank: usize, gens: &[ModuleElement]) -> ModuleBasis {
        ModuleBasis {
            ring: ring.clone(),
            rank,
            elements: buchberger(ring, rank, gens),
        }
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn normal_form(&self, v: &ModuleElement) -> ModuleElement {
        let basis: Vec<&ModuleElement> = self.elements.iter().collect();
        reduce_full(v.in_ring(&self.ring), &basis)
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        self.normal_form(v).is_zero()
    }
}

/// Generators of the syzygy module of `columns` (all in S^rank): vectors s with
/// sum s_i * columns_i = 0. Computed from a position-over-term basis of the
/// graph module {(sum s_i c_i, s)}, whose elements with vanishing upper block
/// generate the syzygies.
pub fn syzygies(
    ring: &Arc<PolyRing>,
    rank: usize,
    columns: &[ModuleElement],
) -> Vec<ModuleElement> {
    let m = columns.len();
    if m == 0 {
        return Vec::new();
    }
    let total = rank + m;
    let graph: Vec<ModuleElement> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            assert_eq!(c.rank(), rank, "column rank mismatch");
            c.shifted(0, total)
                .add(&ModuleElement::unit(ring, total, rank + i))
        })
        .collect();
    buchberger(ring, total, &graph)
        .into_iter()
        .filter(|g| g.leading_term().unwrap().0 >= rank)
        .map(|g| g.project(rank, m))
        .collect()
}

/// Syzygies over R = S/(f): the columns are augmented by f * e_k, syzygies are
/// taken over S, projected to the original columns and reduced modulo f.
pub fn syzygies_over(
    ring: &RingSpec,
    rank: usize,
    columns: &[ModuleElement],
) -> Vec<ModuleElement> {
    let base = ring.base();
    let Some(f) = ring.modulus() else {
        return syzygies(base, rank, columns);
    };
    let m = columns.len();
    let mut aug: Vec<ModuleElement> = columns.to_vec();
    for k in 0..rank {
        aug.push(ModuleElement::basis_multiple(base, rank, k, f));
    }
    let fgb = GroebnerBasis::compute(base, std::slice::from_ref(f));
    let mut out: Vec<ModuleElement> = Vec::new();
    for s in syzygies(base, rank, &aug) {
        let coords: Vec<Polynomial> = s
            .project(0, m)
            .coordinates()
            .iter()
            .map(|c| fgb.normal_form(c))
            .collect();
        let v = ModuleElement::from_coordinates(base, &coords);
        if !v.is_zero() && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Generators of (gens) ∩ F_p[kept variables], returned in the original ring.
pub fn eliminate(gens: &[Polynomial], drop_vars: &[&str]) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let mut mask = vec![false; ring.nvars()];
    for name in drop_vars {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::Precondition(format!("`{name}` is not a ring variable")))?;
        mask[i] = true;
    }
    let elim_ring = ring.with_order(MonomialOrder::Elimination(mask.clone()));
    let gb = GroebnerBasis::compute(&elim_ring, gens);
    Ok(gb
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.support().all(|i| !mask[i])))
        .map(|g| g.in_ring(&ring).monic())
        .collect())
}
