//! Independent oracles and random generators for the integration suites.
//!
//! Nothing here calls the Gröbner engine: the oracles work with plain
//! polynomial arithmetic and dense linear algebra over F_p.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use frobenius_core::{Monomial, PolyRing, Polynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random polynomial with up to `terms` terms of total degree in 1..=max_deg.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &Arc<PolyRing>,
    terms: usize,
    max_deg: u32,
) -> Polynomial {
    let p = ring.characteristic();
    let n = ring.nvars();
    let mut raw = Vec::new();
    for _ in 0..rng.gen_range(1..=terms) {
        let deg = rng.gen_range(1..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        raw.push((Monomial::from_exponents(&e), rng.gen_range(1..p)));
    }
    let f = Polynomial::from_terms(ring, raw);
    if f.is_zero() {
        Polynomial::var(ring, rng.gen_range(0..n))
    } else {
        f
    }
}

/// A random homogeneous polynomial of degree `deg` (possibly zero).
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    ring: &Arc<PolyRing>,
    terms: usize,
    deg: u32,
) -> Polynomial {
    let p = ring.characteristic();
    let n = ring.nvars();
    let mut raw = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        raw.push((Monomial::from_exponents(&e), rng.gen_range(1..p)));
    }
    Polynomial::from_terms(ring, raw)
}

/// Rank of a dense matrix over F_p by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let p64 = u64::from(p);
    let inv = |a: u32| -> u32 {
        let mut r = 1u64;
        let mut b = u64::from(a);
        let mut k = p64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p64;
            }
            b = b * b % p64;
            k >>= 1;
        }
        r as u32
    };
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let pinv = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = (u64::from(*x) * u64::from(pinv) % p64) as u32;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let k = u64::from(row[col]);
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = ((u64::from(*x) + p64 * p64 - k * u64::from(*y)) % p64) as u32;
            }
        }
        rank += 1;
    }
    rank
}

/// Monomials x^b with b_i < bounds_i, in a fixed order.
pub fn box_monomials(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::new();
        for m in &out {
            for e in 0..b {
                let mut v = m.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// dim_Fp S/(gens + (x_i^bounds_i)) by spanning all m·g inside the box.
pub fn box_colength(ring: &Arc<PolyRing>, gens: &[Polynomial], bounds: &[u32]) -> u64 {
    let boxm = box_monomials(bounds);
    let index: HashMap<Vec<u32>, usize> = boxm
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows = Vec::new();
    for g in gens {
        for m in &boxm {
            let mut row = vec![0u32; boxm.len()];
            let mut any = false;
            for (t, c) in g.terms() {
                let e: Vec<u32> = t.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&i) = index.get(&e) {
                    row[i] = *c;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    (boxm.len() - rank_mod_p(rows, ring.characteristic())) as u64
}

/// λ(S/(J : g)) = λ(S/J) - λ(S/(J + g)) for J containing the box powers.
pub fn box_colon_colength(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    g: &Polynomial,
    bounds: &[u32],
) -> u64 {
    let mut with_g = gens.to_vec();
    with_g.push(g.clone());
    box_colength(ring, gens, bounds) - box_colength(ring, &with_g, bounds)
}

/// Rank of r ↦ f^(q-1)·r on S/𝔪^[q]: the Fedder pairing computation of a_e.
pub fn fedder_pairing_rank(f: &Polynomial, q: u32) -> u64 {
    let ring = f.ring();
    let n = ring.nvars();
    let bounds = vec![q; n];
    let boxm = box_monomials(&bounds);
    let index: HashMap<Vec<u32>, usize> = boxm
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let g = f.pow(u64::from(q - 1));
    let rows: Vec<Vec<u32>> = boxm
        .iter()
        .map(|m| {
            let mut row = vec![0u32; boxm.len()];
            for (t, c) in g.terms() {
                let e: Vec<u32> = t.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&i) = index.get(&e) {
                    row[i] = *c;
                }
            }
            row
        })
        .collect();
    rank_mod_p(rows, ring.characteristic()) as u64
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.ring().field();
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a =
        Polynomial::zero(f.ring()).sub_mul_term(field.neg(field.inv(cf)), &mf.quotient_of(&l), f);
    a.sub_mul_term(field.inv(cg), &mg.quotient_of(&l), g)
}

fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = f.ring().field();
    let mut rest = f.clone();
    let mut out = Polynomial::zero(f.ring());
    while let Some((m, c)) = rest.leading_term() {
        let m = m.clone();
        match basis
            .iter()
            .find(|b| b.leading_monomial().unwrap().divides(&m))
        {
            Some(b) => {
                let (bm, bc) = b.leading_term().unwrap();
                rest = rest.sub_mul_term(field.mul(c, field.inv(bc)), &bm.quotient_of(&m), b);
            }
            None => {
                let t = Polynomial::term(f.ring(), m.clone(), c);
                out = &out + &t;
                rest = &rest - &t;
            }
        }
    }
    out
}

/// Textbook Buchberger without pair criteria, followed by reduction: monic,
/// sorted by descending leading monomial.
pub fn naive_groebner(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let r = reduce(&spoly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimalize then reduce
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let dominated = basis.iter().enumerate().any(|(l, h)| {
            let hm = h.leading_monomial().unwrap();
            l != k && hm.divides(lm) && (hm != lm || l < k)
        });
        if !dominated {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = minimal
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, h)| h.clone())
                .collect();
            reduce(g, &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| {
        ring.cmp_monomials(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    reduced
}

/// Dimension of the solution space of Σ s_i c_i = 0 with deg s_i ≤ D - deg c_i,
/// for homogeneous columns in S^rank with column degrees `degs`.
pub fn truncated_syzygy_dimension(columns: &[Vec<Polynomial>], degs: &[u32], top: u32) -> usize {
    let (unknowns, rows) = truncated_system(columns, degs, top);
    let p = columns[0][0].ring().characteristic();
    unknowns - rank_mod_p(transpose(rows, unknowns), p)
}

/// Dimension of the span of m·s (weighted degree ≤ top) for the given syzygies.
pub fn truncated_span_dimension(
    syz: &[Vec<Polynomial>],
    degs: &[u32],
    top: u32,
    nvars: usize,
    p: u32,
) -> usize {
    let mut keys: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    let mut vectors: Vec<HashMap<usize, u32>> = Vec::new();
    for s in syz {
        // weighted degree of a homogeneous syzygy
        let Some(d) = s
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.total_degree().map(|t| t as u32 + degs[i]))
        else {
            continue;
        };
        if d > top {
            continue;
        }
        for mult in monomials_up_to(nvars, top - d) {
            let mut v = HashMap::new();
            for (i, c) in s.iter().enumerate() {
                for (t, coef) in c.terms() {
                    let e: Vec<u32> = t
                        .exponents()
                        .iter()
                        .zip(&mult)
                        .map(|(a, b)| a + b)
                        .collect();
                    let len = keys.len();
                    let k = *keys.entry((i, e)).or_insert(len);
                    v.insert(k, *coef);
                }
            }
            vectors.push(v);
        }
    }
    let width = keys.len();
    let rows = vectors
        .into_iter()
        .map(|v| {
            let mut row = vec![0u32; width];
            for (k, c) in v {
                row[k] = c;
            }
            row
        })
        .collect();
    rank_mod_p(rows, p)
}

/// Every given syzygy satisfies Σ s_i c_i = 0.
pub fn is_syzygy(columns: &[Vec<Polynomial>], s: &[Polynomial]) -> bool {
    let rank = columns[0].len();
    (0..rank).all(|r| {
        let mut acc = Polynomial::zero(columns[0][0].ring());
        for (i, c) in columns.iter().enumerate() {
            acc = &acc + &(&s[i] * &c[r]);
        }
        acc.is_zero()
    })
}

pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

fn truncated_system(
    columns: &[Vec<Polynomial>],
    degs: &[u32],
    top: u32,
) -> (usize, Vec<HashMap<usize, u32>>) {
    let nvars = columns[0][0].ring().nvars();
    // unknown index → equation coefficients (equation keyed by (row, monomial))
    let mut eq_keys: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    let mut unknown_cols: Vec<HashMap<usize, u32>> = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        if degs[i] > top {
            continue;
        }
        for m in monomials_up_to(nvars, top - degs[i]) {
            let mut coeffs = HashMap::new();
            for (r, entry) in col.iter().enumerate() {
                for (t, c) in entry.terms() {
                    let e: Vec<u32> = t.exponents().iter().zip(&m).map(|(a, b)| a + b).collect();
                    let len = eq_keys.len();
                    let k = *eq_keys.entry((r, e)).or_insert(len);
                    coeffs.insert(k, *c);
                }
            }
            unknown_cols.push(coeffs);
        }
    }
    (unknown_cols.len(), unknown_cols)
}

fn transpose(cols: Vec<HashMap<usize, u32>>, width: usize) -> Vec<Vec<u32>> {
    let height = cols
        .iter()
        .flat_map(|c| c.keys().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut rows = vec![vec![0u32; width]; height];
    for (j, c) in cols.into_iter().enumerate() {
        for (i, v) in c {
            rows[i][j] = v;
        }
    }
    rows
}

/// Remainder of f under the division algorithm by `basis` (a Gröbner basis).
pub fn reduce_modulo(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    reduce(f, basis)
}

/// Column-major matrices A (r×k) and B (k×c): A·B vanishes modulo the principal ideal (f).
pub fn product_vanishes(
    a: &[Vec<Polynomial>],
    b: &[Vec<Polynomial>],
    f: Option<&Polynomial>,
) -> bool {
    let basis: Vec<Polynomial> = f.map(|f| vec![f.monic()]).unwrap_or_default();
    b.iter().all(|col| {
        if col.is_empty() {
            return true;
        }
        let rows = a.first().map_or(0, |c| c.len());
        (0..rows).all(|r| {
            let mut acc = Polynomial::zero(col[0].ring());
            for (k, entry) in col.iter().enumerate() {
                acc = &acc + &(&a[k][r] * entry);
            }
            reduce(&acc, &basis).is_zero()
        })
    })
}
