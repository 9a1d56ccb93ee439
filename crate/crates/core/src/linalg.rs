//! Rank of polynomial matrices over a domain S/P, by fraction-free elimination
//! whose zero test is a normal form modulo a Gröbner basis of P.

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::module::ModuleElement;
use crate::poly::Polynomial;

/// Rank over Frac(S/P) of the matrix whose columns are `columns`.
///
/// `pivot_check` is consulted for every pivot; returning `false` aborts with
/// [`Error::NotDomain`] (used to catch zero-divisor pivots when P is only
/// assumed prime).
pub fn generic_rank(
    columns: &[ModuleElement],
    zero: &GroebnerBasis,
    pivot_check: &dyn Fn(&Polynomial) -> bool,
) -> Result<usize> {
    // row-major dense copy, reduced modulo P
    let Some(first) = columns.first() else {
        return Ok(0);
    };
    let nrows = first.rank();
    let mut rows: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(columns.len()); nrows];
    for c in columns {
        for (r, entry) in c.coordinates().into_iter().enumerate() {
            rows[r].push(zero.normal_form(&entry));
        }
    }
    rank_of_rows(rows, zero, pivot_check)
}

pub(crate) fn rank_of_rows(
    mut rows: Vec<Vec<Polynomial>>,
    zero: &GroebnerBasis,
    pivot_check: &dyn Fn(&Polynomial) -> bool,
) -> Result<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        // smallest nonzero entry as pivot keeps the growth down
        let pivot_row = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| (rows[r][col].len(), rows[r][col].total_degree()));
        let Some(pr) = pivot_row else { continue };
        rows.swap(rank, pr);
        let pivot = rows[rank][col].clone();
        if !pivot_check(&pivot) {
            return Err(Error::NotDomain(format!("pivot {pivot} is a zero divisor")));
        }
        let (top, below) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let a = row[col].clone();
            if a.is_zero() {
                continue;
            }
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = zero.normal_form(&(&(&pivot * x) - &(&a * y)));
            }
        }
        rank += 1;
    }
    Ok(rank)
}
