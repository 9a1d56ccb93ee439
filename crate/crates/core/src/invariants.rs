//! Frobenius invariants at finite level: Hilbert–Kunz colengths, F-signature
//! estimates, Frobenius Betti and Euler numbers, their localizations, and
//! checkers for the equimultiplicity and associativity statements.

use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::{fedder_is_fpure, pushforward_presentation, splitting_ideal};
use crate::ideal::{cm_parameter_multiplicity, Colength, Ideal};
use crate::poly::Polynomial;
use crate::report::{Cell, InvariantReport, Normalized, Table};
use crate::resolution::{
    euler_from_betti, local_generator_count, localize_betti, minimal_resolution, ResolutionSlice,
};
use crate::ring::RingSpec;

/// p^(e·d), checked.
fn rank_power(ring: &RingSpec, e: u32, d: usize) -> Result<u64> {
    u64::from(ring.characteristic())
        .checked_pow(e * d as u32)
        .ok_or(Error::Ring(crate::error::RingError::ExponentOverflow))
}

fn finite(c: Colength, what: &str) -> Result<u64> {
    c.finite()
        .ok_or_else(|| Error::Precondition(format!("{what} is not of finite colength")))
}

fn require_local(a: &Ideal, what: &str) -> Result<()> {
    if a.has_zero_constant_terms() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{what} {a} has a generator with nonzero constant term"
        )))
    }
}

fn int(n: u64) -> i64 {
    i64::try_from(n).expect("value exceeds i64")
}

/// λ(R/I^[p^e]) and λ/p^(e·dim R) for e = 0..=e_max.
pub fn hk_function(ideal: &Ideal, e_max: u32) -> Result<InvariantReport> {
    let ring = ideal.ring();
    finite(ideal.colength(), "the ideal")?;
    let rows: Vec<(u32, u64, u64)> = (0..=e_max)
        .into_par_iter()
        .map(|e| {
            let lambda = finite(ideal.bracket_power(e)?.colength(), "the bracket power")?;
            Ok((e, lambda, rank_power(ring, e, ring.dim())?))
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new("hk", &["e", "lambda", "normalized"]);
    for (e, lambda, rank) in rows {
        table.push(vec![
            u64::from(e).into(),
            lambda.into(),
            Normalized::new(int(lambda), rank).into(),
        ]);
    }
    let mut report = InvariantReport::new(ring);
    report.tables.push(table);
    report.note("finite-level values only; no limit is extrapolated");
    Ok(report)
}

/// λ(R/I_e(𝔞)) and λ/p^(e·dim R) for e = 1..=e_max.
pub fn fsig_estimates(a: &Ideal, e_max: u32) -> Result<InvariantReport> {
    let ring = a.ring();
    require_local(a, "ideal")?;
    finite(a.colength(), "the ideal")?;
    let rows: Vec<(u32, u64, u64)> = (1..=e_max)
        .into_par_iter()
        .map(|e| {
            let lambda = finite(
                splitting_ideal(a, e)?.result.colength(),
                "the splitting ideal",
            )?;
            Ok((e, lambda, rank_power(ring, e, ring.dim())?))
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new("fsig", &["e", "lambda", "normalized"]);
    for (e, lambda, rank) in rows {
        table.push(vec![
            u64::from(e).into(),
            lambda.into(),
            Normalized::new(int(lambda), rank).into(),
        ]);
    }
    let mut report = InvariantReport::new(ring);
    report.tables.push(table);
    report.note(
        "a_e is identified with the colength of I_e(m) because the residue field F_p is perfect",
    );
    report.note("finite-level values only; no limit is extrapolated");
    Ok(report)
}

/// λ(R/I_e(𝔞)^[p^e_inner]) / p^((e + e_inner)·dim R).
pub fn fsig_via_hk(a: &Ideal, e: u32, e_inner: u32) -> Result<Normalized> {
    require_local(a, "ideal")?;
    finite(a.colength(), "the ideal")?;
    let ring = a.ring();
    let inner = splitting_ideal(a, e)?.result.bracket_power(e_inner)?;
    let lambda = finite(inner.colength(), "the bracket power of the splitting ideal")?;
    Ok(Normalized::new(
        int(lambda),
        rank_power(ring, e + e_inner, ring.dim())?,
    ))
}

/// Resolution of F^e_*R through i_max together with its report.
pub fn frobenius_betti_euler(
    ring: &Arc<RingSpec>,
    e: u32,
    i_max: usize,
) -> Result<(InvariantReport, ResolutionSlice)> {
    let slice = minimal_resolution(&pushforward_presentation(ring, e)?, i_max)?;
    let mut report = betti_report(&slice, i_max)?;
    report.add_verdict("differentials_compose_to_zero", slice.is_complex());
    report.add_verdict("minimal", slice.is_minimal());
    Ok((report, slice))
}

/// β, χ and the rank identities for the first `i_max + 1` entries of a slice.
pub fn betti_report(slice: &ResolutionSlice, i_max: usize) -> Result<InvariantReport> {
    let ring = &slice.ring;
    let rank = rank_power(ring, slice.level, ring.dim())?;
    let rank_i = int(rank);
    let betti = &slice.betti[..=i_max.min(slice.betti.len() - 1)];
    let chi = euler_from_betti(betti);
    let sign = |i: usize| if i.is_multiple_of(2) { 1 } else { -1 };
    let omega: Option<Vec<i64>> = slice.syzygy_ranks.as_ref().ok().map(|r| {
        std::iter::once(rank_i)
            .chain(r.iter().map(|&x| int(x)))
            .take(betti.len())
            .collect()
    });
    let mut table = Table::new(
        "betti",
        &[
            "i",
            "beta",
            "chi",
            "beta_normalized",
            "chi_normalized",
            "rank_omega",
            "chi_lower_bound",
        ],
    );
    for i in 0..betti.len() {
        table.push(vec![
            i.into(),
            betti[i].into(),
            chi[i].into(),
            Normalized::new(int(betti[i]), rank).into(),
            Normalized::new(chi[i], rank).into(),
            omega.as_ref().and_then(|o| o.get(i).copied()).into(),
            (sign(i) * rank_i).into(),
        ]);
    }
    let regular = ring.is_regular_at_origin();
    let mut report = InvariantReport::new(ring);
    report.tables.push(table);
    report.add_value("rank", rank);
    report.add_value("regular", regular);
    let recomputes =
        (0..betti.len()).all(|i| int(betti[i]) == chi[i] + if i > 0 { chi[i - 1] } else { 0 });
    report.add_verdict("betti_recomputes_from_euler", recomputes);
    report.add_verdict(
        "euler_lower_bound",
        (0..chi.len()).all(|i| chi[i] >= sign(i) * rank_i),
    );
    report.add_verdict(
        "euler_strict_exactly_when_not_regular",
        (0..chi.len()).all(|i| (chi[i] > sign(i) * rank_i) == !regular),
    );
    match (&omega, &slice.syzygy_ranks) {
        (Some(o), _) => {
            report.add_verdict(
                "rank_identity",
                (1..o.len()).all(|i| o[i] == chi[i - 1] + sign(i) * rank_i),
            );
            if !regular {
                report.add_verdict(
                    "betti_exceeds_rank",
                    (0..o.len()).all(|i| int(betti[i]) > o[i]),
                );
            }
        }
        (None, Err(why)) => report.note(format!("syzygy ranks omitted: {why}")),
        (None, Ok(_)) => {}
    }
    Ok(report)
}

/// β_i(R) against β_i(R_P) and χ_i(R) against χ_i(R_P). P must be prime
/// (not verified).
pub fn localize_report(
    slice: &ResolutionSlice,
    prime: &Ideal,
    i_max: usize,
) -> Result<InvariantReport> {
    let local = localize_betti(slice, prime)?;
    let top = i_max.min(slice.betti.len() - 1);
    let (global, local) = (&slice.betti[..=top], &local[..=top]);
    let (chi, chi_local) = (euler_from_betti(global), euler_from_betti(local));
    let mut table = Table::new(
        "localized",
        &["i", "beta", "beta_local", "chi", "chi_local"],
    );
    for i in 0..global.len() {
        table.push(vec![
            i.into(),
            global[i].into(),
            local[i].into(),
            chi[i].into(),
            chi_local[i].into(),
        ]);
    }
    let mut report = InvariantReport::new(&slice.ring);
    report.tables.push(table);
    report.add_value("prime", prime.to_string());
    report.add_verdict(
        "betti_semicontinuous",
        global.iter().zip(local).all(|(a, b)| a >= b),
    );
    report.add_verdict(
        "euler_semicontinuous",
        chi.iter().zip(&chi_local).all(|(a, b)| a >= b),
    );
    report.note("the prime is supplied by the caller and is not verified to be prime");
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquiMode {
    Fsig,
    Hk,
}

/// Equimultiplicity at finite level e. Fsig mode compares I_e((P, J)) with
/// I_e(P) + J^[p^e] (J defaults to 𝔪); hk mode compares μ(F^e_*R) with μ(F^e_*R_P).
pub fn equi_check(
    prime: &Ideal,
    e: u32,
    mode: EquiMode,
    extra: Option<&Ideal>,
) -> Result<InvariantReport> {
    require_local(prime, "prime")?;
    let ring = prime.ring();
    let mut report = InvariantReport::new(ring);
    report.add_value("prime", prime.to_string());
    match mode {
        EquiMode::Fsig => {
            let m = Ideal::maximal(ring);
            let extra = extra.unwrap_or(&m);
            require_local(extra, "ideal")?;
            let lhs = splitting_ideal(&prime.sum(extra), e)?.result;
            let rhs = splitting_ideal(prime, e)?
                .result
                .sum(&extra.bracket_power(e)?);
            let missing = |from: &Ideal, into: &Ideal| -> Vec<String> {
                let mut out: Vec<String> = from
                    .canonical_generators()
                    .iter()
                    .filter(|g| !into.contains(g))
                    .map(|g| g.to_string())
                    .collect();
                out.sort();
                out
            };
            let lhs_extra = missing(&lhs, &rhs);
            let rhs_extra = missing(&rhs, &lhs);
            report.add_value("extra", extra.to_string());
            report.add_value("lhs", Cell::List(lhs.canonical_strings()));
            report.add_value("rhs", Cell::List(rhs.canonical_strings()));
            report.add_verdict("equality", lhs_extra.is_empty() && rhs_extra.is_empty());
            if let Some(w) = lhs_extra.first().or(rhs_extra.first()) {
                report.add_witness("witness", w.clone());
            }
            if !lhs_extra.is_empty() {
                report.add_witness("lhs_not_in_rhs", Cell::List(lhs_extra));
            }
            if !rhs_extra.is_empty() {
                report.add_witness("rhs_not_in_lhs", Cell::List(rhs_extra));
            }
        }
        EquiMode::Hk => {
            let pres = pushforward_presentation(ring, e)?;
            let mu = finite(
                Ideal::maximal(ring).bracket_power(e)?.colength(),
                "the Frobenius power of m",
            )?;
            let mu_local = local_generator_count(&pres, prime)?;
            report.add_value("mu", mu);
            report.add_value("mu_local", mu_local);
            report.add_verdict("equality", mu == mu_local);
        }
    }
    Ok(report)
}

/// Greedy search for a regular sequence on R/I_e(P) among `candidates`, with a
/// certificate that the depth equals its length when the maximal-ideal colon
/// strictly grows.
pub fn depth_probe(prime: &Ideal, e: u32, candidates: &[Polynomial]) -> Result<InvariantReport> {
    require_local(prime, "prime")?;
    let ring = prime.ring();
    let m = Ideal::maximal(ring);
    let split = splitting_ideal(prime, e)?.result;
    let mut current = split.clone();
    let mut found: Vec<Polynomial> = Vec::new();
    let mut steps = Table::new("steps", &["step", "candidate", "regular", "witness"]);
    let mut used = vec![false; candidates.len()];
    'extend: loop {
        for (k, c) in candidates.iter().enumerate() {
            if used[k] {
                continue;
            }
            if c.constant_term() != 0 {
                return Err(Error::Precondition(format!(
                    "candidate {c} is not in the maximal ideal"
                )));
            }
            let next = current.with_generators(std::slice::from_ref(c));
            let check = current.is_regular_sequence(std::slice::from_ref(c));
            let regular = check.regular && !next.is_unit();
            steps.push(vec![
                found.len().into(),
                c.to_string().into(),
                regular.into(),
                check.witness.map(|w| w.to_string()).into(),
            ]);
            if regular {
                used[k] = true;
                found.push(c.clone());
                current = next;
                continue 'extend;
            }
        }
        break;
    }
    let colon = current.quotient(&m);
    let obstruction = current.first_missing(&colon);
    let mut report = InvariantReport::new(ring);
    report.tables.push(steps);
    report.add_value("splitting_ideal", Cell::List(split.canonical_strings()));
    report.add_value(
        "regular_sequence",
        Cell::List(found.iter().map(|g| g.to_string()).collect()),
    );
    report.add_value("depth_lower_bound", found.len());
    report.add_value("depth", obstruction.as_ref().map(|_| found.len()));
    report.add_verdict("depth_certified", obstruction.is_some());
    if let Some(w) = obstruction {
        report.add_witness("maximal_colon_element", w.to_string());
    }
    Ok(report)
}

/// Associativity at fixed level e for R/I Cohen–Macaulay of dimension h with
/// parameters x_1..x_h and the minimal primes of I of maximal dimension.
pub fn assoc_check(
    ideal: &Ideal,
    params: &[Polynomial],
    e: u32,
    n_max: u32,
    primes: &[Ideal],
) -> Result<InvariantReport> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be positive".into()));
    }
    require_local(ideal, "ideal")?;
    let ring = ideal.ring();
    let h = params.len();
    let dim = ideal
        .dimension()
        .ok_or_else(|| Error::Precondition("the ideal is the unit ideal".into()))?;
    if dim != h {
        return Err(Error::Precondition(format!(
            "dim R/I = {dim} but {h} parameters were given"
        )));
    }
    let cm = ideal.is_regular_sequence(params);
    if !cm.regular {
        return Err(Error::Precondition(format!(
            "parameters are not a regular sequence on R/I (fails at index {:?})",
            cm.failed_index
        )));
    }
    if primes.is_empty() {
        return Err(Error::Precondition("no primes were supplied".into()));
    }
    for p in primes {
        if !p.contains_ideal(ideal) {
            return Err(Error::Precondition(format!(
                "prime {p} does not contain the ideal"
            )));
        }
        if p.dimension() != Some(h) {
            return Err(Error::Precondition(format!(
                "prime {p} has dim R/P different from dim R/I"
            )));
        }
    }
    let q = u64::from(ring.base().frobenius_q(e)?);
    let powered =
        |n: u32| -> Vec<Polynomial> { params.iter().map(|x| x.pow(u64::from(n))).collect() };

    let lambdas: Vec<u64> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let a = ideal.with_generators(&powered(n));
            finite(
                splitting_ideal(&a, e)?.result.colength(),
                "the splitting ideal",
            )
        })
        .collect::<Result<_>>()?;
    let split = splitting_ideal(ideal, e)?.result;
    let mut terms = Table::new(
        "rhs_terms",
        &["prime", "multiplicity", "local_length", "filtration"],
    );
    let mut sum = 0u64;
    for (k, p) in primes.iter().enumerate() {
        let others: Vec<Ideal> = primes
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, q)| q.clone())
            .collect();
        let mult = cm_parameter_multiplicity(params, p)?;
        let cert = split.local_length(p, &others)?;
        sum += mult * cert.total;
        terms.push(vec![
            p.to_string().into(),
            mult.into(),
            cert.total.into(),
            Cell::List(
                cert.filtration_ranks
                    .iter()
                    .map(|r| r.to_string())
                    .collect(),
            ),
        ]);
    }
    let scale = q.pow(h as u32);
    let rhs = scale * sum;

    let nh = |n: u32| u64::from(n).pow(h as u32);
    let mut lhs_table = Table::new("lhs", &["n", "lambda", "lhs"]);
    let rhs_ratio = Normalized::new(int(rhs), 1).ratio();
    let mut distances = Vec::new();
    for (i, lambda) in lambdas.iter().enumerate() {
        let n = i as u32 + 1;
        let value = Normalized::new(int(*lambda), nh(n));
        let d = value.ratio() - rhs_ratio;
        distances.push(if d < Ratio::from_integer(0) { -d } else { d });
        lhs_table.push(vec![u64::from(n).into(), (*lambda).into(), value.into()]);
    }

    // monotonicity and the claim grid vary the first parameter with the others fixed at exponent 1
    let first_only = |n: u32| -> Vec<Polynomial> {
        let mut v = vec![params[0].pow(u64::from(n))];
        v.extend(params.iter().skip(1).cloned());
        v
    };
    let mut report = InvariantReport::new(ring);
    if h > 0 {
        let grid_max = n_max.min(4);
        let top = (n_max + 1).max(2 * grid_max);
        let seq: Vec<u64> = (0..=top)
            .into_par_iter()
            .map(|n| {
                let a = ideal.with_generators(&first_only(n));
                finite(
                    splitting_ideal(&a, e)?.result.colength(),
                    "the splitting ideal",
                )
            })
            .collect::<Result<_>>()?;
        let steps: Vec<i64> = seq.windows(2).map(|w| int(w[1]) - int(w[0])).collect();
        let mut mono = Table::new("monotonicity", &["n", "lambda", "step"]);
        for n in 1..=n_max as usize {
            mono.push(vec![n.into(), seq[n].into(), steps[n].into()]);
        }
        report.add_verdict(
            "steps_nondecreasing",
            (1..n_max as usize).all(|n| steps[n] >= steps[n - 1]),
        );
        report.add_verdict(
            "averages_nondecreasing",
            (1..n_max as usize).all(|n| {
                u128::from(seq[n + 1]) * n as u128 >= u128::from(seq[n]) * (n as u128 + 1)
            }),
        );
        report.tables.push(mono);

        let cells: Vec<(u32, u32)> = (1..=grid_max)
            .flat_map(|n| (0..=grid_max).map(move |m| (n, m)))
            .collect();
        let grid: Vec<(u32, u32, u64)> = cells
            .into_par_iter()
            .map(|(n, m)| {
                let a = ideal.with_generators(&first_only(n + m));
                let big = params[0].pow(u64::from(n) * q);
                let b = splitting_ideal(&a, e)?.result.with_generators(&[big]);
                Ok((n, m, finite(b.colength(), "a_{n,m}")?))
            })
            .collect::<Result<_>>()?;
        let mut claim = Table::new("claim", &["n", "m", "a_nm", "difference", "holds"]);
        let mut all = true;
        for (n, m, a) in grid {
            let diff = int(seq[(n + m) as usize]) - int(seq[m as usize]);
            let holds = int(a) == diff;
            all &= holds;
            claim.push(vec![
                u64::from(n).into(),
                u64::from(m).into(),
                a.into(),
                diff.into(),
                holds.into(),
            ]);
        }
        report.add_verdict("claim_identity", all);
        report.tables.push(claim);
    }
    let last = *distances.last().unwrap();
    let reaches = last == Ratio::from_integer(0);
    let nonincreasing = distances.windows(2).all(|w| w[1] <= w[0]);
    report.tables.insert(0, lhs_table);
    report.tables.push(terms);
    report.add_value("h", h);
    report.add_value("rhs", rhs);
    report.add_value("rhs_unscaled", sum);
    report.add_verdict("lhs_reaches_rhs", reaches);
    report.add_verdict("distance_nonincreasing", nonincreasing);
    report.add_verdict("stabilized", reaches || nonincreasing);
    let unscaled = Normalized::new(int(sum), 1).ratio();
    let flagged = scale != 1 && !distances.is_empty() && {
        let v = Normalized::new(int(lambdas[lambdas.len() - 1]), nh(n_max)).ratio();
        v == unscaled
    };
    report.add_value("unscaled_identity_holds", flagged);
    report.note("the right-hand side carries the factor p^(e*h)");
    if fedder_is_fpure(ring, e)? {
        report.note("the ring is F-pure at the origin");
    }
    Ok(report)
}
