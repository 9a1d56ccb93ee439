//! One function per subcommand; each returns a report ready for rendering.

use clap::ValueEnum;
use frobenius_core::{
    assoc_check, depth_probe, equi_check, fedder_is_fpure, frobenius_betti_euler, fsig_estimates,
    hk_function, localize_report, splitting_ideal, Colength, EquiMode, Ideal, Polynomial,
};
use serde_json::Value;

use crate::error::CliError;
use crate::report::Report;
use crate::session::{Named, Session, MAXIMAL};

pub const E_CEILING: u32 = 4;
pub const N_CEILING: u32 = 32;
pub const I_CEILING: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Groebner,
    Colength,
    BracketPower,
    SplittingIdeal,
    Hk,
    Fsig,
    Betti,
    EquiCheck,
    DepthProbe,
    AssocCheck,
    Fpure,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Groebner => "groebner",
            Command::Colength => "colength",
            Command::BracketPower => "bracket-power",
            Command::SplittingIdeal => "splitting-ideal",
            Command::Hk => "hk",
            Command::Fsig => "fsig",
            Command::Betti => "betti",
            Command::EquiCheck => "equi-check",
            Command::DepthProbe => "depth-probe",
            Command::AssocCheck => "assoc-check",
            Command::Fpure => "fpure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fsig,
    Hk,
}

#[derive(Debug, Clone)]
pub struct Flags {
    pub ideal: Option<String>,
    pub primes: Vec<String>,
    pub e: Option<u32>,
    pub e_max: u32,
    pub n_max: u32,
    pub mode: Mode,
    pub i_max: usize,
    pub params: Vec<String>,
    pub candidates: Vec<String>,
}

impl Default for Flags {
    fn default() -> Flags {
        Flags {
            ideal: None,
            primes: Vec::new(),
            e: None,
            e_max: 2,
            n_max: 8,
            mode: Mode::Fsig,
            i_max: 2,
            params: Vec::new(),
            candidates: Vec::new(),
        }
    }
}

fn strings(v: Vec<String>) -> Value {
    Value::Array(v.into_iter().map(Value::from).collect())
}

fn describe(n: &Named) -> Value {
    serde_json::json!({
        "name": n.name,
        "generators": strings(n.ideal.generators().iter().map(|g| g.to_string()).collect()),
    })
}

fn level(flags: &Flags) -> Result<u32, CliError> {
    let e = flags.e.unwrap_or(1);
    if e == 0 || e > E_CEILING {
        return Err(CliError::Usage(format!(
            "--e must be between 1 and {E_CEILING}"
        )));
    }
    Ok(e)
}

fn e_max(flags: &Flags) -> Result<u32, CliError> {
    if flags.e_max == 0 || flags.e_max > E_CEILING {
        return Err(CliError::Usage(format!(
            "--e-max must be between 1 and {E_CEILING}"
        )));
    }
    Ok(flags.e_max)
}

fn i_max(flags: &Flags) -> Result<usize, CliError> {
    if flags.i_max > I_CEILING {
        return Err(CliError::Usage(format!(
            "--i-max must be at most {I_CEILING}"
        )));
    }
    Ok(flags.i_max)
}

fn ideal<'a>(session: &'a Session, flags: &Flags) -> Result<&'a Named, CliError> {
    session.get(flags.ideal.as_deref().unwrap_or(MAXIMAL))
}

fn first_prime<'a>(session: &'a Session, flags: &Flags) -> Result<&'a Named, CliError> {
    match flags.primes.as_slice() {
        [name] => session.get(name),
        [] => Err(CliError::Usage("--prime is required".into())),
        _ => Err(CliError::Usage("exactly one --prime is expected".into())),
    }
}

fn polys(session: &Session, texts: &[String], flag: &str) -> Result<Vec<Polynomial>, CliError> {
    texts
        .iter()
        .map(|t| {
            session
                .ring
                .parse(t.trim())
                .map_err(|e| CliError::Usage(format!("--{flag} {t:?}: {e}")))
        })
        .collect()
}

fn generators(i: &Ideal) -> Value {
    strings(i.canonical_strings())
}

pub fn run_command(session: &Session, command: Command, flags: &Flags) -> Result<Report, CliError> {
    let mut report = Report::new(command.name());
    report.input("ring", session.ring.to_string());
    match command {
        Command::Groebner => {
            let n = ideal(session, flags)?;
            report.input("ideal", describe(n));
            report.value("generators", generators(&n.ideal));
        }
        Command::Colength => {
            let n = ideal(session, flags)?;
            report.input("ideal", describe(n));
            let lambda = match n.ideal.colength() {
                Colength::Finite(k) => Value::from(k),
                Colength::Infinite => Value::from("infinite"),
            };
            report.value("lambda", lambda);
            report.value(
                "dimension",
                n.ideal.dimension().map_or(Value::Null, Value::from),
            );
        }
        Command::BracketPower => {
            let (n, e) = (ideal(session, flags)?, level(flags)?);
            report.input("ideal", describe(n));
            report.input("e", e);
            report.value("generators", generators(&n.ideal.bracket_power(e)?));
        }
        Command::SplittingIdeal => {
            let (n, e) = (ideal(session, flags)?, level(flags)?);
            report.input("ideal", describe(n));
            report.input("e", e);
            report.value(
                "generators",
                generators(&splitting_ideal(&n.ideal, e)?.result),
            );
        }
        Command::Hk => {
            let (n, e_max) = (ideal(session, flags)?, e_max(flags)?);
            report.input("ideal", describe(n));
            report.input("e_max", e_max);
            report.absorb(&hk_function(&n.ideal, e_max)?, None);
        }
        Command::Fsig => {
            let (n, e_max) = (ideal(session, flags)?, e_max(flags)?);
            report.input("ideal", describe(n));
            report.input("e_max", e_max);
            report.absorb(&fsig_estimates(&n.ideal, e_max)?, None);
        }
        Command::Betti => {
            let (e, i_max) = (level(flags)?, i_max(flags)?);
            report.input("e", e);
            report.input("i_max", i_max);
            let (core, slice) = frobenius_betti_euler(&session.ring, e, i_max)?;
            report.absorb(&core, None);
            let mut primes = Vec::new();
            for name in &flags.primes {
                let p = session.get(name)?;
                primes.push(describe(p));
                report.absorb(&localize_report(&slice, &p.ideal, i_max)?, Some(name));
            }
            if !primes.is_empty() {
                report.input("primes", Value::Array(primes));
            }
        }
        Command::EquiCheck => {
            let (p, e) = (first_prime(session, flags)?, level(flags)?);
            report.input("prime", describe(p));
            report.input("e", e);
            report.input(
                "mode",
                if flags.mode == Mode::Fsig {
                    "fsig"
                } else {
                    "hk"
                },
            );
            let extra = match (&flags.ideal, flags.mode) {
                (Some(name), Mode::Fsig) => {
                    let n = session.get(name)?;
                    report.input("ideal", describe(n));
                    Some(&n.ideal)
                }
                (Some(_), Mode::Hk) => {
                    return Err(CliError::Usage(
                        "--ideal is only used with --mode fsig".into(),
                    ))
                }
                (None, _) => None,
            };
            let mode = if flags.mode == Mode::Fsig {
                EquiMode::Fsig
            } else {
                EquiMode::Hk
            };
            report.absorb(&equi_check(&p.ideal, e, mode, extra)?, None);
        }
        Command::DepthProbe => {
            let (p, e) = (first_prime(session, flags)?, level(flags)?);
            report.input("prime", describe(p));
            report.input("e", e);
            let candidates = if flags.candidates.is_empty() {
                let n = session.ring.nvars();
                let mut c: Vec<Polynomial> = (0..n).map(|i| session.ring.var(i)).collect();
                if n > 1 {
                    c.push(
                        c.iter()
                            .fold(Polynomial::zero(session.ring.base()), |acc, v| &acc + v),
                    );
                }
                c
            } else {
                polys(session, &flags.candidates, "candidates")?
            };
            report.input(
                "candidates",
                strings(candidates.iter().map(|c| c.to_string()).collect()),
            );
            report.absorb(&depth_probe(&p.ideal, e, &candidates)?, None);
        }
        Command::AssocCheck => {
            let (n, e) = (ideal(session, flags)?, level(flags)?);
            if flags.n_max == 0 || flags.n_max > N_CEILING {
                return Err(CliError::Usage(format!(
                    "--n-max must be between 1 and {N_CEILING}"
                )));
            }
            let params = polys(session, &flags.params, "params")?;
            report.input("ideal", describe(n));
            report.input(
                "params",
                strings(params.iter().map(|x| x.to_string()).collect()),
            );
            report.input("e", e);
            report.input("n_max", flags.n_max);
            let primes: Vec<Ideal> = if flags.primes.is_empty() {
                if !n.ideal.is_monomial() {
                    return Err(CliError::Usage(
                        "--prime is required unless the ideal is monomial".into(),
                    ));
                }
                let h = params.len();
                let all = n.ideal.monomial_minimal_primes()?;
                all.into_iter()
                    .filter(|p| p.dimension() == Some(h))
                    .collect()
            } else {
                let named = flags
                    .primes
                    .iter()
                    .map(|s| session.get(s))
                    .collect::<Result<Vec<_>, _>>()?;
                report.input(
                    "primes",
                    Value::Array(named.iter().map(|p| describe(p)).collect()),
                );
                named.into_iter().map(|p| p.ideal.clone()).collect()
            };
            report.absorb(
                &assoc_check(&n.ideal, &params, e, flags.n_max, &primes)?,
                None,
            );
        }
        Command::Fpure => {
            let e = level(flags)?;
            report.input("e", e);
            report.verdict("f_pure", fedder_is_fpure(&session.ring, e)?);
        }
    }
    Ok(report)
}
