//! Session documents: one ring plus named ideals and primes, read from TOML.
//!
//! ```toml
//! [ring]
//! p = 2
//! vars = ["x", "y", "z", "w"]
//! order = "grevlex"
//! modulus = "x*y + z*w"
//!
//! [ideals]
//! J = ["x^2", "y*z"]
//!
//! [primes]
//! P = ["x", "z"]
//! ```
//!
//! The name `m` is reserved for the ideal generated by the variables.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use frobenius_core::{Ideal, MonomialOrder, Polynomial, RingSpec};
use serde::Deserialize;

use crate::error::CliError;

pub const MAXIMAL: &str = "m";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSession {
    ring: RawRing,
    #[serde(default)]
    ideals: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    primes: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    p: u64,
    vars: Vec<String>,
    order: Option<String>,
    modulus: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Ideal,
    Prime,
    Maximal,
}

#[derive(Debug, Clone)]
pub struct Named {
    pub name: String,
    pub kind: Kind,
    pub ideal: Ideal,
}

#[derive(Debug, Clone)]
pub struct Session {
    pub ring: Arc<RingSpec>,
    entries: BTreeMap<String, Named>,
}

impl Session {
    pub fn load(path: &Path) -> Result<Session, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Session(format!("cannot read {}: {e}", path.display())))?;
        Session::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Session, CliError> {
        let raw: RawSession = toml::from_str(text).map_err(|e| CliError::Session(e.to_string()))?;
        let order = match raw.ring.order.as_deref() {
            None | Some("grevlex") => MonomialOrder::Grevlex,
            Some("lex") => MonomialOrder::Lex,
            Some(other) => {
                return Err(CliError::Session(format!(
                    "ring.order: expected \"lex\" or \"grevlex\", got {other:?}"
                )))
            }
        };
        let ring = RingSpec::from_parts(
            raw.ring.p,
            &raw.ring.vars,
            order,
            raw.ring.modulus.as_deref(),
        )
        .map_err(|e| CliError::Session(format!("ring: {e}")))?;
        let mut entries = BTreeMap::new();
        entries.insert(
            MAXIMAL.to_string(),
            Named {
                name: MAXIMAL.into(),
                kind: Kind::Maximal,
                ideal: Ideal::maximal(&ring),
            },
        );
        for (table, kind, map) in [
            ("ideals", Kind::Ideal, &raw.ideals),
            ("primes", Kind::Prime, &raw.primes),
        ] {
            for (name, gens) in map {
                if entries.contains_key(name) {
                    return Err(CliError::Session(format!("{table}.{name}: duplicate name")));
                }
                let polys = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        ring.parse(g)
                            .map_err(|e| CliError::Session(format!("{table}.{name}[{i}]: {e}")))
                    })
                    .collect::<Result<Vec<Polynomial>, _>>()?;
                let ideal = Ideal::new(&ring, polys);
                if kind == Kind::Prime {
                    if !ideal.has_zero_constant_terms() {
                        return Err(CliError::Session(format!(
                            "primes.{name}: generators must vanish at the origin"
                        )));
                    }
                    if let Some(why) = ideal.non_prime_evidence() {
                        return Err(CliError::Session(format!("primes.{name}: {why}")));
                    }
                }
                entries.insert(
                    name.clone(),
                    Named {
                        name: name.clone(),
                        kind,
                        ideal,
                    },
                );
            }
        }
        Ok(Session { ring, entries })
    }

    pub fn get(&self, name: &str) -> Result<&Named, CliError> {
        self.entries
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no ideal or prime named {name:?}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Primes declared in the session, in name order.
    pub fn primes(&self) -> Vec<&Named> {
        self.entries
            .values()
            .filter(|n| n.kind == Kind::Prime)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUADRIC: &str = r#"
[ring]
p = 2
vars = ["x", "y", "z", "w"]
order = "grevlex"
modulus = "x*y + z*w"

[primes]
P = ["x", "z"]
"#;

    #[test]
    fn quadric_session() {
        let s = Session::parse(QUADRIC).unwrap();
        assert_eq!(s.ring.modulus().unwrap().to_string(), "x*y + z*w");
        assert_eq!(
            s.get("P").unwrap().ideal.canonical_strings(),
            vec!["x", "z"]
        );
        assert_eq!(s.get("m").unwrap().kind, Kind::Maximal);
        assert_eq!(s.names().collect::<Vec<_>>(), vec!["P", "m"]);
    }

    #[test]
    fn polynomial_ring_session() {
        let s = Session::parse("[ring]\np = 3\nvars = [\"x\", \"y\"]\n[ideals]\nI = [\"x*y\"]\n")
            .unwrap();
        assert!(s.ring.modulus().is_none());
        assert_eq!(*s.ring.base().order(), MonomialOrder::Grevlex);
    }

    #[test]
    fn rejections() {
        let bad = |text: &str| Session::parse(text).unwrap_err().to_string();
        assert!(bad("[ring]\np = 4\nvars = [\"x\"]\n").contains("not a prime"));
        assert!(bad("[ring]\np = 2\nvars = [\"x\"]\norder = \"deglex\"\n").contains("ring.order"));
        assert!(
            bad("[ring]\np = 2\nvars = [\"x\"]\n[ideals]\nI = [\"x + q\"]\n")
                .contains("ideals.I[0]")
        );
        assert!(
            bad("[ring]\np = 2\nvars = [\"x\"]\n[ideals]\nm = [\"x\"]\n").contains("duplicate")
        );
        assert!(bad(
            "[ring]\np = 2\nvars = [\"x\"]\n[ideals]\nA = [\"x\"]\n[primes]\nA = [\"x\"]\n"
        )
        .contains("duplicate"));
        assert!(
            bad("[ring]\np = 2\nvars = [\"x\"]\n[primes]\nQ = [\"x + 1\"]\n").contains("origin")
        );
        assert!(
            bad("[ring]\np = 2\nvars = [\"x\", \"y\"]\n[primes]\nQ = [\"x*y\"]\n")
                .contains("primes.Q")
        );
        assert!(
            bad("[ring]\np = 2\nvars = [\"x\"]\n[ideals]\nI = [\"x\"]\nI = [\"x\"]\n")
                .contains("duplicate")
        );
        assert!(bad("[ring]\np = 2\nvars = [\"x\"]\nextra = 1\n").contains("extra"));
    }
}
