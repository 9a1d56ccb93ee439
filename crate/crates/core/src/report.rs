//! Report containers shared by the invariant computations: named tables,
//! verdicts, witnesses and scalar values, all in insertion order.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// An unreduced fraction a/b, kept as computed so reports show λ over p^(e·d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Normalized {
    pub num: i64,
    pub den: u64,
}

impl Normalized {
    pub fn new(num: i64, den: u64) -> Normalized {
        assert!(den > 0, "zero denominator");
        Normalized { num, den }
    }

    pub fn ratio(&self) -> Ratio<i128> {
        Ratio::new(i128::from(self.num), i128::from(self.den))
    }
}

impl fmt::Display for Normalized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Normalized {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Rational(Normalized),
    Text(String),
    Bool(bool),
    List(Vec<String>),
    Null,
}

impl Cell {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Cell::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Normalized> {
        match self {
            Cell::Rational(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Cell {
        Cell::Int(n)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Cell {
        Cell::Int(i64::try_from(n).expect("value exceeds i64"))
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Cell {
        Cell::from(n as u64)
    }
}

impl From<Normalized> for Cell {
    fn from(r: Normalized) -> Cell {
        Cell::Rational(r)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Cell {
        v.map_or(Cell::Null, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Table {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width mismatch in table {}",
            self.name
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Vec<&Cell> {
        let i = self
            .columns
            .iter()
            .position(|c| c == name)
            .unwrap_or_else(|| panic!("table {} has no column {name}", self.name));
        self.rows.iter().map(|r| &r[i]).collect()
    }

    pub fn ints(&self, name: &str) -> Vec<i64> {
        self.column(name)
            .into_iter()
            .map(|c| c.as_int().expect("integer column"))
            .collect()
    }
}

/// Tables, verdicts, witnesses and values of one computation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantReport {
    pub ring: String,
    pub tables: Vec<Table>,
    pub verdicts: Vec<(String, bool)>,
    pub witnesses: Vec<(String, Cell)>,
    pub values: Vec<(String, Cell)>,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn new(ring: impl fmt::Display) -> InvariantReport {
        InvariantReport {
            ring: ring.to_string(),
            ..Default::default()
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn witness(&self, name: &str) -> Option<&Cell> {
        self.witnesses
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    pub fn value(&self, name: &str) -> Option<&Cell> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn add_verdict(&mut self, name: &str, holds: bool) {
        self.verdicts.push((name.into(), holds));
    }

    pub fn add_witness(&mut self, name: &str, value: impl Into<Cell>) {
        self.witnesses.push((name.into(), value.into()));
    }

    pub fn add_value(&mut self, name: &str, value: impl Into<Cell>) {
        self.values.push((name.into(), value.into()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Every verdict holds.
    pub fn all_verdicts_hold(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v)
    }

    /// Merges another report's contents (used when one command runs several computations).
    pub fn extend(&mut self, other: InvariantReport) {
        self.tables.extend(other.tables);
        self.verdicts.extend(other.verdicts);
        self.witnesses.extend(other.witnesses);
        self.values.extend(other.values);
        self.notes.extend(other.notes);
    }
}
