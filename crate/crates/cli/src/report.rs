//! JSON report assembly with a fixed key order.

use frobenius_core::{Cell, InvariantReport, Table};
use serde_json::{Map, Value};

/// {command, inputs, tables, verdicts, witnesses, timings}. Scalar values go
/// into a one-row table named `values`; notes go into `inputs.assumptions`.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub tables: Map<String, Value>,
    pub verdicts: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    values: Map<String, Value>,
    assumptions: Vec<Value>,
}

fn cell(c: &Cell) -> Value {
    serde_json::to_value(c).expect("cells serialize")
}

fn rows(t: &Table) -> Value {
    Value::Array(
        t.rows
            .iter()
            .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().map(cell)).collect()))
            .collect(),
    )
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn value(&mut self, key: &str, value: impl Into<Value>) {
        self.values.insert(key.into(), value.into());
    }

    pub fn verdict(&mut self, key: &str, holds: bool) {
        self.verdicts.insert(key.into(), holds.into());
    }

    /// Merges a core report; `suffix` disambiguates repeated tables and verdicts.
    pub fn absorb(&mut self, r: &InvariantReport, suffix: Option<&str>) {
        let key = |name: &str| match suffix {
            Some(s) => format!("{name}.{s}"),
            None => name.to_string(),
        };
        for t in &r.tables {
            self.tables.insert(key(&t.name), rows(t));
        }
        for (n, v) in &r.verdicts {
            self.verdicts.insert(key(n), (*v).into());
        }
        for (n, v) in &r.witnesses {
            self.witnesses.insert(key(n), cell(v));
        }
        for (n, v) in &r.values {
            self.values.insert(key(n), cell(v));
        }
        for note in &r.notes {
            let note = Value::from(note.as_str());
            if !self.assumptions.contains(&note) {
                self.assumptions.push(note);
            }
        }
    }

    pub fn verdicts_hold(&self) -> bool {
        self.verdicts.values().all(|v| v.as_bool() == Some(true))
    }

    pub fn to_json(&self) -> Value {
        let mut inputs = self.inputs.clone();
        if !self.assumptions.is_empty() {
            inputs.insert("assumptions".into(), Value::Array(self.assumptions.clone()));
        }
        let mut tables = self.tables.clone();
        if !self.values.is_empty() {
            tables.insert(
                "values".into(),
                Value::Array(vec![Value::Object(self.values.clone())]),
            );
        }
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        out.insert("inputs".into(), Value::Object(inputs));
        out.insert("tables".into(), Value::Object(tables));
        out.insert("verdicts".into(), Value::Object(self.verdicts.clone()));
        out.insert("witnesses".into(), Value::Object(self.witnesses.clone()));
        out.insert("timings".into(), Value::Object(Map::new()));
        Value::Object(out)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobenius_core::Normalized;

    #[test]
    fn key_order_and_row_objects() {
        let mut core = InvariantReport::new("F_2[x]");
        let mut t = Table::new("fsig", &["e", "lambda", "normalized"]);
        t.push(vec![1u64.into(), 6u64.into(), Normalized::new(6, 8).into()]);
        core.tables.push(t);
        core.add_verdict("equality", false);
        core.note("finite level");
        let mut r = Report::new("fsig");
        r.input("ideal", "m");
        r.absorb(&core, None);
        let json = r.to_json();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "command",
                "inputs",
                "tables",
                "verdicts",
                "witnesses",
                "timings"
            ]
        );
        assert_eq!(json["tables"]["fsig"][0]["normalized"], "6/8");
        assert_eq!(json["tables"]["fsig"][0]["lambda"], 6);
        assert_eq!(json["inputs"]["assumptions"][0], "finite level");
        assert!(!r.verdicts_hold());
    }

    #[test]
    fn suffixed_absorb() {
        let mut core = InvariantReport::new("R");
        core.add_verdict("betti_semicontinuous", true);
        let mut r = Report::new("betti");
        r.absorb(&core, Some("P"));
        assert_eq!(r.verdicts["betti_semicontinuous.P"], true);
    }
}
