//! Reports. Every number is stored as a string, so the table and machine renderings
//! print the same digits.

use crate::scenario::Kind;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub label: String,
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: Vec<String>) -> Self {
        Table { title: title.into(), columns, rows: vec![] }
    }

    pub fn push<T: ToString>(&mut self, label: impl Into<String>, cells: impl IntoIterator<Item = T>) {
        self.rows.push(Row { label: label.into(), cells: cells.into_iter().map(|c| c.to_string()).collect() });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub kind: Kind,
    pub status: Status,
    pub facts: Vec<Fact>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

const MAX_DETAILS: usize = 12;

impl Report {
    pub fn new(name: &str, kind: Kind) -> Self {
        Report { name: name.into(), kind, status: Status::Pass, facts: vec![], checks: vec![], tables: vec![] }
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push(Fact { key: key.into(), value: value.to_string() });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, mut details: Vec<String>) {
        if details.len() > MAX_DETAILS {
            let extra = details.len() - MAX_DETAILS;
            details.truncate(MAX_DETAILS);
            details.push(format!("... {extra} more"));
        }
        if !ok {
            self.status = Status::Fail;
        }
        self.checks.push(Check { name: name.into(), status: Status::of(ok), details });
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect()
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let kind = serde_json::to_value(self.kind).expect("kind serializes");
        let _ = writeln!(out, "scenario {} ({})", self.name, kind.as_str().unwrap_or_default());
        let _ = writeln!(out, "status   {}", self.status.label());
        let width = self.facts.iter().map(|f| f.key.chars().count()).max().unwrap_or(0);
        for f in &self.facts {
            let _ = writeln!(out, "  {:width$}  {}", f.key, f.value);
        }
        let _ = writeln!(out, "checks");
        for c in &self.checks {
            let _ = writeln!(out, "  [{}] {}", c.status.label(), c.name);
            for d in &c.details {
                let _ = writeln!(out, "         {d}");
            }
        }
        for t in &self.tables {
            out.push_str(&render_table(t));
        }
        out
    }
}

fn render_table(t: &Table) -> String {
    let mut out = format!("table {}\n", t.title);
    let label_w = t.rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(0);
    let ncols = t.columns.len().max(t.rows.iter().map(|r| r.cells.len()).max().unwrap_or(0));
    let widths: Vec<usize> = (0..ncols)
        .map(|j| {
            let head = t.columns.get(j).map_or(0, |c| c.chars().count());
            t.rows.iter().filter_map(|r| r.cells.get(j)).map(|c| c.chars().count()).max().unwrap_or(0).max(head)
        })
        .collect();
    let line = |label: &str, cells: &[String]| {
        let mut s = format!("  {label:label_w$}");
        for (j, w) in widths.iter().enumerate() {
            let _ = write!(s, "  {:>w$}", cells.get(j).map_or("", String::as_str));
        }
        s.trim_end().to_string() + "\n"
    };
    out.push_str(&line("", &t.columns));
    for r in &t.rows {
        out.push_str(&line(&r.label, &r.cells));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", Kind::Kirwan);
        r.fact("rank", 1);
        r.check("first", true, vec![]);
        let mut t = Table::new("series", vec!["t^0".into(), "t^1".into()]);
        t.push("residual", [1, -10]);
        r.table(t);
        r
    }

    #[test]
    fn both_renderings_carry_the_same_numbers() {
        let r = sample();
        let table = r.to_table();
        let machine = r.to_machine();
        for n in ["-10", "\"1\""] {
            assert!(machine.contains(n));
        }
        assert!(table.contains("residual    1  -10"), "{table}");
        assert!(r.passed());
    }

    #[test]
    fn failing_check_flips_status() {
        let mut r = sample();
        r.check("second", false, (0..20).map(|i| i.to_string()).collect());
        assert!(!r.passed());
        assert_eq!(r.checks[1].details.len(), MAX_DETAILS + 1);
        assert_eq!(r.failed_checks(), vec!["second"]);
    }
}
