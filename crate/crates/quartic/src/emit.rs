//! Serialisation of results.
//!
//! * CSV: header row, `,` separators, `\n` line ends, rationals as `num/den`.
//! * JSON: keys in the order documented on each `*_json` function, pretty-printed.
//! * DOT: decision trees only; nodes labelled `2^k(m-1)+a`, terminals carry `gamma`.
//! * Text: human-readable, one item per line.

use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use quartic_core::kernel::Rat;
use quartic_core::report::Report;
use quartic_core::tree::{DecisionTree, PiecewiseFormula};
use quartic_core::valuation::ValuationSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Text => "text",
        })
    }
}

/// Rectangular data with string cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: ToString>(header: &[S]) -> Self {
        Table {
            header: header.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Table(Table),
    Series(ValuationSeries),
    Tree(DecisionTree),
    Formula(PiecewiseFormula),
    Reports(Vec<Report>),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Table(_) => "table",
            Payload::Series(_) => "series",
            Payload::Tree(_) => "tree",
            Payload::Formula(_) => "formula",
            Payload::Reports(_) => "report",
        }
    }
}

/// A format that cannot represent the payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatMismatch {
    pub kind: &'static str,
    pub format: Format,
}

impl fmt::Display for FormatMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "format {} is not available for {} output",
            self.format, self.kind
        )
    }
}

impl std::error::Error for FormatMismatch {}

pub fn rat_cell(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn emit(payload: &Payload, format: Format) -> Result<String, FormatMismatch> {
    let mismatch = || FormatMismatch {
        kind: payload.kind(),
        format,
    };
    Ok(match (payload, format) {
        (Payload::Tree(t), Format::Dot) => tree_dot(t),
        (_, Format::Dot) => return Err(mismatch()),
        (_, Format::Json) => {
            let v = match payload {
                Payload::Table(t) => table_json(t),
                Payload::Series(s) => series_json(s),
                Payload::Tree(t) => tree_json(t),
                Payload::Formula(f) => formula_json(f),
                Payload::Reports(r) => Value::Array(r.iter().map(report_json).collect()),
            };
            let mut s = serde_json::to_string_pretty(&v).expect("json values serialise");
            s.push('\n');
            s
        }
        (_, Format::Csv) => csv_string(&match payload {
            Payload::Table(t) => t.clone(),
            Payload::Series(s) => series_table(s),
            Payload::Tree(t) => tree_table(t),
            Payload::Formula(f) => formula_table(f),
            Payload::Reports(r) => reports_table(r),
        }),
        (_, Format::Text) => match payload {
            Payload::Table(t) => table_text(t),
            Payload::Series(s) => table_text(&series_table(s)),
            Payload::Tree(t) => tree_text(t),
            Payload::Formula(f) => f.to_string(),
            Payload::Reports(r) => r.iter().map(|x| format!("{x}\n")).collect(),
        },
    })
}

fn csv_string(t: &Table) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn table_text(t: &Table) -> String {
    let mut s = t.header.join("\t");
    s.push('\n');
    for row in &t.rows {
        s.push_str(&row.join("\t"));
        s.push('\n');
    }
    s
}

/// Array of objects keyed by the header, in header order.
pub fn table_json(t: &Table) -> Value {
    Value::Array(
        t.rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = t
                    .header
                    .iter()
                    .cloned()
                    .zip(row.iter().map(|c| Value::String(c.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect(),
    )
}

/// Columns `m, nu, err_num, err_den`, where `err = nu - m/(p-1)`.
pub fn series_table(s: &ValuationSeries) -> Table {
    let mut t = Table::new(&["m", "nu", "err_num", "err_den"]);
    for ((m, v), e) in s.ms().zip(&s.values).zip(s.asymptotic_error()) {
        t.push([
            m.to_string(),
            v.to_string(),
            e.numer().to_string(),
            e.denom().to_string(),
        ]);
    }
    t
}

/// Keys: `p, l, start_m, values, errors` (errors as `num/den`).
pub fn series_json(s: &ValuationSeries) -> Value {
    json!({
        "p": s.p,
        "l": s.l,
        "start_m": s.start_m,
        "values": s.values,
        "errors": s.asymptotic_error().iter().map(rat_cell).collect::<Vec<_>>(),
    })
}

/// Keys: `id, passed, range, witness {at, lhs, rhs} | null, details {...}`.
pub fn report_json(r: &Report) -> Value {
    let details: Map<String, Value> = r
        .details
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    json!({
        "id": r.id,
        "passed": r.passed,
        "range": r.params,
        "witness": r.witness.as_ref().map(|w| json!({"at": w.at, "lhs": w.lhs, "rhs": w.rhs})),
        "details": details,
    })
}

fn reports_table(rs: &[Report]) -> Table {
    let mut t = Table::new(&[
        "id",
        "range",
        "passed",
        "witness_at",
        "witness_lhs",
        "witness_rhs",
    ]);
    for r in rs {
        let (at, lhs, rhs) = r.witness.as_ref().map_or_else(Default::default, |w| {
            (w.at.clone(), w.lhs.clone(), w.rhs.clone())
        });
        t.push([
            r.id.clone(),
            r.params.clone(),
            r.passed.to_string(),
            at,
            lhs,
            rhs,
        ]);
    }
    t
}

/// Keys: `l, cases [{modulus, residue, constant, shift}]`.
pub fn formula_json(f: &PiecewiseFormula) -> Value {
    json!({
        "l": f.l,
        "cases": f.cases.iter().map(|c| json!({
            "modulus": c.modulus,
            "residue": c.residue,
            "constant": c.constant,
            "shift": c.shift,
        })).collect::<Vec<_>>(),
    })
}

fn formula_table(f: &PiecewiseFormula) -> Table {
    let mut t = Table::new(&["modulus", "residue", "constant", "shift"]);
    for c in &f.cases {
        t.push([c.modulus, c.residue, c.constant, c.shift].map(|x| x.to_string()));
    }
    t
}

/// Keys: `l, probe, nodes [{id, level, residue, label, terminal, gamma, children}]`.
pub fn tree_json(t: &DecisionTree) -> Value {
    json!({
        "l": t.l,
        "probe": t.probe,
        "nodes": t.nodes.iter().enumerate().map(|(i, n)| json!({
            "id": i,
            "level": n.level,
            "residue": n.residue,
            "label": n.label(),
            "terminal": n.is_terminal(),
            "gamma": n.gamma,
            "children": n.children.map(|(a, b)| [a, b]),
        })).collect::<Vec<_>>(),
    })
}

fn tree_table(t: &DecisionTree) -> Table {
    let mut tab = Table::new(&["id", "level", "residue", "label", "terminal", "gamma"]);
    for (i, n) in t.nodes.iter().enumerate() {
        tab.push([
            i.to_string(),
            n.level.to_string(),
            n.residue.to_string(),
            n.label(),
            n.is_terminal().to_string(),
            n.gamma.map(|g| g.to_string()).unwrap_or_default(),
        ]);
    }
    tab
}

pub fn tree_dot(t: &DecisionTree) -> String {
    let mut s = format!("digraph T{} {{\n", t.l);
    for (i, n) in t.nodes.iter().enumerate() {
        match n.gamma {
            Some(g) => s.push_str(&format!(
                "  n{i} [label=\"{}\", shape=box, gamma={g}, xlabel=\"γ={g}\"];\n",
                n.label()
            )),
            None => s.push_str(&format!("  n{i} [label=\"{}\"];\n", n.label())),
        }
    }
    for (i, n) in t.nodes.iter().enumerate() {
        if let Some((a, b)) = n.children {
            s.push_str(&format!("  n{i} -> n{a};\n  n{i} -> n{b};\n"));
        }
    }
    s.push_str("}\n");
    s
}

fn tree_text(t: &DecisionTree) -> String {
    fn walk(t: &DecisionTree, i: usize, out: &mut String) {
        let n = &t.nodes[i];
        out.push_str(&"  ".repeat(n.level as usize));
        out.push_str(&n.label());
        if let Some(g) = n.gamma {
            out.push_str(&format!("  gamma={g}"));
        }
        out.push('\n');
        if let Some((a, b)) = n.children {
            walk(t, a, out);
            walk(t, b, out);
        }
    }
    let mut out = String::new();
    walk(t, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use quartic_core::kernel::rat;
    use quartic_core::report::Witness;

    #[test]
    fn csv_uses_rationals_and_newlines() {
        let mut t = Table::new(&["m", "d"]);
        t.push(["1".into(), rat_cell(&rat(3, 2))]);
        t.push(["2".into(), rat_cell(&rat(4, 1))]);
        assert_eq!(
            emit(&Payload::Table(t), Format::Csv).unwrap(),
            "m,d\n1,3/2\n2,4/1\n"
        );
    }

    #[test]
    fn report_json_key_order() {
        let r = Report::fail("x", "m<=2", Witness::new("m=1", 1, 2));
        let s = serde_json::to_string(&report_json(&r)).unwrap();
        assert_eq!(
            s,
            r#"{"id":"x","passed":false,"range":"m<=2","witness":{"at":"m=1","lhs":"1","rhs":"2"},"details":{}}"#
        );
    }

    #[test]
    fn dot_only_for_trees() {
        let e = emit(&Payload::Reports(vec![]), Format::Dot).unwrap_err();
        assert_eq!(e.kind, "report");
    }
}
