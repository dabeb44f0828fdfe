//! Deterministic rendering of command results, as plain tables or JSON.
//!
//! Rationals cross the process boundary as `"p/q"` strings in lowest terms
//! (plain `"p"` for integers) — never as floats.

use serde_json::{json, Value};
use specjump_core::multiplier::SpectrumTable;
use specjump_core::rational::{display, Rational};
use specjump_core::spectrum::{OracleColumn, VerifyReport};
use specjump_core::ResolutionData;

use crate::schema;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

pub fn render_resolution(data: &ResolutionData, format: Format) -> String {
    match format {
        Format::Json => schema::render(data),
        Format::Table => {
            let mut out = String::new();
            out.push_str("id\tkind\tm\tk\tself\tcluster\n");
            for c in data.components() {
                let self_int = c
                    .self_intersection
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| "-".into());
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    c.id, c.kind, c.m, c.k, self_int, c.cluster_degree
                ));
            }
            out.push_str("intersections (a b points):\n");
            for (i, j, p) in data.intersection_entries() {
                out.push_str(&format!(
                    "{} {} {}\n",
                    data.component(i).id,
                    data.component(j).id,
                    p
                ));
            }
            out
        }
    }
}

pub fn render_lct(value: &Rational, format: Format) -> String {
    match format {
        Format::Table => format!("{}\n", display(value)),
        Format::Json => format!("{}\n", json!({ "lct": display(value) })),
    }
}

/// Candidate exponents with their inner jump multiplicities, zeros included.
pub fn render_jumps(rows: &[(Rational, i64)], format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::from("alpha\tn\n");
            for (alpha, n) in rows {
                out.push_str(&format!("{}\t{}\n", display(alpha), n));
            }
            out
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(alpha, n)| json!({ "alpha": display(alpha), "n": n }))
                .collect();
            format!("{}\n", json!({ "jumps": items }))
        }
    }
}

pub fn render_spectrum(table: &SpectrumTable, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::from("alpha\tn\n");
            for (alpha, n) in table.entries() {
                out.push_str(&format!("{}\t{}\n", display(alpha), n));
            }
            out
        }
        Format::Json => {
            let items: Vec<Value> = table
                .entries()
                .iter()
                .map(|(alpha, n)| json!({ "alpha": display(alpha), "n": n }))
                .collect();
            format!("{}\n", json!({ "spectrum": items }))
        }
    }
}

pub fn render_verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::from("alpha\tinner\tstratum\toracle\tstatus\n");
            for e in &report.entries {
                let oracle = match &e.oracle {
                    OracleColumn::Value(v) => v.to_string(),
                    OracleColumn::Skipped(s) => format!("skipped ({})", s.reason()),
                };
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    display(&e.alpha),
                    e.inner,
                    e.stratum,
                    oracle,
                    if e.pass { "ok" } else { "MISMATCH" }
                ));
            }
            out.push_str(&format!("lct: {}\n", display(&report.lct)));
            let spectrum: Vec<String> = report
                .stratum_table
                .entries()
                .iter()
                .map(|(a, n)| format!("{} -> {}", display(a), n))
                .collect();
            out.push_str(&format!(
                "spectrum on (0,1]: {}\n",
                if spectrum.is_empty() {
                    "(empty)".to_string()
                } else {
                    spectrum.join(", ")
                }
            ));
            out.push_str(&format!(
                "tables agree: {}\nconvention: {}\nresult: {}\n",
                if report.tables_agree { "yes" } else { "NO" },
                report.twist_convention,
                if report.all_pass { "PASS" } else { "FAIL" }
            ));
            out
        }
        Format::Json => {
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    let (oracle, skipped) = match &e.oracle {
                        OracleColumn::Value(v) => (json!(v), Value::Null),
                        OracleColumn::Skipped(s) => (Value::Null, json!(s.reason())),
                    };
                    json!({
                        "alpha": display(&e.alpha),
                        "inner": e.inner,
                        "stratum": e.stratum,
                        "oracle": oracle,
                        "oracle_skipped": skipped,
                        "pass": e.pass,
                    })
                })
                .collect();
            let spectrum: Vec<Value> = report
                .stratum_table
                .entries()
                .iter()
                .map(|(a, n)| json!({ "alpha": display(a), "n": n }))
                .collect();
            let body = json!({
                "lct": display(&report.lct),
                "entries": entries,
                "spectrum": spectrum,
                "tables_agree": report.tables_agree,
                "twist_convention": report.twist_convention,
                "pass": report.all_pass,
            });
            format!("{body}\n")
        }
    }
}

pub fn render_error(message: &str, format: Format) -> String {
    match format {
        Format::Table => format!("error: {message}\n"),
        Format::Json => format!("{}\n", json!({ "error": { "message": message } })),
    }
}
