//! Output sinks and the info/verify renderers.

use std::io::Write;
use std::path::PathBuf;

use serde_json::json;

use supq_core::group::GroupTable;
use supq_core::roots::enumerate_basic_pairs;
use supq_core::verify::{Report, ReportData};

use crate::Format;

pub fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| format!("writing stdout: {e}"))
        }
    }
}

pub fn info_output(table: &GroupTable, format: Format) -> String {
    let kind = table.kind().expect("classical group");
    let fs = table.field();
    let pairs = enumerate_basic_pairs(kind, fs).len();
    match format {
        Format::Json => {
            let doc = json!({
                "family": kind.family().letter().to_string(),
                "n": kind.n(),
                "q": fs.q(),
                "modulus": fs.modulus(),
                "phi": kind.phi_size(),
                "order": table.size().to_string(),
                "classes": table.class_count(),
                "supercharacters": pairs,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        _ => format!(
            "group {kind} over F_{} (modulus {})\n|Phi| = {}\n|U| = q^|Phi| = {}\nconjugacy classes: {}\nsupercharacters: {}\n",
            fs.q(),
            fs.modulus_string(),
            kind.phi_size(),
            table.size(),
            table.class_count(),
            pairs
        ),
    }
}

pub fn verify_output(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let docs: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    let lines: Vec<serde_json::Value> = r
                        .lines
                        .iter()
                        .map(|l| json!({"label": l.label, "passed": l.passed}))
                        .collect();
                    let mut doc = json!({
                        "check": r.check,
                        "context": r.context,
                        "passed": r.passed(),
                        "lines": lines,
                        "counterexample": r.counterexample,
                    });
                    match &r.data {
                        ReportData::Census(entries) => {
                            let census: Vec<serde_json::Value> = entries
                                .iter()
                                .map(|e| {
                                    json!({
                                        "pair": e.pair,
                                        "orbit_size": e.orbit_size,
                                        "degree": e.degree.to_string(),
                                        "norm": e.norm.to_string(),
                                        "identity_ok": e.identity_ok,
                                    })
                                })
                                .collect();
                            doc["census"] = serde_json::Value::from(census);
                        }
                        ReportData::MaxDeg {
                            predicted_degree,
                            predicted_count,
                            witnesses,
                        } => {
                            let ws: Vec<serde_json::Value> = witnesses
                                .iter()
                                .map(|w| {
                                    json!({
                                        "pair": w.pair,
                                        "degree": w.degree.to_string(),
                                        "norm": w.norm.to_string(),
                                        "constituents": w.constituents.to_string(),
                                        "constituent_degree": w.constituent_degree.to_string(),
                                        "ok": w.ok,
                                    })
                                })
                                .collect();
                            doc["maxdeg"] = json!({
                                "predicted_degree": predicted_degree.to_string(),
                                "predicted_count": predicted_count.to_string(),
                                "witnesses": ws,
                            });
                        }
                        ReportData::None => {}
                    }
                    doc
                })
                .collect();
            let mut s =
                serde_json::to_string_pretty(&serde_json::Value::from(docs)).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut out = String::new();
            for r in reports {
                for line in r.lines.iter() {
                    out.push_str(&format!(
                        "{} [{} {}] {}\n",
                        if line.passed { "PASS" } else { "FAIL" },
                        r.check,
                        r.context,
                        line.label
                    ));
                }
                if let Some(ce) = &r.counterexample {
                    out.push_str(&format!("     [{}] counterexample: {ce}\n", r.check));
                }
            }
            let overall = reports.iter().all(|r| r.passed());
            out.push_str(&format!(
                "overall: {}\n",
                if overall { "PASS" } else { "FAIL" }
            ));
            out
        }
    }
}
