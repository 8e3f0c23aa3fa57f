//! Supercharacter table computation (parallel over rows) and rendering.
//!
//! Rows are the basic pairs in canonical order, columns the conjugacy
//! classes in canonical order; every value is exact. Output bytes are
//! independent of the worker count: rows are computed in disjoint index
//! chunks and reassembled in order.

use serde_json::{json, Value};

use supq_core::chars::{self, CharCtx, ClassFunction};
use supq_core::group::GroupTable;
use supq_core::rational::Rational;
use supq_core::roots::{enumerate_basic_pairs, BasicPair};

pub struct Row {
    pub pair: BasicPair,
    pub cf: ClassFunction,
    pub degree: Rational,
    pub norm: Rational,
}

pub fn compute_rows(group: &GroupTable, threads: usize) -> Vec<Row> {
    let kind = group.kind().expect("classical group");
    let pairs = enumerate_basic_pairs(kind, group.field());
    let n = pairs.len();
    let threads = threads.clamp(1, n.max(1));
    let mut out: Vec<Option<Row>> = Vec::new();
    out.resize_with(n, || None);

    let chunk = n.div_ceil(threads);
    let mut slots: Vec<&mut [Option<Row>]> = out.chunks_mut(chunk).collect();
    std::thread::scope(|scope| {
        for (t, slot) in slots.iter_mut().enumerate() {
            let pairs = &pairs;
            scope.spawn(move || {
                let mut ctx = CharCtx::new(group);
                for (k, cell) in slot.iter_mut().enumerate() {
                    let idx = t * chunk + k;
                    let pair = pairs[idx].clone();
                    let cf = ctx.supercharacter(&pair).expect("supercharacter");
                    let degree = cf.degree().expect("integer degree");
                    let norm = chars::norm(group, &cf).expect("rational norm");
                    *cell = Some(Row {
                        pair,
                        cf,
                        degree,
                        norm,
                    });
                }
            });
        }
    });
    out.into_iter().map(|r| r.expect("row computed")).collect()
}

fn class_header(group: &GroupTable) -> Vec<Value> {
    (0..group.class_count())
        .map(|c| {
            let rep = group.class_rep(c);
            let coords: Vec<u64> = group
                .coords_of(rep)
                .into_iter()
                .map(|x| x.index() as u64)
                .collect();
            json!({
                "index": c,
                "size": group.class_size(c),
                "rep_coords": coords,
            })
        })
        .collect()
}

pub fn render_json(group: &GroupTable, rows: &[Row]) -> String {
    let kind = group.kind().expect("classical group");
    let fs = group.field();
    let row_values: Vec<Value> = rows
        .iter()
        .map(|r| {
            let values: Vec<Value> =
                r.cf.values()
                    .iter()
                    .map(|v| Value::from(v.coeff_strings()))
                    .collect();
            json!({
                "pair": r.pair.key(),
                "degree": r.degree.to_string(),
                "norm": r.norm.to_string(),
                "values": values,
            })
        })
        .collect();
    let doc = json!({
        "group": {
            "family": kind.family().letter().to_string(),
            "n": kind.n(),
            "q": fs.q(),
            "p": fs.p(),
            "e": fs.e(),
            "modulus": fs.modulus(),
            "order": group.size().to_string(),
        },
        "columns": "ordinary conjugacy classes (representatives in Lie-companion coordinates)",
        "value_basis": format!("coefficients of 1, z, ..., z^{} with z a primitive {}-th root of unity", fs.p() - 2, fs.p()),
        "classes": class_header(group),
        "rows": row_values,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn render_csv(group: &GroupTable, rows: &[Row]) -> String {
    let mut out = String::new();
    let mut header: Vec<String> = vec!["pair".into(), "degree".into(), "norm".into()];
    for c in 0..group.class_count() {
        let rep = group.class_rep(c);
        let coords: Vec<String> = group
            .coords_of(rep)
            .into_iter()
            .map(|x| x.index().to_string())
            .collect();
        header.push(format!(
            "class{c}[{}]x{}",
            coords.join(" "),
            group.class_size(c)
        ));
    }
    out.push_str(
        &header
            .iter()
            .map(|h| csv_quote(h))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push_str("\r\n");
    for r in rows {
        let mut fields: Vec<String> = vec![r.pair.key(), r.degree.to_string(), r.norm.to_string()];
        for v in r.cf.values() {
            fields.push(format!("{v}"));
        }
        out.push_str(
            &fields
                .iter()
                .map(|f| csv_quote(f))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push_str("\r\n");
    }
    out
}

pub fn render_text(group: &GroupTable, rows: &[Row]) -> String {
    let kind = group.kind().expect("classical group");
    let fs = group.field();
    let mut out = String::new();
    out.push_str(&format!(
        "supercharacter table of U({kind}) over F_{} (|U| = {}, {} classes, {} supercharacters)\n",
        fs.q(),
        group.size(),
        group.class_count(),
        rows.len()
    ));
    out.push_str(
        "columns are ordinary conjugacy classes; z denotes a primitive p-th root of unity\n\n",
    );
    out.push_str("classes:\n");
    for c in 0..group.class_count() {
        let rep = group.class_rep(c);
        let coords: Vec<String> = group
            .coords_of(rep)
            .into_iter()
            .map(|x| x.index().to_string())
            .collect();
        out.push_str(&format!(
            "  c{c}: size {:>4}, rep coords ({})\n",
            group.class_size(c),
            coords.join(",")
        ));
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "xi[{}]  degree {}  norm {}\n",
            r.pair.key(),
            r.degree,
            r.norm
        ));
        let vals: Vec<String> = r.cf.values().iter().map(|v| format!("{v}")).collect();
        out.push_str(&format!("  {}\n", vals.join(" | ")));
    }
    out
}
