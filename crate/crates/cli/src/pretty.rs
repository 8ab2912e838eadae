//! Human-readable rendering: aligned label tables instead of JSON.

use serde_json::Value;
use std::fmt::Write;

pub fn render(value: &Value) -> String {
    let mut out = String::new();
    let obj = match value.as_object() {
        Some(o) => o,
        None => return fallback(value),
    };
    if let Some(l) = obj.get("lens") {
        render_lens(&mut out, l, "lens");
    } else if let Some(f) = obj.get("fn") {
        render_fn_doc(&mut out, f);
    } else if let Some(c) = obj.get("count") {
        let _ = writeln!(out, "count: {c}");
    } else if let Some(p) = obj.get("product") {
        let _ = writeln!(out, "product object: {}", object_str(&p["object"]));
        for (i, proj) in arr(&p["projections"]).iter().enumerate() {
            render_lens(&mut out, proj, &format!("projection {i}"));
        }
    } else if let Some(p) = obj.get("pullback") {
        let _ = writeln!(out, "pullback apex: {}", object_str(&p["apex"]));
        let _ = writeln!(out, "quotient classes:");
        for class in arr(&p["classes"]) {
            let labels: Vec<&str> = arr(class).iter().filter_map(Value::as_str).collect();
            let _ = writeln!(out, "  {{{}}}", labels.join(", "));
        }
        render_lens(&mut out, &p["p1"], "p1");
        render_lens(&mut out, &p["p2"], "p2");
    } else if obj.contains_key("status") {
        render_report(&mut out, obj);
    } else if let Some(s) = obj.get("span") {
        let _ = writeln!(out, "span apex: {}", object_str(&s["apex"]));
        render_lens(&mut out, &s["left"], "left leg");
        render_lens(&mut out, &s["right"], "right leg");
    } else if let Some(p) = obj.get("span_probe") {
        let _ = writeln!(out, "span law probe: {}", p["status"].as_str().unwrap_or("?"));
        let _ = writeln!(
            out,
            "  unit checks: {}  associativity checks: {}  inconclusive: {}",
            p["unit_checks"], p["assoc_checks"], p["inconclusive"]
        );
        for f in arr(&p["failures"]) {
            let _ = writeln!(out, "  FAILED {}:", f["law"].as_str().unwrap_or("?"));
            for s in arr(&f["spans"]) {
                let _ = writeln!(out, "    span with apex {}", object_str(&s["apex"]));
            }
        }
    } else if let Some(i) = obj.get("iso") {
        if i.get("found").and_then(Value::as_bool) == Some(true) {
            let _ = writeln!(out, "isomorphic: yes");
            render_lens(&mut out, &i["lens"], "iso");
        } else if i.get("inconclusive").and_then(Value::as_bool) == Some(true) {
            let _ = writeln!(out, "isomorphic: inconclusive (budget exceeded)");
        } else {
            let _ = writeln!(out, "isomorphic: no");
        }
    } else if let Some(n) = obj.get("naturality") {
        let _ = writeln!(
            out,
            "naturality: {} ({} square elements checked)",
            if n["holds"].as_bool() == Some(true) { "holds" } else { "FAILS" },
            n["checked"]
        );
    } else if let Some(l) = obj.get("laws") {
        let _ = writeln!(out, "category laws: {}", l["status"].as_str().unwrap_or("?"));
        if l["status"].as_str() == Some("verified") {
            let _ = writeln!(
                out,
                "  unit checks: {}  associativity triples: {}",
                l["unit_checks"], l["assoc_triples"]
            );
        } else {
            let _ = writeln!(out, "  failed law: {}", l["law"].as_str().unwrap_or("?"));
        }
    } else if let Some(p) = obj.get("putget") {
        if p["holds"].as_bool() == Some(true) {
            let _ = writeln!(out, "put-get: holds");
        } else {
            let _ = writeln!(
                out,
                "put-get: FAILS at s={} b={}",
                p["witness"]["s"], p["witness"]["b"]
            );
        }
    } else if let Some(m) = obj.get("no_mediator") {
        let _ = writeln!(
            out,
            "mediator construction inapplicable: p={} w={} b={}",
            m["p"], m["w"], m["b"]
        );
    } else if let Some(ls) = obj.get("lenses") {
        let items = arr(ls);
        let _ = writeln!(out, "{} lenses:", items.len());
        for (i, l) in items.iter().enumerate() {
            render_lens(&mut out, l, &format!("#{i}"));
        }
    } else {
        return fallback(value);
    }
    out
}

fn fallback(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap_or_default();
    s.push('\n');
    s
}

fn arr(v: &Value) -> &[Value] {
    v.as_array().map(Vec::as_slice).unwrap_or(&[])
}

fn object_str(v: &Value) -> String {
    let parts: Vec<&str> = arr(v).iter().filter_map(Value::as_str).collect();
    format!("({})", parts.join(","))
}

fn render_report(out: &mut String, obj: &serde_json::Map<String, Value>) {
    let _ = writeln!(out, "status: {}", obj["status"].as_str().unwrap_or("?"));
    let _ = writeln!(out, "checked cones: {}", obj["checked_cones"]);
    if let Some(w) = obj.get("witness") {
        let _ = writeln!(out, "witness: mediator count {}", w["mediator_count"]);
        if let Some(cone) = w.get("cone") {
            let _ = writeln!(out, "  cone apex: {}", object_str(&cone["mu"]["src"]));
            render_lens(out, &cone["mu"], "  mu");
            render_lens(out, &cone["mu_prime"], "  mu'");
        }
        if let Some(legs) = w.get("legs") {
            for (i, leg) in arr(legs).iter().enumerate() {
                render_lens(out, leg, &format!("  leg {i}"));
            }
        }
        if let Some(cf) = w.get("cocone_failure") {
            let _ = writeln!(
                out,
                "  update cocone disagrees at p={} w={} b={}",
                cf["p"], cf["w"], cf["b"]
            );
        }
    }
}

fn render_fn_doc(out: &mut String, f: &Value) {
    let _ = writeln!(
        out,
        "fn: {} -> {}",
        f["dom"].as_str().unwrap_or("?"),
        f["cod"].as_str().unwrap_or("?")
    );
    render_table(out, &f["table"], "  ");
}

fn render_table(out: &mut String, table: &Value, indent: &str) {
    let map = match table.as_object() {
        Some(m) => m,
        None => return,
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in map {
        let _ = writeln!(out, "{indent}{k:width$} |-> {}", v.as_str().unwrap_or("?"));
    }
}

fn render_lens(out: &mut String, lens: &Value, label: &str) {
    let _ = writeln!(
        out,
        "{label}: {} -> {}",
        object_str(&lens["src"]),
        object_str(&lens["dst"])
    );
    let _ = writeln!(out, "  view:");
    render_table(out, &lens["view"], "    ");
    let update = match lens["update"].as_object() {
        Some(u) => u,
        None => return,
    };
    let _ = writeln!(out, "  update:");
    // Matrix: rows are source states, columns backward elements.
    let cols: Vec<String> = update
        .values()
        .next()
        .and_then(Value::as_object)
        .map(|row| row.keys().cloned().collect())
        .unwrap_or_default();
    if cols.is_empty() {
        for k in update.keys() {
            let _ = writeln!(out, "    {k} | (no updates)");
        }
        return;
    }
    let row_w = update.keys().map(String::len).max().unwrap_or(0);
    let mut col_w: Vec<usize> = cols.iter().map(String::len).collect();
    for row in update.values() {
        if let Some(row) = row.as_object() {
            for (i, c) in cols.iter().enumerate() {
                if let Some(v) = row.get(c).and_then(Value::as_str) {
                    col_w[i] = col_w[i].max(v.len());
                }
            }
        }
    }
    let mut header = format!("    {:row_w$}  ", "");
    for (c, w) in cols.iter().zip(&col_w) {
        let _ = write!(header, " {c:w$}");
    }
    let _ = writeln!(out, "{}", header.trim_end());
    for (k, row) in update {
        let mut line = format!("    {k:row_w$} |");
        if let Some(row) = row.as_object() {
            for (c, w) in cols.iter().zip(&col_w) {
                let v = row.get(c).and_then(Value::as_str).unwrap_or("?");
                let _ = write!(line, " {v:w$}");
            }
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}
