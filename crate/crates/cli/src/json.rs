//! Strict JSON encode/decode for every document kind.
//!
//! Parsing rejects unknown keys, missing table entries and labels outside
//! the declared sets. Printing is canonical: tables in domain order, sets
//! in first-use order, so identical values print identically.

use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

use bilens_core::finset::{exponential_set, product_set, FinFn, FinSet};
use bilens_core::functor::AdjunctHom;
use bilens_core::lens::{Adaptor, Lens, LensObject};
use bilens_core::limits::{
    CoconeWitness, ConeDiagram, CospanDiagram, UniversalityWitness, VerificationReport,
    VerifyStatus,
};
use bilens_core::span::{Span, SpanLawReport};

use crate::context::SetContext;
use crate::{input_err, CliError};

/// A parsed input document.
#[derive(Debug)]
pub enum Doc {
    /// A document that only defines sets.
    Sets(Vec<FinSet>),
    Set(FinSet),
    Fn(FinFn),
    Object(LensObject),
    Lens(Lens),
    Adaptor(Adaptor),
    Cospan(CospanDiagram),
    Cone(ConeDiagram),
    Span(Span),
    Adjunct(AdjunctHom),
    Factors(Vec<LensObject>),
}

impl Doc {
    pub fn kind(&self) -> &'static str {
        match self {
            Doc::Sets(_) => "sets",
            Doc::Set(_) => "set",
            Doc::Fn(_) => "fn",
            Doc::Object(_) => "object",
            Doc::Lens(_) => "lens",
            Doc::Adaptor(_) => "adaptor",
            Doc::Cospan(_) => "cospan",
            Doc::Cone(_) => "cone",
            Doc::Span(_) => "span",
            Doc::Adjunct(_) => "adjunct",
            Doc::Factors(_) => "factors",
        }
    }
}

const PAYLOAD_KEYS: &[&str] = &[
    "set", "fn", "object", "lens", "adaptor", "cospan", "cone", "span", "adjunct", "factors",
];

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| input_err(format!("{what} must be a JSON object")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| input_err(format!("{what} must be a string")))
}

fn as_arr<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| input_err(format!("{what} must be an array")))
}

fn get<'a>(map: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value, CliError> {
    map.get(key)
        .ok_or_else(|| input_err(format!("{what} is missing the {key:?} key")))
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<(), CliError> {
    for k in map.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(input_err(format!("{what} has unknown key {k:?}")));
        }
    }
    Ok(())
}

/// Parse one document, feeding its `sets` array (if any) into `ctx`.
pub fn parse_doc(text: &str, ctx: &mut SetContext) -> Result<Doc, CliError> {
    let value: Value = serde_json::from_str(text)?;
    let map = as_obj(&value, "document")?;
    let mut allowed = vec!["sets"];
    allowed.extend_from_slice(PAYLOAD_KEYS);
    check_keys(map, &allowed, "document")?;
    let mut declared = Vec::new();
    if let Some(sets) = map.get("sets") {
        for entry in as_arr(sets, "\"sets\"")? {
            let set = parse_set_inner(as_obj(entry, "set definition")?)?;
            ctx.add(set.clone())?;
            declared.push(set);
        }
    }
    let payloads: Vec<&str> = PAYLOAD_KEYS
        .iter()
        .copied()
        .filter(|k| map.contains_key(*k))
        .collect();
    match payloads.as_slice() {
        [] if !declared.is_empty() => Ok(Doc::Sets(declared)),
        [] => Err(input_err("document has no payload key")),
        [one] => {
            let v = &map[*one];
            Ok(match *one {
                "set" => {
                    let set = parse_set_inner(as_obj(v, "\"set\"")?)?;
                    ctx.add(set.clone())?;
                    Doc::Set(set)
                }
                "fn" => Doc::Fn(parse_fn_inner(v, ctx)?),
                "object" => Doc::Object(parse_object(v, ctx)?),
                "lens" => Doc::Lens(parse_lens_inner(v, ctx)?),
                "adaptor" => Doc::Adaptor(parse_adaptor_inner(v, ctx)?),
                "cospan" => Doc::Cospan(parse_cospan_inner(v, ctx)?),
                "cone" => Doc::Cone(parse_cone_inner(v, ctx)?),
                "span" => Doc::Span(parse_span_inner(v, ctx)?),
                "adjunct" => Doc::Adjunct(parse_adjunct_inner(v, ctx)?),
                "factors" => {
                    let mut objs = Vec::new();
                    for entry in as_arr(v, "\"factors\"")? {
                        objs.push(parse_object(entry, ctx)?);
                    }
                    Doc::Factors(objs)
                }
                _ => unreachable!(),
            })
        }
        many => Err(input_err(format!(
            "document has more than one payload key: {many:?}"
        ))),
    }
}

fn parse_set_inner(map: &Map<String, Value>) -> Result<FinSet, CliError> {
    check_keys(map, &["name", "elems"], "set definition")?;
    let name = as_str(get(map, "name", "set definition")?, "set name")?;
    let mut elems = Vec::new();
    for e in as_arr(get(map, "elems", "set definition")?, "\"elems\"")? {
        elems.push(as_str(e, "set element")?.to_string());
    }
    FinSet::new(name, elems).map_err(|e| input_err(e.to_string()))
}

fn parse_object(v: &Value, ctx: &SetContext) -> Result<LensObject, CliError> {
    let arr = as_arr(v, "object")?;
    if arr.len() != 2 {
        return Err(input_err("object must be a two-element array of set names"));
    }
    let fwd = ctx.get(as_str(&arr[0], "forward set name")?)?;
    let bwd = ctx.get(as_str(&arr[1], "backward set name")?)?;
    Ok(LensObject::new(fwd, bwd))
}

fn parse_string_table(v: &Value, what: &str) -> Result<BTreeMap<String, String>, CliError> {
    let map = as_obj(v, what)?;
    let mut out = BTreeMap::new();
    for (k, image) in map {
        out.insert(k.clone(), as_str(image, "table image")?.to_string());
    }
    Ok(out)
}

fn parse_fn_inner(v: &Value, ctx: &SetContext) -> Result<FinFn, CliError> {
    let map = as_obj(v, "\"fn\"")?;
    check_keys(map, &["dom", "cod", "table"], "\"fn\"")?;
    let dom = ctx.get(as_str(get(map, "dom", "\"fn\"")?, "\"dom\"")?)?;
    let cod = ctx.get(as_str(get(map, "cod", "\"fn\"")?, "\"cod\"")?)?;
    let table = parse_string_table(get(map, "table", "\"fn\"")?, "\"table\"")?;
    FinFn::from_table(dom, cod, &table).map_err(|e| input_err(e.to_string()))
}

fn parse_flat_fn(v: &Value, dom: &FinSet, cod: &FinSet, what: &str) -> Result<FinFn, CliError> {
    let table = parse_string_table(v, what)?;
    FinFn::from_table(dom.clone(), cod.clone(), &table)
        .map_err(|e| input_err(format!("{what}: {e}")))
}

fn parse_lens_inner(v: &Value, ctx: &SetContext) -> Result<Lens, CliError> {
    let map = as_obj(v, "\"lens\"")?;
    check_keys(map, &["src", "dst", "view", "update"], "\"lens\"")?;
    let src = parse_object(get(map, "src", "\"lens\"")?, ctx)?;
    let dst = parse_object(get(map, "dst", "\"lens\"")?, ctx)?;
    let view = parse_flat_fn(get(map, "view", "\"lens\"")?, src.fwd(), dst.fwd(), "\"view\"")?;
    let update_map = as_obj(get(map, "update", "\"lens\"")?, "\"update\"")?;
    // Nested table keyed by source element, then by backward element.
    let pairs = product_set(src.fwd(), dst.bwd());
    let mut flat = BTreeMap::new();
    for s in src.fwd().elems() {
        let row = update_map
            .get(s)
            .ok_or_else(|| input_err(format!("\"update\" is missing row {s:?}")))?;
        let row = as_obj(row, "update row")?;
        for b in dst.bwd().elems() {
            let t = row
                .get(b)
                .ok_or_else(|| input_err(format!("update row {s:?} is missing column {b:?}")))?;
            flat.insert(
                format!("({s},{b})"),
                as_str(t, "update image")?.to_string(),
            );
        }
        for k in row.keys() {
            if dst.bwd().index_of(k).is_none() {
                return Err(input_err(format!(
                    "update row {s:?} has unknown column {k:?}"
                )));
            }
        }
    }
    for k in update_map.keys() {
        if src.fwd().index_of(k).is_none() {
            return Err(input_err(format!("\"update\" has unknown row {k:?}")));
        }
    }
    let update = FinFn::from_table(pairs.set().clone(), src.bwd().clone(), &flat)
        .map_err(|e| input_err(format!("\"update\": {e}")))?;
    Lens::new(src, dst, view, update).map_err(|e| input_err(e.to_string()))
}

fn parse_adaptor_inner(v: &Value, ctx: &SetContext) -> Result<Adaptor, CliError> {
    let map = as_obj(v, "\"adaptor\"")?;
    check_keys(map, &["f", "g"], "\"adaptor\"")?;
    let f = parse_fn_inner(get(map, "f", "\"adaptor\"")?, ctx)?;
    let g = parse_fn_inner(get(map, "g", "\"adaptor\"")?, ctx)?;
    Ok(Adaptor::new(f, g))
}

fn parse_cospan_inner(v: &Value, ctx: &SetContext) -> Result<CospanDiagram, CliError> {
    let map = as_obj(v, "\"cospan\"")?;
    check_keys(map, &["left", "right"], "\"cospan\"")?;
    let left = parse_lens_inner(get(map, "left", "\"cospan\"")?, ctx)?;
    let right = parse_lens_inner(get(map, "right", "\"cospan\"")?, ctx)?;
    CospanDiagram::new(left, right).map_err(|e| input_err(e.to_string()))
}

fn parse_cone_inner(v: &Value, ctx: &SetContext) -> Result<ConeDiagram, CliError> {
    let map = as_obj(v, "\"cone\"")?;
    check_keys(map, &["mu", "mu_prime", "over"], "\"cone\"")?;
    let mu = parse_lens_inner(get(map, "mu", "\"cone\"")?, ctx)?;
    let mu_prime = parse_lens_inner(get(map, "mu_prime", "\"cone\"")?, ctx)?;
    let over = parse_cospan_inner(get(map, "over", "\"cone\"")?, ctx)?;
    ConeDiagram::new(mu, mu_prime, over).map_err(|e| input_err(e.to_string()))
}

fn parse_span_inner(v: &Value, ctx: &SetContext) -> Result<Span, CliError> {
    let map = as_obj(v, "\"span\"")?;
    check_keys(map, &["apex", "left", "right"], "\"span\"")?;
    let apex = parse_object(get(map, "apex", "\"span\"")?, ctx)?;
    let left = parse_lens_inner(get(map, "left", "\"span\"")?, ctx)?;
    let right = parse_lens_inner(get(map, "right", "\"span\"")?, ctx)?;
    if left.src() != &apex || right.src() != &apex {
        return Err(input_err("span legs must start at the declared apex"));
    }
    Span::new(left, right).map_err(|e| input_err(e.to_string()))
}

fn parse_adjunct_inner(v: &Value, ctx: &SetContext) -> Result<AdjunctHom, CliError> {
    let map = as_obj(v, "\"adjunct\"")?;
    check_keys(map, &["src", "dst", "f", "w"], "\"adjunct\"")?;
    let src = parse_object(get(map, "src", "\"adjunct\"")?, ctx)?;
    let dst = parse_object(get(map, "dst", "\"adjunct\"")?, ctx)?;
    let f = parse_flat_fn(get(map, "f", "\"adjunct\"")?, src.fwd(), dst.fwd(), "\"f\"")?;
    // w : B -> (S -> T), keyed by backward element then source element.
    let w_map = as_obj(get(map, "w", "\"adjunct\"")?, "\"w\"")?;
    let exp = exponential_set(src.fwd(), src.bwd());
    let mut indices = Vec::with_capacity(dst.bwd().len());
    for b in dst.bwd().elems() {
        let row = w_map
            .get(b)
            .ok_or_else(|| input_err(format!("\"w\" is missing row {b:?}")))?;
        let slice = parse_flat_fn(row, src.fwd(), src.bwd(), "\"w\" row")?;
        indices.push(exp.encode(&slice).expect("slice has the right endpoints"));
    }
    for k in w_map.keys() {
        if dst.bwd().index_of(k).is_none() {
            return Err(input_err(format!("\"w\" has unknown row {k:?}")));
        }
    }
    let to_table = FinFn::from_indices(dst.bwd().clone(), exp.set().clone(), indices)
        .expect("encoded indices in range");
    AdjunctHom::new(src, dst, f, to_table).map_err(|e| input_err(e.to_string()))
}

// ---------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------

/// Collects the sets a document refers to, in first-use order.
#[derive(Default)]
pub struct SetCollector {
    order: Vec<FinSet>,
}

impl SetCollector {
    pub fn new() -> Self {
        SetCollector::default()
    }

    pub fn add(&mut self, set: &FinSet) {
        if let Some(existing) = self.order.iter().find(|s| s.name() == set.name()) {
            assert_eq!(existing, set, "two sets share the name {:?}", set.name());
            return;
        }
        self.order.push(set.clone());
    }

    pub fn add_object(&mut self, o: &LensObject) {
        self.add(o.fwd());
        self.add(o.bwd());
    }

    pub fn add_lens(&mut self, l: &Lens) {
        self.add_object(l.src());
        self.add_object(l.dst());
    }

    pub fn add_cospan(&mut self, c: &CospanDiagram) {
        self.add_lens(c.left());
        self.add_lens(c.right());
    }

    pub fn add_cone(&mut self, c: &ConeDiagram) {
        self.add_lens(c.mu());
        self.add_lens(c.mu_prime());
        self.add_cospan(c.over());
    }

    pub fn add_span(&mut self, s: &Span) {
        self.add_lens(s.left());
        self.add_lens(s.right());
    }

    fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn to_value(&self) -> Value {
        Value::Array(self.order.iter().map(set_inner).collect())
    }
}

pub fn set_inner(s: &FinSet) -> Value {
    json!({ "name": s.name(), "elems": s.elems() })
}

/// A flat label table in domain order.
pub fn table_value(f: &FinFn) -> Value {
    let mut map = Map::new();
    for (i, e) in f.dom().elems().iter().enumerate() {
        map.insert(
            e.clone(),
            Value::String(f.cod().elem(f.apply_idx(i)).to_string()),
        );
    }
    Value::Object(map)
}

pub fn fn_inner(f: &FinFn) -> Value {
    json!({
        "dom": f.dom().name(),
        "cod": f.cod().name(),
        "table": table_value(f),
    })
}

pub fn object_value(o: &LensObject) -> Value {
    json!([o.fwd().name(), o.bwd().name()])
}

pub fn lens_inner(l: &Lens) -> Value {
    let mut update = Map::new();
    for (si, s) in l.src().fwd().elems().iter().enumerate() {
        let mut row = Map::new();
        for (bi, b) in l.dst().bwd().elems().iter().enumerate() {
            row.insert(
                b.clone(),
                Value::String(l.src().bwd().elem(l.update_idx(si, bi)).to_string()),
            );
        }
        update.insert(s.clone(), Value::Object(row));
    }
    json!({
        "src": object_value(l.src()),
        "dst": object_value(l.dst()),
        "view": table_value(l.view()),
        "update": Value::Object(update),
    })
}

pub fn adaptor_inner(a: &Adaptor) -> Value {
    json!({ "f": fn_inner(&a.f), "g": fn_inner(&a.g) })
}

pub fn cospan_inner(c: &CospanDiagram) -> Value {
    json!({ "left": lens_inner(c.left()), "right": lens_inner(c.right()) })
}

pub fn cone_inner(c: &ConeDiagram) -> Value {
    json!({
        "mu": lens_inner(c.mu()),
        "mu_prime": lens_inner(c.mu_prime()),
        "over": cospan_inner(c.over()),
    })
}

pub fn span_inner(s: &Span) -> Value {
    json!({
        "apex": object_value(s.apex()),
        "left": lens_inner(s.left()),
        "right": lens_inner(s.right()),
    })
}

pub fn adjunct_inner(h: &AdjunctHom) -> Value {
    let exp = exponential_set(h.src().fwd(), h.src().bwd());
    let mut w = Map::new();
    for (bi, b) in h.dst().bwd().elems().iter().enumerate() {
        let slice = exp.decode(h.to_table().apply_idx(bi));
        w.insert(b.clone(), table_value(&slice));
    }
    json!({
        "src": object_value(h.src()),
        "dst": object_value(h.dst()),
        "f": table_value(h.to_view()),
        "w": Value::Object(w),
    })
}

/// Wrap a payload under its key, appending the collected `sets` (omitted
/// when empty).
pub fn finish(key: &str, payload: Value, sets: SetCollector) -> Value {
    let mut map = Map::new();
    map.insert(key.to_string(), payload);
    if !sets.is_empty() {
        map.insert("sets".to_string(), sets.to_value());
    }
    Value::Object(map)
}

pub fn lens_doc(l: &Lens) -> Value {
    let mut sets = SetCollector::new();
    sets.add_lens(l);
    finish("lens", lens_inner(l), sets)
}

pub fn span_doc(s: &Span) -> Value {
    let mut sets = SetCollector::new();
    sets.add_span(s);
    finish("span", span_inner(s), sets)
}

pub fn adjunct_doc(h: &AdjunctHom) -> Value {
    let mut sets = SetCollector::new();
    sets.add_object(h.src());
    sets.add_object(h.dst());
    finish("adjunct", adjunct_inner(h), sets)
}

pub fn status_str(s: VerifyStatus) -> &'static str {
    match s {
        VerifyStatus::Verified => "verified",
        VerifyStatus::Failed => "failed",
        VerifyStatus::Partial => "partial",
    }
}

fn cocone_witness_value(w: &CoconeWitness) -> Value {
    json!({ "p": w.p, "w": w.pair, "b": w.b })
}

/// Flat report document: `status`, `checked_cones`, optional `witness`,
/// plus the sets the witness mentions.
pub fn report_doc(report: &VerificationReport) -> Value {
    let mut map = Map::new();
    map.insert(
        "status".to_string(),
        Value::String(status_str(report.status).to_string()),
    );
    map.insert("checked_cones".to_string(), json!(report.checked_cones));
    let mut sets = SetCollector::new();
    if let Some(witness) = &report.witness {
        let w = match witness {
            UniversalityWitness::Pullback {
                cone,
                mediator_count,
                cocone_failure,
            } => {
                sets.add_cone(cone);
                let mut w = Map::new();
                w.insert("cone".to_string(), cone_inner(cone));
                w.insert("mediator_count".to_string(), json!(mediator_count));
                if let Some(cf) = cocone_failure {
                    w.insert("cocone_failure".to_string(), cocone_witness_value(cf));
                }
                Value::Object(w)
            }
            UniversalityWitness::Product {
                legs,
                mediator_count,
            } => {
                for leg in legs {
                    sets.add_lens(leg);
                }
                json!({
                    "legs": legs.iter().map(lens_inner).collect::<Vec<_>>(),
                    "mediator_count": mediator_count,
                })
            }
        };
        map.insert("witness".to_string(), w);
    }
    if !sets.is_empty() {
        map.insert("sets".to_string(), sets.to_value());
    }
    Value::Object(map)
}

pub fn span_probe_doc(report: &SpanLawReport) -> Value {
    let mut sets = SetCollector::new();
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            for s in &f.spans {
                sets.add_span(s);
            }
            json!({
                "law": format!("{}", f.law),
                "spans": f.spans.iter().map(span_inner).collect::<Vec<_>>(),
            })
        })
        .collect();
    let payload = json!({
        "status": status_str(report.status),
        "unit_checks": report.unit_checks,
        "assoc_checks": report.assoc_checks,
        "inconclusive": report.inconclusive,
        "failures": failures,
    });
    finish("span_probe", payload, sets)
}

/// Serialize a document compactly with a trailing newline.
pub fn to_output(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("values serialize");
    s.push('\n');
    s
}
