//! Command implementations: each reads documents, runs the corresponding
//! construction or verifier, and returns the JSON to print plus the exit
//! disposition.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use bilens_core::finset::FinSet;
use bilens_core::functor::{adjunction_from_lens, adjunction_to_lens, check_adjunction_naturality};
use bilens_core::lens::{
    check_put_get, adaptor_embed, enumerate_hom, hom_count, lens_compose, lens_identity, Lens,
    LensError, LensObject,
};
use bilens_core::limits::{
    lens_product, lens_pullback, lens_pullback_mediator, verify_product_universal,
    verify_pullback_universal, LimitsError, VerifyStatus,
};
use bilens_core::span::{probe_span_laws, span_compose, span_iso, IsoSearch, SpanFamily};

use crate::context::SetContext;
use crate::json::{
    self, adjunct_doc, lens_doc, lens_inner, object_value, report_doc, span_doc, span_probe_doc,
    Doc, SetCollector,
};
use crate::{input_err, CliError, CommandResult, Outcome};

/// Candidate cap for span isomorphism searches.
const ISO_CANDIDATE_CAP: u64 = 1 << 20;

/// Largest hom-set `hom enumerate` will materialize.
const ENUMERATE_CAP: u128 = 10_000;

pub struct App {
    pub ctx: SetContext,
    /// Component-size budget for enumerative commands
    /// (`BILENS_MAX_BUDGET`, default 2).
    pub budget: usize,
}

impl App {
    pub fn new(budget: usize) -> Self {
        App {
            ctx: SetContext::new(),
            budget,
        }
    }

    pub fn preload_sets(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
        json::parse_doc(&text, &mut self.ctx)?;
        Ok(())
    }

    fn read_doc(&mut self, path: &Path) -> Result<Doc, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
        json::parse_doc(&text, &mut self.ctx)
            .map_err(|e| input_err(format!("{}: {}", path.display(), e.0)))
    }

    fn read_lens(&mut self, path: &Path) -> Result<Lens, CliError> {
        match self.read_doc(path)? {
            Doc::Lens(l) => Ok(l),
            other => Err(input_err(format!(
                "{}: expected a lens document, found {:?}",
                path.display(),
                other.kind()
            ))),
        }
    }

    fn read_object(&mut self, path: &Path) -> Result<LensObject, CliError> {
        match self.read_doc(path)? {
            Doc::Object(o) => Ok(o),
            other => Err(input_err(format!(
                "{}: expected an object document, found {:?}",
                path.display(),
                other.kind()
            ))),
        }
    }

    pub fn compose(&mut self, mu: &Path, lam: &Path) -> Result<CommandResult, CliError> {
        let mu = self.read_lens(mu)?;
        let lam = self.read_lens(lam)?;
        let composed = lens_compose(&mu, &lam).map_err(|e| input_err(e.to_string()))?;
        Ok(ok(lens_doc(&composed)))
    }

    pub fn identity(&mut self, object: &Path) -> Result<CommandResult, CliError> {
        let obj = self.read_object(object)?;
        Ok(ok(lens_doc(&lens_identity(&obj))))
    }

    pub fn embed(&mut self, adaptor: &Path)
        -> Result<CommandResult, CliError> {
        let adaptor = match self.read_doc(adaptor)? {
            Doc::Adaptor(a) => a,
            other => {
                return Err(input_err(format!(
                    "expected an adaptor document, found {:?}",
                    other.kind()
                )))
            }
        };
        Ok(ok(lens_doc(&adaptor_embed(&adaptor))))
    }

    pub fn product(&mut self, objects: &[std::path::PathBuf]) -> Result<CommandResult, CliError> {
        let objs: Vec<LensObject> = objects
            .iter()
            .map(|p| self.read_object(p))
            .collect::<Result<_, _>>()?;
        let product = lens_product(&objs);
        let mut sets = SetCollector::new();
        sets.add_object(&product.object);
        for p in &product.projections {
            sets.add_lens(p);
        }
        let payload = json!({
            "object": object_value(&product.object),
            "projections": product.projections.iter().map(lens_inner).collect::<Vec<_>>(),
        });
        Ok(ok(json::finish("product", payload, sets)))
    }

    pub fn pullback(&mut self, cospan: &Path) -> Result<CommandResult, CliError> {
        let cospan = self.read_cospan(cospan)?;
        let pb = lens_pullback(&cospan);
        let mut sets = SetCollector::new();
        sets.add_object(pb.apex());
        sets.add_lens(pb.proj1());
        sets.add_lens(pb.proj2());
        let payload = json!({
            "apex": object_value(pb.apex()),
            "p1": lens_inner(pb.proj1()),
            "p2": lens_inner(pb.proj2()),
            "classes": pb.update_pushout().quotient().classes,
        });
        Ok(ok(json::finish("pullback", payload, sets)))
    }

    fn read_cospan(&mut self, path: &Path) -> Result<bilens_core::CospanDiagram, CliError> {
        match self.read_doc(path)? {
            Doc::Cospan(c) => Ok(c),
            other => Err(input_err(format!(
                "{}: expected a cospan document, found {:?}",
                path.display(),
                other.kind()
            ))),
        }
    }

    pub fn mediator(&mut self, cone: &Path, cospan: &Path) -> Result<CommandResult, CliError> {
        let cone = match self.read_doc(cone)? {
            Doc::Cone(c) => c,
            other => {
                return Err(input_err(format!(
                    "expected a cone document, found {:?}",
                    other.kind()
                )))
            }
        };
        let cospan = self.read_cospan(cospan)?;
        if cone.over() != &cospan {
            return Err(input_err(
                "the cone's `over` cospan differs from the given cospan",
            ));
        }
        let pb = lens_pullback(&cospan);
        match lens_pullback_mediator(&cone, &pb) {
            Ok(mediating) => Ok(ok(lens_doc(&mediating))),
            Err(LimitsError::NoMediatorConstructible { p, pair, b }) => Ok(CommandResult {
                value: json!({ "no_mediator": { "p": p, "w": pair, "b": b } }),
                outcome: Outcome::Finding,
            }),
            Err(other) => Err(input_err(other.to_string())),
        }
    }

    pub fn verify_product(
        &mut self,
        factors: &Path,
        max_apex: Option<usize>,
    ) -> Result<CommandResult, CliError> {
        let objs = match self.read_doc(factors)? {
            Doc::Factors(objs) => objs,
            other => {
                return Err(input_err(format!(
                    "expected a factors document, found {:?}",
                    other.kind()
                )))
            }
        };
        let report = verify_product_universal(&objs, max_apex.unwrap_or(self.budget));
        Ok(report_result(report))
    }

    pub fn verify_pullback(
        &mut self,
        cospan: &Path,
        max_apex: Option<usize>,
    ) -> Result<CommandResult, CliError> {
        let cospan = self.read_cospan(cospan)?;
        let report = verify_pullback_universal(&cospan, max_apex.unwrap_or(self.budget));
        Ok(report_result(report))
    }

    pub fn span_compose(&mut self, s1: &Path, s2: &Path) -> Result<CommandResult, CliError> {
        let s1 = self.read_span(s1)?;
        let s2 = self.read_span(s2)?;
        let composed = span_compose(&s1, &s2).map_err(|e| input_err(e.to_string()))?;
        Ok(ok(span_doc(&composed)))
    }

    fn read_span(&mut self, path: &Path) -> Result<bilens_core::Span, CliError> {
        match self.read_doc(path)? {
            Doc::Span(s) => Ok(s),
            other => Err(input_err(format!(
                "{}: expected a span document, found {:?}",
                path.display(),
                other.kind()
            ))),
        }
    }

    pub fn span_iso(&mut self, s1: &Path, s2: &Path) -> Result<CommandResult, CliError> {
        let s1 = self.read_span(s1)?;
        let s2 = self.read_span(s2)?;
        let search = span_iso(&s1, &s2, ISO_CANDIDATE_CAP).map_err(|e| input_err(e.to_string()))?;
        let value = match search {
            IsoSearch::Found(l) => {
                let mut sets = SetCollector::new();
                sets.add_lens(&l);
                json::finish("iso", json!({ "found": true, "lens": lens_inner(&l) }), sets)
            }
            IsoSearch::NotFound => json!({ "iso": { "found": false } }),
            IsoSearch::Inconclusive => json!({ "iso": { "inconclusive": true } }),
        };
        Ok(ok(value))
    }

    pub fn span_probe(&mut self) -> Result<CommandResult, CliError> {
        let report = probe_span_laws(
            &[
                SpanFamily::UnitSized,
                SpanFamily::AdaptorBijections,
                SpanFamily::CollapseProbe,
            ],
            ISO_CANDIDATE_CAP,
        );
        let outcome = if report.status == VerifyStatus::Failed {
            Outcome::Finding
        } else {
            Outcome::Ok
        };
        Ok(CommandResult {
            value: span_probe_doc(&report),
            outcome,
        })
    }

    pub fn adjunct_to_lens(&mut self, file: &Path) -> Result<CommandResult, CliError> {
        let h = match self.read_doc(file)? {
            Doc::Adjunct(h) => h,
            other => {
                return Err(input_err(format!(
                    "expected an adjunct document, found {:?}",
                    other.kind()
                )))
            }
        };
        Ok(ok(lens_doc(&adjunction_to_lens(&h))))
    }

    pub fn adjunct_from_lens(&mut self, lens: &Path) -> Result<CommandResult, CliError> {
        let l = self.read_lens(lens)?;
        Ok(ok(adjunct_doc(&adjunction_from_lens(&l))))
    }

    pub fn naturality(&mut self, lens: &Path, f: &Path, g: &Path) -> Result<CommandResult, CliError> {
        let lam = self.read_lens(lens)?;
        let f = self.read_fn(f)?;
        let g = self.read_fn(g)?;
        let report =
            check_adjunction_naturality(&lam, &f, &g).map_err(|e| input_err(e.to_string()))?;
        if report.holds {
            Ok(ok(json!({
                "naturality": { "holds": true, "checked": report.checked }
            })))
        } else {
            let witness = report.witness.expect("failing report carries a witness");
            let mut sets = SetCollector::new();
            sets.add_object(witness.src());
            sets.add_object(witness.dst());
            let payload = json!({
                "holds": false,
                "checked": report.checked,
                "witness": json::adjunct_inner(&witness),
            });
            Ok(CommandResult {
                value: json::finish("naturality", payload, sets),
                outcome: Outcome::Finding,
            })
        }
    }

    fn read_fn(&mut self, path: &Path) -> Result<bilens_core::FinFn, CliError> {
        match self.read_doc(path)? {
            Doc::Fn(f) => Ok(f),
            other => Err(input_err(format!(
                "{}: expected a fn document, found {:?}",
                path.display(),
                other.kind()
            ))),
        }
    }

    pub fn hom_count(&mut self, x: &Path, y: &Path) -> Result<CommandResult, CliError> {
        let x = self.read_object(x)?;
        let y = self.read_object(y)?;
        let count = hom_count(&x, &y)
            .filter(|c| *c <= u64::MAX as u128)
            .ok_or_else(|| input_err("hom-set too large to count"))?;
        Ok(ok(json!({ "count": count as u64 })))
    }

    pub fn hom_enumerate(&mut self, x: &Path, y: &Path) -> Result<CommandResult, CliError> {
        let x = self.read_object(x)?;
        let y = self.read_object(y)?;
        match hom_count(&x, &y) {
            Some(c) if c <= ENUMERATE_CAP => {}
            _ => {
                return Err(input_err(format!(
                    "hom-set too large to enumerate (cap {ENUMERATE_CAP})"
                )))
            }
        }
        let lenses: Vec<Lens> = enumerate_hom(&x, &y).collect();
        let mut sets = SetCollector::new();
        sets.add_object(&x);
        sets.add_object(&y);
        let payload = Value::Array(lenses.iter().map(lens_inner).collect());
        Ok(ok(json::finish("lenses", payload, sets)))
    }

    /// Exhaustive category-law suite over the quadruple of objects
    /// `(s,t), (a,b), (s,t), (a,b)` with canonical labels.
    pub fn laws(&mut self, sizes: &[usize]) -> Result<CommandResult, CliError> {
        if sizes.len() != 4 {
            return Err(input_err("--sizes takes four numbers: s,t,a,b"));
        }
        if let Some(over) = sizes.iter().find(|&&n| n > self.budget) {
            return Err(input_err(format!(
                "size {over} exceeds the enumeration budget {} (raise BILENS_MAX_BUDGET)",
                self.budget
            )));
        }
        let objects: Vec<LensObject> = (0..4)
            .map(|i| {
                let (fs, bs) = if i % 2 == 0 {
                    (sizes[0], sizes[1])
                } else {
                    (sizes[2], sizes[3])
                };
                LensObject::new(
                    FinSet::canonical(format!("S{i}"), "s", fs),
                    FinSet::canonical(format!("T{i}"), "t", bs),
                )
            })
            .collect();
        let homs: Vec<Vec<Lens>> = (0..3)
            .map(|i| enumerate_hom(&objects[i], &objects[i + 1]).collect())
            .collect();
        let mut unit_checks = 0u64;
        // Unit laws on every enumerated lens.
        for (i, hom) in homs.iter().enumerate() {
            let id_src = lens_identity(&objects[i]);
            let id_dst = lens_identity(&objects[i + 1]);
            for l in hom {
                unit_checks += 2;
                let left = lens_compose(&id_dst, l).map_err(law_err)?;
                let right = lens_compose(l, &id_src).map_err(law_err)?;
                if &left != l || &right != l {
                    return Ok(law_failure("unit", &[l.clone()]));
                }
            }
        }
        // Associativity over every composable triple.
        let mut assoc_checks = 0u64;
        for lam in &homs[0] {
            for mu in &homs[1] {
                let ml = lens_compose(mu, lam).map_err(law_err)?;
                for nu in &homs[2] {
                    assoc_checks += 1;
                    let left = lens_compose(nu, &ml).map_err(law_err)?;
                    let nm = lens_compose(nu, mu).map_err(law_err)?;
                    let right = lens_compose(&nm, lam).map_err(law_err)?;
                    if left != right {
                        return Ok(law_failure(
                            "associativity",
                            &[lam.clone(), mu.clone(), nu.clone()],
                        ));
                    }
                }
            }
        }
        Ok(ok(json!({
            "laws": {
                "status": "verified",
                "objects": objects.iter().map(object_value).collect::<Vec<_>>(),
                "unit_checks": unit_checks,
                "assoc_triples": assoc_checks,
            }
        })))
    }

    pub fn putget(&mut self, lens: &Path) -> Result<CommandResult, CliError> {
        let l = self.read_lens(lens)?;
        match check_put_get(&l) {
            Ok(report) if report.holds => Ok(ok(json!({ "putget": { "holds": true } }))),
            Ok(report) => {
                let (s, b) = report.counterexample.expect("violation carries a witness");
                Ok(CommandResult {
                    value: json!({ "putget": { "holds": false, "witness": { "s": s, "b": b } } }),
                    outcome: Outcome::Finding,
                })
            }
            Err(e @ LensError::NotMonomorphic { .. }) => Err(input_err(e.to_string())),
            Err(e) => Err(input_err(e.to_string())),
        }
    }
}

fn ok(value: Value) -> CommandResult {
    CommandResult {
        value,
        outcome: Outcome::Ok,
    }
}

fn law_err(e: LensError) -> CliError {
    input_err(format!("law suite composition failed: {e}"))
}

fn law_failure(law: &str, lenses: &[Lens]) -> CommandResult {
    let mut sets = SetCollector::new();
    for l in lenses {
        sets.add_lens(l);
    }
    let payload = json!({
        "status": "failed",
        "law": law,
        "witness": lenses.iter().map(lens_inner).collect::<Vec<_>>(),
    });
    CommandResult {
        value: json::finish("laws", payload, sets),
        outcome: Outcome::Finding,
    }
}

fn report_result(report: bilens_core::VerificationReport) -> CommandResult {
    let outcome = if report.status == VerifyStatus::Failed {
        Outcome::Finding
    } else {
        Outcome::Ok
    };
    CommandResult {
        value: report_doc(&report),
        outcome,
    }
}

/// Build a `Map` preserving insertion order (re-export for tests).
pub fn ordered_map() -> Map<String, Value> {
    Map::new()
}
