//! Spans of lenses — symmetric lenses — composed via pullbacks, with
//! isomorphism search and empirical unit/associativity probes.
//!
//! Spans are kept concrete: composing two spans always produces a span
//! (the construction needs no mediating morphisms), even across cospans
//! whose constructed pullback fails its universal property. Whether two
//! spans are isomorphic is answered on demand by [`span_iso`], an
//! exhaustive search for an invertible lens between the apexes commuting
//! with both legs. Because the categorical laws of span composition depend
//! on pullback universality — which this crate treats as an empirical
//! question — identity and associativity are *probed* by
//! [`probe_span_laws`] rather than assumed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{vec};
use core::fmt;

use crate::limits::{
    collapse_probe, lens_pullback, CospanDiagram, LimitsError, VerifyStatus,
};
use crate::lens::{
    adaptor_embed, composite_equals, enumerate_hom, hom_count, lens_compose, lens_identity,
    Adaptor, Lens, LensError, LensObject,
};
use crate::finset::{FinFn, FinSet};

/// Errors raised by span constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanError {
    /// The two legs of a span must share their source (the apex).
    MixedApex { left: String, right: String },
    /// Spans compose only when the middle endpoints agree.
    EndpointMismatch { left: String, right: String },
    Lens(LensError),
    Limits(LimitsError),
}

impl fmt::Display for SpanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanError::MixedApex { left, right } => {
                write!(f, "span legs start at {left} and {right}")
            }
            SpanError::EndpointMismatch { left, right } => {
                write!(f, "cannot compose spans: endpoints {left} and {right} differ")
            }
            SpanError::Lens(e) => e.fmt(f),
            SpanError::Limits(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for SpanError {}

impl From<LensError> for SpanError {
    fn from(e: LensError) -> Self {
        SpanError::Lens(e)
    }
}

impl From<LimitsError> for SpanError {
    fn from(e: LimitsError) -> Self {
        SpanError::Limits(e)
    }
}

/// A span `X <-left- apex -right-> Y` of lenses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Span {
    left: Lens,
    right: Lens,
}

impl Span {
    pub fn new(left: Lens, right: Lens) -> Result<Self, SpanError> {
        if left.src() != right.src() {
            return Err(SpanError::MixedApex {
                left: format!("{}", left.src()),
                right: format!("{}", right.src()),
            });
        }
        Ok(Span { left, right })
    }

    pub fn apex(&self) -> &LensObject {
        self.left.src()
    }

    pub fn left(&self) -> &Lens {
        &self.left
    }

    pub fn right(&self) -> &Lens {
        &self.right
    }

    /// The object the left leg lands on.
    pub fn source(&self) -> &LensObject {
        self.left.dst()
    }

    /// The object the right leg lands on.
    pub fn target(&self) -> &LensObject {
        self.right.dst()
    }
}

/// The identity span on `X`: both legs the identity lens.
pub fn span_identity(x: &LensObject) -> Span {
    Span {
        left: lens_identity(x),
        right: lens_identity(x),
    }
}

/// Compose `s1 : X -> Y` with `s2 : Y -> Z` by pulling back the cospan
/// `(s1.right, s2.left)` and whiskering the outer legs.
pub fn span_compose(s1: &Span, s2: &Span) -> Result<Span, SpanError> {
    if s1.target() != s2.source() {
        return Err(SpanError::EndpointMismatch {
            left: format!("{}", s1.target()),
            right: format!("{}", s2.source()),
        });
    }
    let cospan = CospanDiagram::new(s1.right.clone(), s2.left.clone())?;
    let pb = lens_pullback(&cospan);
    let left = lens_compose(&s1.left, pb.proj1())?;
    let right = lens_compose(&s2.right, pb.proj2())?;
    Span::new(left, right)
}

/// Result of an isomorphism search between two spans.
#[derive(Clone, Debug)]
pub enum IsoSearch {
    /// An invertible apex lens commuting with both legs.
    Found(Lens),
    /// The exhaustive search ruled an isomorphism out.
    NotFound,
    /// The hom-sets to search exceed the candidate cap.
    Inconclusive,
}

impl IsoSearch {
    pub fn found(&self) -> bool {
        matches!(self, IsoSearch::Found(_))
    }
}

/// Search `hom(s1.apex, s2.apex)` exhaustively for an invertible lens
/// commuting with both legs; invertibility is itself decided by exhaustive
/// search for a two-sided inverse. `candidate_cap` bounds the size of each
/// hom-set searched.
pub fn span_iso(s1: &Span, s2: &Span, candidate_cap: u64) -> Result<IsoSearch, SpanError> {
    if s1.source() != s2.source() || s1.target() != s2.target() {
        return Err(SpanError::EndpointMismatch {
            left: format!("{} / {}", s1.source(), s1.target()),
            right: format!("{} / {}", s2.source(), s2.target()),
        });
    }
    let a1 = s1.apex();
    let a2 = s2.apex();
    // An invertible lens needs a view bijection, and (when any state
    // exists) mutually inverse update slices, so unequal component sizes
    // rule an isomorphism out immediately.
    if a1.fwd().len() != a2.fwd().len() {
        return Ok(IsoSearch::NotFound);
    }
    if a1.fwd().len() > 0 && a1.bwd().len() != a2.bwd().len() {
        return Ok(IsoSearch::NotFound);
    }
    let forward_count = hom_count(a1, a2);
    let backward_count = hom_count(a2, a1);
    match (forward_count, backward_count) {
        (Some(f), Some(b)) if f <= candidate_cap as u128 && b <= candidate_cap as u128 => {}
        _ => return Ok(IsoSearch::Inconclusive),
    }
    let id1 = lens_identity(a1);
    let id2 = lens_identity(a2);
    let inverses: Vec<Lens> = enumerate_hom(a2, a1).collect();
    for phi in enumerate_hom(a1, a2) {
        if !composite_equals(&s2.left, &phi, &s1.left)
            || !composite_equals(&s2.right, &phi, &s1.right)
        {
            continue;
        }
        let invertible = inverses.iter().any(|psi| {
            composite_equals(psi, &phi, &id1) && composite_equals(&phi, psi, &id2)
        });
        if invertible {
            return Ok(IsoSearch::Found(phi));
        }
    }
    Ok(IsoSearch::NotFound)
}

/// Which law a probe check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanLawKind {
    LeftUnit,
    RightUnit,
    Associativity,
}

impl fmt::Display for SpanLawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanLawKind::LeftUnit => f.write_str("left unit"),
            SpanLawKind::RightUnit => f.write_str("right unit"),
            SpanLawKind::Associativity => f.write_str("associativity"),
        }
    }
}

/// A law check that found non-isomorphic composites, with the offending
/// spans.
#[derive(Clone, Debug)]
pub struct SpanLawFailure {
    pub law: SpanLawKind,
    pub spans: Vec<Span>,
}

/// Outcome of a law probe: counts of checks run, checks abandoned for
/// budget, and every failure found. Deterministic for a fixed family list.
#[derive(Clone, Debug)]
pub struct SpanLawReport {
    pub status: VerifyStatus,
    pub unit_checks: u64,
    pub assoc_checks: u64,
    pub inconclusive: u64,
    pub failures: Vec<SpanLawFailure>,
}

/// The span families the law probe can exercise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanFamily {
    /// Every span between unit-sized objects (all components of size one,
    /// plus the empty-apex degenerations).
    UnitSized,
    /// Spans whose legs are embedded bijection adaptors between `(2,2)`
    /// objects.
    AdaptorBijections,
    /// Spans threaded through the pullback-collapse probe cospan, where
    /// the constructed pullback is known not to be universal.
    CollapseProbe,
}

struct ProbeState {
    iso_cap: u64,
    unit_checks: u64,
    assoc_checks: u64,
    inconclusive: u64,
    failures: Vec<SpanLawFailure>,
}

impl ProbeState {
    fn check_unit(&mut self, law: SpanLawKind, composite: &Span, original: &Span) {
        self.unit_checks += 1;
        match span_iso(composite, original, self.iso_cap) {
            Ok(IsoSearch::Found(_)) => {}
            Ok(IsoSearch::NotFound) => self.failures.push(SpanLawFailure {
                law,
                spans: vec![original.clone(), composite.clone()],
            }),
            Ok(IsoSearch::Inconclusive) => self.inconclusive += 1,
            Err(_) => self.inconclusive += 1,
        }
    }

    fn check_assoc(&mut self, s1: &Span, s2: &Span, s3: &Span) {
        self.assoc_checks += 1;
        let left = span_compose(&span_compose(s1, s2).expect("composable"), s3)
            .expect("composable");
        let right = span_compose(s1, &span_compose(s2, s3).expect("composable"))
            .expect("composable");
        match span_iso(&left, &right, self.iso_cap) {
            Ok(IsoSearch::Found(_)) => {}
            Ok(IsoSearch::NotFound) => self.failures.push(SpanLawFailure {
                law: SpanLawKind::Associativity,
                spans: vec![s1.clone(), s2.clone(), s3.clone()],
            }),
            Ok(IsoSearch::Inconclusive) => self.inconclusive += 1,
            Err(_) => self.inconclusive += 1,
        }
    }

    fn units_for(&mut self, s: &Span) {
        let left_id = span_identity(s.source());
        let right_id = span_identity(s.target());
        let left_composite = span_compose(&left_id, s).expect("endpoints match");
        self.check_unit(SpanLawKind::LeftUnit, &left_composite, s);
        let right_composite = span_compose(s, &right_id).expect("endpoints match");
        self.check_unit(SpanLawKind::RightUnit, &right_composite, s);
    }
}

fn unit_sized_object(tag: usize) -> LensObject {
    LensObject::new(
        FinSet::canonical(format!("X{tag}"), "x", 1),
        FinSet::canonical(format!("U{tag}"), "u", 1),
    )
}

/// All spans between two unit-sized objects whose apex components have at
/// most one element. Apexes with a state but no update targets admit no
/// legs and drop out on their own.
fn unit_sized_spans(from: &LensObject, to: &LensObject) -> Vec<Span> {
    let mut spans = Vec::new();
    for n in 0..=1usize {
        for m in 0..=1usize {
            let apex = LensObject::canonical(n, m);
            let lefts: Vec<Lens> = enumerate_hom(&apex, from).collect();
            let rights: Vec<Lens> = enumerate_hom(&apex, to).collect();
            for l in &lefts {
                for r in &rights {
                    spans.push(Span::new(l.clone(), r.clone()).expect("shared apex"));
                }
            }
        }
    }
    spans
}

fn bijections(x: &FinSet, y: &FinSet) -> Vec<FinFn> {
    crate::finset::enumerate_fns(x, y)
        .filter(FinFn::is_bijection)
        .collect()
}

/// Spans `from <- apex -> to` whose legs are embedded bijection adaptors.
fn bijection_spans(apex: &LensObject, from: &LensObject, to: &LensObject) -> Vec<Span> {
    let mut spans = Vec::new();
    for f1 in bijections(apex.fwd(), from.fwd()) {
        for g1 in bijections(from.bwd(), apex.bwd()) {
            let left = adaptor_embed(&Adaptor::new(f1.clone(), g1.clone()));
            for f2 in bijections(apex.fwd(), to.fwd()) {
                for g2 in bijections(to.bwd(), apex.bwd()) {
                    let right = adaptor_embed(&Adaptor::new(f2.clone(), g2.clone()));
                    spans.push(Span::new(left.clone(), right).expect("shared apex"));
                }
            }
        }
    }
    spans
}

/// Probe the unit and associativity laws of span composition over the
/// requested families, comparing composites up to [`span_iso`] with the
/// given candidate cap. Failures are findings, reported with the offending
/// spans; searches that exceed the cap are counted as inconclusive.
pub fn probe_span_laws(families: &[SpanFamily], iso_cap: u64) -> SpanLawReport {
    let mut state = ProbeState {
        iso_cap,
        unit_checks: 0,
        assoc_checks: 0,
        inconclusive: 0,
        failures: Vec::new(),
    };
    for family in families {
        match family {
            SpanFamily::UnitSized => {
                let objects: Vec<LensObject> = (1..=4).map(unit_sized_object).collect();
                let spans12 = unit_sized_spans(&objects[0], &objects[1]);
                let spans23 = unit_sized_spans(&objects[1], &objects[2]);
                let spans34 = unit_sized_spans(&objects[2], &objects[3]);
                for s in &spans12 {
                    state.units_for(s);
                }
                for s1 in &spans12 {
                    for s2 in &spans23 {
                        for s3 in &spans34 {
                            state.check_assoc(s1, s2, s3);
                        }
                    }
                }
            }
            SpanFamily::AdaptorBijections => {
                let objects: Vec<LensObject> = (1..=4)
                    .map(|i| {
                        LensObject::new(
                            FinSet::canonical(format!("Y{i}"), "y", 2),
                            FinSet::canonical(format!("V{i}"), "v", 2),
                        )
                    })
                    .collect();
                let apex = |i: usize| {
                    LensObject::new(
                        FinSet::canonical(format!("M{i}"), "m", 2),
                        FinSet::canonical(format!("N{i}"), "n", 2),
                    )
                };
                let spans12 = bijection_spans(&apex(1), &objects[0], &objects[1]);
                let spans23 = bijection_spans(&apex(2), &objects[1], &objects[2]);
                let spans34 = bijection_spans(&apex(3), &objects[2], &objects[3]);
                for s in &spans12 {
                    state.units_for(s);
                }
                // Associativity over a deterministic subsample; the full
                // 16^3 grid re-checks the same pullback shapes many times.
                for s1 in spans12.iter().step_by(3) {
                    for s2 in spans23.iter().step_by(3) {
                        for s3 in spans34.iter().step_by(3) {
                            state.check_assoc(s1, s2, s3);
                        }
                    }
                }
            }
            SpanFamily::CollapseProbe => {
                let (cospan, _) = collapse_probe();
                let st = cospan.left().src().clone();
                let st_prime = cospan.right().src().clone();
                let s1 = Span::new(lens_identity(&st), cospan.left().clone())
                    .expect("shared apex");
                let s2 = Span::new(cospan.right().clone(), lens_identity(&st_prime))
                    .expect("shared apex");
                let s3 = span_identity(&st_prime);
                state.units_for(&s1);
                state.units_for(&s2);
                let composite = span_compose(&s1, &s2).expect("composable");
                state.units_for(&composite);
                state.check_assoc(&s1, &s2, &s3);
            }
        }
    }
    let status = if !state.failures.is_empty() {
        VerifyStatus::Failed
    } else if state.inconclusive > 0 {
        VerifyStatus::Partial
    } else {
        VerifyStatus::Verified
    };
    SpanLawReport {
        status,
        unit_checks: state.unit_checks,
        assoc_checks: state.assoc_checks,
        inconclusive: state.inconclusive,
        failures: state.failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::fixtures::{composition_pair, object};
    

    const CAP: u64 = 1 << 20;

    #[test]
    fn identity_span_legs() {
        let x = object("S", "s", 1, "T", "t", 1);
        let s = span_identity(&x);
        assert_eq!(*s.left(), lens_identity(&x));
        assert_eq!(*s.right(), lens_identity(&x));
    }

    #[test]
    fn compose_identity_spans() {
        let x = object("S", "s", 1, "T", "t", 1);
        let s = span_compose(&span_identity(&x), &span_identity(&x)).unwrap();
        assert_eq!(s.source(), &x);
        assert_eq!(s.target(), &x);
        // Diagonal apex of the identity cospan collapses back to (1,1).
        assert_eq!(s.apex().fwd().len(), 1);
        assert_eq!(s.apex().bwd().len(), 1);
    }

    #[test]
    fn compose_with_identity_on_fixture() {
        let (_, lam) = composition_pair();
        let s = Span::new(lens_identity(lam.src()), lam.clone()).unwrap();
        let composite = span_compose(&s, &span_identity(lam.dst())).unwrap();
        assert_eq!(composite.source(), lam.src());
        assert_eq!(composite.target(), lam.dst());
        // The middle pullback is of (lam.view, id): its graph.
        assert_eq!(composite.apex().fwd().len(), lam.src().fwd().len());
    }

    #[test]
    fn compose_rejects_mismatched_endpoints() {
        let x = object("S", "s", 1, "T", "t", 1);
        let y = object("A", "a", 2, "B", "b", 1);
        let err = span_compose(&span_identity(&x), &span_identity(&y)).unwrap_err();
        assert!(matches!(err, SpanError::EndpointMismatch { .. }));
    }

    #[test]
    fn composing_across_collapse_probe_is_well_defined() {
        let (cospan, _) = collapse_probe();
        let s1 = Span::new(
            lens_identity(cospan.left().src()),
            cospan.left().clone(),
        )
        .unwrap();
        let s2 = Span::new(
            cospan.right().clone(),
            lens_identity(cospan.right().src()),
        )
        .unwrap();
        let composite = span_compose(&s1, &s2).unwrap();
        assert_eq!(composite.apex().fwd().len(), 4);
        assert_eq!(composite.apex().bwd().len(), 1);
    }

    #[test]
    fn span_iso_reflexive() {
        let x = object("S", "s", 2, "T", "t", 2);
        let apex = object("P", "p", 2, "Q", "q", 2);
        let left = enumerate_hom(&apex, &x).nth(5).unwrap();
        let right = enumerate_hom(&apex, &x).nth(23).unwrap();
        let s = Span::new(left, right).unwrap();
        match span_iso(&s, &s, CAP).unwrap() {
            IsoSearch::Found(phi) => assert_eq!(phi, lens_identity(s.apex())),
            other => panic!("expected identity iso, got {other:?}"),
        }
    }

    #[test]
    fn span_iso_finds_relabelling() {
        // The same span with its apex relabelled by a bijection adaptor.
        let x = object("Y", "y", 2, "V", "v", 2);
        let apex_a = object("M", "m", 2, "N", "n", 2);
        let apex_b = object("M'", "w", 2, "N'", "z", 2);
        let swap_ma = bijections(apex_b.fwd(), apex_a.fwd())[1].clone();
        let swap_na = bijections(apex_a.bwd(), apex_b.bwd())[1].clone();
        let relabel = adaptor_embed(&Adaptor::new(swap_ma, swap_na));
        let left = enumerate_hom(&apex_a, &x).nth(7).unwrap();
        let right = enumerate_hom(&apex_a, &x).nth(42).unwrap();
        let s_a = Span::new(left.clone(), right.clone()).unwrap();
        let s_b = Span::new(
            lens_compose(&left, &relabel).unwrap(),
            lens_compose(&right, &relabel).unwrap(),
        )
        .unwrap();
        assert!(span_iso(&s_a, &s_b, CAP).unwrap().found());
        assert!(span_iso(&s_b, &s_a, CAP).unwrap().found());
    }

    #[test]
    fn span_iso_rejects_unbridgeable_cardinalities() {
        let x = object("S", "s", 1, "T", "t", 1);
        let apex_big = object("P", "p", 2, "Q", "q", 1);
        let lefts: Vec<Lens> = enumerate_hom(&apex_big, &x).collect();
        let s_big = Span::new(lefts[0].clone(), lefts[0].clone()).unwrap();
        let s_small = span_identity(&x);
        assert!(matches!(
            span_iso(&s_big, &s_small, CAP).unwrap(),
            IsoSearch::NotFound
        ));
    }

    #[test]
    fn span_iso_budget_inconclusive() {
        let x = object("S", "s", 2, "T", "t", 2);
        let s = span_identity(&x);
        assert!(matches!(
            span_iso(&s, &s, 1).unwrap(),
            IsoSearch::Inconclusive
        ));
    }

    #[test]
    fn unit_sized_family_verifies() {
        let report = probe_span_laws(&[SpanFamily::UnitSized], CAP);
        assert_eq!(report.status, VerifyStatus::Verified, "{:?}", report.failures);
        assert!(report.unit_checks > 0);
        assert!(report.assoc_checks > 0);
        assert_eq!(report.inconclusive, 0);
    }

    #[test]
    fn bijection_family_verifies() {
        let report = probe_span_laws(&[SpanFamily::AdaptorBijections], CAP);
        assert_eq!(report.status, VerifyStatus::Verified, "{:?}", report.failures);
        assert_eq!(report.inconclusive, 0);
    }
}
