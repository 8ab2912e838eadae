//! Products and pullbacks in the lens category, with mediator construction
//! and brute-force universal-property verifiers.
//!
//! The product of `(S1,T1)` and `(S2,T2)` is `(S1 x S2, T1 + T2)`. The
//! pullback of a cospan `lam, lam'` has forward part the set pullback of
//! the views and backward part the pushout of the updates over
//! `(S x_A S') x B`.
//!
//! Construction and verification are deliberately separate. The mediator
//! construction follows the universal-morphism recipe and *reports* when
//! its pushout-cocone precondition fails; whether a mediator exists at all
//! is decided only by [`verify_pullback_universal`], which counts mediators
//! by exhaustive search and returns a witness cone when the count is not
//! exactly one.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::finset::{
    coproduct_many, initial_set, product_many, product_set, pullback_set, pushout_set,
    terminal_set, FinFn, FinSet, FinSetError, ProductSet, Pullback, Pushout,
};
use crate::lens::{
    composite_equals, composites_agree, enumerate_hom, hom_count, Lens, LensError, LensObject,
};

/// Errors raised by limit constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitsError {
    /// The two lenses of a cospan do not share a codomain.
    NotACospan { left: String, right: String },
    /// Cone legs do not share an apex, or do not land on the cospan feet.
    MalformedCone { detail: String },
    /// The cone condition `left . mu = right . mu'` fails.
    ConeConditionFails,
    /// Tuple legs do not all start from the stated apex.
    MixedSources { expected: String, found: String },
    /// A mediator was requested for a different cospan than the pullback
    /// was built from.
    WrongDiagram,
    /// The paper-style mediator construction is inapplicable: the update
    /// cocone disagrees on an identified pair. This does *not* assert that
    /// no mediator exists; existence is decided by exhaustive search.
    NoMediatorConstructible { p: String, pair: String, b: String },
    Lens(LensError),
    Set(FinSetError),
}

impl fmt::Display for LimitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitsError::NotACospan { left, right } => {
                write!(f, "not a cospan: codomains {left} and {right} differ")
            }
            LimitsError::MalformedCone { detail } => write!(f, "malformed cone: {detail}"),
            LimitsError::ConeConditionFails => f.write_str("cone condition fails"),
            LimitsError::MixedSources { expected, found } => {
                write!(f, "tuple legs must share the apex {expected}, found {found}")
            }
            LimitsError::WrongDiagram => {
                f.write_str("cone is not over the cospan this pullback was built from")
            }
            LimitsError::NoMediatorConstructible { p, pair, b } => write!(
                f,
                "mediator construction inapplicable: update cocone disagrees at p={p:?}, w={pair:?}, b={b:?}"
            ),
            LimitsError::Lens(e) => e.fmt(f),
            LimitsError::Set(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for LimitsError {}

impl From<LensError> for LimitsError {
    fn from(e: LensError) -> Self {
        LimitsError::Lens(e)
    }
}

impl From<FinSetError> for LimitsError {
    fn from(e: FinSetError) -> Self {
        LimitsError::Set(e)
    }
}

/// A cospan `(S,T) -lam-> (A,B) <-lam'- (S',T')`: two lenses into a shared
/// codomain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CospanDiagram {
    left: Lens,
    right: Lens,
}

impl CospanDiagram {
    pub fn new(left: Lens, right: Lens) -> Result<Self, LimitsError> {
        if left.dst() != right.dst() {
            return Err(LimitsError::NotACospan {
                left: format!("{}", left.dst()),
                right: format!("{}", right.dst()),
            });
        }
        Ok(CospanDiagram { left, right })
    }

    pub fn left(&self) -> &Lens {
        &self.left
    }

    pub fn right(&self) -> &Lens {
        &self.right
    }

    pub fn codomain(&self) -> &LensObject {
        self.left.dst()
    }
}

/// A cone over a cospan: an apex with legs `mu`, `mu'` into the cospan's
/// feet such that `left . mu = right . mu'`; the condition is checked on
/// construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeDiagram {
    mu: Lens,
    mu_prime: Lens,
    over: CospanDiagram,
}

impl ConeDiagram {
    pub fn new(mu: Lens, mu_prime: Lens, over: CospanDiagram) -> Result<Self, LimitsError> {
        if mu.src() != mu_prime.src() {
            return Err(LimitsError::MalformedCone {
                detail: format!("legs start at {} and {}", mu.src(), mu_prime.src()),
            });
        }
        if mu.dst() != over.left.src() || mu_prime.dst() != over.right.src() {
            return Err(LimitsError::MalformedCone {
                detail: String::from("legs do not land on the cospan feet"),
            });
        }
        if !composites_agree(&over.left, &mu, &over.right, &mu_prime) {
            return Err(LimitsError::ConeConditionFails);
        }
        Ok(ConeDiagram {
            mu,
            mu_prime,
            over,
        })
    }

    pub fn apex(&self) -> &LensObject {
        self.mu.src()
    }

    pub fn mu(&self) -> &Lens {
        &self.mu
    }

    pub fn mu_prime(&self) -> &Lens {
        &self.mu_prime
    }

    pub fn over(&self) -> &CospanDiagram {
        &self.over
    }
}

/// The product object with its projection lenses.
pub struct LensProduct {
    pub object: LensObject,
    pub projections: Vec<Lens>,
}

/// The product of a family of objects: forward parts multiply, backward
/// parts sum. Projection `i` views by the set projection and updates by
/// injecting into the sum. The empty family gives the terminal object
/// `(1, 0)`.
pub fn lens_product(objs: &[LensObject]) -> LensProduct {
    let fwds: Vec<FinSet> = objs.iter().map(|o| o.fwd().clone()).collect();
    let bwds: Vec<FinSet> = objs.iter().map(|o| o.bwd().clone()).collect();
    let (fwd_set, fwd_projs) = product_many(&fwds);
    let (bwd_set, bwd_injs) = coproduct_many(&bwds);
    let object = LensObject::new(fwd_set, bwd_set);
    let projections = objs
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let proj = &fwd_projs[i];
            let inj = &bwd_injs[i];
            Lens::from_parts(
                object.clone(),
                o.clone(),
                |w| proj.table()[w],
                |_, t| inj.table()[t],
            )
        })
        .collect();
    LensProduct {
        object,
        projections,
    }
}

/// The unique lens into the terminal object `(1, 0)`.
pub fn terminal_lens(apex: &LensObject) -> Lens {
    let terminal = LensObject::new(terminal_set(), initial_set());
    Lens::from_parts(apex.clone(), terminal, |_| 0, |_, _| unreachable!("empty update domain"))
}

/// The tupling of cone legs out of a common apex: the unique lens into the
/// product commuting with every projection. With no legs this is the
/// terminal lens.
pub fn lens_tuple(apex: &LensObject, legs: &[Lens]) -> Result<Lens, LimitsError> {
    for leg in legs {
        if leg.src() != apex {
            return Err(LimitsError::MixedSources {
                expected: format!("{apex}"),
                found: format!("{}", leg.src()),
            });
        }
    }
    if legs.is_empty() {
        return Ok(terminal_lens(apex));
    }
    let dsts: Vec<LensObject> = legs.iter().map(|l| l.dst().clone()).collect();
    let product = lens_product(&dsts);
    // Strides of the forward product and offsets into the backward sum.
    let mut strides = vec![1usize; dsts.len()];
    for i in (0..dsts.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dsts[i + 1].fwd().len();
    }
    let mut offsets = Vec::with_capacity(dsts.len() + 1);
    let mut acc = 0usize;
    for d in &dsts {
        offsets.push(acc);
        acc += d.bwd().len();
    }
    offsets.push(acc);
    Ok(Lens::from_parts(
        apex.clone(),
        product.object.clone(),
        |p| legs.iter().zip(&strides).map(|(l, s)| l.view_idx(p) * s).sum(),
        |p, k| {
            let i = match offsets.binary_search(&k) {
                Ok(exact) => {
                    // Skip empty summands: the element belongs to the next
                    // nonempty factor starting at this offset.
                    let mut i = exact;
                    while offsets[i + 1] == offsets[i] {
                        i += 1;
                    }
                    i
                }
                Err(ins) => ins - 1,
            };
            legs[i].update_idx(p, k - offsets[i])
        },
    ))
}

/// A constructed lens pullback: the apex, its projection lenses, and the
/// finite-set data (view pullback, update pushout, relating set) behind it.
pub struct LensPullback {
    cospan: CospanDiagram,
    apex: LensObject,
    p1: Lens,
    p2: Lens,
    fwd: Pullback,
    bwd: Pushout,
    gens: ProductSet,
}

/// Build the pullback of a cospan `lam, lam'`: forward part
/// `W = S x_A S'` (pullback of the views), backward part the pushout of
///
/// ```text
/// T <-u_lam- (W x B) -u_lam'-> T'
/// ```
///
/// with projection lenses viewing by the set projections and updating by
/// injecting into the pushout.
pub fn lens_pullback(c: &CospanDiagram) -> LensPullback {
    let w = pullback_set(c.left.view(), c.right.view()).expect("cospan shares its codomain");
    let b = c.codomain().bwd().clone();
    let gens = product_set(w.set(), &b);
    let left_update = FinFn::from_fn(
        gens.set().clone(),
        c.left.src().bwd().clone(),
        |k| {
            let (wi, bi) = gens.split_index(k);
            c.left.update_idx(w.pairs()[wi].0, bi)
        },
    );
    let right_update = FinFn::from_fn(
        gens.set().clone(),
        c.right.src().bwd().clone(),
        |k| {
            let (wi, bi) = gens.split_index(k);
            c.right.update_idx(w.pairs()[wi].1, bi)
        },
    );
    let po = pushout_set(&left_update, &right_update).expect("shared relating set");
    let apex = LensObject::new(w.set().clone(), po.set().clone());
    let p1 = Lens::from_parts(
        apex.clone(),
        c.left.src().clone(),
        |wi| w.pairs()[wi].0,
        |_, t| po.class_of_left(t),
    );
    let p2 = Lens::from_parts(
        apex.clone(),
        c.right.src().clone(),
        |wi| w.pairs()[wi].1,
        |_, t| po.class_of_right(t),
    );
    LensPullback {
        cospan: c.clone(),
        apex,
        p1,
        p2,
        fwd: w,
        bwd: po,
        gens,
    }
}

impl LensPullback {
    pub fn cospan(&self) -> &CospanDiagram {
        &self.cospan
    }

    pub fn apex(&self) -> &LensObject {
        &self.apex
    }

    pub fn proj1(&self) -> &Lens {
        &self.p1
    }

    pub fn proj2(&self) -> &Lens {
        &self.p2
    }

    /// The set pullback of the views.
    pub fn view_pullback(&self) -> &Pullback {
        &self.fwd
    }

    /// The set pushout of the updates.
    pub fn update_pushout(&self) -> &Pushout {
        &self.bwd
    }
}

/// Build the mediating lens of a cone into a constructed pullback,
/// following the universal-morphism recipe: the view is the set-pullback
/// mediator of the leg views; the update factors the leg updates through
/// the pushout quotient.
///
/// The update step needs the cocone `(u_mu, u_mu')` to agree on every
/// generated identification: `u_mu(p, u_lam(s,b)) = u_mu'(p, u_lam'(s',b))`
/// for every `p`, `(s,s')` in `W` and `b`. The cone condition only forces
/// this at `(s,s') = (v_mu(p), v_mu'(p))`, so the check can fail; in that
/// case the construction reports the witnessing triple rather than
/// guessing a repair.
pub fn lens_pullback_mediator(
    cone: &ConeDiagram,
    pb: &LensPullback,
) -> Result<Lens, LimitsError> {
    if cone.over != pb.cospan {
        return Err(LimitsError::WrongDiagram);
    }
    let view = pb
        .fwd
        .mediator(cone.mu.view(), cone.mu_prime.view())
        .expect("cone condition implies the view cone condition");
    let apex = cone.apex().clone();
    let p_set = apex.fwd().clone();
    let mut slices: Vec<FinFn> = Vec::with_capacity(p_set.len());
    for p in 0..p_set.len() {
        let k1 = FinFn::from_fn(
            cone.mu.dst().bwd().clone(),
            apex.bwd().clone(),
            |t| cone.mu.update_idx(p, t),
        );
        let k2 = FinFn::from_fn(
            cone.mu_prime.dst().bwd().clone(),
            apex.bwd().clone(),
            |t| cone.mu_prime.update_idx(p, t),
        );
        match pb.bwd.mediator(&k1, &k2) {
            Ok(m) => slices.push(m),
            Err(FinSetError::NotACocone { witness }) => {
                let k = pb
                    .gens
                    .set()
                    .index_of(&witness)
                    .expect("witness comes from the relating set");
                let (wi, bi) = pb.gens.split_index(k);
                return Err(LimitsError::NoMediatorConstructible {
                    p: p_set.elem(p).to_owned(),
                    pair: pb.fwd.set().elem(wi).to_owned(),
                    b: pb.cospan.codomain().bwd().elem(bi).to_owned(),
                });
            }
            Err(other) => return Err(other.into()),
        }
    }
    Ok(Lens::from_parts(
        apex,
        pb.apex.clone(),
        |p| view.table()[p],
        |p, c| slices[p].table()[c],
    ))
}

/// Outcome of a universal-property verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyStatus {
    /// Every enumerated cone had exactly one mediator.
    Verified,
    /// Some cone had zero or at least two mediators; see the witness.
    Failed,
    /// The search budget was exceeded before all cones were checked.
    Partial,
}

/// A cone (or leg tuple) with the wrong number of mediators, found by
/// exhaustive search.
#[derive(Clone, Debug)]
pub enum UniversalityWitness {
    Pullback {
        cone: ConeDiagram,
        mediator_count: u64,
        /// When the mediator construction is also inapplicable for this
        /// cone, the triple `(p, (s,s'), b)` on which its precondition
        /// fails.
        cocone_failure: Option<CoconeWitness>,
    },
    Product {
        legs: Vec<Lens>,
        mediator_count: u64,
    },
}

impl UniversalityWitness {
    pub fn mediator_count(&self) -> u64 {
        match self {
            UniversalityWitness::Pullback { mediator_count, .. }
            | UniversalityWitness::Product { mediator_count, .. } => *mediator_count,
        }
    }
}

/// A triple on which the pushout cocone of a cone's updates disagrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoconeWitness {
    pub p: String,
    pub pair: String,
    pub b: String,
}

/// Result of exhaustively checking a universal property at bounded apex
/// sizes. Deterministic: the first witness in enumeration order wins.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub status: VerifyStatus,
    pub checked_cones: u64,
    pub witness: Option<UniversalityWitness>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.status == VerifyStatus::Verified
    }
}

/// Cap on `|cones| * |candidates|` per apex before a verification gives up
/// and reports a partial result.
pub const MAX_SEARCH_WORK: u128 = 1 << 30;

fn partial(checked: u64) -> VerificationReport {
    VerificationReport {
        status: VerifyStatus::Partial,
        checked_cones: checked,
        witness: None,
    }
}

/// Exhaustively verify the pullback universal property of the constructed
/// apex for every cone whose apex components have at most `max_apex_size`
/// elements (over a canonical label alphabet `p0../q0..`).
pub fn verify_pullback_universal(c: &CospanDiagram, max_apex_size: usize) -> VerificationReport {
    let pb = lens_pullback(c);
    let mut checked = 0u64;
    for n in 0..=max_apex_size {
        for m in 0..=max_apex_size {
            let apex = LensObject::canonical(n, m);
            let mu_count = hom_count(&apex, c.left.src());
            let mup_count = hom_count(&apex, c.right.src());
            let cand_count = hom_count(&apex, &pb.apex);
            let work = match (mu_count, mup_count, cand_count) {
                (Some(a), Some(b), Some(k)) => a
                    .checked_mul(b)
                    .and_then(|cones| cones.checked_mul(k.max(1))),
                _ => None,
            };
            match work {
                Some(w) if w <= MAX_SEARCH_WORK => {}
                _ => return partial(checked),
            }
            let candidates: Vec<Lens> = enumerate_hom(&apex, &pb.apex).collect();
            let mus: Vec<Lens> = enumerate_hom(&apex, c.left.src()).collect();
            let mu_primes: Vec<Lens> = enumerate_hom(&apex, c.right.src()).collect();
            for mu in &mus {
                for mu_prime in &mu_primes {
                    if !composites_agree(&c.left, mu, &c.right, mu_prime) {
                        continue;
                    }
                    checked += 1;
                    let count = candidates
                        .iter()
                        .filter(|a| {
                            composite_equals(&pb.p1, a, mu) && composite_equals(&pb.p2, a, mu_prime)
                        })
                        .count() as u64;
                    if count != 1 {
                        let cone = ConeDiagram::new(mu.clone(), mu_prime.clone(), c.clone())
                            .expect("cone condition already checked");
                        let cocone_failure = match lens_pullback_mediator(&cone, &pb) {
                            Err(LimitsError::NoMediatorConstructible { p, pair, b }) => {
                                Some(CoconeWitness { p, pair, b })
                            }
                            _ => None,
                        };
                        return VerificationReport {
                            status: VerifyStatus::Failed,
                            checked_cones: checked,
                            witness: Some(UniversalityWitness::Pullback {
                                cone,
                                mediator_count: count,
                                cocone_failure,
                            }),
                        };
                    }
                }
            }
        }
    }
    VerificationReport {
        status: VerifyStatus::Verified,
        checked_cones: checked,
        witness: None,
    }
}

/// Exhaustively verify the product universal property: for every apex of
/// component sizes at most `max_apex_size` and every tuple of legs, count
/// the lenses into the product that commute with all projections.
///
/// A counterexample is reported as a witness over a degenerate cospan
/// (projection legs of the product itself) so the report type can be
/// shared; the offending legs are the recorded cone's legs when the family
/// is binary, and the report is `Failed` either way.
pub fn verify_product_universal(objs: &[LensObject], max_apex_size: usize) -> VerificationReport {
    let product = lens_product(objs);
    let mut checked = 0u64;
    for n in 0..=max_apex_size {
        for m in 0..=max_apex_size {
            let apex = LensObject::canonical(n, m);
            let cand_count = hom_count(&apex, &product.object);
            let mut cones: u128 = 1;
            let mut overflow = false;
            for o in objs {
                match hom_count(&apex, o).and_then(|h| cones.checked_mul(h)) {
                    Some(v) => cones = v,
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            let work = if overflow {
                None
            } else {
                cand_count.and_then(|k| cones.checked_mul(k.max(1)))
            };
            match work {
                Some(w) if w <= MAX_SEARCH_WORK => {}
                _ => return partial(checked),
            }
            let candidates: Vec<Lens> = enumerate_hom(&apex, &product.object).collect();
            let leg_choices: Vec<Vec<Lens>> = objs
                .iter()
                .map(|o| enumerate_hom(&apex, o).collect())
                .collect();
            if leg_choices.iter().any(Vec::is_empty) {
                continue;
            }
            let mut index = vec![0usize; objs.len()];
            loop {
                let legs: Vec<&Lens> = index
                    .iter()
                    .zip(&leg_choices)
                    .map(|(&i, v)| &v[i])
                    .collect();
                checked += 1;
                let count = candidates
                    .iter()
                    .filter(|a| {
                        legs.iter()
                            .zip(&product.projections)
                            .all(|(leg, proj)| composite_equals(proj, a, leg))
                    })
                    .count() as u64;
                if count != 1 {
                    return VerificationReport {
                        status: VerifyStatus::Failed,
                        checked_cones: checked,
                        witness: Some(UniversalityWitness::Product {
                            legs: legs.into_iter().cloned().collect(),
                            mediator_count: count,
                        }),
                    };
                }
                // Advance the multi-index (last leg fastest); the empty
                // index is the single nullary tuple and stops immediately.
                let mut pos = index.len();
                loop {
                    if pos == 0 {
                        index.clear();
                        break;
                    }
                    pos -= 1;
                    index[pos] += 1;
                    if index[pos] < leg_choices[pos].len() {
                        break;
                    }
                    index[pos] = 0;
                }
                if index.is_empty() {
                    break;
                }
            }
        }
    }
    VerificationReport {
        status: VerifyStatus::Verified,
        checked_cones: checked,
        witness: None,
    }
}

/// A small cospan on which the constructed pullback collapses the whole
/// backward part to a single class while a legal cone still distinguishes
/// two update outcomes: the designated stress instance for
/// [`verify_pullback_universal`]. Returns the cospan and that cone.
///
/// Both views are constant, `B` is a singleton, and the updates
/// `u(s_i, b) = t_i` are state-dependent, so the pushout identifies every
/// `t_i` with every `t_j'`. The cone picks state `s1` but updates through
/// both `t`-values, which no single class can track.
pub fn collapse_probe() -> (CospanDiagram, ConeDiagram) {
    let s = FinSet::new("S", ["s1", "s2"]).unwrap();
    let t = FinSet::new("T", ["t1", "t2"]).unwrap();
    let s_prime = FinSet::new("S'", ["s1'", "s2'"]).unwrap();
    let t_prime = FinSet::new("T'", ["t1'", "t2'"]).unwrap();
    let a = FinSet::new("A", ["a"]).unwrap();
    let b = FinSet::new("B", ["b"]).unwrap();
    let st = LensObject::new(s, t);
    let st_prime = LensObject::new(s_prime, t_prime);
    let ab = LensObject::new(a, b);
    let lam = Lens::from_parts(st.clone(), ab.clone(), |_| 0, |s, _| s);
    let lam_prime = Lens::from_parts(st_prime.clone(), ab, |_| 0, |s, _| s);
    let cospan = CospanDiagram::new(lam, lam_prime).expect("shared codomain");
    let p = FinSet::new("P", ["p"]).unwrap();
    let q = FinSet::new("Q", ["q1", "q2"]).unwrap();
    let pq = LensObject::new(p, q);
    let mu = Lens::from_parts(pq.clone(), st, |_| 0, |_, t| t);
    let mu_prime = Lens::from_parts(pq, st_prime, |_| 0, |_, t| t);
    let cone = ConeDiagram::new(mu, mu_prime, cospan.clone()).expect("cone condition holds");
    (cospan, cone)
}
