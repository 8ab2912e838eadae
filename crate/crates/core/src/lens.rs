//! Bimorphic lenses as data: identity, composition, the adaptor embedding,
//! hom-set enumeration and the put-get checker.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::format;
use core::fmt;

use crate::finset::{
    count_fns, enumerate_fns, product_set, terminal_set, FinFn, FinSet, FinSetError,
    FnEnumeration,
};

/// Errors raised by lens constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LensError {
    /// A view or update function does not have the required endpoints.
    BadShape { expected: String, found: String },
    /// Composition requires the inner lens's codomain to equal the outer
    /// lens's domain.
    EndpointMismatch { inner_dst: String, outer_src: String },
    /// Put-get is only stateable for monomorphic lenses (S = T and A = B).
    NotMonomorphic { src: String, dst: String },
    /// An underlying finite-set operation failed.
    Set(FinSetError),
}

impl fmt::Display for LensError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LensError::BadShape { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            LensError::EndpointMismatch { inner_dst, outer_src } => {
                write!(f, "cannot compose: inner lens ends at {inner_dst}, outer starts at {outer_src}")
            }
            LensError::NotMonomorphic { src, dst } => {
                write!(f, "put-get needs a monomorphic shape, got {src} -> {dst}")
            }
            LensError::Set(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for LensError {}

impl From<FinSetError> for LensError {
    fn from(e: FinSetError) -> Self {
        LensError::Set(e)
    }
}

/// An object `(S,T)` of the lens category: a forward (view-side) set and a
/// backward (update-side) set.
#[derive(Clone, PartialEq, Eq)]
pub struct LensObject {
    fwd: FinSet,
    bwd: FinSet,
}

impl LensObject {
    pub fn new(fwd: FinSet, bwd: FinSet) -> Self {
        LensObject { fwd, bwd }
    }

    /// The canonical apex object with `n` forward elements `p0..` and `m`
    /// backward elements `q0..`.
    pub fn canonical(n: usize, m: usize) -> Self {
        LensObject {
            fwd: FinSet::canonical("P", "p", n),
            bwd: FinSet::canonical("Q", "q", m),
        }
    }

    /// The unit object `(1,1)`.
    pub fn unit() -> Self {
        LensObject {
            fwd: terminal_set(),
            bwd: terminal_set(),
        }
    }

    pub fn fwd(&self) -> &FinSet {
        &self.fwd
    }

    pub fn bwd(&self) -> &FinSet {
        &self.bwd
    }
}

impl fmt::Debug for LensObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.fwd.name(), self.bwd.name())
    }
}

impl fmt::Display for LensObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.fwd.name(), self.bwd.name())
    }
}

/// A bimorphic lens `(S,T) -> (A,B)`: a view `S -> A` and an update
/// `S x B -> T` over the canonical product.
#[derive(Clone, PartialEq, Eq)]
pub struct Lens {
    src: LensObject,
    dst: LensObject,
    view: FinFn,
    update: FinFn,
}

impl Lens {
    pub fn new(
        src: LensObject,
        dst: LensObject,
        view: FinFn,
        update: FinFn,
    ) -> Result<Self, LensError> {
        if view.dom() != &src.fwd || view.cod() != &dst.fwd {
            return Err(LensError::BadShape {
                expected: format!("view {} -> {}", src.fwd.name(), dst.fwd.name()),
                found: format!("view {} -> {}", view.dom().name(), view.cod().name()),
            });
        }
        let update_dom = product_set(&src.fwd, &dst.bwd);
        if update.dom() != update_dom.set() || update.cod() != &src.bwd {
            return Err(LensError::BadShape {
                expected: format!("update {} -> {}", update_dom.set().name(), src.bwd.name()),
                found: format!("update {} -> {}", update.dom().name(), update.cod().name()),
            });
        }
        Ok(Lens {
            src,
            dst,
            view,
            update,
        })
    }

    /// Build from pointwise view and update evaluators (on indices).
    pub fn from_parts(
        src: LensObject,
        dst: LensObject,
        view: impl FnMut(usize) -> usize,
        mut update: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let view = FinFn::from_fn(src.fwd.clone(), dst.fwd.clone(), view);
        let update_dom = product_set(&src.fwd, &dst.bwd);
        let b_len = dst.bwd.len();
        let update = FinFn::from_fn(update_dom.set().clone(), src.bwd.clone(), |k| {
            update(k / b_len.max(1), k % b_len.max(1))
        });
        Lens {
            src,
            dst,
            view,
            update,
        }
    }

    pub fn src(&self) -> &LensObject {
        &self.src
    }

    pub fn dst(&self) -> &LensObject {
        &self.dst
    }

    pub fn view(&self) -> &FinFn {
        &self.view
    }

    pub fn update(&self) -> &FinFn {
        &self.update
    }

    pub fn view_idx(&self, s: usize) -> usize {
        self.view.table()[s]
    }

    /// `u(s, b)` on indices.
    pub fn update_idx(&self, s: usize, b: usize) -> usize {
        self.update.table()[s * self.dst.bwd.len() + b]
    }
}

impl fmt::Debug for Lens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Lens {:?} -> {:?} view={:?} update={:?}",
            self.src, self.dst, self.view, self.update
        )
    }
}

/// The identity lens on `(S,T)`: view `id_S`, update `pi2 : S x T -> T`.
pub fn lens_identity(x: &LensObject) -> Lens {
    Lens::from_parts(x.clone(), x.clone(), |s| s, |_, t| t)
}

/// Composition `mu . lam` for `lam : (S,T) -> (A,B)` and
/// `mu : (A,B) -> (P,Q)`; pointwise,
/// `u(s, q) = u_lam(s, u_mu(v_lam(s), q))`.
pub fn lens_compose(mu: &Lens, lam: &Lens) -> Result<Lens, LensError> {
    if lam.dst != mu.src {
        return Err(LensError::EndpointMismatch {
            inner_dst: format!("{}", lam.dst),
            outer_src: format!("{}", mu.src),
        });
    }
    Ok(Lens::from_parts(
        lam.src.clone(),
        mu.dst.clone(),
        |s| mu.view_idx(lam.view_idx(s)),
        |s, q| lam.update_idx(s, mu.update_idx(lam.view_idx(s), q)),
    ))
}

/// Allocation-free check that `lens_compose(outer, inner)` equals
/// `expected`, comparing endpoints and both tables pointwise.
pub fn composite_equals(outer: &Lens, inner: &Lens, expected: &Lens) -> bool {
    if inner.dst != outer.src || inner.src != expected.src || outer.dst != expected.dst {
        return false;
    }
    let q_len = outer.dst.bwd.len();
    for s in 0..inner.src.fwd.len() {
        let a = inner.view_idx(s);
        if outer.view_idx(a) != expected.view_idx(s) {
            return false;
        }
        for q in 0..q_len {
            let b = outer.update_idx(a, q);
            if inner.update_idx(s, b) != expected.update_idx(s, q) {
                return false;
            }
        }
    }
    true
}

/// Allocation-free check that two composites agree:
/// `lens_compose(outer1, inner1) == lens_compose(outer2, inner2)`.
pub fn composites_agree(outer1: &Lens, inner1: &Lens, outer2: &Lens, inner2: &Lens) -> bool {
    if inner1.dst != outer1.src
        || inner2.dst != outer2.src
        || inner1.src != inner2.src
        || outer1.dst != outer2.dst
    {
        return false;
    }
    let q_len = outer1.dst.bwd.len();
    for s in 0..inner1.src.fwd.len() {
        let a1 = inner1.view_idx(s);
        let a2 = inner2.view_idx(s);
        if outer1.view_idx(a1) != outer2.view_idx(a2) {
            return false;
        }
        for q in 0..q_len {
            let b1 = outer1.update_idx(a1, q);
            let b2 = outer2.update_idx(a2, q);
            if inner1.update_idx(s, b1) != inner2.update_idx(s, b2) {
                return false;
            }
        }
    }
    true
}

/// A morphism of `C x C^op`: a pair `(f : S -> A, g : B -> T)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Adaptor {
    pub f: FinFn,
    pub g: FinFn,
}

impl Adaptor {
    pub fn new(f: FinFn, g: FinFn) -> Self {
        Adaptor { f, g }
    }

    /// Source object `(S,T) = (f.dom, g.cod)`.
    pub fn src(&self) -> LensObject {
        LensObject::new(self.f.dom().clone(), self.g.cod().clone())
    }

    /// Target object `(A,B) = (f.cod, g.dom)`.
    pub fn dst(&self) -> LensObject {
        LensObject::new(self.f.cod().clone(), self.g.dom().clone())
    }
}

/// The identity-on-objects embedding of adaptors into lenses:
/// `(f, g)` becomes the lens with view `f` and update `g . pi2`.
pub fn adaptor_embed(a: &Adaptor) -> Lens {
    let g = a.g.clone();
    Lens::from_parts(a.src(), a.dst(), |s| a.f.table()[s], move |_, b| g.table()[b])
}

/// The lens on `(X x Y, X x Y) -> (X, X)` that focuses on the first
/// component of a pair: view `(x,y) = x`, update `((x,y), x') = (x',y)`.
pub fn first_projection_lens(x: &FinSet, y: &FinSet) -> Lens {
    let xy = product_set(x, y);
    let src = LensObject::new(xy.set().clone(), xy.set().clone());
    let dst = LensObject::new(x.clone(), x.clone());
    let y_len = y.len();
    Lens::from_parts(
        src,
        dst,
        |k| k / y_len,
        move |k, x_new| x_new * y_len + (k % y_len),
    )
}

/// Extensional lens equality: endpoints and both tables.
pub fn lens_equal(l1: &Lens, l2: &Lens) -> bool {
    l1 == l2
}

/// Number of lenses `(S,T) -> (A,B)`, i.e. `|A|^|S| * |T|^(|S|*|B|)`;
/// `None` on overflow.
pub fn hom_count(x: &LensObject, y: &LensObject) -> Option<u128> {
    let views = count_fns(x.fwd(), y.fwd())?;
    let update_dom = product_set(x.fwd(), y.bwd());
    let updates = count_fns(update_dom.set(), x.bwd())?;
    views.checked_mul(updates)
}

/// Iterator over all lenses `X -> Y` in lexicographic (view table, update
/// table) order.
pub struct HomEnumeration {
    src: LensObject,
    dst: LensObject,
    update_dom: FinSet,
    views: FnEnumeration,
    current_view: Option<FinFn>,
    updates: FnEnumeration,
}

pub fn enumerate_hom(x: &LensObject, y: &LensObject) -> HomEnumeration {
    let update_dom = product_set(x.fwd(), y.bwd()).set().clone();
    let mut views = enumerate_fns(x.fwd(), y.fwd());
    let current_view = views.next();
    let updates = enumerate_fns(&update_dom, x.bwd());
    HomEnumeration {
        src: x.clone(),
        dst: y.clone(),
        update_dom,
        views,
        current_view,
        updates,
    }
}

impl Iterator for HomEnumeration {
    type Item = Lens;

    fn next(&mut self) -> Option<Lens> {
        loop {
            let view = self.current_view.as_ref()?;
            if let Some(update) = self.updates.next() {
                return Some(
                    Lens::new(self.src.clone(), self.dst.clone(), view.clone(), update)
                        .expect("enumerated lens is well-shaped"),
                );
            }
            self.current_view = self.views.next();
            self.updates = enumerate_fns(&self.update_dom, self.src.bwd());
        }
    }
}

/// Outcome of the put-get check `v(u(s,b)) = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PutGetReport {
    pub holds: bool,
    /// A violating `(s, b)` pair of labels, when one exists.
    pub counterexample: Option<(String, String)>,
}

/// Check the put-get law for a monomorphic-shaped lens (`S = T`, `A = B`).
pub fn check_put_get(l: &Lens) -> Result<PutGetReport, LensError> {
    if l.src.fwd != l.src.bwd || l.dst.fwd != l.dst.bwd {
        return Err(LensError::NotMonomorphic {
            src: format!("{}", l.src),
            dst: format!("{}", l.dst),
        });
    }
    for s in 0..l.src.fwd.len() {
        for b in 0..l.dst.bwd.len() {
            let t = l.update_idx(s, b);
            if l.view_idx(t) != b {
                return Ok(PutGetReport {
                    holds: false,
                    counterexample: Some((
                        l.src.fwd.elem(s).to_owned(),
                        l.dst.bwd.elem(b).to_owned(),
                    )),
                });
            }
        }
    }
    Ok(PutGetReport {
        holds: true,
        counterexample: None,
    })
}


#[cfg(test)]
mod tests {
    use super::fixtures::{composition_pair, object};
    use super::*;
    use crate::finset::{enumerate_fns, fn_compose};

    #[test]
    fn identity_update_is_second_projection() {
        let x = object("S", "s", 1, "T", "t", 1);
        let id = lens_identity(&x);
        assert_eq!(id.update().apply("(s0,t0)").unwrap(), "t0");
    }

    #[test]
    fn identity_is_two_sided_unit() {
        let x = object("S", "s", 2, "T", "t", 2);
        let y = object("A", "a", 2, "B", "b", 2);
        for l in enumerate_hom(&x, &y) {
            assert_eq!(lens_compose(&lens_identity(&y), &l).unwrap(), l);
            assert_eq!(lens_compose(&l, &lens_identity(&x)).unwrap(), l);
        }
    }

    #[test]
    fn composition_matches_hand_evaluation() {
        let (mu, lam) = composition_pair();
        let composed = lens_compose(&mu, &lam).unwrap();
        assert_eq!(composed.view().apply("s").unwrap(), "p");
        assert_eq!(composed.update().apply("(s,q0)").unwrap(), "t0");
        assert_eq!(composed.update().apply("(s,q1)").unwrap(), "t1");
    }

    #[test]
    fn composition_endpoint_mismatch() {
        let (mu, _) = composition_pair();
        let err = lens_compose(&mu, &mu).unwrap_err();
        assert!(matches!(err, LensError::EndpointMismatch { .. }));
    }

    #[test]
    fn composition_associative_exhaustive() {
        // All composable triples over a fixed quadruple of small objects.
        let o0 = object("S", "s", 2, "T", "t", 1);
        let o1 = object("A", "a", 1, "B", "b", 2);
        let o2 = object("C", "c", 2, "D", "d", 1);
        let o3 = object("E", "e", 1, "F", "f", 2);
        for lam in enumerate_hom(&o0, &o1) {
            for mu in enumerate_hom(&o1, &o2) {
                let ml = lens_compose(&mu, &lam).unwrap();
                for nu in enumerate_hom(&o2, &o3) {
                    let nm = lens_compose(&nu, &mu).unwrap();
                    assert_eq!(
                        lens_compose(&nu, &ml).unwrap(),
                        lens_compose(&nm, &lam).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn composite_equals_agrees_with_composition() {
        let x = object("S", "s", 2, "T", "t", 2);
        let y = object("A", "a", 2, "B", "b", 2);
        let z = object("C", "c", 1, "D", "d", 2);
        let outers: Vec<Lens> = enumerate_hom(&y, &z).collect();
        let expecteds: Vec<Lens> = enumerate_hom(&x, &z).collect();
        for inner in enumerate_hom(&x, &y).step_by(7) {
            for outer in outers.iter().step_by(3) {
                let composed = lens_compose(outer, &inner).unwrap();
                for expected in expecteds.iter().step_by(5) {
                    assert_eq!(
                        composite_equals(outer, &inner, expected),
                        composed == *expected
                    );
                }
                assert!(composite_equals(outer, &inner, &composed));
                assert!(composites_agree(outer, &inner, outer, &inner));
                for (other_outer, other_inner) in
                    outers.iter().step_by(11).zip(enumerate_hom(&x, &y).step_by(13))
                {
                    let other = lens_compose(other_outer, &other_inner).unwrap();
                    assert_eq!(
                        composites_agree(outer, &inner, other_outer, &other_inner),
                        composed == other
                    );
                }
            }
        }
    }

    #[test]
    fn embed_preserves_identity() {
        let s = FinSet::canonical("S", "s", 2);
        let t = FinSet::canonical("T", "t", 2);
        let a = Adaptor::new(FinFn::identity(&s), FinFn::identity(&t));
        assert_eq!(
            adaptor_embed(&a),
            lens_identity(&LensObject::new(s, t))
        );
    }

    #[test]
    fn embed_is_functorial_exhaustively() {
        // embed(f2 . f1, g1 . g2) = embed(f2, g2) . embed(f1, g1).
        let s = FinSet::canonical("S", "s", 2);
        let a = FinSet::canonical("A", "a", 2);
        let p = FinSet::canonical("P", "p", 2);
        let t = FinSet::canonical("T", "t", 2);
        let b = FinSet::canonical("B", "b", 2);
        let q = FinSet::canonical("Q", "q", 2);
        for f1 in enumerate_fns(&s, &a) {
            for g1 in enumerate_fns(&b, &t) {
                let e1 = adaptor_embed(&Adaptor::new(f1.clone(), g1.clone()));
                for f2 in enumerate_fns(&a, &p) {
                    for g2 in enumerate_fns(&q, &b) {
                        let e2 = adaptor_embed(&Adaptor::new(f2.clone(), g2.clone()));
                        let composite = Adaptor::new(
                            fn_compose(&f2, &f1).unwrap(),
                            fn_compose(&g1, &g2).unwrap(),
                        );
                        assert_eq!(
                            adaptor_embed(&composite),
                            lens_compose(&e2, &e1).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn first_projection_lens_shape() {
        let x = FinSet::canonical("X", "x", 2);
        let y = FinSet::canonical("Y", "y", 2);
        let l = first_projection_lens(&x, &y);
        assert_eq!(l.view().apply("(x1,y0)").unwrap(), "x1");
        assert_eq!(l.update().apply("((x0,y1),x1)").unwrap(), "(x1,y1)");
    }

    #[test]
    fn lens_equality_distinguishes_tables() {
        let (_, lam) = composition_pair();
        let mut other = lam.clone();
        assert!(lens_equal(&lam, &other));
        // Flip one update entry.
        other = Lens::from_parts(
            lam.src().clone(),
            lam.dst().clone(),
            |s| lam.view_idx(s),
            |s, b| 1 - lam.update_idx(s, b),
        );
        assert!(!lens_equal(&lam, &other));
    }

    #[test]
    fn hom_count_matches_enumeration() {
        for (n, m, j, k) in [(2, 2, 2, 2), (1, 2, 2, 1), (2, 1, 1, 2), (0, 2, 2, 2)] {
            let x = object("S", "s", n, "T", "t", m);
            let y = object("A", "a", j, "B", "b", k);
            let count = enumerate_hom(&x, &y).count() as u128;
            assert_eq!(Some(count), hom_count(&x, &y));
        }
        let x = object("S", "s", 2, "T", "t", 2);
        assert_eq!(hom_count(&x, &x), Some(64));
    }

    #[test]
    fn hom_enumeration_has_no_duplicates() {
        let x = object("S", "s", 2, "T", "t", 2);
        let y = object("A", "a", 2, "B", "b", 1);
        let all: Vec<Lens> = enumerate_hom(&x, &y).collect();
        for (i, l1) in all.iter().enumerate() {
            for l2 in &all[i + 1..] {
                assert!(l1 != l2);
            }
        }
    }

    #[test]
    fn representability_counts() {
        let unit = LensObject::unit();
        for (n, m) in [(1, 1), (2, 2), (3, 2), (2, 3)] {
            let x = object("S", "s", n, "T", "t", m);
            assert_eq!(enumerate_hom(&unit, &x).count(), n);
            assert_eq!(
                enumerate_hom(&x, &unit).count() as u128,
                (m as u128).pow(n as u32)
            );
        }
    }

    #[test]
    fn put_get_on_first_projection_holds() {
        let x = FinSet::canonical("X", "x", 2);
        let y = FinSet::canonical("Y", "y", 2);
        let report = check_put_get(&first_projection_lens(&x, &y)).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn put_get_identity_holds() {
        let s = FinSet::canonical("S", "s", 2);
        let x = LensObject::new(s.clone(), s);
        assert!(check_put_get(&lens_identity(&x)).unwrap().holds);
    }

    #[test]
    fn put_get_constant_update_fails() {
        let s = FinSet::canonical("S", "s", 2);
        let x = LensObject::new(s.clone(), s);
        let constant = Lens::from_parts(x.clone(), x, |s| s, |_, _| 0);
        let report = check_put_get(&constant).unwrap();
        assert!(!report.holds);
        assert_eq!(report.counterexample, Some(("s0".into(), "s1".into())));
    }

    #[test]
    fn put_get_rejects_bimorphic_shape() {
        let (_, lam) = composition_pair();
        assert!(matches!(
            check_put_get(&lam),
            Err(LensError::NotMonomorphic { .. })
        ));
    }
}
