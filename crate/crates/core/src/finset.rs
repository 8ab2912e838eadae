//! Finite sets and total functions, with explicitly computed products,
//! coproducts, exponentials, pullbacks, pushouts and their universal
//! morphisms, plus exhaustive function enumeration.
//!
//! Everything is a table. A [`FinSet`] is a name plus an ordered list of
//! distinct element labels; a [`FinFn`] stores one codomain index per domain
//! element. Constructed sets use canonical labels — pairs `(x,y)`, tagged
//! sums `inl:x` / `inr:y`, quotient classes named by their order-least
//! representative — so that equal constructions are equal values and output
//! is deterministic.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

/// Errors raised by finite-set constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinSetError {
    /// A set was declared with a repeated element label.
    DuplicateElement { set: String, elem: String },
    /// A label does not belong to the set it was looked up in.
    UnknownElement { set: String, elem: String },
    /// A function table is missing an entry for a domain element.
    MissingEntry { dom: String, elem: String },
    /// A function table maps outside the declared codomain.
    ImageOutsideCodomain { cod: String, elem: String },
    /// `fn_compose(g, f)` requires `f.cod = g.dom`.
    ComposeMismatch { f_cod: String, g_dom: String },
    /// Pullbacks require a common codomain.
    CodomainMismatch { left: String, right: String },
    /// Pushouts require a common domain.
    DomainMismatch { left: String, right: String },
    /// A function does not have the endpoints an operation expects.
    EndpointMismatch { expected: String, found: String },
    /// A claimed cone does not commute; carries the offending element.
    NotACone { at: String },
    /// A claimed cocone does not commute; carries the offending element.
    NotACocone { witness: String },
}

impl fmt::Display for FinSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinSetError::DuplicateElement { set, elem } => {
                write!(f, "set {set:?} declares element {elem:?} more than once")
            }
            FinSetError::UnknownElement { set, elem } => {
                write!(f, "element {elem:?} is not in set {set:?}")
            }
            FinSetError::MissingEntry { dom, elem } => {
                write!(f, "table has no entry for element {elem:?} of domain {dom:?}")
            }
            FinSetError::ImageOutsideCodomain { cod, elem } => {
                write!(f, "table image {elem:?} is not in codomain {cod:?}")
            }
            FinSetError::ComposeMismatch { f_cod, g_dom } => {
                write!(f, "cannot compose: inner codomain {f_cod} != outer domain {g_dom}")
            }
            FinSetError::CodomainMismatch { left, right } => {
                write!(f, "pullback needs a common codomain, got {left} and {right}")
            }
            FinSetError::DomainMismatch { left, right } => {
                write!(f, "pushout needs a common domain, got {left} and {right}")
            }
            FinSetError::EndpointMismatch { expected, found } => {
                write!(f, "expected a function {expected}, found {found}")
            }
            FinSetError::NotACone { at } => {
                write!(f, "cone condition fails at element {at:?}")
            }
            FinSetError::NotACocone { witness } => {
                write!(f, "cocone condition fails at element {witness:?}")
            }
        }
    }
}

impl core::error::Error for FinSetError {}

#[derive(PartialEq, Eq)]
struct SetData {
    name: String,
    elems: Vec<String>,
}

/// A named finite set with an ordered list of distinct element labels.
///
/// Element order is canonical (order of declaration) and significant:
/// serialization preserves it and every constructed set orders its elements
/// deterministically. Equality is by name and element list; the shared
/// allocation only makes clones cheap.
#[derive(Clone)]
pub struct FinSet {
    data: Arc<SetData>,
}

impl FinSet {
    pub fn new<N, I, E>(name: N, elems: I) -> Result<Self, FinSetError>
    where
        N: Into<String>,
        I: IntoIterator<Item = E>,
        E: Into<String>,
    {
        let name = name.into();
        let elems: Vec<String> = elems.into_iter().map(Into::into).collect();
        for (i, e) in elems.iter().enumerate() {
            if elems[..i].iter().any(|d| d == e) {
                return Err(FinSetError::DuplicateElement {
                    set: name,
                    elem: e.clone(),
                });
            }
        }
        Ok(FinSet {
            data: Arc::new(SetData { name, elems }),
        })
    }

    /// The n-element set `{prefix}0 .. {prefix}{n-1}`.
    pub fn canonical(name: impl Into<String>, prefix: &str, n: usize) -> Self {
        FinSet::new(name, (0..n).map(|i| format!("{prefix}{i}")))
            .expect("canonical labels are distinct")
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn elems(&self) -> &[String] {
        &self.data.elems
    }

    pub fn len(&self) -> usize {
        self.data.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &str {
        &self.data.elems[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.data.elems.iter().position(|e| e == label)
    }

    fn require(&self, label: &str) -> Result<usize, FinSetError> {
        self.index_of(label).ok_or_else(|| FinSetError::UnknownElement {
            set: self.name().to_owned(),
            elem: label.to_owned(),
        })
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {{{}}}", self.name(), self.elems().join(", "))
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A total function between finite sets, stored as one codomain index per
/// domain element (in domain order).
#[derive(Clone, PartialEq, Eq)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinFn {
    /// Build from indices into the codomain, one per domain element.
    pub fn from_indices(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self, FinSetError> {
        if table.len() != dom.len() {
            let missing = dom.elems().get(table.len()).map(|s| s.as_str()).unwrap_or("?");
            return Err(FinSetError::MissingEntry {
                dom: dom.name().to_owned(),
                elem: missing.to_owned(),
            });
        }
        for &i in &table {
            if i >= cod.len() {
                return Err(FinSetError::ImageOutsideCodomain {
                    cod: cod.name().to_owned(),
                    elem: format!("#{i}"),
                });
            }
        }
        Ok(FinFn { dom, cod, table })
    }

    /// Build from a label-to-label table; it must be total on the domain and
    /// land inside the codomain. Extra keys are rejected.
    pub fn from_table(
        dom: FinSet,
        cod: FinSet,
        table: &BTreeMap<String, String>,
    ) -> Result<Self, FinSetError> {
        let mut idx = Vec::with_capacity(dom.len());
        for e in dom.elems() {
            let image = table.get(e).ok_or_else(|| FinSetError::MissingEntry {
                dom: dom.name().to_owned(),
                elem: e.clone(),
            })?;
            let i = cod.index_of(image).ok_or_else(|| FinSetError::ImageOutsideCodomain {
                cod: cod.name().to_owned(),
                elem: image.clone(),
            })?;
            idx.push(i);
        }
        if table.len() != dom.len() {
            for k in table.keys() {
                if dom.index_of(k).is_none() {
                    return Err(FinSetError::UnknownElement {
                        set: dom.name().to_owned(),
                        elem: k.clone(),
                    });
                }
            }
        }
        FinFn::from_indices(dom, cod, idx)
    }

    /// Build by evaluating `f` on every domain index. Panics if `f` maps
    /// outside the codomain; meant for internal constructions that are
    /// correct by shape.
    pub fn from_fn(dom: FinSet, cod: FinSet, mut f: impl FnMut(usize) -> usize) -> Self {
        let table: Vec<usize> = (0..dom.len()).map(&mut f).collect();
        FinFn::from_indices(dom, cod, table).expect("image in range")
    }

    pub fn identity(x: &FinSet) -> Self {
        FinFn::from_fn(x.clone(), x.clone(), |i| i)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.table[i]
    }

    /// Apply to a label; errors if the label is not in the domain.
    pub fn apply(&self, label: &str) -> Result<&str, FinSetError> {
        let i = self.dom.require(label)?;
        Ok(self.cod.elem(self.table[i]))
    }

    pub fn is_bijection(&self) -> bool {
        if self.dom.len() != self.cod.len() {
            return false;
        }
        let mut seen = vec![false; self.cod.len()];
        for &i in &self.table {
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// The inverse of a bijection.
    pub fn inverse(&self) -> Option<FinFn> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0usize; self.dom.len()];
        for (i, &j) in self.table.iter().enumerate() {
            inv[j] = i;
        }
        Some(FinFn::from_indices(self.cod.clone(), self.dom.clone(), inv).expect("bijection"))
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.dom.name(), self.cod.name())?;
        for (i, &j) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} |-> {}", self.dom.elem(i), self.cod.elem(j))?;
        }
        f.write_str("]")
    }
}

/// Composition `g . f` (apply `f` first). Requires `f.cod = g.dom`.
pub fn fn_compose(g: &FinFn, f: &FinFn) -> Result<FinFn, FinSetError> {
    if f.cod != g.dom {
        return Err(FinSetError::ComposeMismatch {
            f_cod: f.cod.name().to_owned(),
            g_dom: g.dom.name().to_owned(),
        });
    }
    Ok(FinFn::from_fn(f.dom.clone(), g.cod.clone(), |i| {
        g.table[f.table[i]]
    }))
}

fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// The binary product `X x Y` with canonical pair labels `(x,y)`, ordered
/// with the first factor most significant.
pub struct ProductSet {
    set: FinSet,
    left: FinSet,
    right: FinSet,
}

pub fn product_set(x: &FinSet, y: &FinSet) -> ProductSet {
    let mut labels = Vec::with_capacity(x.len() * y.len());
    for a in x.elems() {
        for b in y.elems() {
            labels.push(pair_label(a, b));
        }
    }
    let set = FinSet::new(format!("({}*{})", x.name(), y.name()), labels)
        .expect("pair labels of distinct labels are distinct");
    ProductSet {
        set,
        left: x.clone(),
        right: y.clone(),
    }
}

impl ProductSet {
    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn left(&self) -> &FinSet {
        &self.left
    }

    pub fn right(&self) -> &FinSet {
        &self.right
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.right.len() + j
    }

    pub fn split_index(&self, k: usize) -> (usize, usize) {
        (k / self.right.len(), k % self.right.len())
    }

    pub fn proj1(&self) -> FinFn {
        FinFn::from_fn(self.set.clone(), self.left.clone(), |k| self.split_index(k).0)
    }

    pub fn proj2(&self) -> FinFn {
        FinFn::from_fn(self.set.clone(), self.right.clone(), |k| self.split_index(k).1)
    }

    /// The unique `<f,g> : Z -> X x Y` with `proj1 . <f,g> = f` and
    /// `proj2 . <f,g> = g`.
    pub fn pairing(&self, f: &FinFn, g: &FinFn) -> Result<FinFn, FinSetError> {
        if f.dom != g.dom {
            return Err(FinSetError::DomainMismatch {
                left: f.dom.name().to_owned(),
                right: g.dom.name().to_owned(),
            });
        }
        if f.cod != self.left {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("_ -> {}", self.left.name()),
                found: format!("_ -> {}", f.cod.name()),
            });
        }
        if g.cod != self.right {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("_ -> {}", self.right.name()),
                found: format!("_ -> {}", g.cod.name()),
            });
        }
        Ok(FinFn::from_fn(f.dom.clone(), self.set.clone(), |z| {
            self.pair_index(f.table[z], g.table[z])
        }))
    }
}

/// The diagonal `X -> X x X`, i.e. `pairing(id, id)`.
pub fn diagonal(x: &FinSet) -> FinFn {
    let p = product_set(x, x);
    let id = FinFn::identity(x);
    p.pairing(&id, &id).expect("identity legs always pair")
}

/// The binary coproduct `X + Y` with labels `inl:x` then `inr:y`.
pub struct CoproductSet {
    set: FinSet,
    left: FinSet,
    right: FinSet,
}

pub fn coproduct_set(x: &FinSet, y: &FinSet) -> CoproductSet {
    let mut labels = Vec::with_capacity(x.len() + y.len());
    for a in x.elems() {
        labels.push(format!("inl:{a}"));
    }
    for b in y.elems() {
        labels.push(format!("inr:{b}"));
    }
    let set = FinSet::new(format!("({}+{})", x.name(), y.name()), labels)
        .expect("tagged labels are distinct");
    CoproductSet {
        set,
        left: x.clone(),
        right: y.clone(),
    }
}

impl CoproductSet {
    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn inj1(&self) -> FinFn {
        FinFn::from_fn(self.left.clone(), self.set.clone(), |i| i)
    }

    pub fn inj2(&self) -> FinFn {
        let offset = self.left.len();
        FinFn::from_fn(self.right.clone(), self.set.clone(), |i| offset + i)
    }

    /// Which summand a coproduct index came from, with the index inside it.
    pub fn side_of(&self, k: usize) -> (bool, usize) {
        if k < self.left.len() {
            (true, k)
        } else {
            (false, k - self.left.len())
        }
    }

    /// The unique `[f,g] : X + Y -> Z` with `[f,g] . inl = f`,
    /// `[f,g] . inr = g`.
    pub fn copairing(&self, f: &FinFn, g: &FinFn) -> Result<FinFn, FinSetError> {
        if f.cod != g.cod {
            return Err(FinSetError::CodomainMismatch {
                left: f.cod.name().to_owned(),
                right: g.cod.name().to_owned(),
            });
        }
        if f.dom != self.left {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("{} -> _", self.left.name()),
                found: format!("{} -> _", f.dom.name()),
            });
        }
        if g.dom != self.right {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("{} -> _", self.right.name()),
                found: format!("{} -> _", g.dom.name()),
            });
        }
        Ok(FinFn::from_fn(self.set.clone(), f.cod.clone(), |k| {
            match self.side_of(k) {
                (true, i) => f.table[i],
                (false, j) => g.table[j],
            }
        }))
    }
}

/// The exponential `X -> Y`: one element per total function table, in
/// lexicographic table order (first domain element most significant).
/// Element labels list images in domain order, e.g. `[y0,y1]`.
pub struct Exponential {
    set: FinSet,
    base: FinSet,
    target: FinSet,
}

pub fn exponential_set(x: &FinSet, y: &FinSet) -> Exponential {
    let count = count_fns(x, y).expect("exponential too large to enumerate") as usize;
    let mut labels = Vec::with_capacity(count);
    for f in enumerate_fns(x, y) {
        let images: Vec<&str> = f.table.iter().map(|&i| y.elem(i)).collect();
        labels.push(format!("[{}]", images.join(",")));
    }
    let set = FinSet::new(format!("({}->{})", x.name(), y.name()), labels)
        .expect("distinct tables give distinct labels");
    Exponential {
        set,
        base: x.clone(),
        target: y.clone(),
    }
}

impl Exponential {
    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    /// The function table encoded by element `idx`.
    pub fn decode(&self, idx: usize) -> FinFn {
        let n = self.base.len();
        let m = self.target.len();
        let mut table = vec![0usize; n];
        if m > 0 {
            let mut rest = idx;
            for pos in (0..n).rev() {
                table[pos] = rest % m;
                rest /= m;
            }
        } else {
            debug_assert_eq!(n, 0);
        }
        FinFn::from_indices(self.base.clone(), self.target.clone(), table)
            .expect("decoded table in range")
    }

    /// The element index encoding the table of `f : X -> Y`.
    pub fn encode(&self, f: &FinFn) -> Result<usize, FinSetError> {
        if f.dom != self.base || f.cod != self.target {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("{} -> {}", self.base.name(), self.target.name()),
                found: format!("{} -> {}", f.dom.name(), f.cod.name()),
            });
        }
        let m = self.target.len();
        let mut idx = 0usize;
        for &i in &f.table {
            idx = idx * m + i;
        }
        Ok(idx)
    }

    /// Evaluation `(X -> Y) x X -> Y`.
    pub fn ev(&self) -> FinFn {
        let dom = product_set(&self.set, &self.base);
        FinFn::from_fn(dom.set().clone(), self.target.clone(), |k| {
            let (fi, xi) = dom.split_index(k);
            self.decode(fi).table[xi]
        })
    }

    /// Curry `h : Z x X -> Y` (over the canonical product) into
    /// `Z -> (X -> Y)`.
    pub fn curry(&self, h: &FinFn, z: &FinSet) -> Result<FinFn, FinSetError> {
        let zx = product_set(z, &self.base);
        if h.dom != *zx.set() || h.cod != self.target {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("{} -> {}", zx.set().name(), self.target.name()),
                found: format!("{} -> {}", h.dom.name(), h.cod.name()),
            });
        }
        let m = self.target.len();
        Ok(FinFn::from_fn(z.clone(), self.set.clone(), |zi| {
            let mut idx = 0usize;
            for xi in 0..self.base.len() {
                idx = idx * m + h.table[zx.pair_index(zi, xi)];
            }
            idx
        }))
    }

    /// Uncurry `g : Z -> (X -> Y)` into `Z x X -> Y`.
    pub fn uncurry(&self, g: &FinFn) -> Result<FinFn, FinSetError> {
        if g.cod != self.set {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("_ -> {}", self.set.name()),
                found: format!("_ -> {}", g.cod.name()),
            });
        }
        let zx = product_set(&g.dom, &self.base);
        let tables: Vec<FinFn> = g.table.iter().map(|&fi| self.decode(fi)).collect();
        Ok(FinFn::from_fn(zx.set().clone(), self.target.clone(), |k| {
            let (zi, xi) = zx.split_index(k);
            tables[zi].table[xi]
        }))
    }
}

/// The pullback `W = {(x,y) | f(x) = g(y)}` of `X -f-> Z <-g- Y`, as a
/// sub-selection of the product labels in product order.
pub struct Pullback {
    set: FinSet,
    f: FinFn,
    g: FinFn,
    pairs: Vec<(usize, usize)>,
}

pub fn pullback_set(f: &FinFn, g: &FinFn) -> Result<Pullback, FinSetError> {
    if f.cod != g.cod {
        return Err(FinSetError::CodomainMismatch {
            left: f.cod.name().to_owned(),
            right: g.cod.name().to_owned(),
        });
    }
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    for (i, a) in f.dom.elems().iter().enumerate() {
        for (j, b) in g.dom.elems().iter().enumerate() {
            if f.table[i] == g.table[j] {
                pairs.push((i, j));
                labels.push(pair_label(a, b));
            }
        }
    }
    let set = FinSet::new(format!("pb({},{})", f.dom.name(), g.dom.name()), labels)
        .expect("subset of distinct pair labels");
    Ok(Pullback {
        set,
        f: f.clone(),
        g: g.clone(),
        pairs,
    })
}

impl Pullback {
    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn proj1(&self) -> FinFn {
        FinFn::from_fn(self.set.clone(), self.f.dom.clone(), |k| self.pairs[k].0)
    }

    pub fn proj2(&self) -> FinFn {
        FinFn::from_fn(self.set.clone(), self.g.dom.clone(), |k| self.pairs[k].1)
    }

    fn index_of_pair(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }

    /// The unique `u : Q -> W` with `proj1 . u = h1` and `proj2 . u = h2`,
    /// for a cone `(h1 : Q -> X, h2 : Q -> Y)` with `f . h1 = g . h2`.
    pub fn mediator(&self, h1: &FinFn, h2: &FinFn) -> Result<FinFn, FinSetError> {
        if h1.dom != h2.dom {
            return Err(FinSetError::DomainMismatch {
                left: h1.dom.name().to_owned(),
                right: h2.dom.name().to_owned(),
            });
        }
        if h1.cod != self.f.dom || h2.cod != self.g.dom {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("_ -> {} and _ -> {}", self.f.dom.name(), self.g.dom.name()),
                found: format!("_ -> {} and _ -> {}", h1.cod.name(), h2.cod.name()),
            });
        }
        let mut table = Vec::with_capacity(h1.dom.len());
        for q in 0..h1.dom.len() {
            if self.f.table[h1.table[q]] != self.g.table[h2.table[q]] {
                return Err(FinSetError::NotACone {
                    at: h1.dom.elem(q).to_owned(),
                });
            }
            let w = self
                .index_of_pair(h1.table[q], h2.table[q])
                .expect("matching pair is in the pullback");
            table.push(w);
        }
        FinFn::from_indices(h1.dom.clone(), self.set.clone(), table)
    }
}

/// The partition computed for a pushout quotient.
#[derive(Clone)]
pub struct QuotientResult {
    /// Equivalence classes of the coproduct's elements; each class lists its
    /// member labels in coproduct order, and classes are ordered by their
    /// representative (the order-least member).
    pub classes: Vec<Vec<String>>,
    /// The canonical surjection from the coproduct onto the representatives.
    pub canonical_map: FinFn,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    // Keep the smaller index as root so representatives are order-least.
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }
}

/// The pushout `P = (X + Y) / ~` of `X <-f- Z -g-> Y`, where `~` is
/// generated by `f(z) ~ g(z)`. Classes are named by their order-least
/// coproduct label.
pub struct Pushout {
    set: FinSet,
    coproduct: CoproductSet,
    f: FinFn,
    g: FinFn,
    quotient: QuotientResult,
}

pub fn pushout_set(f: &FinFn, g: &FinFn) -> Result<Pushout, FinSetError> {
    if f.dom != g.dom {
        return Err(FinSetError::DomainMismatch {
            left: f.dom.name().to_owned(),
            right: g.dom.name().to_owned(),
        });
    }
    let coproduct = coproduct_set(&f.cod, &g.cod);
    let n = coproduct.set().len();
    let offset = f.cod.len();
    let mut uf = UnionFind::new(n);
    for z in 0..f.dom.len() {
        uf.union(f.table[z], offset + g.table[z]);
    }
    let roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![0usize; n];
    for i in 0..n {
        if roots[i] == i {
            class_of[i] = reps.len();
            reps.push(i);
        }
    }
    for i in 0..n {
        class_of[i] = class_of[roots[i]];
    }
    let mut classes: Vec<Vec<String>> = vec![Vec::new(); reps.len()];
    for i in 0..n {
        classes[class_of[i]].push(coproduct.set().elem(i).to_owned());
    }
    let set = FinSet::new(
        format!("po({},{})", f.cod.name(), g.cod.name()),
        reps.iter().map(|&r| coproduct.set().elem(r).to_owned()),
    )
    .expect("representatives are distinct labels");
    let canonical_map =
        FinFn::from_indices(coproduct.set().clone(), set.clone(), class_of).expect("in range");
    Ok(Pushout {
        set,
        coproduct,
        f: f.clone(),
        g: g.clone(),
        quotient: QuotientResult {
            classes,
            canonical_map,
        },
    })
}

impl Pushout {
    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn quotient(&self) -> &QuotientResult {
        &self.quotient
    }

    /// `j1 = quotient . inl : X -> P`.
    pub fn inj1(&self) -> FinFn {
        fn_compose(&self.quotient.canonical_map, &self.coproduct.inj1()).expect("composable")
    }

    /// `j2 = quotient . inr : Y -> P`.
    pub fn inj2(&self) -> FinFn {
        fn_compose(&self.quotient.canonical_map, &self.coproduct.inj2()).expect("composable")
    }

    /// Class index of `inl:x` for a left index `x`.
    pub fn class_of_left(&self, x: usize) -> usize {
        self.quotient.canonical_map.table[x]
    }

    /// Class index of `inr:y` for a right index `y`.
    pub fn class_of_right(&self, y: usize) -> usize {
        self.quotient.canonical_map.table[self.f.cod.len() + y]
    }

    /// Which summand and member index the representative of class `c` names.
    pub fn representative(&self, c: usize) -> (bool, usize) {
        let label = self.set.elem(c);
        let k = self
            .coproduct
            .set()
            .index_of(label)
            .expect("representative is a coproduct label");
        self.coproduct.side_of(k)
    }

    /// The unique `m : P -> Q` with `m . j1 = k1` and `m . j2 = k2`, for a
    /// cocone `(k1 : X -> Q, k2 : Y -> Q)` with `k1 . f = k2 . g`. Fails
    /// with the witnessing `z` when the cocone does not commute.
    pub fn mediator(&self, k1: &FinFn, k2: &FinFn) -> Result<FinFn, FinSetError> {
        if k1.cod != k2.cod {
            return Err(FinSetError::CodomainMismatch {
                left: k1.cod.name().to_owned(),
                right: k2.cod.name().to_owned(),
            });
        }
        if k1.dom != self.f.cod || k2.dom != self.g.cod {
            return Err(FinSetError::EndpointMismatch {
                expected: format!("{} -> _ and {} -> _", self.f.cod.name(), self.g.cod.name()),
                found: format!("{} -> _ and {} -> _", k1.dom.name(), k2.dom.name()),
            });
        }
        for z in 0..self.f.dom.len() {
            if k1.table[self.f.table[z]] != k2.table[self.g.table[z]] {
                return Err(FinSetError::NotACocone {
                    witness: self.f.dom.elem(z).to_owned(),
                });
            }
        }
        // The cocone agrees on every generated identification, so the value
        // at the representative determines the class.
        let table: Vec<usize> = (0..self.set.len())
            .map(|c| match self.representative(c) {
                (true, x) => k1.table[x],
                (false, y) => k2.table[y],
            })
            .collect();
        FinFn::from_indices(self.set.clone(), k1.cod.clone(), table)
    }
}

/// Number of total functions `X -> Y`, i.e. `|Y| ^ |X|`; `None` on overflow.
pub fn count_fns(x: &FinSet, y: &FinSet) -> Option<u128> {
    let mut n: u128 = 1;
    for _ in 0..x.len() {
        n = n.checked_mul(y.len() as u128)?;
    }
    Some(n)
}

/// Iterator over all total functions `X -> Y` in lexicographic table order
/// (first domain element most significant).
pub struct FnEnumeration {
    dom: FinSet,
    cod: FinSet,
    next_table: Option<Vec<usize>>,
}

pub fn enumerate_fns(x: &FinSet, y: &FinSet) -> FnEnumeration {
    let next_table = if x.len() > 0 && y.is_empty() {
        None
    } else {
        Some(vec![0usize; x.len()])
    };
    FnEnumeration {
        dom: x.clone(),
        cod: y.clone(),
        next_table,
    }
}

impl Iterator for FnEnumeration {
    type Item = FinFn;

    fn next(&mut self) -> Option<FinFn> {
        let table = self.next_table.take()?;
        let out = FinFn::from_indices(self.dom.clone(), self.cod.clone(), table.clone())
            .expect("enumerated table in range");
        // Increment as a base-|Y| counter, last position fastest.
        let mut table = table;
        let m = self.cod.len();
        let mut pos = table.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            table[pos] += 1;
            if table[pos] < m {
                self.next_table = Some(table);
                break;
            }
            table[pos] = 0;
        }
        Some(out)
    }
}

/// The n-ary product with flat tuple labels `(x1,...,xn)`; returns the set
/// and the projections. The nullary product is the terminal set `1 = {()}`
/// and the unary product is the set itself.
pub fn product_many(sets: &[FinSet]) -> (FinSet, Vec<FinFn>) {
    match sets {
        [] => (terminal_set(), Vec::new()),
        [x] => (x.clone(), vec![FinFn::identity(x)]),
        _ => {
            let total: usize = sets.iter().map(FinSet::len).product();
            let mut labels = Vec::with_capacity(total);
            let mut idx = vec![0usize; sets.len()];
            if total > 0 {
                loop {
                    let parts: Vec<&str> =
                        idx.iter().zip(sets).map(|(&i, s)| s.elem(i)).collect();
                    labels.push(format!("({})", parts.join(",")));
                    // Row-major increment, last factor fastest.
                    let mut pos = sets.len();
                    loop {
                        if pos == 0 {
                            idx.clear();
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < sets[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                    if idx.is_empty() {
                        break;
                    }
                }
            }
            let name = format!(
                "({})",
                sets.iter().map(FinSet::name).collect::<Vec<_>>().join("*")
            );
            let set = FinSet::new(name, labels).expect("tuple labels distinct");
            let mut strides = vec![1usize; sets.len()];
            for i in (0..sets.len().saturating_sub(1)).rev() {
                strides[i] = strides[i + 1] * sets[i + 1].len();
            }
            let projections = (0..sets.len())
                .map(|i| {
                    let stride = strides[i];
                    let size = sets[i].len();
                    FinFn::from_fn(set.clone(), sets[i].clone(), move |k| (k / stride) % size)
                })
                .collect();
            (set, projections)
        }
    }
}

/// The n-ary coproduct with injections. Binary uses the canonical `inl:` /
/// `inr:` labels; other arities tag with `in{i}:`. The nullary coproduct is
/// the initial (empty) set `0`.
pub fn coproduct_many(sets: &[FinSet]) -> (FinSet, Vec<FinFn>) {
    match sets {
        [] => (initial_set(), Vec::new()),
        [x] => (x.clone(), vec![FinFn::identity(x)]),
        [x, y] => {
            let c = coproduct_set(x, y);
            (c.set().clone(), vec![c.inj1(), c.inj2()])
        }
        _ => {
            let mut labels = Vec::new();
            for (i, s) in sets.iter().enumerate() {
                for e in s.elems() {
                    labels.push(format!("in{i}:{e}"));
                }
            }
            let name = format!(
                "({})",
                sets.iter().map(FinSet::name).collect::<Vec<_>>().join("+")
            );
            let set = FinSet::new(name, labels).expect("tagged labels distinct");
            let mut offset = 0usize;
            let mut injections = Vec::with_capacity(sets.len());
            for s in sets {
                let base = offset;
                injections.push(FinFn::from_fn(s.clone(), set.clone(), move |i| base + i));
                offset += s.len();
            }
            (set, injections)
        }
    }
}

/// The canonical one-element set `1 = {()}`.
pub fn terminal_set() -> FinSet {
    FinSet::new("1", ["()"]).expect("singleton")
}

/// The canonical empty set `0`.
pub fn initial_set() -> FinSet {
    FinSet::new("0", Vec::<String>::new()).expect("empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, elems: &[&str]) -> FinSet {
        FinSet::new(name, elems.iter().copied()).unwrap()
    }

    fn fun(dom: &FinSet, cod: &FinSet, pairs: &[(&str, &str)]) -> FinFn {
        let table: BTreeMap<String, String> = pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        FinFn::from_table(dom.clone(), cod.clone(), &table).unwrap()
    }

    #[test]
    fn duplicate_elements_rejected() {
        let err = FinSet::new("S", ["a", "a"]).unwrap_err();
        assert!(matches!(err, FinSetError::DuplicateElement { .. }));
    }

    #[test]
    fn compose_identity_laws() {
        let s = set("S", &["x0", "x1"]);
        let a = set("A", &["a0", "a1"]);
        for f in enumerate_fns(&s, &a) {
            assert_eq!(fn_compose(&FinFn::identity(&a), &f).unwrap(), f);
            assert_eq!(fn_compose(&f, &FinFn::identity(&s)).unwrap(), f);
        }
    }

    #[test]
    fn compose_tables() {
        // f constant, then g sending a |-> 0: both x0, x1 land on 0.
        let x = set("X", &["x0", "x1"]);
        let a = set("A", &["a"]);
        let two = set("Z2", &["0", "1"]);
        let f = fun(&x, &a, &[("x0", "a"), ("x1", "a")]);
        let g = fun(&a, &two, &[("a", "0")]);
        let gf = fn_compose(&g, &f).unwrap();
        assert_eq!(gf.apply("x0").unwrap(), "0");
        assert_eq!(gf.apply("x1").unwrap(), "0");
    }

    #[test]
    fn compose_mismatch_rejected() {
        let x = set("X", &["x"]);
        let y = set("Y", &["y"]);
        let f = fun(&x, &y, &[("x", "y")]);
        let err = fn_compose(&f, &f).unwrap_err();
        assert!(matches!(err, FinSetError::ComposeMismatch { .. }));
    }

    #[test]
    fn compose_associative_exhaustive_small() {
        let s = set("S", &["s0", "s1"]);
        let a = set("A", &["a0", "a1"]);
        let b = set("B", &["b0", "b1"]);
        let c = set("C", &["c0", "c1"]);
        for f in enumerate_fns(&s, &a) {
            for g in enumerate_fns(&a, &b) {
                for h in enumerate_fns(&b, &c) {
                    let left = fn_compose(&h, &fn_compose(&g, &f).unwrap()).unwrap();
                    let right = fn_compose(&fn_compose(&h, &g).unwrap(), &f).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn product_labels_and_projections() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0"]);
        let p = product_set(&x, &y);
        assert_eq!(p.set().elems(), ["(x0,y0)", "(x1,y0)"]);
        assert_eq!(p.proj1().apply("(x1,y0)").unwrap(), "x1");
    }

    #[test]
    fn product_with_empty_factor_is_empty() {
        let x = set("X", &[]);
        let y = set("Y", &["y0", "y1"]);
        assert!(product_set(&x, &y).set().is_empty());
    }

    #[test]
    fn pairing_satisfied_exhaustively() {
        // |X|=2, |Y|=3: all pairings from a 2-element apex.
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1", "y2"]);
        let z = set("Z", &["z0", "z1"]);
        let p = product_set(&x, &y);
        assert_eq!(p.set().len(), 6);
        for f in enumerate_fns(&z, &x) {
            for g in enumerate_fns(&z, &y) {
                let pair = p.pairing(&f, &g).unwrap();
                assert_eq!(fn_compose(&p.proj1(), &pair).unwrap(), f);
                assert_eq!(fn_compose(&p.proj2(), &pair).unwrap(), g);
            }
        }
    }

    #[test]
    fn coproduct_labels() {
        let x = set("X", &["t"]);
        let y = set("Y", &["u"]);
        let c = coproduct_set(&x, &y);
        assert_eq!(c.set().elems(), ["inl:t", "inr:u"]);
    }

    #[test]
    fn coproduct_with_empty_summand() {
        let x = set("X", &["t1", "t2"]);
        let y = set("Y", &[]);
        let c = coproduct_set(&x, &y);
        assert_eq!(c.set().len(), x.len());
        assert!(c.inj1().is_bijection());
    }

    #[test]
    fn copairing_satisfied_exhaustively() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1"]);
        let z = set("Z", &["z0", "z1"]);
        let c = coproduct_set(&x, &y);
        for f in enumerate_fns(&x, &z) {
            for g in enumerate_fns(&y, &z) {
                let m = c.copairing(&f, &g).unwrap();
                assert_eq!(fn_compose(&m, &c.inj1()).unwrap(), f);
                assert_eq!(fn_compose(&m, &c.inj2()).unwrap(), g);
            }
        }
    }

    #[test]
    fn exponential_counts() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1"]);
        assert_eq!(exponential_set(&x, &y).set().len(), 4);
        let empty = set("E", &[]);
        assert_eq!(exponential_set(&empty, &y).set().len(), 1);
        assert_eq!(exponential_set(&empty, &y).set().elems(), ["[]"]);
        assert_eq!(exponential_set(&x, &empty).set().len(), 0);
    }

    #[test]
    fn exponential_encode_decode_roundtrip() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1", "y2"]);
        let e = exponential_set(&x, &y);
        for (i, f) in enumerate_fns(&x, &y).enumerate() {
            assert_eq!(e.encode(&f).unwrap(), i);
            assert_eq!(e.decode(i), f);
        }
    }

    #[test]
    fn eval_agrees_with_decode() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1"]);
        let e = exponential_set(&x, &y);
        let ev = e.ev();
        for fi in 0..e.set().len() {
            let f = e.decode(fi);
            for xi in 0..x.len() {
                let label = format!("({},{})", e.set().elem(fi), x.elem(xi));
                assert_eq!(ev.apply(&label).unwrap(), y.elem(f.apply_idx(xi)));
            }
        }
    }

    #[test]
    fn curry_uncurry_mutually_inverse() {
        let z = set("Z", &["z0", "z1"]);
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1"]);
        let e = exponential_set(&x, &y);
        let zx = product_set(&z, &x);
        for h in enumerate_fns(zx.set(), &y) {
            let c = e.curry(&h, &z).unwrap();
            assert_eq!(e.uncurry(&c).unwrap(), h);
        }
        for g in enumerate_fns(&z, e.set()) {
            let u = e.uncurry(&g).unwrap();
            assert_eq!(e.curry(&u, &z).unwrap(), g);
        }
    }

    #[test]
    fn pullback_of_identity_cospan_is_diagonal() {
        let z = set("Z", &["a", "b"]);
        let id = FinFn::identity(&z);
        let w = pullback_set(&id, &id).unwrap();
        assert_eq!(w.set().elems(), ["(a,a)", "(b,b)"]);
        assert!(w.proj1().is_bijection());
    }

    #[test]
    fn pullback_of_constant_maps_is_full_product() {
        let x = set("X", &["x1", "x2"]);
        let y = set("Y", &["y1", "y2"]);
        let z = set("Z", &["a"]);
        let f = fun(&x, &z, &[("x1", "a"), ("x2", "a")]);
        let g = fun(&y, &z, &[("y1", "a"), ("y2", "a")]);
        let w = pullback_set(&f, &g).unwrap();
        assert_eq!(w.set().len(), 4);
        // Commuting square holds on the nose.
        assert_eq!(
            fn_compose(&f, &w.proj1()).unwrap(),
            fn_compose(&g, &w.proj2()).unwrap()
        );
    }

    #[test]
    fn pullback_of_disjoint_images_is_empty() {
        let x = set("X", &["x"]);
        let y = set("Y", &["y"]);
        let z = set("Z", &["a", "b"]);
        let f = fun(&x, &z, &[("x", "a")]);
        let g = fun(&y, &z, &[("y", "b")]);
        assert!(pullback_set(&f, &g).unwrap().set().is_empty());
    }

    #[test]
    fn pullback_mediator_unique_by_search() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1"]);
        let z = set("Z", &["a", "b"]);
        let q = set("Q", &["q0", "q1"]);
        for f in enumerate_fns(&x, &z) {
            for g in enumerate_fns(&y, &z) {
                let w = pullback_set(&f, &g).unwrap();
                for h1 in enumerate_fns(&q, &x) {
                    for h2 in enumerate_fns(&q, &y) {
                        let is_cone = (0..q.len())
                            .all(|i| f.table()[h1.table()[i]] == g.table()[h2.table()[i]]);
                        match w.mediator(&h1, &h2) {
                            Ok(u) => {
                                assert!(is_cone);
                                assert_eq!(fn_compose(&w.proj1(), &u).unwrap(), h1);
                                assert_eq!(fn_compose(&w.proj2(), &u).unwrap(), h2);
                                // Exhaustive search finds exactly this one.
                                let found: Vec<FinFn> = enumerate_fns(&q, w.set())
                                    .filter(|c| {
                                        fn_compose(&w.proj1(), c).unwrap() == h1
                                            && fn_compose(&w.proj2(), c).unwrap() == h2
                                    })
                                    .collect();
                                assert_eq!(found, vec![u]);
                            }
                            Err(FinSetError::NotACone { .. }) => assert!(!is_cone),
                            Err(other) => panic!("unexpected error {other:?}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_mediator_on_universal_cone_is_identity() {
        let x = set("X", &["x0", "x1"]);
        let z = set("Z", &["a"]);
        let f = fun(&x, &z, &[("x0", "a"), ("x1", "a")]);
        let w = pullback_set(&f, &f).unwrap();
        let u = w.mediator(&w.proj1(), &w.proj2()).unwrap();
        assert_eq!(u, FinFn::identity(w.set()));
    }

    #[test]
    fn pushout_with_empty_base_is_plain_coproduct() {
        let x = set("X", &["t1", "t2"]);
        let y = set("Y", &["u1"]);
        let z = set("Z", &[]);
        let f = FinFn::from_indices(z.clone(), x.clone(), Vec::new()).unwrap();
        let g = FinFn::from_indices(z.clone(), y.clone(), Vec::new()).unwrap();
        let p = pushout_set(&f, &g).unwrap();
        assert_eq!(p.set().elems(), ["inl:t1", "inl:t2", "inr:u1"]);
        assert_eq!(p.quotient().classes.len(), 3);
    }

    #[test]
    fn pushout_single_generated_pair() {
        let x = set("X", &["t1", "t2"]);
        let y = set("Y", &["u1"]);
        let z = set("Z", &["z"]);
        let f = fun(&z, &x, &[("z", "t1")]);
        let g = fun(&z, &y, &[("z", "u1")]);
        let p = pushout_set(&f, &g).unwrap();
        assert_eq!(
            p.quotient().classes,
            vec![
                vec!["inl:t1".to_string(), "inr:u1".to_string()],
                vec!["inl:t2".to_string()],
            ]
        );
        assert_eq!(p.set().elems(), ["inl:t1", "inl:t2"]);
    }

    #[test]
    fn pushout_all_pairs_collapses_to_one_class() {
        // ti ~ tj' for all i,j via a 4-element relating set.
        let x = set("T", &["t1", "t2"]);
        let y = set("T'", &["t1'", "t2'"]);
        let z = set("Z", &["z00", "z01", "z10", "z11"]);
        let f = fun(&z, &x, &[("z00", "t1"), ("z01", "t1"), ("z10", "t2"), ("z11", "t2")]);
        let g = fun(&z, &y, &[("z00", "t1'"), ("z01", "t2'"), ("z10", "t1'"), ("z11", "t2'")]);
        let p = pushout_set(&f, &g).unwrap();
        assert_eq!(p.set().len(), 1);
        assert_eq!(p.quotient().classes[0].len(), 4);
        // Square commutes: j1 . f = j2 . g.
        assert_eq!(
            fn_compose(&p.inj1(), &f).unwrap(),
            fn_compose(&p.inj2(), &g).unwrap()
        );
    }

    #[test]
    fn pushout_mediator_unique_by_search() {
        let x = set("X", &["t1", "t2"]);
        let y = set("Y", &["u1"]);
        let z = set("Z", &["z"]);
        let q = set("Q", &["q0", "q1"]);
        let f = fun(&z, &x, &[("z", "t1")]);
        let g = fun(&z, &y, &[("z", "u1")]);
        let p = pushout_set(&f, &g).unwrap();
        for k1 in enumerate_fns(&x, &q) {
            for k2 in enumerate_fns(&y, &q) {
                let is_cocone =
                    (0..z.len()).all(|i| k1.table()[f.table()[i]] == k2.table()[g.table()[i]]);
                match p.mediator(&k1, &k2) {
                    Ok(m) => {
                        assert!(is_cocone);
                        assert_eq!(fn_compose(&m, &p.inj1()).unwrap(), k1);
                        assert_eq!(fn_compose(&m, &p.inj2()).unwrap(), k2);
                        let found: Vec<FinFn> = enumerate_fns(p.set(), &q)
                            .filter(|c| {
                                fn_compose(c, &p.inj1()).unwrap() == k1
                                    && fn_compose(c, &p.inj2()).unwrap() == k2
                            })
                            .collect();
                        assert_eq!(found, vec![m]);
                    }
                    Err(FinSetError::NotACocone { witness }) => {
                        assert!(!is_cocone);
                        assert_eq!(witness, "z");
                    }
                    Err(other) => panic!("unexpected error {other:?}"),
                }
            }
        }
    }

    #[test]
    fn pushout_mediator_on_universal_cocone_is_identity() {
        let x = set("X", &["t1", "t2"]);
        let y = set("Y", &["u1"]);
        let z = set("Z", &["z"]);
        let f = fun(&z, &x, &[("z", "t1")]);
        let g = fun(&z, &y, &[("z", "u1")]);
        let p = pushout_set(&f, &g).unwrap();
        let m = p.mediator(&p.inj1(), &p.inj2()).unwrap();
        assert_eq!(m, FinFn::identity(p.set()));
    }

    #[test]
    fn degenerate_pushout_mediator_is_copairing() {
        let x = set("X", &["t1", "t2"]);
        let y = set("Y", &["u1"]);
        let z = set("Z", &[]);
        let q = set("Q", &["q0", "q1"]);
        let f = FinFn::from_indices(z.clone(), x.clone(), Vec::new()).unwrap();
        let g = FinFn::from_indices(z.clone(), y.clone(), Vec::new()).unwrap();
        let p = pushout_set(&f, &g).unwrap();
        let c = coproduct_set(&x, &y);
        for k1 in enumerate_fns(&x, &q) {
            for k2 in enumerate_fns(&y, &q) {
                let m = p.mediator(&k1, &k2).unwrap();
                let copair = c.copairing(&k1, &k2).unwrap();
                assert_eq!(m.table(), copair.table());
            }
        }
    }

    #[test]
    fn enumerate_fns_counts() {
        let two = set("X", &["x0", "x1"]);
        let empty = set("E", &[]);
        assert_eq!(enumerate_fns(&two, &two).count(), 4);
        assert_eq!(enumerate_fns(&empty, &two).count(), 1);
        assert_eq!(enumerate_fns(&two, &empty).count(), 0);
        assert_eq!(enumerate_fns(&empty, &empty).count(), 1);
        assert_eq!(count_fns(&two, &two), Some(4));
    }

    #[test]
    fn enumerate_fns_lexicographic_and_distinct() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0", "y1", "y2"]);
        let fns: Vec<FinFn> = enumerate_fns(&x, &y).collect();
        assert_eq!(fns.len(), 9);
        for pair in fns.windows(2) {
            assert!(pair[0].table() < pair[1].table());
        }
        assert_eq!(fns[0].table(), &[0, 0]);
        assert_eq!(fns[1].table(), &[0, 1]);
        assert_eq!(fns[8].table(), &[2, 2]);
    }

    #[test]
    fn product_many_matches_binary_and_flattens() {
        let x = set("X", &["x0", "x1"]);
        let y = set("Y", &["y0"]);
        let z = set("Z", &["z0", "z1"]);
        let (p2, _) = product_many(core::slice::from_ref(&x));
        assert_eq!(p2, x);
        let (p3, projs) = product_many(&[x.clone(), y.clone(), z.clone()]);
        assert_eq!(p3.len(), 4);
        assert_eq!(p3.elem(0), "(x0,y0,z0)");
        assert_eq!(p3.elem(3), "(x1,y0,z1)");
        assert_eq!(projs[2].apply("(x1,y0,z0)").unwrap(), "z0");
    }

    #[test]
    fn coproduct_many_tags() {
        let x = set("X", &["a"]);
        let y = set("Y", &["b"]);
        let z = set("Z", &["c"]);
        let (s, injs) = coproduct_many(&[x, y, z]);
        assert_eq!(s.elems(), ["in0:a", "in1:b", "in2:c"]);
        assert_eq!(injs[1].apply("b").unwrap(), "in1:b");
    }
}
