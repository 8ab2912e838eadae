//! The view functor `V`, the contravariant continuation functor `K`, and
//! the adjunction between pairing them and embedding adaptors, with an
//! executable naturality check.
//!
//! `V` sends `(S,T)` to `S` and a lens to its view. `K` sends `(S,T)` to
//! the function space `S -> T` and a lens to precomposition through it:
//! `K(lam)(k)(s) = u(s, k(v(s)))`. Pairing them gives
//! `<V,K>(S,T) = (S, S -> T)`, left adjoint to the adaptor embedding; the
//! hom-set bijection is currying the update over its second argument.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::finset::{enumerate_fns, exponential_set, fn_compose, Exponential, FinFn, FinSet};
use crate::lens::{adaptor_embed, lens_compose, Adaptor, Lens, LensError, LensObject};

/// `V` on objects: the forward component.
pub fn v_object(x: &LensObject) -> &FinSet {
    x.fwd()
}

/// `V` on lenses: the view function.
pub fn apply_v(l: &Lens) -> FinFn {
    l.view().clone()
}

/// `K` on objects: the exponential `S -> T`.
pub fn k_object(x: &LensObject) -> Exponential {
    exponential_set(x.fwd(), x.bwd())
}

/// `K` on lenses: for `lam : (S,T) -> (A,B)`, the function
/// `(A -> B) -> (S -> T)` with `K(lam)(k)(s) = u(s, k(v(s)))`.
/// Contravariant: `K(mu . lam) = K(lam) . K(mu)`.
pub fn apply_k(l: &Lens) -> FinFn {
    let dom_exp = k_object(l.dst());
    let cod_exp = k_object(l.src());
    let s_len = l.src().fwd().len();
    FinFn::from_fn(dom_exp.set().clone(), cod_exp.set().clone(), |ki| {
        let k = dom_exp.decode(ki);
        let image = FinFn::from_fn(l.src().fwd().clone(), l.src().bwd().clone(), |s| {
            l.update_idx(s, k.table()[l.view_idx(s)])
        });
        debug_assert!(s_len == image.table().len());
        cod_exp.encode(&image).expect("pointwise image is a table S -> T")
    })
}

/// An element of the adaptor hom-set `hom((S, S->T), (A,B))`: a function
/// `to_view : S -> A` together with `to_table : B -> (S -> T)` into the
/// canonical exponential.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdjunctHom {
    src: LensObject,
    dst: LensObject,
    to_view: FinFn,
    to_table: FinFn,
}

impl AdjunctHom {
    pub fn new(
        src: LensObject,
        dst: LensObject,
        to_view: FinFn,
        to_table: FinFn,
    ) -> Result<Self, LensError> {
        if to_view.dom() != src.fwd() || to_view.cod() != dst.fwd() {
            return Err(LensError::BadShape {
                expected: format!("{} -> {}", src.fwd().name(), dst.fwd().name()),
                found: format!("{} -> {}", to_view.dom().name(), to_view.cod().name()),
            });
        }
        let exp = exponential_set(src.fwd(), src.bwd());
        if to_table.dom() != dst.bwd() || to_table.cod() != exp.set() {
            return Err(LensError::BadShape {
                expected: format!("{} -> {}", dst.bwd().name(), exp.set().name()),
                found: format!("{} -> {}", to_table.dom().name(), to_table.cod().name()),
            });
        }
        Ok(AdjunctHom {
            src,
            dst,
            to_view,
            to_table,
        })
    }

    pub fn src(&self) -> &LensObject {
        &self.src
    }

    pub fn dst(&self) -> &LensObject {
        &self.dst
    }

    pub fn to_view(&self) -> &FinFn {
        &self.to_view
    }

    pub fn to_table(&self) -> &FinFn {
        &self.to_table
    }
}

/// Transport `(S -> A) x (B -> (S -> T))` to a lens: the view is kept and
/// the second component is uncurried with its arguments swapped, so
/// `u(s, b) = to_table(b)(s)`.
pub fn adjunction_to_lens(h: &AdjunctHom) -> Lens {
    let exp = exponential_set(h.src.fwd(), h.src.bwd());
    let tables: Vec<FinFn> = h
        .to_table
        .table()
        .iter()
        .map(|&fi| exp.decode(fi))
        .collect();
    Lens::from_parts(
        h.src.clone(),
        h.dst.clone(),
        |s| h.to_view.table()[s],
        |s, b| tables[b].table()[s],
    )
}

/// Transport a lens to `(S -> A) x (B -> (S -> T))` by currying the update
/// over the state: `to_table(b) = [s |-> u(s, b)]`.
pub fn adjunction_from_lens(l: &Lens) -> AdjunctHom {
    let exp = exponential_set(l.src().fwd(), l.src().bwd());
    let to_table = FinFn::from_fn(l.dst().bwd().clone(), exp.set().clone(), |b| {
        let slice = FinFn::from_fn(l.src().fwd().clone(), l.src().bwd().clone(), |s| {
            l.update_idx(s, b)
        });
        exp.encode(&slice).expect("update slice is a table S -> T")
    });
    AdjunctHom::new(l.src().clone(), l.dst().clone(), l.view().clone(), to_table)
        .expect("transported components are well-shaped")
}

/// Report of an exhaustive naturality-square check.
#[derive(Clone, Debug)]
pub struct NaturalityReport {
    pub holds: bool,
    pub checked: u64,
    /// The first hom-set element on which the square failed.
    pub witness: Option<AdjunctHom>,
}

/// Check the adjunction's naturality square at `(lam, (f, g))`, where
/// `lam : (S',T') -> (S,T)` is a lens, `f : A -> A'` and `g : B' -> B`.
///
/// Every element of `hom((S, S->T), (A,B))` is transported both ways
/// around the square: acting by `(<V,K>(lam), (f,g))` and then converting
/// to a lens must agree with converting first and then acting by
/// `(lam, <f,g>)`.
pub fn check_adjunction_naturality(
    lam: &Lens,
    f: &FinFn,
    g: &FinFn,
) -> Result<NaturalityReport, LensError> {
    let st = lam.dst().clone();
    let ab = LensObject::new(f.dom().clone(), g.cod().clone());
    let ab_prime = LensObject::new(f.cod().clone(), g.dom().clone());
    let embedded = adaptor_embed(&Adaptor::new(f.clone(), g.clone()));
    let k_lam = apply_k(lam);
    let exp_st = exponential_set(st.fwd(), st.bwd());
    let mut checked = 0u64;
    for p in enumerate_fns(st.fwd(), ab.fwd()) {
        for q in enumerate_fns(ab.bwd(), exp_st.set()) {
            let element = AdjunctHom::new(st.clone(), ab.clone(), p.clone(), q.clone())?;
            // Down then right: act in C x C^op, then transport.
            let p_acted = fn_compose(f, &fn_compose(&p, lam.view())?)?;
            let q_acted = fn_compose(&k_lam, &fn_compose(&q, g)?)?;
            let down = AdjunctHom::new(lam.src().clone(), ab_prime.clone(), p_acted, q_acted)?;
            let via_adjunct = adjunction_to_lens(&down);
            // Right then down: transport, then act in the lens category.
            let via_lens = lens_compose(
                &embedded,
                &lens_compose(&adjunction_to_lens(&element), lam)?,
            )?;
            checked += 1;
            if via_adjunct != via_lens {
                return Ok(NaturalityReport {
                    holds: false,
                    checked,
                    witness: Some(element),
                });
            }
        }
    }
    Ok(NaturalityReport {
        holds: true,
        checked,
        witness: None,
    })
}

/// The lens `(1,1) -> (S,T)` picking out state `s`; together with
/// [`state_from_lens`] this is the representability bijection for `V`.
pub fn lens_from_state(obj: &LensObject, state: usize) -> Lens {
    assert!(state < obj.fwd().len(), "state index out of range");
    Lens::from_parts(LensObject::unit(), obj.clone(), |_| state, |_, _| 0)
}

/// Inverse of [`lens_from_state`]: the state a lens from the unit object
/// picks out. The source must be unit-shaped (both components singletons).
pub fn state_from_lens(l: &Lens) -> Result<usize, LensError> {
    if l.src().fwd().len() != 1 || l.src().bwd().len() != 1 {
        return Err(LensError::BadShape {
            expected: String::from("a lens from a (1,1)-shaped object"),
            found: format!("{}", l.src()),
        });
    }
    Ok(l.view_idx(0))
}

/// The lens `(S,T) -> (1,1)` encoding a table `k : S -> T`; together with
/// [`table_from_lens`] this is the representability bijection for `K`.
pub fn lens_from_table(k: &FinFn) -> Lens {
    let obj = LensObject::new(k.dom().clone(), k.cod().clone());
    let table = k.table().to_vec();
    Lens::from_parts(obj, LensObject::unit(), |_| 0, move |s, _| table[s])
}

/// Inverse of [`lens_from_table`]. The target must be unit-shaped.
pub fn table_from_lens(l: &Lens) -> Result<FinFn, LensError> {
    if l.dst().fwd().len() != 1 || l.dst().bwd().len() != 1 {
        return Err(LensError::BadShape {
            expected: String::from("a lens into a (1,1)-shaped object"),
            found: format!("{}", l.dst()),
        });
    }
    Ok(FinFn::from_fn(
        l.src().fwd().clone(),
        l.src().bwd().clone(),
        |s| l.update_idx(s, 0),
    ))
}

/// The two sides of the adjunction's hom-set bijection have equal size:
/// `|S -> A| * |B -> (S -> T)|` versus the lens hom count.
pub fn adjunct_hom_count(x: &LensObject, y: &LensObject) -> Option<u128> {
    let views = crate::finset::count_fns(x.fwd(), y.fwd())?;
    let exp = exponential_set(x.fwd(), x.bwd());
    let tables = crate::finset::count_fns(y.bwd(), exp.set())?;
    views.checked_mul(tables)
}
