//! Regenerates the JSON fixture corpus under `tests/fixtures/`.
//!
//! Run from the repository root:
//!
//! ```text
//! cargo run -p bilens-cli --example make_fixtures
//! ```

use std::fs;
use std::path::PathBuf;

use serde_json::json;

use bilens_cli::json::{
    adjunct_doc, cone_inner, cospan_inner, finish, lens_doc, set_inner, span_inner, to_output,
    SetCollector,
};
use bilens_core::finset::FinSet;
use bilens_core::functor::adjunction_from_lens;
use bilens_core::lens::{
    first_projection_lens, lens_identity, Adaptor, Lens, LensObject,
};
use bilens_core::limits::{collapse_probe, lens_pullback, ConeDiagram, CospanDiagram};
use bilens_core::span::Span;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    fs::create_dir_all(&dir).expect("create fixtures dir");
    let write = |name: &str, value: &serde_json::Value| {
        fs::write(dir.join(name), to_output(value)).expect("write fixture");
        println!("wrote {name}");
    };

    let s2 = FinSet::canonical("S2", "s", 2);
    let t2 = FinSet::canonical("T2", "t", 2);
    let a2 = FinSet::canonical("A2", "a", 2);
    let b2 = FinSet::canonical("B2", "b", 2);
    let s2t2 = LensObject::new(s2.clone(), t2.clone());
    let a2b2 = LensObject::new(a2.clone(), b2.clone());

    // Objects.
    let object_doc = |o: &LensObject| {
        let mut sets = SetCollector::new();
        sets.add_object(o);
        finish("object", json!([o.fwd().name(), o.bwd().name()]), sets)
    };
    write("obj_s2t2.json", &object_doc(&s2t2));
    write("obj_a2b2.json", &object_doc(&a2b2));
    write("obj_unit.json", &object_doc(&LensObject::unit()));
    // A bare object plus a separate preload file exercising --sets.
    write("obj_bare_s2t2.json", &json!({ "object": ["S2", "T2"] }));
    write(
        "sets_shared.json",
        &json!({ "sets": [set_inner(&s2), set_inner(&t2), set_inner(&a2), set_inner(&b2)] }),
    );

    // Identity lens on (S2,T2).
    write("identity_lens.json", &lens_doc(&lens_identity(&s2t2)));

    // The worked composition pair: lam : (S,T) -> (A,B), mu : (A,B) -> (P,Q).
    let s = FinSet::new("S", ["s"]).unwrap();
    let t = FinSet::new("T", ["t0", "t1"]).unwrap();
    let a = FinSet::new("A1", ["a"]).unwrap();
    let b = FinSet::new("B1", ["b0", "b1"]).unwrap();
    let p = FinSet::new("P1", ["p"]).unwrap();
    let q = FinSet::new("Q1", ["q0", "q1"]).unwrap();
    let st = LensObject::new(s, t);
    let ab = LensObject::new(a, b);
    let pq = LensObject::new(p, q);
    let lam = Lens::from_parts(st.clone(), ab.clone(), |_| 0, |_, b| b);
    let mu = Lens::from_parts(ab.clone(), pq, |_| 0, |_, qi| qi);
    write("lam.json", &lens_doc(&lam));
    write("mu.json", &lens_doc(&mu));

    // A bijection adaptor (S2,T2) -> (A2,B2).
    let swap_sa = bilens_core::FinFn::from_fn(s2.clone(), a2.clone(), |i| 1 - i);
    let swap_bt = bilens_core::FinFn::from_fn(b2.clone(), t2.clone(), |i| 1 - i);
    let adaptor = Adaptor::new(swap_sa, swap_bt);
    let mut sets = SetCollector::new();
    sets.add_object(&adaptor.src());
    sets.add_object(&adaptor.dst());
    write(
        "adaptor_swap.json",
        &finish("adaptor", bilens_cli::json::adaptor_inner(&adaptor), sets),
    );

    // Identity cospans and a cone over one of them.
    let cospan_doc = |c: &CospanDiagram| {
        let mut sets = SetCollector::new();
        sets.add_cospan(c);
        finish("cospan", cospan_inner(c), sets)
    };
    let id_cospan =
        CospanDiagram::new(lens_identity(&s2t2), lens_identity(&s2t2)).unwrap();
    write("id_cospan.json", &cospan_doc(&id_cospan));
    let tiny = LensObject::new(
        FinSet::canonical("S0", "s", 1),
        FinSet::canonical("T0", "t", 1),
    );
    let tiny_cospan = CospanDiagram::new(lens_identity(&tiny), lens_identity(&tiny)).unwrap();
    write("tiny_cospan.json", &cospan_doc(&tiny_cospan));
    let cone_doc = |c: &ConeDiagram| {
        let mut sets = SetCollector::new();
        sets.add_cone(c);
        finish("cone", cone_inner(c), sets)
    };
    let pb = lens_pullback(&id_cospan);
    let universal_cone =
        ConeDiagram::new(pb.proj1().clone(), pb.proj2().clone(), id_cospan.clone()).unwrap();
    write("id_cone.json", &cone_doc(&universal_cone));

    // The collapse probe cospan and its designated cone.
    let (probe_cospan, probe_cone) = collapse_probe();
    write("probe_cospan.json", &cospan_doc(&probe_cospan));
    write("probe_cone.json", &cone_doc(&probe_cone));

    // Product diagrams.
    let mut sets = SetCollector::new();
    sets.add_object(&s2t2);
    sets.add_object(&a2b2);
    write(
        "factors_2x2.json",
        &finish(
            "factors",
            json!([["S2", "T2"], ["A2", "B2"]]),
            sets,
        ),
    );
    write("factors_empty.json", &json!({ "factors": [] }));

    // Composable spans threaded through the probe cospan, plus a
    // relabelled copy for isomorphism checks.
    let span_doc_of = |s: &Span| {
        let mut sets = SetCollector::new();
        sets.add_span(s);
        finish("span", span_inner(s), sets)
    };
    let st_probe = probe_cospan.left().src().clone();
    let st_prime_probe = probe_cospan.right().src().clone();
    let span_left = Span::new(
        lens_identity(&st_probe),
        probe_cospan.left().clone(),
    )
    .unwrap();
    let span_right = Span::new(
        probe_cospan.right().clone(),
        lens_identity(&st_prime_probe),
    )
    .unwrap();
    write("span_left.json", &span_doc_of(&span_left));
    write("span_right.json", &span_doc_of(&span_right));
    // Same span with the apex relabelled by a swap on both components.
    let m = FinSet::new("M", ["m0", "m1"]).unwrap();
    let n = FinSet::new("N", ["n0", "n1"]).unwrap();
    let apex2 = LensObject::new(m.clone(), n.clone());
    let relabel = bilens_core::lens::adaptor_embed(&Adaptor::new(
        bilens_core::FinFn::from_fn(m, st_probe.fwd().clone(), |i| 1 - i),
        bilens_core::FinFn::from_fn(st_probe.bwd().clone(), n, |i| 1 - i),
    ));
    assert_eq!(relabel.src(), &apex2);
    let span_left_relabelled = Span::new(
        bilens_core::lens::lens_compose(span_left.left(), &relabel).unwrap(),
        bilens_core::lens::lens_compose(span_left.right(), &relabel).unwrap(),
    )
    .unwrap();
    write(
        "span_left_relabelled.json",
        &span_doc_of(&span_left_relabelled),
    );

    // Adjunct pair of lam.
    write("adjunct_lam.json", &adjunct_doc(&adjunction_from_lens(&lam)));

    // Naturality inputs: lam' : (S',T') -> (S2,T2), f : A2 -> A', g : B' -> B2.
    let s_prime = FinSet::new("Sp", ["u0", "u1"]).unwrap();
    let t_prime = FinSet::new("Tp", ["v0"]).unwrap();
    let sptp = LensObject::new(s_prime, t_prime);
    let nat_lam = Lens::from_parts(sptp, s2t2.clone(), |i| 1 - i, |_, _| 0);
    write("nat_lam.json", &lens_doc(&nat_lam));
    let a_prime = FinSet::new("Ap", ["c0"]).unwrap();
    let b_prime = FinSet::new("Bp", ["d0", "d1"]).unwrap();
    let f = bilens_core::FinFn::from_fn(a2.clone(), a_prime.clone(), |_| 0);
    let g = bilens_core::FinFn::from_fn(b_prime.clone(), b2.clone(), |i| i);
    let fn_doc = |f: &bilens_core::FinFn| {
        let mut sets = SetCollector::new();
        sets.add(f.dom());
        sets.add(f.cod());
        finish("fn", bilens_cli::json::fn_inner(f), sets)
    };
    write("nat_f.json", &fn_doc(&f));
    write("nat_g.json", &fn_doc(&g));

    // Put-get subjects: the first-projection lens (holds) and a constant
    // update on a monomorphic shape (fails).
    let x = FinSet::canonical("X", "x", 2);
    let y = FinSet::canonical("Y", "y", 2);
    write("putget_proj.json", &lens_doc(&first_projection_lens(&x, &y)));
    let mono = LensObject::new(s2.clone(), s2.clone());
    let constant = Lens::from_parts(mono.clone(), mono, |i| i, |_, _| 0);
    write("putget_const.json", &lens_doc(&constant));
}
