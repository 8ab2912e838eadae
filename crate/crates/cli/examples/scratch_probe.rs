//! Scratch: run the pullback-universality oracle over candidate cospans.

use bilens_core::finset::FinSet;
use bilens_core::lens::{adaptor_embed, lens_identity, Adaptor, LensObject};
use bilens_core::limits::{verify_pullback_universal, CospanDiagram};
use bilens_core::FinFn;

fn main() {
    let t0 = std::time::Instant::now();

    // (a) identity cospan on ({s},{t})
    let tiny = LensObject::new(FinSet::canonical("S0", "s", 1), FinSet::canonical("T0", "t", 1));
    let c_a = CospanDiagram::new(lens_identity(&tiny), lens_identity(&tiny)).unwrap();
    println!("(a) {:?} cones={}", verify_pullback_universal(&c_a, 2).status, verify_pullback_universal(&c_a, 2).checked_cones);

    // (b) identity cospan on (2,2)
    let s2t2 = LensObject::new(FinSet::canonical("S2", "s", 2), FinSet::canonical("T2", "t", 2));
    let c_b = CospanDiagram::new(lens_identity(&s2t2), lens_identity(&s2t2)).unwrap();
    println!("(b) {:?}", verify_pullback_universal(&c_b, 2).status);

    // (c) two adaptor-embedded bijections
    let s = FinSet::canonical("S", "s", 2);
    let t = FinSet::canonical("T", "t", 2);
    let a = FinSet::canonical("A", "a", 2);
    let b = FinSet::canonical("B", "b", 2);
    let s2 = FinSet::canonical("S'", "u", 2);
    let t2 = FinSet::canonical("T'", "v", 2);
    let left = adaptor_embed(&Adaptor::new(
        FinFn::from_fn(s.clone(), a.clone(), |i| 1 - i),
        FinFn::from_fn(b.clone(), t.clone(), |i| 1 - i),
    ));
    let right = adaptor_embed(&Adaptor::new(
        FinFn::from_fn(s2.clone(), a.clone(), |i| i),
        FinFn::from_fn(b.clone(), t2.clone(), |i| i),
    ));
    let c_c = CospanDiagram::new(left, right).unwrap();
    println!("(c) {:?}", verify_pullback_universal(&c_c, 2).status);

    // (d) identity cospan on (empty, T2)
    let empty_obj = LensObject::new(
        FinSet::new("E", Vec::<String>::new()).unwrap(),
        FinSet::canonical("T2", "t", 2),
    );
    let c_d = CospanDiagram::new(lens_identity(&empty_obj), lens_identity(&empty_obj)).unwrap();
    println!("(d) {:?}", verify_pullback_universal(&c_d, 2).status);

    // (e) adaptor cospan with non-bijective components
    let f1 = FinFn::from_fn(s.clone(), a.clone(), |_| 0); // constant, non-injective
    let g1 = FinFn::from_fn(b.clone(), t.clone(), |_| 1); // constant, non-surjective
    let f2 = FinFn::from_fn(s2.clone(), a.clone(), |i| i); // bijection
    let g2 = FinFn::from_fn(b.clone(), t2.clone(), |_| 0);
    let c_e = CospanDiagram::new(
        adaptor_embed(&Adaptor::new(f1, g1)),
        adaptor_embed(&Adaptor::new(f2, g2)),
    )
    .unwrap();
    println!("(e) {:?}", verify_pullback_universal(&c_e, 2).status);

    // (f) cospan into (A, empty-B): no update constraints at all
    let b0 = FinSet::new("B0", Vec::<String>::new()).unwrap();
    let ab0 = LensObject::new(a.clone(), b0.clone());
    let st = LensObject::new(s.clone(), t.clone());
    let s2t2p = LensObject::new(s2.clone(), t2.clone());
    let lam = bilens_core::lens::Lens::from_parts(st, ab0.clone(), |i| i % 2, |_, _| 0);
    let lam2 = bilens_core::lens::Lens::from_parts(s2t2p, ab0, |i| i % 2, |_, _| 0);
    let c_f = CospanDiagram::new(lam, lam2).unwrap();
    println!("(f) {:?}", verify_pullback_universal(&c_f, 2).status);

    // (g) mixed: one identity leg, one state-dependent-update leg (expect FAILURE)
    let lam_dep = bilens_core::lens::Lens::from_parts(
        LensObject::new(s2.clone(), t2.clone()),
        s2t2.clone(),
        |i| i,
        |si, _ti| si, // state-dependent update
    );
    let c_g = CospanDiagram::new(lens_identity(&s2t2), lam_dep).unwrap();
    let r = verify_pullback_universal(&c_g, 2);
    println!("(g) {:?} witness count={:?}", r.status, r.witness.map(|w| w.mediator_count()));

    println!("elapsed: {:?}", t0.elapsed());
}
