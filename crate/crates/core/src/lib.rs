//! Bimorphic lenses over finite sets.
//!
//! A bimorphic lens `(S,T) -> (A,B)` is a pair of a view function `S -> A`
//! and an update function `S x B -> T`; no lens laws are imposed. Because
//! every set here is finite and every function is an explicit table, all of
//! the categorical structure — composition, products, pullbacks, the adaptor
//! embedding and its adjunction — is computed concretely, and every claimed
//! universal property can be *checked* by exhaustive enumeration instead of
//! being assumed.
//!
//! The crate is organised in layers:
//!
//! - [`finset`]: finite sets and total functions, with products, coproducts,
//!   exponentials, pullbacks, pushouts, their mediating morphisms, and
//!   exhaustive function enumeration.
//! - [`lens`]: lenses as data, identity and composition, the adaptor
//!   embedding, hom-set enumeration and the put-get checker.
//! - [`functor`]: the view functor `V`, the contravariant continuation
//!   functor `K`, and the `<V,K> -| <-,->` adjunction with an executable
//!   naturality check.
//! - [`limits`]: products and pullbacks of lenses, mediator construction,
//!   and brute-force universal-property verifiers that either confirm a
//!   universal property or return a counterexample cone.
//! - [`span`]: spans of lenses (symmetric lenses), composed via pullbacks,
//!   with isomorphism search and empirical unit/associativity probes.
//!
//! The core is `no_std` (with `alloc`); IO, JSON formats and the CLI live in
//! the companion `bilens-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod finset;
pub mod functor;
pub mod lens;
pub mod limits;
pub mod span;

pub use finset::{FinFn, FinSet};
pub use lens::{Adaptor, Lens, LensObject};
pub use limits::{ConeDiagram, CospanDiagram, VerificationReport, VerifyStatus};
pub use span::Span;
