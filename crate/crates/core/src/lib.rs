//! Exact-plus-numeric engine for classifying degeneracies of parametric
//! non-Hermitian Hamiltonians through tropical geometry.
//!
//! The pipeline: build a Hamiltonian whose entries are exact polynomials in
//! a perturbation `v` ([`models`]), take its characteristic polynomial over
//! exact complex-rational scalars ([`charpoly`]), tropicalize and read off
//! exceptional point orders from a lower convex hull ([`tropical`]), draw
//! Newton polygons, amoebas and spines ([`newton_amoeba`]), and
//! cross-validate everything against floating-point eigenvalue splitting
//! and holonomy loops ([`numerics`]). The [`cli`] module binds it all into
//! reproducible runs.
//!
//! ```
//! use tropical_ep::models::{two_site, TwoSiteParams};
//! use tropical_ep::{char_poly, ep_order, tropicalize, EpKind, Scalar};
//!
//! // balanced gain/loss pair: the splitting scales as v^(1/2)
//! let params = TwoSiteParams::new(Scalar::one(), Scalar::one()).unwrap();
//! let p = char_poly(&two_site(&params).unwrap());
//! let trop = tropicalize(&p).unwrap();
//! assert_eq!(trop.render(), "min(1, 2\u{3c9})");
//! let cls = ep_order(&trop);
//! assert_eq!(cls.kind, EpKind::Order(2));
//! ```

pub mod charpoly;
pub mod cli;
pub mod models;
pub mod newton_amoeba;
pub mod numerics;
pub mod poly;
pub mod rational;
pub mod tropical;

pub use charpoly::{char_poly, eval_matrix, ComplexMatrix, ParametricMatrix};
pub use poly::{build_bipoly, BiPoly, UniPoly};
pub use rational::Scalar;
pub use tropical::{
    ep_order, trop_eval, trop_semiring, tropical_roots, tropicalize, EPClassification, EpKind,
    ExtendedInt, Fraction, TropicalPolynomial,
};
