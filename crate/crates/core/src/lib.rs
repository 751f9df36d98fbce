//! Characteristic-class and quadratic-form invariants of triangulated Poincaré complexes.
//!
//! The crate computes, exactly and from a plain list of simplices, the invariants that are
//! rigid under profinite completion for aspherical manifolds with good fundamental groups:
//! Stiefel–Whitney numbers (hence the unoriented cobordism class), orientability, spin and
//! spin^C obstructions, the de Rham invariant, evenness of the intersection form and the
//! signature modulo 8. The signature modulo 8 is computed twice: directly, and from the
//! local (p-adic) invariants of the intersection form through the oddity/excess sum formula.
//!
//! Module map:
//! - [`complex`]: simplicial complexes and their text format.
//! - [`cohomology`]: F2 and integral (co)homology, cup products, fundamental classes, duality.
//! - [`steenrod`]: cup-i products, Steenrod squares, the integral Bockstein.
//! - [`charclass`]: Wu and Stiefel–Whitney classes, SW numbers, obstructions, cobordism.
//! - [`quadform`]: exact local invariants of rational quadratic forms, Hasse–Minkowski.
//! - [`panel`]: intersection forms and the combined invariant panel with its comparator.
//! - [`cli`]: the `topinv` command-line front end.

#![allow(clippy::needless_range_loop)]

pub mod charclass;
pub mod cli;
pub mod cohomology;
pub mod complex;
mod error;
pub mod f2;
pub mod fixtures;
pub mod intmat;
pub mod panel;
pub mod quadform;
pub mod steenrod;

pub use error::{Error, Result};
