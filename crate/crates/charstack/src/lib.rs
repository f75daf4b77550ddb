//! Exact computations with tangent complexes of character stacks.
//!
//! Everything here happens over the rationals with arbitrary precision:
//! no floats, no numerical rank decisions. The layers build on each other:
//!
//! * [`linalg`] — dense rational matrices, deterministic elimination,
//!   canonical subspaces.
//! * [`complex`] — bounded cochain complexes, chain maps, cohomology with
//!   explicit representing cocycles, shift/dual/cone/fiber.
//! * [`lie`] — matrix groups SL(n)/GL(n) with their Lie algebras, group
//!   adjoint actions, defect operators, the two-operator Koszul complex.
//! * [`strict`] — strictness of a commuting pair of group elements, tested
//!   three independent ways, plus seeded generators of commuting pairs.
//! * [`presentation`] — finitely presented groups, words, representations,
//!   Fox derivatives.
//! * [`locsys`] — tangent complexes of moduli of local systems on surfaces
//!   and spheres, restriction to boundary, relative complexes, the surface
//!   pairing on first cohomology, Poisson bivectors and leaf models.

pub mod complex;
pub mod lie;
pub mod linalg;
pub mod locsys;
pub mod presentation;
pub mod strict;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
