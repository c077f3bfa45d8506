//! Finite lattices, the linear lattice of subspaces of GF(q)^n, and linear
//! subspace codes closed under intersection.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: exact arithmetic over GF(q), canonical (RREF) subspaces, sums,
//!   intersections and enumeration of all subspaces.
//! * [`lattice`]: dense finite lattices built from a cover relation.
//! * [`props`]: decision procedures (modular, distributive, geometric, ...)
//!   with checkable witnesses, and the atom decomposition of uniquely
//!   atomistic lattices.
//! * [`linear`]: the lattice of all subspaces of GF(q)^n.
//! * [`codes`]: partition codes, the linear addition table and complements.
//! * [`lab`]: a lattice catalog, sublattice surveys and verification suites.

#![allow(clippy::needless_range_loop)]

pub mod codes;
pub mod error;
pub mod gf;
pub mod lab;
pub mod lattice;
pub mod linear;
pub mod props;

pub use error::{Error, Result};
pub use gf::{Elem, Field, Subspace};
pub use lattice::FiniteLattice;
