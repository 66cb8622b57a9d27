//! Finite distributive lattices and their dimensions, the Zariski lattice of a
//! polynomial ring, and certificate-producing generator reduction.
//!
//! The crate is `no_std` and only needs `alloc`. Lattices are handled through
//! their prime posets (a finite distributive lattice is the lattice of downsets
//! of its poset of prime points), rings are quotients `K[X]/I` over `ℚ` or `𝔽p`
//! with ideals decided by Gröbner bases. Every ring-side result comes with
//! witnesses that can be checked again by plain ideal membership.
#![no_std]

extern crate alloc;

pub mod dim;
pub mod error;
pub mod genred;
pub mod lattice;
pub mod poly;
pub mod poset;
pub mod spectra;
pub mod zariski;

pub use error::{Error, ErrorKind, Result};
pub use lattice::{FinDistLattice, LatElem, LatFilter, LatIdeal, LatQuotientMap};
pub use poly::{Budget, IdealRep, MembershipWitness, MonomialOrder, Poly, Ring};
pub use poset::FinPoset;
