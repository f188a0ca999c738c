//! Finite-scale workbench for non-distributive positive logic and its modal
//! extension: filter semantics over meet-semilattices, lattice/frame duality,
//! completions, first-order correspondence and entailment procedures.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod correspondence;
pub mod duality;
pub mod enumerate;
pub mod fo;
pub mod order;
pub mod prover;
pub mod semantics;
pub mod subset;
pub mod syntax;

pub use order::{BoundedLattice, ComplexAlgebra, Filter, MeetSemilattice, OrderError, Poset};
pub use subset::Subset;
pub use syntax::{ConsequencePair, Formula};
