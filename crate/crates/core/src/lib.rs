//! Machine-checked absence of quantum symmetry for graphs whose adjacent vertices share
//! no neighbor and whose non-adjacent vertices share exactly one, with the Petersen graph
//! as the main instance.
//!
//! The crate is organized bottom-up:
//! - [`graph`]: simple graphs, named constructions, strong-regularity checks;
//! - [`autgroup`]: classical automorphism groups;
//! - [`ncalgebra`]: exact noncommutative polynomials and the magic-unitary relations;
//! - [`prover`]: proof replay producing certificates, and an independent checker.

pub mod autgroup;
pub mod graph;
pub mod ncalgebra;
pub mod prover;
