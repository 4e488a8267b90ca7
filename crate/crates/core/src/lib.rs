//! Spaces of finite-order knot invariants for knots in 3-manifolds whose
//! fundamental group is trivial, free, or a free product of cyclic groups.
//!
//! The crate is organised around decorated chord-diagram combinatorics:
//! `groups` supplies word algebra for the supported fundamental groups,
//! `diagrams` the undecorated configuration combinatorics, `routes` the
//! group-decorated configurations with gauge canonicalization, `weightspace`
//! the exact linear systems whose kernels are the invariant spaces,
//! `obstructions` the neighbor/relative layer with the cycle pairing, and
//! `evaluator` an actuality-table evaluator for knots in R^3 together with a
//! Conway-polynomial oracle.

pub mod diagrams;
pub mod error;
pub mod evaluator;
pub mod exact;
pub mod fixtures;
pub mod groups;
pub mod obstructions;
pub mod routes;
pub mod weightspace;

pub use diagrams::{ABConfiguration, ChordDiagram, StarDiagram, TildeTripleDiagram, TripleDiagram};
pub use error::Error;
pub use evaluator::{ActualityTable, GaussCode};
pub use groups::{GroupElement, GroupKind, GroupSpec};
pub use obstructions::{CrossingTrace, NeighborGraph};
pub use routes::{Configuration, DecoratedRoute};
pub use weightspace::{CoefficientField, RelationSystem, WeightSystem};
