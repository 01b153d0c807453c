//! Exact computation of the integral K-theory of compact symplectic toric
//! manifolds from Delzant polytope data.
//!
//! The pipeline: a Delzant polytope in H-representation is validated and its
//! vertices/edges/non-faces enumerated (`polytope`), the associated exact
//! sequence and moment-map data are assembled (`kirwan`), the Stanley-Reisner
//! style presentation of K*(X) is produced, and everything is cross-checked
//! against the fixed-point (GKM) model (`gkm`). All ring and lattice
//! arithmetic is exact (`lattice`, `ring`); the only floating-point code is
//! the gradient-flow checker.

pub mod fixtures;
pub mod gkm;
pub mod kirwan;
pub mod lattice;
pub mod polytope;
pub mod rational;
pub mod ring;

pub use gkm::{FixedPointClass, GKMGraph};
pub use kirwan::{CriticalDatum, DelzantData, Presentation};
pub use lattice::{IntMatrix, QuotientLattice, SNFResult};
pub use polytope::{DelzantPolytope, Edge, ValidationReport, Vertex};
pub use ring::{Carrier, GroupRingElem};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational used throughout.
pub type Rat = num_rational::BigRational;
