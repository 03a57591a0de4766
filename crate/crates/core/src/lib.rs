//! Qudit Floquet codes on three-colorable `{p,3}` lattices.
//!
//! The crate is layered bottom-up: [`pauli`] holds the generalized Pauli
//! group over a prime dimension, [`stabilizer`] the phase-tracked stabilizer
//! groups and measurement updates, [`lattice`] the colored lattices,
//! [`floquet`] the check assignments and period-3 schedule, [`logical`] the
//! loop operators, and [`noise`] error injection and syndrome extraction.
//! [`dense`] and [`oracle`] hold the brute-force matrix checks used in tests.

pub mod dense;
pub mod error;
pub mod field;
pub mod floquet;
pub mod lattice;
pub mod linalg;
pub mod noise;
pub mod oracle;
pub mod logical;
pub mod pauli;
pub mod stabilizer;

pub use error::{Error, Result};
pub use field::{Dim, Residue};
pub use lattice::{build_torus_honeycomb, Color, ColoredLattice};
pub use floquet::{CheckAssignment, Trace};
pub use logical::{LogicalPair, LoopKind, LoopOperator};
pub use noise::{NoiseModel, SpaceTimeLattice};
pub use pauli::{PauliOperator, SinglePauli};
pub use stabilizer::{CanonicalTableau, GeneratorSet, MeasurementOutcome, OutcomeMode};
