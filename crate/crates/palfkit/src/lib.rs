//! Combinatorial toolkit for Fukaya-Seidel categories of surface Lefschetz
//! fibrations.
//!
//! The pipeline goes: a [`diagram::CurveDiagram`] describes a system of
//! vanishing cycles on an oriented surface with boundary, together with
//! grading and switching-point data ([`diagram::BraneAssignment`]);
//! [`moduli`] enumerates the immersed-polygon moduli spaces as
//! face-multiplicity domains and computes their signs; [`fscat`] assembles
//! the resulting directed A-infinity category; [`hochschild`] computes
//! Hochschild cochain complexes and cohomology; [`invariants`] computes the
//! Milnor lattice, the Euler pairing and the first homology of the total
//! space. Everything runs over exact scalars ([`exactalg`]) — there is no
//! floating point anywhere in this crate.

pub mod ainfcat;
pub mod diagram;
pub mod exactalg;
pub mod fixtures;
pub mod format;
pub mod fscat;
pub mod hochschild;
pub mod invariants;
pub mod moduli;
pub mod report;

pub use exactalg::{Fp, Rat};
