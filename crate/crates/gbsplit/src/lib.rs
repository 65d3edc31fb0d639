//! Splitting types of normal bundles of rational curves in Grassmannians.
//!
//! Three independent engines cross-check each other:
//!
//! * [`cohomology`] samples random rational curves in Gr(a, a+b) over a prime
//!   field and recovers the actual splitting type of the (optionally
//!   modified) normal bundle by exact linear algebra.
//! * [`predictor`] evaluates every closed-form prediction and exception
//!   formula: slopes, restricted tangent types, the characteristic-2 type,
//!   degeneracy decompositions and the balancedness classifier.
//! * [`induction`] replays the inductive two-balancedness argument with
//!   exact rational arithmetic and emits machine-checkable certificates.
//!
//! The [`harness`] module wires these into a CLI (`predict`, `certify`,
//! `sweep-lemmas`, `compute`, `verify`) with deterministic seeded sweeps and
//! JSONL reports.

pub mod cohomology;
pub mod field;
pub mod forms;
pub mod harness;
pub mod induction;
pub mod predictor;
pub mod rational;
pub mod splitting;

pub use rational::ExactRational;
pub use splitting::{DegreeInterval, SplittingType};
