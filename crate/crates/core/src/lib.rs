//! Strongly regular graphs whose ratio bound and inertia bound for cocliques
//! coincide: parameter arithmetic, the block designs they carry, design
//! nonexistence tests, and constructive checks on concrete graphs.

pub mod arith;
pub mod designs;
pub mod graphs;
pub mod nonexistence;
pub mod numtheory;
pub mod report;
pub mod search;
pub mod srg;

pub use designs::{BlockDesign, QuasiSymParams};
pub use nonexistence::{KnownFact, Verdict};
pub use srg::{Spectrum, SrgParams, TightParams};
