//! Exact arithmetic for single-orbit cyclic and quasi-cyclic subspace codes
//! in `F_{q^n}`, with orbit, sunflower and difference-set analysis.

pub mod arith;
pub mod diffset;
pub mod error;
pub mod field;
pub mod orbit;
mod poly;
pub mod report;
pub mod subspace;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement};
pub use orbit::{OrbitReport, StabilizerInfo, SunflowerMode, TrivialClass};
pub use subspace::Subspace;
