//! Strict social rules over bundled feature spaces.
//!
//! A social outcome is a tuple of feature values `v1 v2 ... vn` with
//! `0 <= vi < mi`. A strict complete social rule orients every pair of
//! outcomes, so it is a tournament on the `M = m1 * ... * mn` outcomes.
//! Voting proceeds by bundling features into *objects*; an outcome can only
//! be replaced by a preferred one that differs from it inside a single
//! object. This crate computes:
//!
//! * the structure of the dominance tournament (scores, irreducible
//!   components, condensation, 3-cycles, hamiltonian paths),
//! * agenda-driven voting dynamics, per-scheme basins and local/global optima,
//! * universal basins of attraction, u-local optima, deepness and witness
//!   object schemes,
//! * exact counting formulas with arbitrary precision,
//! * seeded Monte Carlo frequency tables over random rules.

pub mod dynamics;
pub mod enumeration;
mod error;
pub mod fixtures;
pub mod model;
pub mod stats;
pub mod tournament;
pub mod ubasin;

pub use error::{Error, Result};
pub use model::{Agenda, FeatureObject, FeatureSet, FeatureSpace, ObjectsScheme, Outcome, SocialRule};
pub use tournament::{Condensation, Tournament};
