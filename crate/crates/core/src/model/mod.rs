//! Feature spaces, outcomes, social rules, objects schemes and agendas.
//!
//! Outcomes are indexed in mixed radix with feature 1 as the most
//! significant digit. Features are 0-based internally and 1-based in every
//! text format.

mod rule;
mod scheme;
mod space;

pub use rule::SocialRule;
pub use scheme::{Agenda, FeatureObject, ObjectsScheme};
pub use space::{FeatureSet, FeatureSpace, Fiber, Outcome};
