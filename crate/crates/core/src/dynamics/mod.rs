//! Neighbor structure, agenda-driven voting and per-scheme optima.

mod agenda;
mod extremal;
mod lifting;
mod neighbors;

pub use agenda::{
    basin_for_agenda, basin_for_scheme, default_step_budget, is_global_for_agenda, is_global_for_scheme_bounded,
    run_agenda, GlobalVerdict, MoveTable, PathTrace, Terminal,
};
pub use extremal::{construct_extremal_rule, construct_extremal_rule_shifted};
pub use lifting::{exists_lifting_scheme, is_lifting};
pub(crate) use neighbors::best_in;
pub use neighbors::{
    best_neighbor, hyperplane_distance, is_free, is_local_optimum, preferred_neighbors, prominent_distance,
    separating_features,
};
