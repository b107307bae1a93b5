//! Discarding sets, extensions, roots, exclusion cylinders, and the bound
//! trace built from them.

mod cylinder;
mod discard;
mod trace;

pub use cylinder::{cylinders_disjoint, h_cylinder, h_materialize, ExclusionCylinder, DEFAULT_BUDGET};
pub(crate) use discard::common_part;
pub use discard::{discarding_sets, exclusion_size, extensions, level_records, root_of, DiscardingRecord};
pub use trace::{bound_trace, compute_trace, BoundTrace, TraceLevel};
