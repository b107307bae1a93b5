//! Subsets, intersection-closed families, and the normalizations applied
//! before any claim is checked.

mod closure;
pub(crate) mod family;
mod frequency;
mod mask;
pub(crate) mod precondition;
mod reduce;
mod relabel;

pub(crate) use closure::close_sets;
pub use closure::{intersection_closure, is_intersection_closed, ClosednessCheck};
pub use family::{Family, RawFamily, TABLE_MAX_N};
pub use frequency::{element_frequencies, FrequencyVector};
pub use mask::{Elements, SubsetMask, Subsets};
pub use precondition::{check_preconditions, PreconditionReport};
pub use reduce::{reduce_family, ReductionLog, ReductionStep};
pub use relabel::{canonical_relabel, relabel, relabel_admissible, Permutation};
