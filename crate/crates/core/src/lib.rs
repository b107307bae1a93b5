//! Verification tooling for intersection-closed set systems.
//!
//! [`setsys`] holds families and their normalizations, [`machinery`]
//! computes discarding sets, roots, exclusion cylinders and the bound
//! trace, [`claims`] checks each inequality and characterization on a
//! concrete family, [`explore`] enumerates and samples families for sweeps,
//! and [`io`] owns the file and report formats.

pub mod claims;
pub mod error;
pub mod explore;
pub mod io;
pub mod machinery;
pub mod setsys;

pub use claims::{full_report, ClaimId, ClaimReport, ClaimResult};
pub use error::{Error, Result, MAX_N};
pub use machinery::{bound_trace, BoundTrace, DiscardingRecord, ExclusionCylinder};
pub use setsys::{Family, FrequencyVector, Permutation, PreconditionReport, RawFamily, SubsetMask};
