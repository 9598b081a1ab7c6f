//! Independent brute-force validation of certified pairs.

pub mod freeness;
mod sampling;
pub mod words;

pub use freeness::{freeness_check, local_commutativity_check, CommutativityReport, FreenessReport};
pub use sampling::{sample_points, table_invariant_sample, SampleReport, TableSets};
pub use words::{enumerate_reduced, Letter, WordPath};
