//! Exhaustive ground truth: the distance-constrained cycle search and the
//! small-order census built on it.

pub mod canon;
pub mod census;
pub mod search;

pub use canon::{canonical_form, canonical_max_degree, labeled_max_degree};
pub use census::{census, census_with, CensusConfig, CensusRecord, CensusSummary, Enumeration, PairOutcome, PairPolicy};
pub use search::{find_cycle_with_distance, OracleError, Outcome, SearchBudget, SearchResult};
