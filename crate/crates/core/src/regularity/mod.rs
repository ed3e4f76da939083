//! Regular pairs, the degree-form partition, and the reduced graph.

mod pair;
mod partition;
mod reduced;

pub use pair::{is_epsilon_regular, is_super_regular, slice_pair, PairError, PairVerdict, RegularityMode, SliceReport, SuperVerdict, EXHAUSTIVE_MAX};
pub use partition::{build_partition, check_contract, ContractReport, PairRecord, PartitionDump, PartitionError, RegularityPartition};
pub use reduced::{check_nonextremal_reduced, hamiltonian_cycle_reduced, reduced_graph, ConditionStatus, NonExtremalCheck, ReducedError, ReducedGraph};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest α the extremal constructions are proved for.
pub const EXTREMAL_ALPHA_MAX: f64 = 1.0 / 729.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub eps: f64,
    pub d: f64,
    pub alpha: f64,
    pub m0: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("{name} = {value} must lie strictly between 0 and 1")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("eps = {eps} must be below d = {d}")]
    EpsNotBelowD { eps: f64, d: f64 },
    #[error("alpha = {0} exceeds 1/729")]
    AlphaTooLarge(f64),
    #[error("m0 must be at least 2")]
    TooFewClusters,
}

impl Default for Params {
    fn default() -> Self {
        Params { eps: 0.05, d: 0.1, alpha: EXTREMAL_ALPHA_MAX, m0: 8 }
    }
}

impl Params {
    /// The schedule the non-extremal pipeline runs with at n in the low thousands.
    pub fn pipeline() -> Self {
        Params { eps: 0.15, d: 0.25, alpha: EXTREMAL_ALPHA_MAX, m0: 8 }
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha.cbrt()
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha.cbrt().powi(2)
    }

    /// The threshold `d - eps` used for friendliness.
    pub fn friendly_fraction(&self) -> f64 {
        self.d - self.eps
    }

    /// What the partition itself needs: every constant in (0, 1), m0 ≥ 2.
    pub fn validate_ranges(&self) -> Result<(), ParamsError> {
        for (name, value) in [("eps", self.eps), ("d", self.d), ("alpha", self.alpha)] {
            if !(value > 0.0 && value < 1.0) {
                return Err(ParamsError::OutOfRange { name, value });
            }
        }
        if self.m0 < 2 {
            return Err(ParamsError::TooFewClusters);
        }
        Ok(())
    }

    /// Range checks plus `eps < d`, which friendliness needs to mean anything.
    pub fn validate(&self) -> Result<(), ParamsError> {
        self.validate_ranges()?;
        if self.eps >= self.d {
            return Err(ParamsError::EpsNotBelowD { eps: self.eps, d: self.d });
        }
        Ok(())
    }

    /// As [`Params::validate`], plus the bound the extremal lemmas need.
    pub fn validate_extremal(&self) -> Result<(), ParamsError> {
        self.validate()?;
        if self.alpha > EXTREMAL_ALPHA_MAX * (1.0 + 1e-12) {
            return Err(ParamsError::AlphaTooLarge(self.alpha));
        }
        Ok(())
    }
}
