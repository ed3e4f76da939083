//! Instance generation and run configuration shared by the CLI and the
//! test suites.

pub mod gen;

use serde::{Deserialize, Serialize};

use crate::regularity::{Params, ParamsError};

pub use gen::{
    dirac_bound, gen_ec1, gen_ec2, gen_random_dirac, gen_sharpness_bipartite, gen_sharpness_split, Family, GenError,
    InstanceSpec,
};

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "HAMLOCATE_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: Params,
    pub seed: u64,
    /// Oracle node budget per search.
    pub oracle_nodes: Option<u64>,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { params: Params::pipeline(), seed: 0, oracle_nodes: None, workers: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ParamsError> {
        self.params.validate()
    }

    /// Explicit setting, else `HAMLOCATE_THREADS`, else rayon's default.
    pub fn worker_count(&self) -> Option<usize> {
        self.workers.or_else(|| std::env::var(THREADS_ENV).ok()?.trim().parse().ok()).filter(|&w| w > 0)
    }

    /// Installs the global rayon pool once; later calls are no-ops.
    pub fn install_pool(&self) {
        if let Some(w) = self.worker_count() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
        }
    }
}
