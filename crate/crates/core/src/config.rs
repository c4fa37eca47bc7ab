//! Run configuration: worker count, enumeration caps and the sampling seed.

use crate::error::{Error, Result};

/// Default cap on the number of flats (or subspaces) a single enumeration may visit.
pub const DEFAULT_FLAT_CAP: u128 = 100_000_000;
/// Default cap on the dimension of a code enumerated exhaustively.
pub const DEFAULT_CODEWORD_DIM_CAP: u32 = 24;
/// Default node budget for the nonexistence search.
pub const DEFAULT_NODE_CAP: u64 = 1 << 34;
/// Default cap on (n-r-2)-spaces inspected by the distance certificate search.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

/// Environment variables that override the caps in [`RunConfig::from_env`].
pub const ENV_FLAT_CAP: &str = "SUMFREE_FLAT_CAP";
pub const ENV_CODEWORD_DIM_CAP: &str = "SUMFREE_CODEWORD_DIM_CAP";
pub const ENV_NODE_CAP: &str = "SUMFREE_NODE_CAP";
pub const ENV_SEARCH_CAP: &str = "SUMFREE_SEARCH_CAP";
pub const ENV_JOBS: &str = "SUMFREE_JOBS";
pub const ENV_SEED: &str = "SUMFREE_SEED";

/// Settings shared by every long-running operation.
///
/// Identical configurations on identical inputs produce identical outputs:
/// parallel work is split by canonical index ranges and reduced to the
/// first hit in canonical order, and all sampling draws from `seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub jobs: usize,
    pub flat_cap: u128,
    pub codeword_dim_cap: u32,
    pub node_cap: u64,
    pub search_cap: u64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            jobs: 1,
            flat_cap: DEFAULT_FLAT_CAP,
            codeword_dim_cap: DEFAULT_CODEWORD_DIM_CAP,
            node_cap: DEFAULT_NODE_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            seed: 0x5eed,
        }
    }
}

fn env_num<T: std::str::FromStr>(key: &str) -> Result<Option<T>> {
    match std::env::var(key) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("{key}={v:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

impl RunConfig {
    /// Defaults, overridden by any `SUMFREE_*` environment variables present.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(v) = env_num(ENV_FLAT_CAP)? {
            cfg.flat_cap = v;
        }
        if let Some(v) = env_num(ENV_CODEWORD_DIM_CAP)? {
            cfg.codeword_dim_cap = v;
        }
        if let Some(v) = env_num(ENV_NODE_CAP)? {
            cfg.node_cap = v;
        }
        if let Some(v) = env_num(ENV_SEARCH_CAP)? {
            cfg.search_cap = v;
        }
        if let Some(v) = env_num(ENV_JOBS)? {
            cfg.jobs = v;
        }
        if let Some(v) = env_num(ENV_SEED)? {
            cfg.seed = v;
        }
        Ok(cfg)
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Runs `op` on a pool of `jobs` workers (inline when `jobs <= 1`).
    pub(crate) fn install<T: Send>(&self, op: impl FnOnce() -> T + Send) -> Result<T> {
        if self.jobs <= 1 {
            return Ok(op());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        Ok(pool.install(op))
    }

    pub(crate) fn check_flat_cap(&self, what: &'static str, count: u128) -> Result<()> {
        if count > self.flat_cap {
            Err(Error::CapExceeded { what, count, cap: self.flat_cap })
        } else {
            Ok(())
        }
    }
}
