use bfk_core::group::LatticeCache;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Settings shared by all campaigns. Only the fields that affect results
/// are echoed into reports; the cache directory and thread count are not.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub p: u32,
    pub max_order: usize,
    pub seed: u64,
    /// Groups up to this order get the exhaustive appendix suite.
    pub exhaustive_order: usize,
    /// Seeded appendix cases at orders above `exhaustive_order`.
    pub samples: usize,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: Option<usize>,
    #[serde(skip)]
    pub format: Format,
    /// Record wall times in reports (breaks byte-for-byte reproducibility).
    #[serde(skip)]
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 3,
            max_order: 81,
            seed: 1,
            exhaustive_order: 27,
            samples: 200,
            cache_dir: None,
            jobs: None,
            format: Format::Json,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn lattice_cache(&self) -> Option<LatticeCache> {
        match &self.cache_dir {
            Some(d) => Some(LatticeCache::new(d)),
            None => LatticeCache::from_env(),
        }
    }
}
