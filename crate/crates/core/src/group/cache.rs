//! On-disk cache of subgroup lattices.
//!
//! One JSON file per group, named `<content hash>.json`, holding the subgroups
//! in id order (members and generators) and the full Möbius table. A file is
//! used only if its recorded hash and table match the group; anything else
//! is treated as a miss and rewritten.

use super::lattice::{SubgroupLattice, DEFAULT_LATTICE_BOUND};
use super::FiniteGroup;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "BFK_CACHE_DIR";

const FORMAT: &str = "bfk-lattice-cache";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    hash: String,
    prime: u32,
    order: usize,
    subgroups: Vec<CachedSubgroup>,
    moebius: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct CachedSubgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LatticeCache { dir: dir.into() }
    }

    /// The directory named by `BFK_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: &FiniteGroup) -> PathBuf {
        self.dir.join(format!("{}.json", g.content_hash()))
    }

    /// Loads the lattice of `g` from the cache, or enumerates it and writes
    /// the cache file.
    pub fn lattice(&self, g: Arc<FiniteGroup>) -> Result<SubgroupLattice> {
        if let Some(l) = self.load(g.clone())? {
            return Ok(l);
        }
        let l = SubgroupLattice::with_bound(g, DEFAULT_LATTICE_BOUND)?;
        self.store(&l)?;
        Ok(l)
    }

    /// `Ok(None)` when there is no usable file for `g`.
    pub fn load(&self, g: Arc<FiniteGroup>) -> Result<Option<SubgroupLattice>> {
        let path = self.path_for(&g);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path, e)),
        };
        Ok(decode(g, &text))
    }

    pub fn store(&self, l: &SubgroupLattice) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.dir).map_err(|e| io_err(&self.dir, e))?;
        let g = l.group();
        let file = CacheFile {
            format: FORMAT.into(),
            version: VERSION,
            hash: g.content_hash(),
            prime: g.prime(),
            order: g.order(),
            subgroups: l
                .subgroups()
                .iter()
                .map(|s| CachedSubgroup {
                    members: s.members().to_vec(),
                    generators: s.generators().to_vec(),
                })
                .collect(),
            moebius: (0..l.len()).map(|s| l.moebius_row(s).to_vec()).collect(),
        };
        let path = self.path_for(g);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&file).map_err(|e| io_err(&path, e))?;
        std::fs::write(&tmp, text).map_err(|e| io_err(&tmp, e))?;
        std::fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
        Ok(path)
    }
}

/// Reads a cache file's text for `g`; `None` unless it is well formed,
/// belongs to `g`, and passes lattice validation.
pub fn decode(g: Arc<FiniteGroup>, text: &str) -> Option<SubgroupLattice> {
    let Ok(file) = serde_json::from_str::<CacheFile>(text) else {
        return None;
    };
    if file.format != FORMAT
        || file.version != VERSION
        || file.hash != g.content_hash()
        || file.prime != g.prime()
        || file.order != g.order()
    {
        return None;
    }
    let parts = file.subgroups.into_iter().map(|s| (s.members, s.generators)).collect();
    let Ok(l) = SubgroupLattice::from_parts(g, parts) else {
        return None;
    };
    if l.preload_moebius(file.moebius).is_err() {
        return None;
    }
    Some(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;

    #[test]
    fn round_trip_through_disk() {
        let dir = std::env::temp_dir().join(format!("bfk-cache-test-{}", std::process::id()));
        let cache = LatticeCache::new(&dir);
        let g = Arc::new("xsp:3".parse::<GroupDescriptor>().unwrap().build().unwrap());
        let fresh = cache.lattice(g.clone()).unwrap();
        assert!(cache.path_for(&g).exists());
        let loaded = cache.load(g.clone()).unwrap().expect("cache hit");
        assert_eq!(loaded.subgroups(), fresh.subgroups());
        assert_eq!(loaded.classes(), fresh.classes());
        for s in 0..fresh.len() {
            assert_eq!(loaded.moebius_row(s), fresh.moebius_row(s));
        }
        // A corrupted file is a miss, not an error.
        std::fs::write(cache.path_for(&g), "{\"format\": 1}").unwrap();
        assert!(cache.load(g).unwrap().is_none());
        std::fs::remove_dir_all(dir).ok();
    }
}
