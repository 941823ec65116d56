//! On-disk census cache keyed by lattice content.
//!
//! Enabled by pointing `MODELKIT_CACHE_DIR` at a directory. Each entry is a
//! JSON document holding the content hash and the census in the same shape
//! `enumerate --json` writes.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use modelkit::json::{CensusEntry, FactorisationJson};
use modelkit::{enumerate_model_structures, enumerate_ofs, FactorisationSystem, FiniteLattice, Limits, ModelStructure};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "MODELKIT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile<T> {
    hash: String,
    census: Vec<T>,
}

pub fn content_hash(l: &FiniteLattice) -> String {
    let mut h = Sha256::new();
    h.update(l.name().as_bytes());
    h.update(b"\n");
    h.update(l.to_text().as_bytes());
    hex::encode(h.finalize())
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn read<T: DeserializeOwned>(path: &Path, hash: &str) -> Option<Vec<T>> {
    let text = fs::read_to_string(path).ok()?;
    match serde_json::from_str::<CacheFile<T>>(&text) {
        Ok(file) if file.hash == hash => Some(file.census),
        _ => {
            eprintln!("warning: ignoring stale or unreadable cache file {}", path.display());
            None
        }
    }
}

fn write<T: Serialize>(path: &Path, hash: &str, census: Vec<T>) -> Result<()> {
    let dir = path.parent().expect("cache files live in a directory");
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    let file = CacheFile {
        hash: hash.to_owned(),
        census,
    };
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string_pretty(&file)? + "\n")
        .with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Model structures on `lattice`, from the cache when possible.
pub fn models(lattice: &Arc<FiniteLattice>, limits: Limits) -> Result<Vec<ModelStructure>> {
    let Some(dir) = cache_dir() else {
        return Ok(enumerate_model_structures(lattice, limits)?);
    };
    let hash = content_hash(lattice);
    let path = dir.join(format!("models-{hash}.json"));
    if let Some(entries) = read::<CensusEntry>(&path, &hash) {
        let parsed: Result<Vec<ModelStructure>, _> =
            entries.iter().map(|e| e.model.to_model(lattice.clone())).collect();
        if let Ok(census) = parsed {
            return Ok(census);
        }
        eprintln!("warning: cache file {} holds invalid structures", path.display());
    }
    let census = enumerate_model_structures(lattice, limits)?;
    write(&path, &hash, census.iter().map(CensusEntry::from_model).collect())?;
    Ok(census)
}

/// Factorisation systems on `lattice`, from the cache when possible.
pub fn systems(lattice: &Arc<FiniteLattice>, limits: Limits) -> Result<Vec<FactorisationSystem>> {
    let Some(dir) = cache_dir() else {
        return Ok(enumerate_ofs(lattice, limits)?);
    };
    let hash = content_hash(lattice);
    let path = dir.join(format!("ofs-{hash}.json"));
    if let Some(entries) = read::<FactorisationJson>(&path, &hash) {
        let parsed: Option<Vec<FactorisationSystem>> = entries
            .iter()
            .map(|e| {
                let left = lattice.parse_map_list(&e.left.join(",")).ok()?;
                let right = lattice.parse_map_list(&e.right.join(",")).ok()?;
                FactorisationSystem::new(lattice.clone(), left, right).ok()
            })
            .collect();
        if let Some(census) = parsed {
            return Ok(census);
        }
        eprintln!("warning: cache file {} holds invalid systems", path.display());
    }
    let census = enumerate_ofs(lattice, limits)?;
    write(
        &path,
        &hash,
        census.iter().map(FactorisationJson::from_system).collect(),
    )?;
    Ok(census)
}
