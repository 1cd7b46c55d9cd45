//! Content-addressed store of resolution levels.
//!
//! Entries are keyed by the SHA-256 of the serialized track category and the
//! depth, and hold the generator words of each level as JSON. An entry that
//! fails to load or disagrees with the gate is ignored and rewritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use trackhom::resolution::{GateReport, LevelData, Resolution};
use trackhom::track::FinTrackCategory;

use crate::error::CliError;

const CACHE_SCHEMA: &str = "trackhom.levels/1";

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: String,
    key: String,
    depth: usize,
    levels: Vec<LevelData>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheUse {
    Disabled,
    Hit,
    Miss,
}

pub fn cache_key(x: &FinTrackCategory, depth: usize) -> Result<String, CliError> {
    let json = serde_json::to_vec(x).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut h = Sha256::new();
    h.update(&json);
    h.update(depth.to_le_bytes());
    Ok(hex::encode(h.finalize()))
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Builds the resolution of `x` to `gate.max_level()`, through the cache when
/// `dir` is given. The gate has already been run by the caller.
pub fn resolve(x: &FinTrackCategory, gate: GateReport, dir: Option<&Path>) -> Result<(Resolution, CacheUse), CliError> {
    let depth = gate.max_level();
    let Some(dir) = dir else {
        return Ok((Resolution::new(x, depth, gate.bound)?, CacheUse::Disabled));
    };
    let key = cache_key(x, depth)?;
    let path = entry_path(dir, &key);
    if let Some(res) = load(&path, &key, x, &gate) {
        return Ok((res, CacheUse::Hit));
    }
    let res = Resolution::new(x, depth, gate.bound)?;
    store(dir, &path, &Entry { schema: CACHE_SCHEMA.into(), key, depth, levels: res.levels().to_vec() })?;
    Ok((res, CacheUse::Miss))
}

fn load(path: &Path, key: &str, x: &FinTrackCategory, gate: &GateReport) -> Option<Resolution> {
    let bytes = fs::read(path).ok()?;
    let entry: Entry = serde_json::from_slice(&bytes).ok()?;
    if entry.schema != CACHE_SCHEMA || entry.key != key || entry.depth != gate.max_level() {
        return None;
    }
    Resolution::from_levels(x, gate.clone(), entry.levels).ok()
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial entry.
fn store(dir: &Path, path: &Path, entry: &Entry) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Internal(format!("cache {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = dir.join(format!(".{}.{}.tmp", entry.key, std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    serde_json::to_writer(&mut f, entry).map_err(|e| CliError::Internal(e.to_string()))?;
    f.flush().map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io)
}
