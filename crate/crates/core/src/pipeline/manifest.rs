use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::hashing::sha256_hex;
use crate::{Error, Result};

pub type Counts = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileHash {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub stage: String,
    pub inputs: Vec<FileHash>,
    pub outputs: Vec<FileHash>,
    pub config_hash: String,
    pub seed: u64,
    pub counts: Counts,
    pub wall_time_ms: u64,
    pub cache_hit: bool,
}

pub const MANIFEST_DIR: &str = ".manifests";

pub fn file_sha256(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingArtifact(path.display().to_string()),
        _ => Error::Io(e),
    })?;
    Ok(sha256_hex(&bytes))
}

fn hashes(paths: &[PathBuf]) -> Result<Vec<FileHash>> {
    paths
        .iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(FileHash { name, sha256: file_sha256(p)? })
        })
        .collect()
}

/// Where the manifest for a stage writing `primary` lives.
pub fn manifest_path(stage: &str, primary: &Path) -> PathBuf {
    let dir = primary.parent().unwrap_or(Path::new("."));
    let name = primary.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    dir.join(MANIFEST_DIR).join(format!("{name}.{stage}.json"))
}

pub fn config_hash(params: &impl Serialize) -> Result<String> {
    Ok(sha256_hex(serde_json::to_string(params)?.as_bytes()))
}

/// Runs `body` unless a manifest shows the same stage already ran on
/// identical inputs and parameters and its outputs are untouched.
pub fn run_cached(
    stage: &str,
    inputs: &[PathBuf],
    outputs: &[PathBuf],
    params: &impl Serialize,
    seed: u64,
    force: bool,
    body: impl FnOnce() -> Result<Counts>,
) -> Result<Manifest> {
    let primary = outputs.first().ok_or_else(|| Error::invalid("stage declares no outputs"))?;
    for p in inputs {
        if !p.is_file() {
            return Err(Error::MissingArtifact(format!("{stage}: input {} does not exist", p.display())));
        }
    }
    let started = Instant::now();
    let input_hashes = hashes(inputs)?;
    let cfg_hash = config_hash(&(stage, params, seed))?;
    let mpath = manifest_path(stage, primary);

    if !force {
        if let Some(prev) = std::fs::read_to_string(&mpath).ok().and_then(|t| serde_json::from_str::<Manifest>(&t).ok()) {
            let outputs_intact = hashes(outputs).map(|h| h == prev.outputs).unwrap_or(false);
            if prev.inputs == input_hashes && prev.config_hash == cfg_hash && outputs_intact {
                let m = Manifest { cache_hit: true, wall_time_ms: started.elapsed().as_millis() as u64, ..prev };
                crate::jsonl::write_json(&mpath, &m)?;
                return Ok(m);
            }
        }
    }

    let counts = body()?;
    let m = Manifest {
        stage: stage.to_string(),
        inputs: input_hashes,
        outputs: hashes(outputs)?,
        config_hash: cfg_hash,
        seed,
        counts,
        wall_time_ms: started.elapsed().as_millis() as u64,
        cache_hit: false,
    };
    crate::jsonl::write_json(&mpath, &m)?;
    Ok(m)
}
