//! Stage orchestration over JSONL artifacts, run manifests and evaluation.

mod config;
mod eval;
mod manifest;
mod stages;

pub use config::*;
pub use eval::*;
pub use manifest::{config_hash, file_sha256, manifest_path, run_cached, Counts, FileHash, Manifest, MANIFEST_DIR};
pub use stages::*;
