use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use dpf_core::pipeline::{self, run_all, Ctx, Manifest, PipelineConfig, Providers, MANIFEST_DIR};
use dpf_core::Error;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn config_in(dir: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig::load(&fixtures().join("pipeline.toml")).unwrap();
    cfg.artifact_dir = dir.to_path_buf();
    cfg
}

fn run(cfg: &PipelineConfig, force: bool) -> Vec<Manifest> {
    let providers = Providers::mock(cfg).unwrap();
    run_all(&Ctx { cfg, providers: &providers, force }).unwrap()
}

/// Relative path -> bytes for every file under `root`.
fn tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(base: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                walk(base, &p, out);
            } else {
                let rel = p.strip_prefix(base).unwrap().to_string_lossy().replace('\\', "/");
                out.insert(rel, std::fs::read(&p).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}

fn split_manifests(t: BTreeMap<String, Vec<u8>>) -> (BTreeMap<String, Vec<u8>>, BTreeMap<String, Manifest>) {
    let mut data = BTreeMap::new();
    let mut manifests = BTreeMap::new();
    for (k, v) in t {
        if k.contains(MANIFEST_DIR) {
            let mut m: Manifest = serde_json::from_slice(&v).unwrap();
            m.wall_time_ms = 0;
            manifests.insert(k, m);
        } else {
            data.insert(k, v);
        }
    }
    (data, manifests)
}

#[test]
fn stage_counts_are_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_in(dir.path());
    let ms = run(&cfg, false);
    let by: BTreeMap<_, _> = ms.iter().map(|m| (m.stage.as_str(), m)).collect();
    let clean = by["clean"];
    let stats: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("pretrain/clean.stats.json")).unwrap()).unwrap();
    assert_eq!(clean.counts["kept"], stats["kept"].as_u64().unwrap() as usize);
    assert_eq!(clean.counts["rejected"], stats["rejected"].as_u64().unwrap() as usize);
    assert_eq!(clean.counts["kept"] + clean.counts["rejected"], clean.counts["total"]);
    let sel = by["select"];
    assert_eq!(sel.counts["kept"] + sel.counts["rejected"] + sel.counts["quarantined"], sel.counts["total"]);
    assert!(by["ppvd_scan"].counts["flagged"] > 0);
    assert_eq!(by["ppvd_build"].counts["records"], by["ppvd_scan"].counts["flagged"]);
    let d = by["denoise"];
    assert_eq!(d.counts["removed_low"], 1);
    assert_eq!(d.counts["removed_high"], 1);
}

#[test]
fn two_runs_give_identical_trees() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run(&config_in(a.path()), false);
    run(&config_in(b.path()), false);
    let (da, ma) = split_manifests(tree(a.path()));
    let (db, mb) = split_manifests(tree(b.path()));
    assert!(da.len() > 20);
    assert_eq!(da.keys().collect::<Vec<_>>(), db.keys().collect::<Vec<_>>());
    for (k, v) in &da {
        assert!(v == &db[k], "{k} differs between runs");
    }
    assert_eq!(ma, mb);
}

#[test]
fn rerun_hits_cache_and_tamper_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_in(dir.path());
    assert!(run(&cfg, false).iter().all(|m| !m.cache_hit));
    assert!(run(&cfg, false).iter().all(|m| m.cache_hit));
    assert!(run(&cfg, true).iter().all(|m| !m.cache_hit));

    // a changed intermediate re-executes its consumer only
    let sel = dir.path().join("sft/select.jsonl");
    let mut text = std::fs::read_to_string(&sel).unwrap();
    text.push('\n');
    std::fs::write(&sel, text).unwrap();
    let ms = run(&cfg, false);
    let hit: BTreeMap<_, _> = ms.iter().map(|m| (m.stage.as_str(), m.cache_hit)).collect();
    assert!(hit["clean"]);
    // select's own output changed, so select re-runs and rewrites it
    assert!(!hit["select"]);
}

#[test]
fn missing_input_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config_in(dir.path());
    cfg.inputs.corpus = Some(dir.path().join("absent.jsonl"));
    let providers = Providers::mock(&cfg).unwrap();
    let err = run_all(&Ctx { cfg: &cfg, providers: &providers, force: false }).unwrap_err();
    assert!(matches!(&err, Error::MissingArtifact(m) if m.contains("absent.jsonl")), "{err}");
}

#[test]
fn changed_params_invalidate_only_that_stage() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config_in(dir.path());
    run(&cfg, false);
    cfg.preference.low = 0.2;
    let ms = run(&cfg, false);
    let hit: BTreeMap<_, _> = ms.iter().map(|m| (m.stage.as_str(), m.cache_hit)).collect();
    assert!(hit["score_preference"]);
    assert!(!hit["denoise"]);
}

#[test]
fn manifest_sits_next_to_output() {
    let dir = tempfile::tempdir().unwrap();
    run(&config_in(dir.path()), false);
    let p = pipeline::manifest_path("clean", &dir.path().join("pretrain/clean.jsonl"));
    assert!(p.starts_with(dir.path().join("pretrain").join(MANIFEST_DIR)));
    assert!(p.is_file());
}
