use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{PipelineConfig, ScorerKind, ScorerSpec};
use super::manifest::{file_sha256, run_cached, Counts, Manifest};
use crate::clean::{clean_corpus, Document, FilterConfig};
use crate::dedup::{dedupe, record_text};
use crate::instruct::{generate_instructions, score_pool, select_chain, SeedExample};
use crate::jsonl::{read_file, read_file_strict, write_file, write_json};
use crate::llm::{ChatClient, ChatProvider, Embedder, Gateway, HashEmbedder, MockChat};
use crate::ppvd::{build_linked, memory_scan, MemoryRiskReport};
use crate::pref::{build_annotation_set, denoise as denoise_pairs, generate_preferences, score_pairs, FeatureScorer, PreferencePair, RewardScorer};
use crate::sft::{optimize as optimize_samples, select as select_samples, DialogueSample, ScoreCache};
use crate::text::NGramModel;
use crate::{Error, Result};

pub type ScorerFactory = Arc<dyn Fn(&ScorerSpec) -> Result<Box<dyn RewardScorer>> + Send + Sync>;

/// Model backends for the LLM-driven stages.
#[derive(Clone)]
pub struct Providers {
    pub chat: Arc<dyn ChatProvider>,
    pub embedder: Arc<dyn Embedder>,
    /// Builds scorers of kind `http`; without it such scorers are an error.
    pub http_scorers: Option<ScorerFactory>,
}

impl Providers {
    /// Offline backends: the curator mock (plus any fixture file) behind the
    /// regular client, and the seeded hashing embedder.
    pub fn mock(cfg: &PipelineConfig) -> Result<Self> {
        let mut chat = MockChat::curator(cfg.seed);
        if let Some(f) = &cfg.providers.mock_fixtures {
            chat = chat.with_fixture_file(f)?;
        }
        if let Some(m) = &cfg.providers.mock_memorized {
            let records: Vec<Value> = read_file_strict(m)?;
            let texts = records.iter().filter_map(record_text).collect();
            chat = chat.with_memorized(&cfg.providers.policy_model, texts);
        }
        let client = ChatClient::new(Arc::new(chat), cfg.providers.client);
        Ok(Self {
            chat: Arc::new(client),
            embedder: Arc::new(HashEmbedder::new(cfg.providers.mock_embed_dim, cfg.seed)),
            http_scorers: None,
        })
    }

    pub fn scorers(&self, specs: &[ScorerSpec]) -> Result<Vec<Box<dyn RewardScorer>>> {
        specs
            .iter()
            .map(|s| match s.kind {
                ScorerKind::Feature => Ok(Box::new(FeatureScorer::new(&s.id, s.seed)) as Box<dyn RewardScorer>),
                ScorerKind::Http => match &self.http_scorers {
                    Some(f) => f(s),
                    None => Err(Error::Config(format!("no http scorer backend for {:?}", s.id))),
                },
            })
            .collect()
    }
}

pub struct Ctx<'a> {
    pub cfg: &'a PipelineConfig,
    pub providers: &'a Providers,
    pub force: bool,
}

impl Ctx<'_> {
    fn gateway<'m>(&'m self, model: &'m str) -> Gateway<'m> {
        Gateway::new(&*self.providers.chat, model)
    }

    fn run(
        &self,
        stage: &str,
        inputs: &[PathBuf],
        outputs: &[PathBuf],
        params: &impl Serialize,
        body: impl FnOnce() -> Result<Counts>,
    ) -> Result<Manifest> {
        run_cached(stage, inputs, outputs, params, self.cfg.seed, self.force, body)
    }

    /// Model names and backend kind; part of every model stage's cache key.
    fn backend(&self) -> Value {
        let p = &self.cfg.providers;
        json!({
            "kind": p.kind,
            "chat_url": p.chat_url,
            "embed_url": p.embed_url,
            "models": [&p.generator_model, &p.judge_model, &p.optimizer_model, &p.policy_model, &p.general_model, &p.embed_model],
            "vote_models": p.vote_models,
            "mock_embed_dim": p.mock_embed_dim,
            "fixtures": p.mock_fixtures.as_ref().map(|f| file_sha256(f).unwrap_or_default()),
            "memorized": p.mock_memorized.as_ref().map(|f| file_sha256(f).unwrap_or_default()),
        })
    }
}

/// `dir/stem.suffix` next to `out`.
pub fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{suffix}"))
}

fn counts<const N: usize>(pairs: [(&str, usize); N]) -> Counts {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn clean(ctx: &Ctx, input: &Path, out: &Path) -> Result<Manifest> {
    clean_to(ctx, input, out, &sibling(out, "rejected.jsonl"))
}

/// `clean` with an explicit path for the rejected documents.
pub fn clean_to(ctx: &Ctx, input: &Path, out: &Path, rejected: &Path) -> Result<Manifest> {
    let rejected = rejected.to_path_buf();
    let stats_path = sibling(out, "stats.json");
    let mut inputs = vec![input.to_path_buf()];
    inputs.extend(ctx.cfg.lm.model.clone());
    let params = (&ctx.cfg.filter, &ctx.cfg.lm);
    ctx.run("clean", &inputs, &[out.to_path_buf(), rejected.clone(), stats_path.clone()], &params, || {
        let (docs, bad): (Vec<Document>, _) = read_file(input)?;
        let lm = match &ctx.cfg.lm.model {
            Some(p) => NGramModel::load(p)?,
            None => first_pass_lm(&docs, ctx)?,
        };
        let res = clean_corpus(docs, bad, &ctx.cfg.filter, &lm)?;
        write_file(out, &res.kept)?;
        write_file(&rejected, &res.rejected)?;
        write_json(&stats_path, &res.stats)?;
        Ok(counts([
            ("total", res.stats.total),
            ("kept", res.stats.kept),
            ("rejected", res.stats.rejected),
            ("parse_errors", res.stats.parse_errors),
        ]))
    })
}

/// Model fit on the documents that pass every rule except perplexity.
fn first_pass_lm(docs: &[Document], ctx: &Ctx) -> Result<NGramModel> {
    let l = &ctx.cfg.lm;
    let no_ppl = FilterConfig { max_perplexity: f64::INFINITY, ..ctx.cfg.filter.clone() };
    let everything = NGramModel::train(l.order, l.mode, l.k, docs.iter().map(|d| d.text.as_str()))?;
    let first = clean_corpus(docs.to_vec(), Vec::new(), &no_ppl, &everything)?;
    if first.kept.is_empty() {
        return Ok(everything);
    }
    NGramModel::train(l.order, l.mode, l.k, first.kept.iter().map(|d| d.text.as_str()))
}

fn record_id(v: &Value) -> Result<String> {
    v.get("id")
        .and_then(|x| x.as_str())
        .map(str::to_string)
        .ok_or_else(|| Error::invalid("record without a string `id` field"))
}

pub fn dedup(ctx: &Ctx, input: &Path, out: &Path) -> Result<Manifest> {
    dedup_to(ctx, input, out, &sibling(out, "report.json"))
}

/// `dedup` with an explicit path for the cluster report.
pub fn dedup_to(ctx: &Ctx, input: &Path, out: &Path, report_path: &Path) -> Result<Manifest> {
    let report_path = report_path.to_path_buf();
    ctx.run("dedup", &[input.to_path_buf()], &[out.to_path_buf(), report_path.clone()], &ctx.cfg.dedup, || {
        let records: Vec<Value> = read_file_strict(input)?;
        let items = records
            .iter()
            .map(|v| {
                let id = record_id(v)?;
                let text = record_text(v).ok_or_else(|| Error::invalid(format!("record {id:?} has no text")))?;
                Ok((id, text))
            })
            .collect::<Result<Vec<_>>>()?;
        let report = dedupe(&items, &ctx.cfg.dedup)?;
        let kept: BTreeSet<&str> = report.kept_ids.iter().map(String::as_str).collect();
        let survivors: Vec<&Value> = records.iter().zip(&items).filter(|(_, (id, _))| kept.contains(id.as_str())).map(|(v, _)| v).collect();
        write_file(out, &survivors)?;
        write_json(&report_path, &report)?;
        Ok(counts([
            ("total", items.len()),
            ("kept", survivors.len()),
            ("removed", report.removed),
            ("clusters", report.clusters.len()),
        ]))
    })
}

pub fn select(ctx: &Ctx, input: &Path, out: &Path) -> Result<Manifest> {
    let rejected = sibling(out, "rejected.jsonl");
    let quarantine = sibling(out, "quarantine.jsonl");
    let stats_path = sibling(out, "stats.json");
    let cache_path = out.with_file_name(".cache").join("select_scores.json");
    let params = (&ctx.cfg.select, ctx.backend());
    let outputs = [out.to_path_buf(), rejected.clone(), quarantine.clone(), stats_path.clone()];
    ctx.run("select", &[input.to_path_buf()], &outputs, &params, || {
        let samples: Vec<DialogueSample> = read_file_strict(input)?;
        let mut cache = ScoreCache::load(&cache_path)?;
        let judge = ctx.gateway(&ctx.cfg.providers.judge_model);
        let res = select_samples(samples, judge, ctx.cfg.select.threshold, &mut cache)?;
        cache.save(&cache_path)?;
        write_file(out, &res.kept)?;
        write_file(&rejected, &res.rejected)?;
        write_file(&quarantine, &res.quarantined)?;
        write_json(&stats_path, &res.stats)?;
        Ok(counts([
            ("total", res.stats.total),
            ("kept", res.stats.kept),
            ("rejected", res.stats.rejected),
            ("quarantined", res.stats.quarantined),
        ]))
    })
}

pub fn optimize(ctx: &Ctx, input: &Path, out: &Path) -> Result<Manifest> {
    let quarantine = sibling(out, "quarantine.jsonl");
    let stats_path = sibling(out, "stats.json");
    let outputs = [out.to_path_buf(), quarantine.clone(), stats_path.clone()];
    ctx.run("optimize", &[input.to_path_buf()], &outputs, &ctx.backend(), || {
        let samples: Vec<DialogueSample> = read_file_strict(input)?;
        let res = optimize_samples(samples, ctx.gateway(&ctx.cfg.providers.optimizer_model))?;
        write_file(out, &res.samples)?;
        write_file(&quarantine, &res.quarantined)?;
        write_json(&stats_path, &res.stats)?;
        Ok(counts([
            ("total", res.stats.total),
            ("unchanged", res.stats.unchanged),
            ("replaced", res.stats.replaced),
            ("length_violations", res.stats.length_violations),
            ("quarantined", res.stats.quarantined),
        ]))
    })
}

pub fn gen_instructions(ctx: &Ctx, pool_path: &Path, input: &Path, out: &Path) -> Result<Manifest> {
    let quarantine = sibling(out, "quarantine.jsonl");
    let chain_path = sibling(out, "chain.json");
    let params = (&ctx.cfg.instruct, ctx.backend());
    let outputs = [out.to_path_buf(), quarantine.clone(), chain_path.clone()];
    ctx.run("gen_instructions", &[pool_path.to_path_buf(), input.to_path_buf()], &outputs, &params, || {
        let pool: Vec<SeedExample> = read_file_strict(pool_path)?;
        let samples: Vec<DialogueSample> = read_file_strict(input)?;
        let scored = score_pool(&pool, ctx.gateway(&ctx.cfg.providers.judge_model))?;
        let chain = select_chain(&scored.examples, ctx.cfg.instruct.chain_len)?;
        let res = generate_instructions(samples, &chain, ctx.gateway(&ctx.cfg.providers.generator_model), ctx.cfg.instruct.mode)?;
        let mut quarantined = scored.dropped.clone();
        quarantined.extend(res.quarantined.iter().cloned());
        write_file(out, &res.samples)?;
        write_file(&quarantine, &quarantined)?;
        write_json(&chain_path, &chain)?;
        Ok(counts([
            ("pool", pool.len()),
            ("pool_dropped", scored.dropped.len()),
            ("samples", res.samples.len()),
            ("generated", res.generated),
            ("quarantined", res.quarantined.len()),
        ]))
    })
}

pub fn gen_preference(ctx: &Ctx, sft: &Path, supplementary: Option<&Path>, out: &Path) -> Result<Manifest> {
    let quarantine = sibling(out, "quarantine.jsonl");
    let annotation = sibling(out, "annotation.jsonl");
    let mut inputs = vec![sft.to_path_buf()];
    inputs.extend(supplementary.map(Path::to_path_buf));
    let p = &ctx.cfg.preference;
    let params = (p.n_sft, p.n_supplementary, p.candidates, p.temperature, ctx.backend());
    let outputs = [out.to_path_buf(), quarantine.clone(), annotation.clone()];
    ctx.run("gen_preference", &inputs, &outputs, &params, || {
        let a: Vec<DialogueSample> = read_file_strict(sft)?;
        let b: Vec<DialogueSample> = match supplementary {
            Some(s) => read_file_strict(s)?,
            None => Vec::new(),
        };
        let items = build_annotation_set(&a, &b, p.n_sft, p.n_supplementary, ctx.cfg.seed)?;
        let names = &ctx.cfg.providers.vote_models;
        let judges: Vec<Gateway> = names.iter().map(|m| ctx.gateway(m)).collect();
        let policy = ctx.gateway(&ctx.cfg.providers.policy_model);
        let res = generate_preferences(&items, policy, &judges, p.candidates, p.temperature, ctx.cfg.seed)?;
        write_file(out, &res.pairs)?;
        write_file(&quarantine, &res.quarantined)?;
        write_file(&annotation, &items)?;
        Ok(counts([
            ("annotation", items.len()),
            ("pairs", res.pairs.len()),
            ("with_duplicates", res.pairs.iter().filter(|p| p.duplicates).count()),
            ("quarantined", res.quarantined.len()),
        ]))
    })
}

pub fn score_preference(ctx: &Ctx, input: &Path, out: &Path, scorers: &[ScorerSpec]) -> Result<Manifest> {
    let quarantine = sibling(out, "quarantine.jsonl");
    ctx.run("score_preference", &[input.to_path_buf()], &[out.to_path_buf(), quarantine.clone()], &scorers, || {
        let pairs: Vec<PreferencePair> = read_file_strict(input)?;
        let built = ctx.providers.scorers(scorers)?;
        let refs: Vec<&dyn RewardScorer> = built.iter().map(|b| b.as_ref()).collect();
        let res = score_pairs(pairs, &refs)?;
        write_file(out, &res.pairs)?;
        write_file(&quarantine, &res.quarantined)?;
        Ok(counts([("scored", res.pairs.len()), ("quarantined", res.quarantined.len()), ("scorers", refs.len())]))
    })
}

pub fn denoise(ctx: &Ctx, input: &Path, out: &Path, low: f64, high: f64, drop_negative: bool) -> Result<Manifest> {
    let removed = sibling(out, "removed.jsonl");
    let outputs = [out.to_path_buf(), removed.clone()];
    ctx.run("denoise", &[input.to_path_buf()], &outputs, &(low, high, drop_negative), || {
        let pairs: Vec<PreferencePair> = read_file_strict(input)?;
        let total = pairs.len();
        let res = denoise_pairs(pairs, low, high, drop_negative)?;
        #[derive(Serialize)]
        struct Removed<'a> {
            side: &'static str,
            #[serde(flatten)]
            pair: &'a PreferencePair,
        }
        let mut gone = Vec::new();
        for (side, list) in [("negative", &res.removed_negative), ("low", &res.removed_low), ("high", &res.removed_high)] {
            gone.extend(list.iter().map(|pair| Removed { side, pair }));
        }
        write_file(out, &res.kept)?;
        write_file(&removed, &gone)?;
        Ok(counts([
            ("total", total),
            ("kept", res.kept.len()),
            ("removed_low", res.removed_low.len()),
            ("removed_high", res.removed_high.len()),
            ("removed_negative", res.removed_negative.len()),
        ]))
    })
}

pub fn ppvd_scan(ctx: &Ctx, input: &Path, out: &Path) -> Result<Manifest> {
    let v = &ctx.cfg.ppvd;
    let params = (v.split_ratio, v.scan_threshold, ctx.backend());
    ctx.run("ppvd_scan", &[input.to_path_buf()], &[out.to_path_buf()], &params, || {
        let records: Vec<Value> = read_file_strict(input)?;
        let items = records
            .iter()
            .map(|r| {
                let id = record_id(r)?;
                let text = scan_text(r).ok_or_else(|| Error::invalid(format!("record {id:?} has no text")))?;
                Ok((id, text))
            })
            .collect::<Result<Vec<_>>>()?;
        let policy = ctx.gateway(&ctx.cfg.providers.policy_model);
        let reports = memory_scan(&items, policy, v.split_ratio, v.scan_threshold)?;
        write_file(out, &reports)?;
        Ok(counts([
            ("scanned", reports.len()),
            ("flagged", reports.iter().filter(|r| r.flagged).count()),
            ("errors", reports.iter().filter(|r| r.error.is_some()).count()),
        ]))
    })
}

/// Training text of a record: a dialogue sample's full text, else `text`.
fn scan_text(v: &Value) -> Option<String> {
    match serde_json::from_value::<DialogueSample>(v.clone()) {
        Ok(s) => Some(s.full_text()),
        Err(_) => v.get("text").and_then(|t| t.as_str()).map(str::to_string),
    }
}

pub const HIGH_RISK_FILE: &str = "high_risk.ppvd";
pub const SECURE_FILE: &str = "secure.ppvd";

pub fn ppvd_build(ctx: &Ctx, reports_path: &Path, out_dir: &Path) -> Result<Manifest> {
    let high_path = out_dir.join(HIGH_RISK_FILE);
    let secure_path = out_dir.join(SECURE_FILE);
    let skipped_path = out_dir.join("skipped.jsonl");
    let outputs = [high_path.clone(), secure_path.clone(), skipped_path.clone()];
    ctx.run("ppvd_build", &[reports_path.to_path_buf()], &outputs, &ctx.backend(), || {
        let reports: Vec<MemoryRiskReport> = read_file_strict(reports_path)?;
        let general = ctx.gateway(&ctx.cfg.providers.general_model);
        let (high, secure, skipped) = build_linked(&reports, general, &*ctx.providers.embedder)?;
        high.save(&high_path)?;
        secure.save(&secure_path)?;
        write_file(&skipped_path, &skipped)?;
        Ok(counts([("records", high.len()), ("skipped", skipped.len())]))
    })
}

/// Every stage in order over the configured inputs. Artifacts land under
/// `artifact_dir`.
pub fn run_all(ctx: &Ctx) -> Result<Vec<Manifest>> {
    let cfg = ctx.cfg;
    let need = |p: &Option<PathBuf>, name: &str| {
        p.clone().ok_or_else(|| Error::Config(format!("inputs.{name} is required for a full run")))
    };
    let corpus = need(&cfg.inputs.corpus, "corpus")?;
    let sft = need(&cfg.inputs.sft, "sft")?;
    let pool = need(&cfg.inputs.seed_pool, "seed_pool")?;
    let dir = &cfg.artifact_dir;
    let a = |rel: &str| dir.join(rel);
    let mut m = vec![
        clean(ctx, &corpus, &a("pretrain/clean.jsonl"))?,
        dedup(ctx, &a("pretrain/clean.jsonl"), &a("pretrain/dedup.jsonl"))?,
        dedup(ctx, &sft, &a("sft/dedup.jsonl"))?,
        select(ctx, &a("sft/dedup.jsonl"), &a("sft/select.jsonl"))?,
        optimize(ctx, &a("sft/select.jsonl"), &a("sft/optimize.jsonl"))?,
        gen_instructions(ctx, &pool, &a("sft/optimize.jsonl"), &a("sft/instructed.jsonl"))?,
    ];
    m.push(gen_preference(ctx, &a("sft/instructed.jsonl"), cfg.inputs.supplementary.as_deref(), &a("pref/pairs.jsonl"))?);
    m.push(score_preference(ctx, &a("pref/pairs.jsonl"), &a("pref/scored.jsonl"), &cfg.preference.scorers)?);
    let p = &cfg.preference;
    m.push(denoise(ctx, &a("pref/scored.jsonl"), &a("pref/denoised.jsonl"), p.low, p.high, p.drop_negative)?);
    m.push(ppvd_scan(ctx, &a("sft/instructed.jsonl"), &a("ppvd/reports.jsonl"))?);
    let flagged = m.last().and_then(|x| x.counts.get("flagged")).copied().unwrap_or(0);
    if flagged > 0 {
        m.push(ppvd_build(ctx, &a("ppvd/reports.jsonl"), &a("ppvd"))?);
    }
    Ok(m)
}
