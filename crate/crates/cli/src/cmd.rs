use std::path::Path;

use anyhow::{Context, Result};
use dpf_core::clean::{judge_document, Document};
use dpf_core::jsonl::{read_file, write_json};
use dpf_core::llm::Gateway;
use dpf_core::pipeline::{self as stages, evaluate_files, Ctx, EvalReport, Manifest, PipelineConfig, ProviderKind, Providers, ScorerSpec};
use dpf_core::text::{rouge_l_str, similarity_eval, NGramModel};
use dpf_core::Error;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use crate::{Cli, Command, ConfigCmd, MetricsCmd};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_PROVIDER: u8 = 3;

/// Bad flags or configuration, as opposed to bad data.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Usage(pub String);

pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<Usage>() {
            return EXIT_USAGE;
        }
        match cause.downcast_ref::<Error>() {
            Some(Error::Provider(_)) => return EXIT_PROVIDER,
            Some(Error::Config(_)) => return EXIT_USAGE,
            Some(_) => return EXIT_DATA,
            None => {}
        }
        if cause.is::<dpf_core::ProviderError>() {
            return EXIT_PROVIDER;
        }
    }
    EXIT_DATA
}

/// Parses a kebab/snake-case enum through its serde names.
pub fn parse_enum<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn load_config(cli: &Cli) -> Result<PipelineConfig> {
    let mut cfg = match &cli.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn providers(cfg: &PipelineConfig) -> Result<Providers> {
    Ok(match cfg.providers.kind {
        ProviderKind::Mock => Providers::mock(cfg)?,
        ProviderKind::Http => crate::http::providers(cfg)?,
    })
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn report(m: &Manifest) -> Result<()> {
    let counts: Vec<String> = m.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let hit = if m.cache_hit { " (cached)" } else { "" };
    eprintln!("{}{hit}: {}", m.stage, counts.join(" "));
    print_json(m)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScorersFile {
    scorers: Vec<ScorerSpec>,
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Usage(format!("--{name} must be within [0, 1], got {v}")).into())
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let mut cfg = load_config(&cli)?;
    let force = cli.force;
    match cli.command {
        Command::Config { which: ConfigCmd::PrintDefaults } => {
            print!("{}", PipelineConfig::defaults_toml());
            return Ok(());
        }
        Command::Config { which: ConfigCmd::Validate } => {
            cfg.validate()?;
            print!("{}", cfg.to_toml()?);
            return Ok(());
        }
        Command::Metrics { which } => return metrics(&cfg, which),
        _ => {}
    }

    match &cli.command {
        Command::Clean { lm: Some(lm), .. } => cfg.lm.model = Some(lm.clone()),
        Command::Dedup { threshold: Some(t), .. } => cfg.dedup.threshold = *t,
        Command::Select { threshold: Some(t), .. } => cfg.select.threshold = *t,
        Command::GenInstructions { chain_len, mode, .. } => {
            cfg.instruct.chain_len = chain_len.unwrap_or(cfg.instruct.chain_len);
            cfg.instruct.mode = mode.unwrap_or(cfg.instruct.mode);
        }
        Command::PpvdScan { threshold, split_ratio, .. } => {
            cfg.ppvd.scan_threshold = threshold.unwrap_or(cfg.ppvd.scan_threshold);
            cfg.ppvd.split_ratio = split_ratio.unwrap_or(cfg.ppvd.split_ratio);
        }
        Command::PpvdServe { match_threshold, match_on, bind, .. } => {
            cfg.ppvd.match_threshold = match_threshold.unwrap_or(cfg.ppvd.match_threshold);
            cfg.ppvd.match_on = match_on.unwrap_or(cfg.ppvd.match_on);
            cfg.ppvd.bind = bind.clone().unwrap_or(cfg.ppvd.bind);
        }
        _ => {}
    }
    cfg.validate()?;
    let providers = providers(&cfg)?;
    let ctx = Ctx { cfg: &cfg, providers: &providers, force };

    let manifest = match cli.command {
        Command::Clean { input, out_kept, out_rejected, .. } => {
            let rejected = out_rejected.unwrap_or_else(|| stages::sibling(&out_kept, "rejected.jsonl"));
            stages::clean_to(&ctx, &input, &out_kept, &rejected)?
        }
        Command::Dedup { io, report, .. } => {
            let report = report.unwrap_or_else(|| stages::sibling(&io.out, "report.json"));
            stages::dedup_to(&ctx, &io.input, &io.out, &report)?
        }
        Command::Select { io, .. } => stages::select(&ctx, &io.input, &io.out)?,
        Command::Optimize { io } => stages::optimize(&ctx, &io.input, &io.out)?,
        Command::GenInstructions { seed_pool, io, .. } => stages::gen_instructions(&ctx, &seed_pool, &io.input, &io.out)?,
        Command::GenPreference { sft, supplementary, out } => {
            stages::gen_preference(&ctx, &sft, supplementary.as_deref(), &out)?
        }
        Command::ScorePreference { io, scorers } => {
            let specs = match scorers {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    let file: ScorersFile = toml::from_str(&text).map_err(|e| Usage(format!("{}: {e}", p.display())))?;
                    file.scorers
                }
                None => cfg.preference.scorers.clone(),
            };
            stages::score_preference(&ctx, &io.input, &io.out, &specs)?
        }
        Command::Denoise { io, low, high, drop_negative } => {
            let low = low.unwrap_or(cfg.preference.low);
            let high = high.unwrap_or(cfg.preference.high);
            check_unit("low", low)?;
            check_unit("high", high)?;
            let drop = drop_negative || cfg.preference.drop_negative;
            stages::denoise(&ctx, &io.input, &io.out, low, high, drop)?
        }
        Command::PpvdScan { io, .. } => stages::ppvd_scan(&ctx, &io.input, &io.out)?,
        Command::PpvdBuild { reports, out_dir } => stages::ppvd_build(&ctx, &reports, &out_dir)?,
        Command::PpvdServe { index_dir, decision_log, .. } => {
            let log = decision_log.or_else(|| cfg.ppvd.decision_log.clone()).unwrap_or_else(|| index_dir.join("decisions.jsonl"));
            return crate::serve::run(&cfg, &providers, &index_dir, &log);
        }
        Command::Evaluate { candidates, references, mode, out } => {
            let judge = Gateway::new(&*providers.chat, &cfg.providers.judge_model);
            let rep = evaluate_files(&candidates, &references, mode, Some(&*providers.embedder), Some(judge))?;
            if let Some(out) = out {
                write_json(&out, &rep)?;
            }
            return print_json(&summary(&rep));
        }
        Command::Run => {
            for m in stages::run_all(&ctx)? {
                report(&m)?;
            }
            return Ok(());
        }
        Command::Metrics { .. } | Command::Config { .. } => unreachable!("handled above"),
    };
    report(&manifest)
}

fn summary(rep: &EvalReport) -> serde_json::Value {
    let errors = rep.rows.iter().filter(|r| r.error.is_some()).count();
    json!({
        "mode": rep.mode,
        "rows": rep.rows.len(),
        "scored": rep.scored,
        "errors": errors,
        "mean_similarity": rep.mean_similarity,
        "win_tie_loss": rep.win_tie_loss,
        "accuracy": rep.accuracy,
    })
}

fn load_or_fit(cfg: &PipelineConfig, lm: Option<&Path>, fallback_text: &str) -> Result<NGramModel> {
    let l = &cfg.lm;
    Ok(match lm.or(l.model.as_deref()) {
        Some(p) => NGramModel::load(p).with_context(|| format!("loading model {}", p.display()))?,
        None => NGramModel::train(l.order, l.mode, l.k, [fallback_text])?,
    })
}

fn metrics(cfg: &PipelineConfig, which: MetricsCmd) -> Result<()> {
    match which {
        MetricsCmd::Rouge { candidate, reference, mode } => print_json(&rouge_l_str(&candidate, &reference, mode)?),
        MetricsCmd::Similarity { candidate, reference, mode } => {
            cfg.validate()?;
            let p = providers(cfg)?;
            let score = similarity_eval(&candidate, &reference, &*p.embedder, mode)?;
            let rouge = rouge_l_str(&candidate, &reference, mode)?.f1;
            print_json(&json!({ "similarity": score, "rouge_l": rouge }))
        }
        MetricsCmd::Filter { text, lm } => {
            let model = load_or_fit(cfg, lm.as_deref(), &text)?;
            print_json(&judge_document(&Document::new("text", text), &cfg.filter, &model)?)
        }
        MetricsCmd::Perplexity { lm, text } => {
            let model = NGramModel::load(&lm).with_context(|| format!("loading model {}", lm.display()))?;
            print_json(&json!({ "perplexity": model.perplexity(&text)?, "order": model.order(), "vocab_size": model.vocab_size() }))
        }
        MetricsCmd::TrainLm { input, out } => {
            let (docs, bad): (Vec<Document>, _) = read_file(&input)?;
            let l = &cfg.lm;
            let model = NGramModel::train(l.order, l.mode, l.k, docs.iter().map(|d| d.text.as_str()))?;
            model.save(&out)?;
            eprintln!("trained on {} documents ({} unreadable lines skipped)", docs.len(), bad.len());
            print_json(&json!({ "out": out, "order": model.order(), "vocab_size": model.vocab_size(), "documents": docs.len() }))
        }
    }
}
