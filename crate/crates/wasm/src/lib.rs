//! Browser bindings for the demo page. Every export takes plain strings and
//! numbers and returns a JSON string; the `*_json` functions hold the logic
//! so they can be tested natively.

use std::sync::OnceLock;

use dpf_core::clean::{judge_document, Document, FilterConfig};
use dpf_core::dedup::{jaccard, minhash_signature, shingle, DedupParams};
use dpf_core::hashing::derive_seeds;
use dpf_core::text::{rouge_l_str, NGramModel, TokenMode};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Reference text for the perplexity rule: the clean documents of the
/// fixture corpus.
const REFERENCE_CORPUS: &str = include_str!("../../../fixtures/corpus.jsonl");

fn reference_lm() -> &'static NGramModel {
    static LM: OnceLock<NGramModel> = OnceLock::new();
    LM.get_or_init(|| {
        let texts: Vec<String> = REFERENCE_CORPUS
            .lines()
            .filter_map(|l| serde_json::from_str::<Document>(l).ok())
            .filter(|d| !d.id.starts_with("noise") && !d.id.starts_with("dup"))
            .map(|d| d.text)
            .collect();
        NGramModel::train(3, TokenMode::Char, 0.01, texts.iter().map(String::as_str)).expect("reference corpus trains")
    })
}

fn mode(name: &str) -> Result<TokenMode, String> {
    match name {
        "word" => Ok(TokenMode::Word),
        "char" => Ok(TokenMode::Char),
        other => Err(format!("unknown token mode {other:?}")),
    }
}

pub fn rouge_json(candidate: &str, reference: &str, token_mode: &str) -> Result<Value, String> {
    let s = rouge_l_str(candidate, reference, mode(token_mode)?).map_err(|e| e.to_string())?;
    Ok(json!({ "lcs": s.lcs, "precision": s.precision, "recall": s.recall, "f1": s.f1 }))
}

pub fn minhash_json(a: &str, b: &str, k: usize, bands: usize, rows: usize) -> Result<Value, String> {
    let params = DedupParams { k, bands, rows, num_perm: bands * rows, ..DedupParams::default() };
    params.validate().map_err(|e| e.to_string())?;
    let seeds = derive_seeds(params.seed, params.num_perm);
    let (sa, sb) = (shingle("a", a, k).map_err(|e| e.to_string())?, shingle("b", b, k).map_err(|e| e.to_string())?);
    let (ma, mb) = (minhash_signature(&sa, &seeds).map_err(|e| e.to_string())?, minhash_signature(&sb, &seeds).map_err(|e| e.to_string())?);
    let exact = jaccard(&sa.shingles, &sb.shingles);
    let bands_matching = ma.values.chunks(rows).zip(mb.values.chunks(rows)).filter(|(x, y)| x == y).count();
    Ok(json!({
        "shingles_a": sa.shingles.len(),
        "shingles_b": sb.shingles.len(),
        "exact_jaccard": exact,
        "estimate": ma.estimate(&mb),
        "bands_matching": bands_matching,
        "candidate_probability": params.candidate_probability(exact),
        "threshold": params.threshold,
    }))
}

pub fn filter_json(text: &str) -> Result<Value, String> {
    let cfg = FilterConfig::default();
    let verdict = judge_document(&Document::new("input", text), &cfg, reference_lm()).map_err(|e| e.to_string())?;
    let mut v = serde_json::to_value(&verdict).map_err(|e| e.to_string())?;
    v["limits"] = serde_json::to_value(&cfg).map_err(|e| e.to_string())?;
    Ok(v)
}

fn export(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rouge(candidate: &str, reference: &str, token_mode: &str) -> Result<String, JsError> {
    export(rouge_json(candidate, reference, token_mode))
}

#[wasm_bindgen]
pub fn minhash(a: &str, b: &str, k: usize, bands: usize, rows: usize) -> Result<String, JsError> {
    export(minhash_json(a, b, k, bands, rows))
}

#[wasm_bindgen]
pub fn filter(text: &str) -> Result<String, JsError> {
    export(filter_json(text))
}
