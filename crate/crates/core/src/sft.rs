//! SFT data selection and optimization through a judge model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exec::ordered_map;
use crate::hashing::content_hash;
use crate::llm::{
    after_last_header, ask_parsed, parse_optimization, parse_score, render, Gateway, Quarantined,
    TemplateId,
};
use crate::text::{tokenize, TokenMode};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub question: String,
    pub answer: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DialogueSample {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instruction: Option<String>,
    pub question: String,
    pub answer: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub turns: Vec<Turn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<u8>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

impl DialogueSample {
    pub fn new(id: impl Into<String>, question: impl Into<String>, answer: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            instruction: None,
            question: question.into(),
            answer: answer.into(),
            turns: Vec::new(),
            score: None,
            provenance: String::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.question.trim().is_empty() || self.answer.trim().is_empty() {
            return Err(Error::invalid(format!("sample {:?}: question and answer must be non-empty", self.id)));
        }
        if let Some(s) = self.score {
            if !(1..=10).contains(&s) {
                return Err(Error::invalid(format!("sample {:?}: score {s} outside 1..=10", self.id)));
            }
        }
        Ok(())
    }

    /// Full text of the dialogue (all turns), used by dedup and the memory scan.
    pub fn full_text(&self) -> String {
        let mut out = String::new();
        if let Some(i) = &self.instruction {
            out.push_str(i);
            out.push('\n');
        }
        for t in &self.turns {
            out.push_str(&t.question);
            out.push('\n');
            out.push_str(&t.answer);
            out.push('\n');
        }
        out.push_str(&self.question);
        out.push('\n');
        out.push_str(&self.answer);
        out
    }

    fn cache_key(&self) -> String {
        content_hash(&["sft_select", &self.question, &self.answer])
    }
}

/// Judge scores keyed by sample content hash.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScoreCache(pub BTreeMap<String, u8>);

impl ScoreCache {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::default());
        }
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        crate::jsonl::write_json(path, self)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SelectStats {
    pub total: usize,
    pub kept: usize,
    pub rejected: usize,
    pub quarantined: usize,
    pub cache_hits: usize,
    pub score_histogram: BTreeMap<u8, usize>,
}

#[derive(Debug, Clone, Default)]
pub struct SelectOutput {
    pub kept: Vec<DialogueSample>,
    pub rejected: Vec<DialogueSample>,
    pub quarantined: Vec<Quarantined>,
    pub stats: SelectStats,
}

fn score_prompt(question: &str, answer: &str) -> Result<String> {
    let slots = [("question", question), ("answer", answer)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    render(TemplateId::SftSelect, &slots)
}

/// Scores one (question, answer) pair with the selection prompt.
pub fn score_pair(judge: Gateway<'_>, question: &str, answer: &str) -> Result<u8> {
    let req = judge.request(score_prompt(question, answer)?);
    Ok(ask_parsed(judge.provider, &req, parse_score)?.score)
}

/// Keeps samples whose judge score is at least `threshold`.
pub fn select(
    samples: Vec<DialogueSample>,
    judge: Gateway<'_>,
    threshold: u8,
    cache: &mut ScoreCache,
) -> Result<SelectOutput> {
    if !(1..=10).contains(&threshold) {
        return Err(Error::Config(format!("selection threshold {threshold} outside 1..=10")));
    }
    for s in &samples {
        s.validate()?;
    }
    let cached: &ScoreCache = cache;
    let results: Vec<(Option<String>, Result<u8>, bool)> = ordered_map(&samples, |s| {
        let key = s.cache_key();
        match cached.0.get(&key) {
            Some(&score) => (None, Ok(score), true),
            None => (Some(key), score_pair(judge, &s.question, &s.answer), false),
        }
    });
    let mut out = SelectOutput::default();
    out.stats.total = samples.len();
    for (mut s, (key, res, hit)) in samples.into_iter().zip(results) {
        out.stats.cache_hits += usize::from(hit);
        match res {
            Ok(score) => {
                if let Some(k) = key {
                    cache.0.insert(k, score);
                }
                *out.stats.score_histogram.entry(score).or_default() += 1;
                s.score = Some(score);
                if score >= threshold {
                    out.kept.push(s);
                } else {
                    out.rejected.push(s);
                }
            }
            Err(e) => out.quarantined.push(Quarantined::new(&s.id, "select", &e)),
        }
    }
    out.stats.kept = out.kept.len();
    out.stats.rejected = out.rejected.len();
    out.stats.quarantined = out.quarantined.len();
    Ok(out)
}

/// Accepted band for optimized length relative to the original.
pub const LENGTH_BAND: (f64, f64) = (0.7, 1.3);

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OptimizeStats {
    pub total: usize,
    pub unchanged: usize,
    pub replaced: usize,
    pub length_violations: usize,
    pub quarantined: usize,
}

#[derive(Debug, Clone, Default)]
pub struct OptimizeOutput {
    /// Every non-quarantined sample, in input order.
    pub samples: Vec<DialogueSample>,
    pub quarantined: Vec<Quarantined>,
    pub stats: OptimizeStats,
}

/// Whether `candidate` stays within ±30% of `original`, in hybrid tokens.
pub fn within_length_band(original: &str, candidate: &str) -> bool {
    let a = tokenize(original, TokenMode::Word).len() as f64;
    let b = tokenize(candidate, TokenMode::Word).len() as f64;
    if a == 0.0 {
        return b == 0.0;
    }
    let r = b / a;
    r >= LENGTH_BAND.0 - 1e-12 && r <= LENGTH_BAND.1 + 1e-12
}

fn optimized_answer(optimized: &str) -> String {
    after_last_header(optimized, "Answer").unwrap_or(optimized.trim()).to_string()
}

enum OptOutcome {
    Unchanged,
    Replace(String),
    TooLong,
}

/// Runs the optimization prompt; only the answer may change, and only when
/// the rewrite keeps the length within the ±30% band.
pub fn optimize(samples: Vec<DialogueSample>, optimizer: Gateway<'_>) -> Result<OptimizeOutput> {
    let results: Vec<Result<OptOutcome>> = ordered_map(&samples, |s| {
        let data = format!("Question: {}\nAnswer: {}", s.question, s.answer);
        let slots = [("data".to_string(), data)].into_iter().collect();
        let req = optimizer.request(render(TemplateId::SftOptimize, &slots)?);
        let parsed = ask_parsed(optimizer.provider, &req, parse_optimization)?;
        Ok(match parsed.optimized {
            None => OptOutcome::Unchanged,
            Some(text) => {
                let answer = optimized_answer(&text);
                if !answer.is_empty() && within_length_band(&s.answer, &answer) {
                    OptOutcome::Replace(answer)
                } else {
                    OptOutcome::TooLong
                }
            }
        })
    });
    let mut out = OptimizeOutput::default();
    out.stats.total = samples.len();
    for (mut s, res) in samples.into_iter().zip(results) {
        match res {
            Ok(OptOutcome::Unchanged) => {
                out.stats.unchanged += 1;
                out.samples.push(s);
            }
            Ok(OptOutcome::Replace(answer)) => {
                out.stats.replaced += 1;
                s.answer = answer;
                out.samples.push(s);
            }
            Ok(OptOutcome::TooLong) => {
                out.stats.length_violations += 1;
                out.samples.push(s);
            }
            Err(e) => out.quarantined.push(Quarantined::new(&s.id, "optimize", &e)),
        }
    }
    out.stats.quarantined = out.quarantined.len();
    Ok(out)
}
