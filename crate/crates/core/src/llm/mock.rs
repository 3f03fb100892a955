//! Deterministic stand-ins for chat and embedding providers.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use super::provider::{request_fingerprint, ChatProvider, Embedder, LlmRequest};
use crate::hashing::{mix64, seeded_hash};
use crate::text::{tokenize, TokenMode, Vector};
use crate::{ProviderError, Result};

type ReplyFn = Arc<dyn Fn(&LlmRequest) -> Result<String, ProviderError> + Send + Sync>;

/// Mock chat provider: fixture table keyed by request fingerprint, then a
/// fallback rule. Pure in the request, so runs are reproducible.
#[derive(Clone)]
pub struct MockChat {
    fixtures: HashMap<String, String>,
    memorized: Option<(String, Arc<Vec<String>>)>,
    fallback: ReplyFn,
}

impl MockChat {
    pub fn new(
        fallback: impl Fn(&LlmRequest) -> Result<String, ProviderError> + Send + Sync + 'static,
    ) -> Self {
        Self { fixtures: HashMap::new(), memorized: None, fallback: Arc::new(fallback) }
    }

    pub fn constant(reply: impl Into<String>) -> Self {
        let reply = reply.into();
        Self::new(move |_| Ok(reply.clone()))
    }

    /// Answers only from fixtures; anything else is a permanent error.
    pub fn fixtures_only() -> Self {
        Self::new(|req| {
            Err(ProviderError::permanent(format!(
                "no fixture for request {}",
                request_fingerprint(req)
            )))
        })
    }

    /// Template-aware replies in the format each prompt asks for.
    pub fn curator(seed: u64) -> Self {
        Self::new(move |req| Ok(curator_reply(req, seed)))
    }

    pub fn with_fixture(mut self, req: &LlmRequest, reply: impl Into<String>) -> Self {
        self.fixtures.insert(request_fingerprint(req), reply.into());
        self
    }

    /// Adds fixtures from a JSON object `{ "<fingerprint>": "<reply>", ... }`.
    pub fn with_fixture_json(mut self, json: &str) -> Result<Self> {
        let table: HashMap<String, String> = serde_json::from_str(json)?;
        self.fixtures.extend(table);
        Ok(self)
    }

    pub fn with_fixture_file(self, path: &std::path::Path) -> Result<Self> {
        let json = std::fs::read_to_string(path)?;
        self.with_fixture_json(&json)
    }

    /// Makes `model` behave as if it had memorized `texts`: a prompt that
    /// ends with a prefix of one of them (at least [`MIN_RECALL_PREFIX`]
    /// bytes) is answered with the rest of that text.
    pub fn with_memorized(mut self, model: &str, texts: Vec<String>) -> Self {
        self.memorized = Some((model.to_string(), Arc::new(texts)));
        self
    }

    fn recall(&self, req: &LlmRequest) -> Option<String> {
        let (model, texts) = self.memorized.as_ref()?;
        if &req.model != model || req.messages.len() != 1 {
            return None;
        }
        let prompt = req.last_user()?;
        texts.iter().find_map(|t| {
            let longest = t.len().min(prompt.len());
            (MIN_RECALL_PREFIX..=longest)
                .rev()
                .filter(|&k| t.is_char_boundary(k))
                .find(|&k| prompt.ends_with(&t[..k]))
                .map(|k| t[k..].to_string())
        })
    }
}

pub const MIN_RECALL_PREFIX: usize = 16;

impl ChatProvider for MockChat {
    fn complete(&self, req: &LlmRequest) -> Result<String, ProviderError> {
        if let Some(r) = self.fixtures.get(&request_fingerprint(req)) {
            return Ok(r.clone());
        }
        match self.recall(req) {
            Some(rest) => Ok(rest),
            None => (self.fallback)(req),
        }
    }
}

/// Replays a fixed sequence of results, then fails permanently.
pub struct ScriptedProvider {
    script: Mutex<VecDeque<Result<String, ProviderError>>>,
}

impl ScriptedProvider {
    pub fn new(script: Vec<Result<String, ProviderError>>) -> Self {
        Self { script: Mutex::new(script.into()) }
    }
}

impl ChatProvider for ScriptedProvider {
    fn complete(&self, _req: &LlmRequest) -> Result<String, ProviderError> {
        self.script
            .lock()
            .unwrap()
            .pop_front()
            .unwrap_or_else(|| Err(ProviderError::permanent("script exhausted")))
    }
}

const PHRASES: [&str; 16] = [
    "建议多喝温水",
    "注意休息",
    "避免辛辣刺激食物",
    "如症状持续请及时就医",
    "可以先观察两到三天",
    "必要时做血常规检查",
    "遵医嘱服用药物",
    "保持规律作息",
    "适当进行有氧运动",
    "饮食宜清淡",
    "监测体温变化",
    "不要自行加大药量",
    "可考虑做进一步影像学检查",
    "保持情绪稳定",
    "定期复查",
    "戒烟限酒",
];

fn mock_sentence(mut h: u64, n: usize) -> String {
    let mut parts = Vec::with_capacity(n);
    for _ in 0..n {
        h = mix64(h);
        parts.push(PHRASES[(h % PHRASES.len() as u64) as usize]);
    }
    parts.join("，") + "。"
}

fn after_last<'a>(text: &'a str, marker: &str) -> &'a str {
    text.rfind(marker).map(|i| &text[i + marker.len()..]).unwrap_or("").trim()
}

fn between<'a>(text: &'a str, start: &str, end: &str) -> &'a str {
    let Some(i) = text.find(start) else { return "" };
    let rest = &text[i + start.len()..];
    rest.find(end).map(|j| &rest[..j]).unwrap_or(rest).trim()
}

/// Deterministic, format-correct reply for each built-in template; free-form
/// prompts get a short synthetic medical answer that depends on the request
/// seed, so sampling with different seeds yields different texts.
pub fn curator_reply(req: &LlmRequest, seed: u64) -> String {
    let prompt = req.last_user().unwrap_or("");
    let all: String = req.messages.iter().map(|m| m.content.as_str()).collect::<Vec<_>>().join("\u{1}");
    let h = seeded_hash(seed ^ mix64(req.seed.unwrap_or(0)), &all);

    if prompt.contains("please score the following medical data") {
        let score = 5 + h % 6;
        format!("Score Result:\n{score}\nReason:\nMock assessment of professionalism, safety and fluency.")
    } else if prompt.contains("optimization assistant for medical text data") {
        let data = between(prompt, "Data:\n", "\n\nThe criteria");
        if h.is_multiple_of(3) && !data.is_empty() {
            format!(
                "Data Requires Optimization:\nyes\nOptimized Data:\n{data}（请遵医嘱）\nReason:\nAdded a safety reminder."
            )
        } else {
            "Data Requires Optimization:\nno\nOptimized Data:\nnull\nReason:\nNo issues found.".into()
        }
    } else if prompt.contains("generate the corresponding instruction") {
        let q = after_last(prompt, "Question:\n");
        format!("As an experienced physician, give a professional, safe and clear answer to: {q}")
    } else if prompt.contains("two doctors' responses") {
        let outcome = ["Win", "Lose", "Tie"][(h % 3) as usize];
        format!("Evaluation Result:\n{outcome}\nReason:\nMock comparison.")
    } else if prompt.contains("pick the best and the worst") {
        let n = prompt.lines().filter(|l| l.starts_with("Response ") && l.ends_with(':')).count().max(2) as u64;
        let best = h % n;
        let worst = (best + 1 + (mix64(h) % (n - 1))) % n;
        format!("Best Response:\n{}\nWorst Response:\n{}\nReason:\nMock vote.", best + 1, worst + 1)
    } else if prompt.contains("compile high-quality content for medical textbooks") {
        format!("Compiled Medical Textbook Content:\n{}", mock_sentence(h, 6))
    } else {
        mock_sentence(h, 3 + (h % 3) as usize)
    }
}

/// Seeded feature-hashing embedder: hybrid tokens and token bigrams are
/// hashed onto ±1 coordinates and the sum is unit-normalized.
#[derive(Debug, Clone, Copy)]
pub struct HashEmbedder {
    pub dim: usize,
    pub seed: u64,
}

impl HashEmbedder {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim >= 1, "embedding dim must be >= 1");
        Self { dim, seed }
    }

    pub fn embed_one(&self, text: &str) -> Vector {
        let mut v = vec![0.0f64; self.dim];
        let toks = tokenize(text, TokenMode::Word);
        let mut add = |feature: &str| {
            let h = seeded_hash(self.seed, feature);
            let idx = (h % self.dim as u64) as usize;
            v[idx] += if h >> 63 == 0 { 1.0 } else { -1.0 };
        };
        for t in &toks {
            add(&format!("u\u{1}{t}"));
        }
        for w in toks.windows(2) {
            add(&format!("b\u{1}{}\u{1}{}", w[0], w[1]));
        }
        if v.iter().all(|x| *x == 0.0) {
            let h = seeded_hash(self.seed, &format!("e\u{1}{text}"));
            v[(h % self.dim as u64) as usize] = 1.0;
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        Vector::new(v.into_iter().map(|x| x / n).collect()).expect("finite by construction")
    }
}

impl Embedder for HashEmbedder {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vector>, ProviderError> {
        if texts.is_empty() {
            return Err(ProviderError::permanent("embed: empty batch"));
        }
        Ok(texts.iter().map(|t| self.embed_one(t)).collect())
    }
}

/// Looks tokens up in a fixed table; unknown text is a permanent error.
#[derive(Debug, Clone, Default)]
pub struct TableEmbedder {
    table: HashMap<String, Vector>,
}

impl TableEmbedder {
    pub fn new<'a>(entries: impl IntoIterator<Item = (&'a str, Vec<f64>)>) -> Self {
        Self {
            table: entries
                .into_iter()
                .map(|(k, v)| (k.to_string(), Vector::new(v).expect("finite table vector")))
                .collect(),
        }
    }
}

impl Embedder for TableEmbedder {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vector>, ProviderError> {
        texts
            .iter()
            .map(|t| {
                self.table
                    .get(t)
                    .cloned()
                    .ok_or_else(|| ProviderError::permanent(format!("no table entry for {t:?}")))
            })
            .collect()
    }
}

/// Maps every text to the same vector.
#[derive(Debug, Clone)]
pub struct ConstantEmbedder(Vector);

impl ConstantEmbedder {
    pub fn new(v: Vec<f64>) -> Self {
        Self(Vector::new(v).expect("finite constant vector"))
    }
}

impl Embedder for ConstantEmbedder {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vector>, ProviderError> {
        Ok(texts.iter().map(|_| self.0.clone()).collect())
    }
}
