//! Memorization scan plus a vector-database gateway that swaps risky
//! responses for safe ones at serving time.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::exec::ordered_map;
use crate::hashing::sha256_hex;
use crate::llm::{ChatProvider, Embedder, Gateway, LlmRequest};
use crate::text::{rouge_l_str, token_spans, TokenMode, Vector};
use crate::{Error, Result};

pub const DEFAULT_SPLIT_RATIO: f64 = 0.5;
pub const DEFAULT_SCAN_THRESHOLD: f64 = 0.85;
pub const DEFAULT_MATCH_THRESHOLD: f64 = 0.8;
pub const REFUSAL: &str = "I'm sorry, I can't help with that request right now.";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSample {
    pub id: String,
    pub prompt_half: String,
    pub label_half: String,
    pub split_ratio: f64,
}

/// Splits at a token boundary so that `prompt_half + label_half == text`.
/// The prompt keeps the whitespace that precedes the first label token.
pub fn split_sample(id: &str, text: &str, ratio: f64) -> Result<SplitSample> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::invalid(format!("split ratio {ratio} outside (0, 1)")));
    }
    let spans = token_spans(text, TokenMode::Word);
    let t = spans.len();
    if t < 2 {
        return Err(Error::invalid(format!("sample {id:?} has {t} token(s), need at least 2")));
    }
    let p = ((ratio * t as f64).floor() as usize).clamp(1, t - 1);
    let at = spans[p].start;
    Ok(SplitSample {
        id: id.to_string(),
        prompt_half: text[..at].to_string(),
        label_half: text[at..].to_string(),
        split_ratio: ratio,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryRiskReport {
    pub sample_id: String,
    pub prompt_half: String,
    pub label_half: String,
    pub model_output: String,
    pub rouge_l: f64,
    pub flagged: bool,
    pub threshold: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn check_threshold(t: f64) -> Result<()> {
    if t > 0.0 && t <= 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("threshold {t} outside (0, 1]")))
    }
}

/// Prompts the policy with the first part of each sample and measures how
/// closely its greedy continuation reproduces the rest. One report per sample.
pub fn memory_scan(
    samples: &[(String, String)],
    policy: Gateway<'_>,
    ratio: f64,
    threshold: f64,
) -> Result<Vec<MemoryRiskReport>> {
    check_threshold(threshold)?;
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Config(format!("split ratio {ratio} outside (0, 1)")));
    }
    Ok(ordered_map(samples, |(id, text)| {
        let mut rep = MemoryRiskReport {
            sample_id: id.clone(),
            prompt_half: String::new(),
            label_half: String::new(),
            model_output: String::new(),
            rouge_l: 0.0,
            flagged: false,
            threshold,
            error: None,
        };
        let mut attempt = || -> Result<()> {
            let split = split_sample(id, text, ratio)?;
            rep.prompt_half = split.prompt_half;
            rep.label_half = split.label_half;
            let req = policy.request(rep.prompt_half.clone()).with_temperature(0.0);
            rep.model_output = policy.provider.complete(&req)?;
            rep.rouge_l = rouge_l_str(&rep.model_output, &rep.label_half, TokenMode::Word)?.f1;
            rep.flagged = rep.rouge_l >= threshold;
            Ok(())
        };
        if let Err(e) = attempt() {
            rep.flagged = false;
            rep.error = Some(e.to_string());
        }
        rep
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub record_id: u64,
    pub source: String,
    pub vector: Vec<f32>,
    pub payload: String,
    /// Byte offset where the response part of `payload` starts.
    pub response_offset: u64,
    /// Linked record in the partner index.
    pub link: Option<u64>,
}

impl EmbeddingRecord {
    pub fn response(&self) -> &str {
        self.payload.get(self.response_offset as usize..).unwrap_or("")
    }
}

/// Append-only flat index of unit vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VectorIndex {
    dim: usize,
    records: Vec<EmbeddingRecord>,
}

const MAGIC: &[u8; 5] = b"PPVD1";
const NO_LINK: u64 = u64::MAX;

fn unit_f32(v: &Vector) -> Result<Vec<f32>> {
    Ok(v.normalized()?.as_slice().iter().map(|&x| x as f32).collect())
}

impl VectorIndex {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("index dimension must be >= 1"));
        }
        Ok(Self { dim, records: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[EmbeddingRecord] {
        &self.records
    }

    pub fn get(&self, id: u64) -> Option<&EmbeddingRecord> {
        self.records.get(id as usize)
    }

    /// Appends a record and returns its id. The vector is unit-normalized.
    pub fn push(&mut self, source: &str, vector: &Vector, payload: String, response_offset: usize, link: Option<u64>) -> Result<u64> {
        if vector.dim() != self.dim {
            return Err(Error::invalid(format!("vector dim {} does not match index dim {}", vector.dim(), self.dim)));
        }
        if response_offset > payload.len() || !payload.is_char_boundary(response_offset) {
            return Err(Error::invalid("response offset is not a char boundary of the payload"));
        }
        let id = self.records.len() as u64;
        self.records.push(EmbeddingRecord {
            record_id: id,
            source: source.to_string(),
            vector: unit_f32(vector)?,
            payload,
            response_offset: response_offset as u64,
            link,
        });
        Ok(id)
    }

    /// Secure record linked to high-risk record `id`.
    pub fn linked_to(&self, id: u64) -> Option<&EmbeddingRecord> {
        self.records.iter().find(|r| r.link == Some(id))
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.dim as u32).to_le_bytes())?;
        w.write_all(&(self.records.len() as u64).to_le_bytes())?;
        for r in &self.records {
            for x in &r.vector {
                w.write_all(&x.to_le_bytes())?;
            }
        }
        for r in &self.records {
            for s in [&r.source, &r.payload] {
                w.write_all(&(s.len() as u32).to_le_bytes())?;
                w.write_all(s.as_bytes())?;
            }
            w.write_all(&r.response_offset.to_le_bytes())?;
        }
        for r in &self.records {
            w.write_all(&r.link.unwrap_or(NO_LINK).to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        fn bytes<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
            let mut b = [0u8; N];
            r.read_exact(&mut b).map_err(|e| Error::Format(format!("truncated index: {e}")))?;
            Ok(b)
        }
        fn string(r: &mut impl Read) -> Result<String> {
            let len = u32::from_le_bytes(bytes(r)?) as usize;
            let mut buf = Vec::new();
            r.take(len as u64).read_to_end(&mut buf)?;
            if buf.len() != len {
                return Err(Error::Format("truncated index string".into()));
            }
            String::from_utf8(buf).map_err(|_| Error::Format("index string is not UTF-8".into()))
        }
        if &bytes::<5>(&mut r)? != MAGIC {
            return Err(Error::Format("not a PPVD1 index".into()));
        }
        let dim = u32::from_le_bytes(bytes(&mut r)?) as usize;
        let count = u64::from_le_bytes(bytes(&mut r)?);
        if dim == 0 {
            return Err(Error::Format("index dimension is 0".into()));
        }
        let mut vectors = Vec::new();
        for _ in 0..count {
            let mut v = Vec::with_capacity(dim);
            for _ in 0..dim {
                v.push(f32::from_le_bytes(bytes(&mut r)?));
            }
            vectors.push(v);
        }
        let mut records = Vec::with_capacity(vectors.len());
        for (i, vector) in vectors.into_iter().enumerate() {
            let source = string(&mut r)?;
            let payload = string(&mut r)?;
            let response_offset = u64::from_le_bytes(bytes(&mut r)?);
            if !payload.is_char_boundary(response_offset as usize) {
                return Err(Error::Format(format!("record {i}: bad response offset")));
            }
            records.push(EmbeddingRecord { record_id: i as u64, source, vector, payload, response_offset, link: None });
        }
        for rec in &mut records {
            let l = u64::from_le_bytes(bytes(&mut r)?);
            rec.link = (l != NO_LINK).then_some(l);
        }
        Ok(Self { dim, records })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Err(Error::MissingArtifact(path.display().to_string()));
        }
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

/// Exact nearest record by cosine; ties go to the lowest record id.
pub fn search_top1<'a>(index: &'a VectorIndex, q: &Vector) -> Result<(&'a EmbeddingRecord, f64)> {
    if q.dim() != index.dim {
        return Err(Error::invalid(format!("query dim {} does not match index dim {}", q.dim(), index.dim)));
    }
    let q = q.normalized()?;
    let mut best: Option<(&EmbeddingRecord, f64)> = None;
    for r in &index.records {
        let s: f64 = r.vector.iter().zip(q.as_slice()).map(|(&a, b)| a as f64 * b).sum();
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((r, s));
        }
    }
    best.ok_or_else(|| Error::InvalidState("index is empty".into()))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub sample_id: String,
    pub reason: String,
}

fn embed_one(embedder: &dyn Embedder, text: &str) -> Result<Vector> {
    let mut v = embedder.embed(&[text.to_string()])?;
    if v.len() != 1 {
        return Err(Error::invalid(format!("embedder returned {} vectors for 1 input", v.len())));
    }
    Ok(v.remove(0))
}

fn full_text(r: &MemoryRiskReport) -> String {
    format!("{}{}", r.prompt_half, r.label_half)
}

fn flagged_only(reports: &[MemoryRiskReport]) -> Result<Vec<&MemoryRiskReport>> {
    let flagged: Vec<_> = reports.iter().filter(|r| r.flagged).collect();
    if flagged.is_empty() {
        return Err(Error::invalid("no flagged samples to index"));
    }
    Ok(flagged)
}

fn append_all(index: &mut Option<VectorIndex>, source: &str, v: &Vector, payload: String, off: usize, link: Option<u64>) -> Result<u64> {
    let idx = match index {
        Some(i) => i,
        None => index.insert(VectorIndex::new(v.dim())?),
    };
    idx.push(source, v, payload, off, link)
}

/// One record per flagged sample holding the full risky text.
pub fn build_high_risk_db(reports: &[MemoryRiskReport], embedder: &dyn Embedder) -> Result<(VectorIndex, Vec<Skipped>)> {
    let flagged = flagged_only(reports)?;
    let vecs = ordered_map(&flagged, |r| embed_one(embedder, &full_text(r)));
    let mut index = None;
    let mut skipped = Vec::new();
    for (r, v) in flagged.iter().zip(vecs) {
        match v.and_then(|v| append_all(&mut index, &r.sample_id, &v, full_text(r), 0, None)) {
            Ok(_) => {}
            Err(e) => skipped.push(Skipped { sample_id: r.sample_id.clone(), reason: e.to_string() }),
        }
    }
    let index = index.ok_or_else(|| Error::invalid("every flagged sample failed to embed"))?;
    Ok((index, skipped))
}

fn secure_text(r: &MemoryRiskReport, general: Gateway<'_>) -> Result<String> {
    let req = general.request(r.prompt_half.clone()).with_temperature(0.0);
    Ok(format!("{}{}", r.prompt_half, general.provider.complete(&req)?))
}

/// Prompt plus a general model's answer for each high-risk record, linked
/// back by source sample id.
pub fn build_secure_db(
    reports: &[MemoryRiskReport],
    high_risk: &VectorIndex,
    general: Gateway<'_>,
    embedder: &dyn Embedder,
) -> Result<(VectorIndex, Vec<Skipped>)> {
    let flagged = flagged_only(reports)?;
    let built = ordered_map(&flagged, |r| -> Result<(String, Vector)> {
        let text = secure_text(r, general)?;
        let v = embed_one(embedder, &text)?;
        Ok((text, v))
    });
    let mut index = None;
    let mut skipped = Vec::new();
    for (r, b) in flagged.iter().zip(built) {
        let res = b.and_then(|(text, v)| {
            let high = high_risk
                .records
                .iter()
                .find(|h| h.source == r.sample_id)
                .ok_or_else(|| Error::MissingArtifact(format!("no high-risk record for {}", r.sample_id)))?;
            append_all(&mut index, &r.sample_id, &v, text, r.prompt_half.len(), Some(high.record_id))
        });
        if let Err(e) = res {
            skipped.push(Skipped { sample_id: r.sample_id.clone(), reason: e.to_string() });
        }
    }
    let index = index.ok_or_else(|| Error::invalid("every flagged sample failed"))?;
    Ok((index, skipped))
}

/// Both indexes at once. A sample enters only when every step succeeded for
/// it, so the link is a bijection and both sides carry links.
pub fn build_linked(
    reports: &[MemoryRiskReport],
    general: Gateway<'_>,
    embedder: &dyn Embedder,
) -> Result<(VectorIndex, VectorIndex, Vec<Skipped>)> {
    let flagged = flagged_only(reports)?;
    let built = ordered_map(&flagged, |r| -> Result<(Vector, String, Vector)> {
        let hv = embed_one(embedder, &full_text(r))?;
        let text = secure_text(r, general)?;
        let sv = embed_one(embedder, &text)?;
        if hv.dim() != sv.dim() {
            return Err(Error::invalid("embedder returned vectors of different dims"));
        }
        Ok((hv, text, sv))
    });
    let (mut high, mut secure) = (None, None);
    let mut skipped = Vec::new();
    for (r, b) in flagged.iter().zip(built) {
        match b {
            Ok((hv, text, sv)) => {
                let next = high.as_ref().map_or(0, |h: &VectorIndex| h.len() as u64);
                append_all(&mut high, &r.sample_id, &hv, full_text(r), 0, Some(next))?;
                append_all(&mut secure, &r.sample_id, &sv, text, r.prompt_half.len(), Some(next))?;
            }
            Err(e) => skipped.push(Skipped { sample_id: r.sample_id.clone(), reason: e.to_string() }),
        }
    }
    match (high, secure) {
        (Some(h), Some(s)) => {
            check_links(&h, &s)?;
            Ok((h, s, skipped))
        }
        _ => Err(Error::invalid("every flagged sample failed")),
    }
}

/// Verifies that every high-risk record has exactly one secure partner.
pub fn check_links(high: &VectorIndex, secure: &VectorIndex) -> Result<()> {
    let mut seen = BTreeSet::new();
    for s in &secure.records {
        let l = s.link.ok_or_else(|| Error::Format(format!("secure record {} has no link", s.record_id)))?;
        if high.get(l).is_none() {
            return Err(Error::Format(format!("secure record {} links to missing {l}", s.record_id)));
        }
        if !seen.insert(l) {
            return Err(Error::Format(format!("high-risk record {l} linked twice")));
        }
    }
    if seen.len() != high.len() {
        return Err(Error::Format(format!("{} of {} high-risk records are unlinked", high.len() - seen.len(), high.len())));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MatchOn {
    #[default]
    PromptAndDraft,
    Prompt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Pass,
    Replace,
    Refuse,
}

impl Action {
    pub fn as_str(self) -> &'static str {
        match self {
            Action::Pass => "pass",
            Action::Replace => "replace",
            Action::Refuse => "refuse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub action: Action,
    /// Hash of the user prompt; the text itself is not logged.
    pub prompt_sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched: Option<u64>,
    pub threshold: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incident: Option<String>,
}

/// Swaps the draft for the linked secure response when the query lands
/// close enough to a high-risk record. Errors propagate; [`Guard`] turns
/// them into refusals.
pub fn match_and_replace(
    user_prompt: &str,
    draft: &str,
    high: &VectorIndex,
    secure: &VectorIndex,
    embedder: &dyn Embedder,
    threshold: f64,
    match_on: MatchOn,
) -> Result<(String, Decision)> {
    check_threshold(threshold)?;
    let key = match match_on {
        MatchOn::PromptAndDraft => format!("{user_prompt}{draft}"),
        MatchOn::Prompt => user_prompt.to_string(),
    };
    let q = embed_one(embedder, &key)?;
    let (rec, s) = search_top1(high, &q)?;
    let mut d = Decision {
        action: Action::Pass,
        prompt_sha256: sha256_hex(user_prompt.as_bytes()),
        similarity: Some(s),
        matched: None,
        threshold,
        incident: None,
    };
    if s < threshold {
        return Ok((draft.to_string(), d));
    }
    let safe = secure
        .linked_to(rec.record_id)
        .ok_or_else(|| Error::InvalidState(format!("high-risk record {} has no secure partner", rec.record_id)))?;
    d.action = Action::Replace;
    d.matched = Some(rec.record_id);
    Ok((safe.response().to_string(), d))
}

/// Provider messages can echo request text, so only their kind is logged.
fn incident(e: &Error) -> String {
    match e {
        Error::Provider(p) => match p.status {
            Some(code) => format!("provider error ({:?}, status {code})", p.kind),
            None => format!("provider error ({:?})", p.kind),
        },
        other => other.to_string(),
    }
}

/// Serving-side wrapper: fail-closed, with an append-only decision log.
pub struct Guard {
    indexes: Option<(Arc<VectorIndex>, Arc<VectorIndex>)>,
    embedder: Arc<dyn Embedder + Send + Sync>,
    pub threshold: f64,
    pub match_on: MatchOn,
    log: Mutex<Box<dyn Write + Send>>,
}

impl Guard {
    /// `indexes` is `None` when they could not be loaded; every request is
    /// then refused.
    pub fn new(
        indexes: Option<(VectorIndex, VectorIndex)>,
        embedder: Arc<dyn Embedder + Send + Sync>,
        threshold: f64,
        match_on: MatchOn,
        log: Box<dyn Write + Send>,
    ) -> Result<Self> {
        check_threshold(threshold)?;
        Ok(Self {
            indexes: indexes.map(|(h, s)| (Arc::new(h), Arc::new(s))),
            embedder,
            threshold,
            match_on,
            log: Mutex::new(log),
        })
    }

    pub fn apply(&self, user_prompt: &str, draft: &str) -> (String, Decision) {
        let result = match &self.indexes {
            None => Err(Error::MissingArtifact("vector indexes unavailable".into())),
            Some((h, s)) => match_and_replace(user_prompt, draft, h, s, &*self.embedder, self.threshold, self.match_on),
        };
        let (text, decision) = result.unwrap_or_else(|e| {
            let d = Decision {
                action: Action::Refuse,
                prompt_sha256: sha256_hex(user_prompt.as_bytes()),
                similarity: None,
                matched: None,
                threshold: self.threshold,
                incident: Some(incident(&e)),
            };
            (REFUSAL.to_string(), d)
        });
        self.record(&decision);
        (text, decision)
    }

    /// Drafts with the policy model, then applies the guard. A policy
    /// failure is also a refusal.
    pub fn serve(&self, policy: &dyn ChatProvider, req: &LlmRequest) -> (String, Decision) {
        let prompt = req.last_user().unwrap_or("").to_string();
        match policy.complete(req) {
            Ok(draft) => self.apply(&prompt, &draft),
            Err(e) => {
                let d = Decision {
                    action: Action::Refuse,
                    prompt_sha256: sha256_hex(prompt.as_bytes()),
                    similarity: None,
                    matched: None,
                    threshold: self.threshold,
                    incident: Some(format!("policy model: {}", incident(&Error::Provider(e)))),
                };
                self.record(&d);
                (REFUSAL.to_string(), d)
            }
        }
    }

    fn record(&self, d: &Decision) {
        if let Ok(line) = serde_json::to_string(d) {
            let mut log = self.log.lock().unwrap_or_else(|p| p.into_inner());
            let _ = writeln!(log, "{line}");
            let _ = log.flush();
        }
    }
}
