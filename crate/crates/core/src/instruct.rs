//! Instruction generation from a quality-ordered chain of seed examples.

use serde::{Deserialize, Serialize};

use crate::exec::ordered_map;
use crate::hashing::content_hash;
use crate::llm::{ask_parsed, render_chain, strip_header, ChainMode, Gateway, Quarantined};
use crate::sft::{score_pair, DialogueSample};
use crate::{Error, Result};

pub const DEFAULT_CHAIN_LEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedExample {
    pub instruction: String,
    pub question: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quality_score: Option<u8>,
}

impl SeedExample {
    pub fn new(instruction: impl Into<String>, question: impl Into<String>) -> Self {
        Self { instruction: instruction.into(), question: question.into(), quality_score: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.instruction.trim().is_empty() || self.question.trim().is_empty() {
            return Err(Error::invalid("seed example needs a non-empty instruction and question"));
        }
        Ok(())
    }

    /// How the example appears inside the chained prompt.
    pub fn render(&self) -> String {
        format!("Question: {}\nInstruction: {}", self.question, self.instruction)
    }

    fn hash(&self) -> String {
        content_hash(&[&self.instruction, &self.question])
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScoredPool {
    pub examples: Vec<SeedExample>,
    pub dropped: Vec<Quarantined>,
}

/// Scores each seed pair with the selection prompt (the instruction takes the
/// answer slot). Unparseable examples are dropped from the pool.
pub fn score_pool(pool: &[SeedExample], judge: Gateway<'_>) -> Result<ScoredPool> {
    if pool.is_empty() {
        return Err(Error::invalid("seed pool is empty"));
    }
    for ex in pool {
        ex.validate()?;
    }
    let scores = ordered_map(pool, |ex| score_pair(judge, &ex.question, &ex.instruction));
    let mut out = ScoredPool::default();
    for (i, (ex, s)) in pool.iter().zip(scores).enumerate() {
        match s {
            Ok(score) => out.examples.push(SeedExample { quality_score: Some(score), ..ex.clone() }),
            Err(e) => out.dropped.push(Quarantined::new(format!("seed-{i}"), "score_pool", &e)),
        }
    }
    Ok(out)
}

/// Picks `m` examples spread evenly over the score-sorted pool, lowest first.
/// Sorting is by (score, content hash) so equal scores still order
/// deterministically.
pub fn select_chain(pool: &[SeedExample], m: usize) -> Result<Vec<SeedExample>> {
    if m < 2 {
        return Err(Error::invalid(format!("chain length must be at least 2, got {m}")));
    }
    if pool.len() < m {
        return Err(Error::invalid(format!("pool has {} examples, chain needs {m}", pool.len())));
    }
    let mut sorted: Vec<(u8, String, &SeedExample)> = pool
        .iter()
        .map(|ex| {
            let score = ex.quality_score.ok_or_else(|| Error::InvalidState("pool example has no score".into()))?;
            Ok((score, ex.hash(), ex))
        })
        .collect::<Result<_>>()?;
    sorted.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let last = (sorted.len() - 1) as f64;
    Ok((0..m)
        .map(|i| {
            let idx = (i as f64 * last / (m - 1) as f64).round() as usize;
            sorted[idx].2.clone()
        })
        .collect())
}

fn check_chain(chain: &[SeedExample]) -> Result<()> {
    if chain.len() < 2 {
        return Err(Error::invalid("chain needs at least 2 examples"));
    }
    for w in chain.windows(2) {
        if w[0].quality_score > w[1].quality_score {
            return Err(Error::invalid("chain examples must be in ascending score order"));
        }
    }
    Ok(())
}

pub fn render_prompt(question: &str, chain: &[SeedExample], mode: ChainMode) -> Result<String> {
    check_chain(chain)?;
    let examples: Vec<String> = chain.iter().map(SeedExample::render).collect();
    render_chain(&examples, question, mode)
}

fn parse_instruction(reply: &str) -> Result<String> {
    let text = reply.trim();
    let text = strip_header(text, "Instruction").unwrap_or(text);
    if text.is_empty() {
        return Err(Error::Parse("empty instruction".into()));
    }
    Ok(text.to_string())
}

pub fn generate_instruction(
    question: &str,
    chain: &[SeedExample],
    client: Gateway<'_>,
    mode: ChainMode,
) -> Result<String> {
    let req = client.request(render_prompt(question, chain, mode)?);
    ask_parsed(client.provider, &req, parse_instruction)
}

#[derive(Debug, Clone, Default)]
pub struct InstructOutput {
    pub samples: Vec<DialogueSample>,
    pub quarantined: Vec<Quarantined>,
    pub generated: usize,
}

/// Fills in the instruction of every sample that lacks one.
pub fn generate_instructions(
    samples: Vec<DialogueSample>,
    chain: &[SeedExample],
    client: Gateway<'_>,
    mode: ChainMode,
) -> Result<InstructOutput> {
    check_chain(chain)?;
    let results = ordered_map(&samples, |s| match &s.instruction {
        Some(_) => None,
        None => Some(generate_instruction(&s.question, chain, client, mode)),
    });
    let mut out = InstructOutput::default();
    for (mut s, r) in samples.into_iter().zip(results) {
        match r {
            None => out.samples.push(s),
            Some(Ok(ins)) => {
                s.instruction = Some(ins);
                out.generated += 1;
                out.samples.push(s);
            }
            Some(Err(e)) => out.quarantined.push(Quarantined::new(&s.id, "gen_instructions", &e)),
        }
    }
    Ok(out)
}
