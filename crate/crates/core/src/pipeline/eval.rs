use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exec::ordered_map;
use crate::jsonl::read_file_strict;
use crate::llm::{ask_parsed, normalize_reply, parse_judgement, render, Embedder, Gateway, JudgeOutcome, TemplateId};
use crate::text::{similarity_eval, TokenMode};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    Similarity,
    AiJudge,
    Choices,
}

impl std::str::FromStr for EvalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "similarity" => Ok(Self::Similarity),
            "ai-judge" => Ok(Self::AiJudge),
            "choices" => Ok(Self::Choices),
            other => Err(Error::invalid(format!("unknown eval mode {other:?}"))),
        }
    }
}

/// One line of a candidate or reference stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub task_id: String,
    pub candidate: String,
    pub reference: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub judgement: Option<JudgeOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correct: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WinTieLoss {
    pub win: f64,
    pub tie: f64,
    pub loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub mode: EvalMode,
    pub rows: Vec<EvalRow>,
    /// Rows that produced a metric.
    pub scored: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_similarity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub win_tie_loss: Option<WinTieLoss>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
}

fn align(candidates: &[EvalRecord], references: &[EvalRecord]) -> Result<()> {
    if candidates.len() != references.len() {
        return Err(Error::invalid(format!(
            "{} candidates but {} references",
            candidates.len(),
            references.len()
        )));
    }
    for (i, (c, r)) in candidates.iter().zip(references).enumerate() {
        if c.id != r.id {
            return Err(Error::invalid(format!("row {i}: candidate id {:?} vs reference id {:?}", c.id, r.id)));
        }
    }
    Ok(())
}

/// Extracts a multiple-choice answer letter (A-H): a leading letter, the
/// letter after an "answer" cue, or the first standalone letter.
pub fn answer_letter(text: &str) -> Option<char> {
    let t = normalize_reply(text).to_uppercase();
    let is_choice = |c: char| ('A'..='H').contains(&c);
    let standalone = |s: &str| -> Option<char> {
        let chars: Vec<char> = s.chars().collect();
        (0..chars.len()).find_map(|i| {
            let c = chars[i];
            let before = i == 0 || !chars[i - 1].is_ascii_alphanumeric();
            let after = i + 1 == chars.len() || !chars[i + 1].is_ascii_alphanumeric();
            (is_choice(c) && before && after).then_some(c)
        })
    };
    let trimmed = t.trim_start_matches(|c: char| c.is_whitespace() || c == '(' || c == '[');
    if let Some(c) = trimmed.chars().next() {
        let next = trimmed.chars().nth(1);
        if is_choice(c) && next.is_none_or(|n| !n.is_ascii_alphanumeric()) {
            return Some(c);
        }
    }
    for cue in ["ANSWER IS", "ANSWER:", "答案是", "答案", "选"] {
        if let Some(i) = t.find(cue) {
            if let Some(c) = standalone(&t[i + cue.len()..]) {
                return Some(c);
            }
        }
    }
    standalone(&t)
}

fn judge_row(judge: Gateway<'_>, question: &str, candidate: &str, reference: &str) -> Result<JudgeOutcome> {
    let slots = [("question", question), ("response_1", candidate), ("response_2", reference)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let req = judge.request(render(TemplateId::AiJudge, &slots)?).with_temperature(0.0);
    Ok(ask_parsed(judge.provider, &req, parse_judgement)?.outcome)
}

/// Scores aligned candidate/reference streams. Judge outcomes are from the
/// candidate's side.
pub fn evaluate(
    candidates: &[EvalRecord],
    references: &[EvalRecord],
    mode: EvalMode,
    embedder: Option<&dyn Embedder>,
    judge: Option<Gateway<'_>>,
) -> Result<EvalReport> {
    align(candidates, references)?;
    let pairs: Vec<(&EvalRecord, &EvalRecord)> = candidates.iter().zip(references).collect();
    let mut rows: Vec<EvalRow> = pairs
        .iter()
        .map(|(c, r)| EvalRow {
            task_id: c.id.clone(),
            candidate: c.text.clone(),
            reference: r.text.clone(),
            similarity: None,
            judgement: None,
            correct: None,
            error: None,
        })
        .collect();
    let mut report = EvalReport { mode, rows: Vec::new(), scored: 0, mean_similarity: None, win_tie_loss: None, accuracy: None };
    match mode {
        EvalMode::Similarity => {
            let emb = embedder.ok_or_else(|| Error::Config("similarity mode needs an embedder".into()))?;
            let scores = ordered_map(&pairs, |(c, r)| similarity_eval(&c.text, &r.text, emb, TokenMode::Word));
            let mut sum = 0.0;
            for (row, s) in rows.iter_mut().zip(scores) {
                match s {
                    Ok(v) => {
                        row.similarity = Some(v);
                        sum += v;
                        report.scored += 1;
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
            }
            report.mean_similarity = (report.scored > 0).then(|| sum / report.scored as f64);
        }
        EvalMode::AiJudge => {
            let judge = judge.ok_or_else(|| Error::Config("ai-judge mode needs a judge model".into()))?;
            for (c, r) in &pairs {
                if c.question.is_none() && r.question.is_none() {
                    return Err(Error::invalid(format!("row {:?}: ai-judge mode needs a `question` field", c.id)));
                }
            }
            let outcomes = ordered_map(&pairs, |(c, r)| {
                let q = r.question.as_deref().or(c.question.as_deref()).unwrap_or("");
                judge_row(judge, q, &c.text, &r.text)
            });
            let (mut w, mut t, mut l) = (0usize, 0usize, 0usize);
            for (row, o) in rows.iter_mut().zip(outcomes) {
                match o {
                    Ok(o) => {
                        match o {
                            JudgeOutcome::Win => w += 1,
                            JudgeOutcome::Tie => t += 1,
                            JudgeOutcome::Lose => l += 1,
                        }
                        row.judgement = Some(o);
                        report.scored += 1;
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
            }
            if report.scored > 0 {
                let n = report.scored as f64;
                let (win, tie) = (w as f64 / n, t as f64 / n);
                // loss as the complement keeps the triple summing to 1 exactly
                report.win_tie_loss = Some(WinTieLoss { win, tie, loss: if l == 0 { 0.0 } else { 1.0 - win - tie } });
            }
        }
        EvalMode::Choices => {
            let mut right = 0usize;
            for row in &mut rows {
                let expected = answer_letter(&row.reference);
                match expected {
                    Some(e) => {
                        let ok = answer_letter(&row.candidate) == Some(e);
                        right += usize::from(ok);
                        row.correct = Some(ok);
                        report.scored += 1;
                    }
                    None => row.error = Some("reference has no answer letter".into()),
                }
            }
            report.accuracy = (report.scored > 0).then(|| right as f64 / report.scored as f64);
        }
    }
    report.rows = rows;
    Ok(report)
}

pub fn evaluate_files(
    candidates: &Path,
    references: &Path,
    mode: EvalMode,
    embedder: Option<&dyn Embedder>,
    judge: Option<Gateway<'_>>,
) -> Result<EvalReport> {
    let c: Vec<EvalRecord> = read_file_strict(candidates)?;
    let r: Vec<EvalRecord> = read_file_strict(references)?;
    evaluate(&c, &r, mode, embedder, judge)
}
