//! Pre-training corpus cleaning: noise stripping plus threshold rules on
//! repetition, special characters, perplexity and length.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::jsonl::LineError;
use crate::llm::{render, ChatProvider, LlmRequest, TemplateId};
use crate::text::{
    char_repetition_rate, special_char_ratio, word_repetition_rate, CharClasses, NGramModel,
    DEFAULT_CHAR_REP_N, DEFAULT_WORD_REP_N,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    #[serde(default)]
    pub source: String,
    #[serde(default)]
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Self { id: id.into(), text: text.into(), source: String::new(), meta: BTreeMap::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FilterConfig {
    pub max_char_rep: f64,
    pub max_word_rep: f64,
    pub max_special_ratio: f64,
    pub max_perplexity: f64,
    pub min_chars: usize,
    pub punctuation: String,
    pub char_rep_n: usize,
    pub word_rep_n: usize,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            max_char_rep: 0.5,
            max_word_rep: 0.5,
            max_special_ratio: 0.25,
            max_perplexity: 5_000.0,
            min_chars: 30,
            punctuation: crate::text::DEFAULT_PUNCTUATION.to_string(),
            char_rep_n: DEFAULT_CHAR_REP_N,
            word_rep_n: DEFAULT_WORD_REP_N,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("max_char_rep", self.max_char_rep),
            ("max_word_rep", self.max_word_rep),
            ("max_special_ratio", self.max_special_ratio),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if self.max_perplexity.is_nan() || self.max_perplexity <= 1.0 {
            return Err(Error::Config("max_perplexity must be > 1".into()));
        }
        if self.char_rep_n < 1 || self.word_rep_n < 1 {
            return Err(Error::Config("repetition n values must be >= 1".into()));
        }
        Ok(())
    }

    pub fn char_classes(&self) -> CharClasses {
        CharClasses::with_punctuation(&self.punctuation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    CharRep,
    WordRep,
    SpecialRatio,
    Perplexity,
    TooShort,
}

impl Rule {
    pub const ALL: [Rule; 5] =
        [Rule::CharRep, Rule::WordRep, Rule::SpecialRatio, Rule::Perplexity, Rule::TooShort];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub doc_id: String,
    pub kept: bool,
    pub fired_rules: Vec<Rule>,
    pub measured: BTreeMap<Rule, f64>,
}

const ENTITIES: &[(&str, &str)] = &[
    ("amp", "&"),
    ("lt", "<"),
    ("gt", ">"),
    ("quot", "\""),
    ("apos", "'"),
    ("nbsp", " "),
    ("ensp", " "),
    ("emsp", " "),
    ("mdash", "—"),
    ("ndash", "–"),
    ("hellip", "…"),
    ("middot", "·"),
    ("ldquo", "“"),
    ("rdquo", "”"),
    ("lsquo", "‘"),
    ("rsquo", "’"),
    ("times", "×"),
    ("deg", "°"),
    ("copy", "©"),
    ("reg", "®"),
];

fn is_noise_char(c: char) -> bool {
    (c.is_control() && c != '\n' && c != '\t')
        || matches!(c, '\u{200B}'..='\u{200F}' | '\u{2028}'..='\u{202E}' | '\u{2060}'..='\u{2064}' | '\u{FEFF}')
}

/// Length of a tag starting at `s` (which begins with '<'), if it looks like
/// one: `<name ...>`, `</name>`, `<!...>` or `<?...>`, no nested '<'.
fn tag_len(s: &str) -> Option<usize> {
    let rest = &s[1..];
    let first = rest.chars().next()?;
    if !(first.is_ascii_alphabetic() || matches!(first, '/' | '!' | '?')) {
        return None;
    }
    if first == '/' && !rest[1..].starts_with(|c: char| c.is_ascii_alphabetic()) {
        return None;
    }
    for (i, c) in rest.char_indices() {
        match c {
            '>' => return Some(i + 2),
            '<' | '\n' => return None,
            _ => {}
        }
    }
    None
}

/// `&name;`, `&#123;` or `&#x1F;` at the start of `s`: (byte length, decoded).
fn entity(s: &str) -> Option<(usize, String)> {
    let end = s[1..].find(';')? + 1;
    if end > 10 {
        return None;
    }
    let body = &s[1..end];
    let decoded = if let Some(num) = body.strip_prefix('#') {
        let cp = match num.strip_prefix(['x', 'X']) {
            Some(hex) => u32::from_str_radix(hex, 16).ok()?,
            None => num.parse().ok()?,
        };
        char::from_u32(cp)?.to_string()
    } else {
        ENTITIES.iter().find(|(n, _)| *n == body)?.1.to_string()
    };
    Some((end + 1, decoded))
}

fn strip_once(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().unwrap();
        if c == '<' {
            if let Some(n) = tag_len(rest) {
                i += n;
                continue;
            }
        }
        if c == '&' {
            if let Some((n, decoded)) = entity(rest) {
                out.extend(decoded.chars().filter(|c| !is_noise_char(*c)));
                i += n;
                continue;
            }
        }
        if !is_noise_char(c) {
            out.push(c);
        }
        i += c.len_utf8();
    }
    out
}

/// Removes markup tags, decodes HTML entities and drops zero-width and control
/// characters (newline and tab survive). Idempotent: runs until a fixed point,
/// so decoded entities that form a new tag are removed as well.
pub fn strip_noise(text: &str) -> String {
    let mut cur = strip_once(text);
    loop {
        let next = strip_once(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Evaluates every rule on the noise-stripped text; all firing rules are
/// reported, not only the first.
pub fn judge_document(doc: &Document, cfg: &FilterConfig, lm: &NGramModel) -> Result<Verdict> {
    cfg.validate()?;
    judge_stripped(&doc.id, &strip_noise(&doc.text), cfg, &cfg.char_classes(), lm)
}

fn judge_stripped(
    id: &str,
    text: &str,
    cfg: &FilterConfig,
    classes: &CharClasses,
    lm: &NGramModel,
) -> Result<Verdict> {
    let mut measured = BTreeMap::new();
    let mut fired = Vec::new();
    let mut check = |rule: Rule, value: f64, limit_exceeded: bool| {
        measured.insert(rule, value);
        if limit_exceeded {
            fired.push(rule);
        }
    };
    let cr = char_repetition_rate(text, cfg.char_rep_n)?;
    check(Rule::CharRep, cr, cr > cfg.max_char_rep);
    let wr = word_repetition_rate(text, cfg.word_rep_n)?;
    check(Rule::WordRep, wr, wr > cfg.max_word_rep);
    let sr = special_char_ratio(text, classes);
    check(Rule::SpecialRatio, sr, sr > cfg.max_special_ratio);
    let ppl = lm.perplexity(text)?;
    check(Rule::Perplexity, ppl, ppl > cfg.max_perplexity);
    let n = text.trim().chars().count();
    check(Rule::TooShort, n as f64, n < cfg.min_chars);
    Ok(Verdict { doc_id: id.to_string(), kept: fired.is_empty(), fired_rules: fired, measured })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CleanStats {
    pub total: usize,
    pub kept: usize,
    pub rejected: usize,
    pub parse_errors: usize,
    pub rule_counts: BTreeMap<Rule, usize>,
    pub bad_lines: Vec<LineError>,
}

#[derive(Debug, Clone, Default)]
pub struct CleanOutput {
    /// Kept documents with noise-stripped text.
    pub kept: Vec<Document>,
    /// Rejected documents as read, with their verdict under `meta.verdict`.
    pub rejected: Vec<Document>,
    pub stats: CleanStats,
}

/// Partitions documents into kept and rejected sets, preserving input order
/// in both. Lines that failed to decode are passed in as `bad_lines` and
/// counted as parse errors.
pub fn clean_corpus(
    docs: Vec<Document>,
    bad_lines: Vec<LineError>,
    cfg: &FilterConfig,
    lm: &NGramModel,
) -> Result<CleanOutput> {
    cfg.validate()?;
    let mut seen = std::collections::HashSet::new();
    for d in &docs {
        if !seen.insert(d.id.as_str()) {
            return Err(Error::invalid(format!("duplicate document id {:?}", d.id)));
        }
    }
    let classes = cfg.char_classes();
    let judge = |d: &Document| -> Result<(String, Verdict)> {
        let stripped = strip_noise(&d.text);
        let v = judge_stripped(&d.id, &stripped, cfg, &classes, lm)?;
        Ok((stripped, v))
    };
    #[cfg(feature = "parallel")]
    let judged: Vec<Result<(String, Verdict)>> = {
        use rayon::prelude::*;
        docs.par_iter().map(judge).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let judged: Vec<Result<(String, Verdict)>> = docs.iter().map(judge).collect();

    let mut out = CleanOutput::default();
    out.stats.total = docs.len() + bad_lines.len();
    out.stats.parse_errors = bad_lines.len();
    out.stats.bad_lines = bad_lines;
    for r in Rule::ALL {
        out.stats.rule_counts.insert(r, 0);
    }
    for (doc, res) in docs.into_iter().zip(judged) {
        let (stripped, verdict) = res?;
        for r in &verdict.fired_rules {
            *out.stats.rule_counts.entry(*r).or_default() += 1;
        }
        if verdict.kept {
            out.kept.push(Document { text: stripped, ..doc });
        } else {
            let mut doc = doc;
            doc.meta.insert("verdict".into(), serde_json::to_value(&verdict)?);
            out.rejected.push(doc);
        }
    }
    out.stats.kept = out.kept.len();
    out.stats.rejected = out.rejected.len();
    Ok(out)
}

/// Asks a generator model for new textbook-style content seeded with three
/// collected examples. Returns the text under the output header.
pub fn generate_document(
    client: &dyn ChatProvider,
    model: &str,
    examples: [&str; 3],
    seed: u64,
) -> Result<String> {
    let slots = [("example_1", examples[0]), ("example_2", examples[1]), ("example_3", examples[2])]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let prompt = render(TemplateId::PretrainGen, &slots)?;
    let req = LlmRequest::prompt(model, prompt).with_temperature(0.7).with_seed(seed);
    crate::llm::ask_parsed(client, &req, |reply| {
        let body = crate::llm::after_header(reply, "Compiled Medical Textbook Content").unwrap_or("");
        if body.is_empty() {
            Err(Error::Parse("missing compiled content".into()))
        } else {
            Ok(body.to_string())
        }
    })
}
