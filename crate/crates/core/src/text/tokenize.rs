use std::ops::Range;

use serde::{Deserialize, Serialize};

/// How text is cut into units.
///
/// `Char` yields one unit per Unicode scalar value. `Word` is the hybrid rule:
/// CJK codepoints are always their own unit, everything else splits on
/// whitespace runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenMode {
    Char,
    #[default]
    Word,
}

/// CJK ideographs, kana, hangul, CJK punctuation and full-width forms.
pub fn is_cjk(c: char) -> bool {
    matches!(c as u32,
        0x2E80..=0x2FDF
        | 0x3000..=0x303F
        | 0x3040..=0x30FF
        | 0x3100..=0x312F
        | 0x3400..=0x4DBF
        | 0x4E00..=0x9FFF
        | 0xAC00..=0xD7AF
        | 0xF900..=0xFAFF
        | 0xFE30..=0xFE4F
        | 0xFF00..=0xFFEF
        | 0x20000..=0x2FA1F)
}

/// CJK unified ideographs only (base block, extensions, compatibility).
pub fn is_cjk_ideograph(c: char) -> bool {
    matches!(c as u32,
        0x3400..=0x4DBF | 0x4E00..=0x9FFF | 0xF900..=0xFAFF | 0x20000..=0x2FA1F)
}

/// Byte ranges of every unit in `text`.
pub fn token_spans(text: &str, mode: TokenMode) -> Vec<Range<usize>> {
    match mode {
        TokenMode::Char => text.char_indices().map(|(i, c)| i..i + c.len_utf8()).collect(),
        TokenMode::Word => {
            let mut spans = Vec::new();
            let mut run: Option<usize> = None;
            for (i, c) in text.char_indices() {
                if c.is_whitespace() || is_cjk(c) {
                    if let Some(start) = run.take() {
                        spans.push(start..i);
                    }
                    if !c.is_whitespace() {
                        spans.push(i..i + c.len_utf8());
                    }
                } else if run.is_none() {
                    run = Some(i);
                }
            }
            if let Some(start) = run {
                spans.push(start..text.len());
            }
            spans
        }
    }
}

pub fn tokenize(text: &str, mode: TokenMode) -> Vec<&str> {
    token_spans(text, mode).into_iter().map(|r| &text[r]).collect()
}

/// Ordered units of one text under a fixed [`TokenMode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence<'a> {
    tokens: Vec<&'a str>,
    mode: TokenMode,
}

impl<'a> TokenSequence<'a> {
    pub fn new(text: &'a str, mode: TokenMode) -> Self {
        Self { tokens: tokenize(text, mode), mode }
    }

    pub fn tokens(&self) -> &[&'a str] {
        &self.tokens
    }

    pub fn mode(&self) -> TokenMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}
