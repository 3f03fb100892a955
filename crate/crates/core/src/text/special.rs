use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::tokenize::is_cjk_ideograph;

/// Default punctuation that does not count as "special".
pub const DEFAULT_PUNCTUATION: &str = ".,;:!?'\"()-，。！？；：、“”‘’（）《》—…·";

/// Allowed character classes for [`special_char_ratio`]: CJK ideographs,
/// ASCII alphanumerics and whitespace are always allowed, plus a
/// configurable punctuation allowlist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharClasses {
    pub punctuation: BTreeSet<char>,
}

impl Default for CharClasses {
    fn default() -> Self {
        Self::with_punctuation(DEFAULT_PUNCTUATION)
    }
}

impl CharClasses {
    pub fn with_punctuation(allowed: &str) -> Self {
        Self { punctuation: allowed.chars().collect() }
    }

    pub fn is_allowed(&self, c: char) -> bool {
        c.is_ascii_alphanumeric()
            || c.is_whitespace()
            || is_cjk_ideograph(c)
            || self.punctuation.contains(&c)
    }
}

/// Fraction of characters outside the allowed classes; 0 for empty text.
pub fn special_char_ratio(text: &str, classes: &CharClasses) -> f64 {
    let mut total = 0usize;
    let mut special = 0usize;
    for c in text.chars() {
        total += 1;
        if !classes.is_allowed(c) {
            special += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        special as f64 / total as f64
    }
}
