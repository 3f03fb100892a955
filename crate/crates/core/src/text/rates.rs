use std::collections::HashSet;

use super::tokenize::{tokenize, TokenMode};
use crate::{Error, Result};

/// `1 − distinct/total` over the n-grams of `units`; 0 when there is at most
/// one n-gram.
pub fn ngram_repetition_rate<T: Eq + std::hash::Hash>(units: &[T], n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::invalid("repetition rate: n must be >= 1"));
    }
    if units.len() < n {
        return Ok(0.0);
    }
    let total = units.len() - n + 1;
    if total <= 1 {
        return Ok(0.0);
    }
    let distinct: HashSet<&[T]> = units.windows(n).collect();
    Ok(1.0 - distinct.len() as f64 / total as f64)
}

pub fn char_repetition_rate(text: &str, n: usize) -> Result<f64> {
    let chars: Vec<char> = text.chars().collect();
    ngram_repetition_rate(&chars, n)
}

/// Word n-gram repetition under the hybrid tokenizer (CJK per character).
pub fn word_repetition_rate(text: &str, n: usize) -> Result<f64> {
    ngram_repetition_rate(&tokenize(text, TokenMode::Word), n)
}
