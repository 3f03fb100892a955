//! Deterministic text statistics and similarity metrics.

mod lcs;
mod ngram;
mod rates;
mod similarity;
mod special;
mod tokenize;

pub use lcs::{lcs_length, rouge_l, rouge_l_str, RougeScore};
pub use ngram::{NGramModel, NGramModelBuilder};
pub use rates::{char_repetition_rate, ngram_repetition_rate, word_repetition_rate};
pub use similarity::{cosine, embedding_f1, similarity_eval, Vector};
pub use special::{special_char_ratio, CharClasses, DEFAULT_PUNCTUATION};
pub use tokenize::{is_cjk, is_cjk_ideograph, token_spans, tokenize, TokenMode, TokenSequence};

/// Default n for character repetition grams.
pub const DEFAULT_CHAR_REP_N: usize = 3;
/// Default n for word repetition grams.
pub const DEFAULT_WORD_REP_N: usize = 2;
