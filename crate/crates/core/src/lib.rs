//! Data-processing toolkit for domain LLM training data and a privacy-preserving
//! serving layer.
//!
//! The crate covers the full data lifecycle:
//!
//! - [`text`]: tokenization, LCS / ROUGE-L, repetition and special-character
//!   rates, n-gram perplexity, cosine and embedding-based similarity.
//! - [`clean`]: the pre-training filter battery over JSONL documents.
//! - [`dedup`]: MinHash-LSH near-duplicate removal.
//! - [`llm`]: provider-agnostic chat / embedding clients, prompt templates,
//!   strict reply parsers and deterministic mocks.
//! - [`sft`] and [`instruct`]: SFT selection / optimization and chained-example
//!   instruction generation.
//! - [`pref`]: preference-pair generation, reward-ensemble distance and
//!   quantile denoising.
//! - [`ppvd`]: memory scan, high-risk / secure vector indexes and
//!   match-and-replace serving.
//! - [`pipeline`]: configuration, stage manifests and evaluation harness.

pub mod clean;
pub mod dedup;
mod error;
mod exec;
pub mod hashing;
pub mod instruct;
pub mod jsonl;
pub mod llm;
pub mod pipeline;
pub mod ppvd;
pub mod pref;
pub mod sft;
pub mod text;

pub use error::{Error, ProviderError, ProviderErrorKind, Result};
