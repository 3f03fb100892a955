//! Provider-agnostic chat / embedding gateway, prompt templates and strict
//! parsers for the structured replies those templates ask for.

mod client;
mod mock;
mod parse;
mod provider;
mod requery;
mod template;
pub mod wire;

pub use client::{ChatClient, ClientConfig, RetryPolicy, TokenBucket};
pub use mock::{curator_reply, ConstantEmbedder, HashEmbedder, MockChat, ScriptedProvider, TableEmbedder};
pub(crate) use parse::{after_header, after_last_header, strip_header};
pub use parse::{
    normalize_reply, parse_judgement, parse_optimization, parse_score, parse_vote, JudgeOutcome,
    Judgement, ParsedOptimization, ParsedScore, ParsedVote,
};
pub use provider::{request_fingerprint, ChatProvider, Embedder, Gateway, LlmRequest, Message, Role};
pub use requery::{ask_parsed, Quarantined, FORMAT_REMINDER, MAX_REQUERIES};
pub use template::{
    render, render_chain, ChainMode, TemplateId, BRIDGE_FIRST, BRIDGE_LAST, BRIDGE_MIDDLE,
    BRIDGE_PLAIN,
};
