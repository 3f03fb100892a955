use serde::{Deserialize, Serialize};

use crate::hashing::sha256_hex;
use crate::text::Vector;
use crate::ProviderError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: Role,
    pub content: String,
}

impl Message {
    pub fn user(content: impl Into<String>) -> Self {
        Self { role: Role::User, content: content.into() }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        Self { role: Role::Assistant, content: content.into() }
    }

    pub fn system(content: impl Into<String>) -> Self {
        Self { role: Role::System, content: content.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LlmRequest {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub endpoint: String,
    pub model: String,
    pub messages: Vec<Message>,
    pub temperature: f64,
    pub max_tokens: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl LlmRequest {
    /// Single user-turn request at temperature 0.
    pub fn prompt(model: impl Into<String>, prompt: impl Into<String>) -> Self {
        Self {
            endpoint: String::new(),
            model: model.into(),
            messages: vec![Message::user(prompt)],
            temperature: 0.0,
            max_tokens: 1024,
            seed: None,
        }
    }

    pub fn with_temperature(mut self, t: f64) -> Self {
        self.temperature = t;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn validate(&self) -> Result<(), ProviderError> {
        if self.messages.is_empty() {
            return Err(ProviderError::permanent("request has no messages"));
        }
        if self.temperature.is_nan() || self.temperature < 0.0 {
            return Err(ProviderError::permanent("temperature must be >= 0"));
        }
        Ok(())
    }

    /// Content of the last user message, if any.
    pub fn last_user(&self) -> Option<&str> {
        self.messages.iter().rev().find(|m| m.role == Role::User).map(|m| m.content.as_str())
    }
}

/// Stable fingerprint of everything that determines a reply.
pub fn request_fingerprint(req: &LlmRequest) -> String {
    #[derive(Serialize)]
    struct Key<'a> {
        model: &'a str,
        messages: &'a [Message],
        temperature: f64,
        seed: Option<u64>,
    }
    let key = Key {
        model: &req.model,
        messages: &req.messages,
        temperature: req.temperature,
        seed: req.seed,
    };
    sha256_hex(&serde_json::to_vec(&key).expect("request key serializes"))
}

/// A provider plus the model name to address on it.
#[derive(Clone, Copy)]
pub struct Gateway<'a> {
    pub provider: &'a dyn ChatProvider,
    pub model: &'a str,
}

impl<'a> Gateway<'a> {
    pub fn new(provider: &'a dyn ChatProvider, model: &'a str) -> Self {
        Self { provider, model }
    }

    pub fn request(&self, prompt: impl Into<String>) -> LlmRequest {
        LlmRequest::prompt(self.model, prompt)
    }
}

/// Anything that turns a chat request into assistant text.
pub trait ChatProvider: Send + Sync {
    fn complete(&self, req: &LlmRequest) -> Result<String, ProviderError>;
}

/// Anything that maps texts to fixed-dimension vectors.
pub trait Embedder: Send + Sync {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vector>, ProviderError>;
}

impl<T: ChatProvider + ?Sized> ChatProvider for &T {
    fn complete(&self, req: &LlmRequest) -> Result<String, ProviderError> {
        (**self).complete(req)
    }
}

impl<T: ChatProvider + ?Sized> ChatProvider for std::sync::Arc<T> {
    fn complete(&self, req: &LlmRequest) -> Result<String, ProviderError> {
        (**self).complete(req)
    }
}

impl<T: Embedder + ?Sized> Embedder for &T {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vector>, ProviderError> {
        (**self).embed(texts)
    }
}

impl<T: Embedder + ?Sized> Embedder for std::sync::Arc<T> {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vector>, ProviderError> {
        (**self).embed(texts)
    }
}
