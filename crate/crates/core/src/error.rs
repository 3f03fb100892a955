use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("template error: missing slot `{0}`")]
    MissingSlot(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad file format: {0}")]
    Format(String),
    #[error(transparent)]
    Provider(#[from] ProviderError),
    #[error("missing artifact: {0}")]
    MissingArtifact(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderErrorKind {
    /// Worth retrying (rate limits, 5xx, timeouts).
    Transient,
    /// Retrying will not help (4xx, exhausted budget).
    Permanent,
    /// The provider answered but the body could not be decoded.
    Parse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProviderError {
    pub kind: ProviderErrorKind,
    pub status: Option<u16>,
    pub message: String,
}

impl ProviderError {
    pub fn transient(message: impl Into<String>) -> Self {
        Self { kind: ProviderErrorKind::Transient, status: None, message: message.into() }
    }

    pub fn permanent(message: impl Into<String>) -> Self {
        Self { kind: ProviderErrorKind::Permanent, status: None, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self { kind: ProviderErrorKind::Parse, status: None, message: message.into() }
    }

    /// Classifies an HTTP status: 408, 429 and 5xx are transient, other 4xx permanent.
    pub fn from_status(status: u16, message: impl Into<String>) -> Self {
        let kind = match status {
            408 | 429 | 500..=599 => ProviderErrorKind::Transient,
            _ => ProviderErrorKind::Permanent,
        };
        Self { kind, status: Some(status), message: message.into() }
    }
}

impl fmt::Display for ProviderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ProviderErrorKind::Transient => "transient",
            ProviderErrorKind::Permanent => "permanent",
            ProviderErrorKind::Parse => "parse",
        };
        match self.status {
            Some(s) => write!(f, "{kind} provider error (HTTP {s}): {}", self.message),
            None => write!(f, "{kind} provider error: {}", self.message),
        }
    }
}

impl std::error::Error for ProviderError {}
