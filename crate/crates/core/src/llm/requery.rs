use super::provider::{ChatProvider, LlmRequest, Message};
use crate::{Error, Result};

/// An item set aside because its model exchange failed.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Quarantined {
    pub id: String,
    pub stage: String,
    pub reason: String,
}

impl Quarantined {
    pub fn new(id: impl Into<String>, stage: &str, err: &Error) -> Self {
        Self { id: id.into(), stage: stage.to_string(), reason: err.to_string() }
    }
}

/// Re-queries allowed after a reply fails to parse.
pub const MAX_REQUERIES: usize = 2;

pub const FORMAT_REMINDER: &str =
    "Your previous reply did not follow the required format. Please strictly follow the output format given above.";

/// Sends `req` and parses the reply. On a parse failure the bad reply and a
/// format reminder are appended to the conversation and the request is sent
/// again, at most [`MAX_REQUERIES`] times. Provider errors are not retried
/// here; the client already did that.
pub fn ask_parsed<T>(
    client: &dyn ChatProvider,
    req: &LlmRequest,
    parse: impl Fn(&str) -> Result<T>,
) -> Result<T> {
    let mut req = req.clone();
    let mut last_err = None;
    for _ in 0..=MAX_REQUERIES {
        let reply = client.complete(&req)?;
        match parse(&reply) {
            Ok(v) => return Ok(v),
            Err(e) => {
                last_err = Some(e);
                req.messages.push(Message::assistant(reply));
                req.messages.push(Message::user(FORMAT_REMINDER));
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Parse("no reply".into())))
}
