//! OpenAI-style HTTP backends: chat completions, embeddings and reward
//! scoring endpoints.

use std::sync::Arc;
use std::time::Duration;

use dpf_core::llm::wire::{ChatCompletionRequest, ChatCompletionResponse, EmbeddingRequest, EmbeddingResponse};
use dpf_core::llm::{ChatClient, ChatProvider, Embedder, LlmRequest};
use dpf_core::pipeline::{PipelineConfig, Providers, ScorerFactory, ScorerSpec};
use dpf_core::pref::RewardScorer;
use dpf_core::text::Vector;
use dpf_core::{Error, ProviderError};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Clone)]
struct Endpoint {
    agent: ureq::Agent,
    api_key: Option<String>,
}

impl Endpoint {
    fn new(timeout_secs: u64, api_key_env: &str) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(timeout_secs)))
            .http_status_as_error(false)
            .build()
            .into();
        let api_key = std::env::var(api_key_env).ok().filter(|k| !k.is_empty());
        Self { agent, api_key }
    }

    fn post<B: Serialize, R: DeserializeOwned>(&self, url: &str, body: &B) -> Result<R, ProviderError> {
        let mut req = self.agent.post(url);
        if let Some(key) = &self.api_key {
            req = req.header("Authorization", format!("Bearer {key}"));
        }
        let mut resp = req.send_json(body).map_err(transport_error)?;
        let status = resp.status().as_u16();
        if !(200..300).contains(&status) {
            let text = resp.body_mut().read_to_string().unwrap_or_default();
            return Err(ProviderError::from_status(status, text.chars().take(200).collect::<String>()));
        }
        resp.body_mut()
            .read_json()
            .map_err(|e| ProviderError::parse(format!("undecodable response body: {e}")))
    }
}

fn transport_error(e: ureq::Error) -> ProviderError {
    match e {
        ureq::Error::StatusCode(s) => ProviderError::from_status(s, "http error"),
        ureq::Error::BadUri(_) | ureq::Error::Http(_) | ureq::Error::InvalidProxyUrl => {
            ProviderError::permanent(e.to_string())
        }
        ureq::Error::Json(_) => ProviderError::parse(e.to_string()),
        _ => ProviderError::transient(e.to_string()),
    }
}

pub struct HttpChat {
    endpoint: Endpoint,
    url: String,
}

impl ChatProvider for HttpChat {
    fn complete(&self, req: &LlmRequest) -> Result<String, ProviderError> {
        req.validate()?;
        let body = ChatCompletionRequest {
            model: req.model.clone(),
            messages: req.messages.clone(),
            temperature: Some(req.temperature),
            max_tokens: Some(req.max_tokens),
            seed: req.seed,
        };
        let resp: ChatCompletionResponse = self.endpoint.post(&self.url, &body)?;
        resp.first_content()
            .map(str::to_string)
            .ok_or_else(|| ProviderError::parse("response has no choices"))
    }
}

pub struct HttpEmbedder {
    endpoint: Endpoint,
    url: String,
    model: String,
}

impl Embedder for HttpEmbedder {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vector>, ProviderError> {
        let body = EmbeddingRequest { model: self.model.clone(), input: texts.to_vec() };
        let mut resp: EmbeddingResponse = self.endpoint.post(&self.url, &body)?;
        if resp.data.len() != texts.len() {
            return Err(ProviderError::parse(format!("{} embeddings for {} inputs", resp.data.len(), texts.len())));
        }
        resp.data.sort_by_key(|d| d.index);
        resp.data
            .into_iter()
            .map(|d| Vector::new(d.embedding).map_err(|e| ProviderError::parse(e.to_string())))
            .collect()
    }
}

#[derive(Serialize)]
struct RewardRequest<'a> {
    model: &'a str,
    query: &'a str,
    response: &'a str,
}

#[derive(Deserialize)]
struct RewardResponse {
    reward: f64,
}

/// A reward model behind `POST url {model, query, response} -> {reward}`.
pub struct HttpScorer {
    id: String,
    url: String,
    endpoint: Endpoint,
}

impl RewardScorer for HttpScorer {
    fn id(&self) -> &str {
        &self.id
    }

    fn score(&self, x: &str, y: &str) -> dpf_core::Result<f64> {
        let r: RewardResponse = self.endpoint.post(&self.url, &RewardRequest { model: &self.id, query: x, response: y })?;
        if !r.reward.is_finite() {
            return Err(ProviderError::parse(format!("non-finite reward from {}", self.id)).into());
        }
        Ok(r.reward)
    }
}

/// Backends for `kind = "http"`.
pub fn providers(cfg: &PipelineConfig) -> dpf_core::Result<Providers> {
    let p = &cfg.providers;
    let endpoint = Endpoint::new(p.timeout_secs, &p.api_key_env);
    let chat = HttpChat { endpoint: endpoint.clone(), url: p.chat_url.clone() };
    let embedder = HttpEmbedder { endpoint: endpoint.clone(), url: p.embed_url.clone(), model: p.embed_model.clone() };
    let scorers: ScorerFactory = Arc::new(move |spec: &ScorerSpec| {
        let url = spec
            .url
            .clone()
            .ok_or_else(|| Error::Config(format!("http scorer {:?} needs a url", spec.id)))?;
        Ok(Box::new(HttpScorer { id: spec.id.clone(), url, endpoint: endpoint.clone() }) as Box<dyn RewardScorer>)
    });
    Ok(Providers {
        chat: Arc::new(ChatClient::new(Arc::new(chat), p.client)),
        embedder: Arc::new(embedder),
        http_scorers: Some(scorers),
    })
}
