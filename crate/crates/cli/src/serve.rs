use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use dpf_core::llm::wire::{ChatCompletionRequest, ChatCompletionResponse};
use dpf_core::llm::{ChatProvider, LlmRequest};
use dpf_core::pipeline::{PipelineConfig, Providers, HIGH_RISK_FILE, SECURE_FILE};
use dpf_core::ppvd::{check_links, Guard, VectorIndex};
use serde_json::json;

pub const ACTION_HEADER: &str = "x-ppvd-action";

struct AppState {
    guard: Guard,
    policy: Arc<dyn ChatProvider>,
    model: String,
    indexes_loaded: bool,
}

fn load_indexes(dir: &Path) -> Result<(VectorIndex, VectorIndex)> {
    let high = VectorIndex::load(&dir.join(HIGH_RISK_FILE))?;
    let secure = VectorIndex::load(&dir.join(SECURE_FILE))?;
    check_links(&high, &secure)?;
    Ok((high, secure))
}

pub fn router(state: Arc<AppStateHandle>) -> Router {
    Router::new()
        .route("/v1/chat/completions", post(chat))
        .route("/healthz", get(health))
        .with_state(state)
}

/// Opaque handle so the state type stays private.
pub struct AppStateHandle(AppState);

async fn health(State(s): State<Arc<AppStateHandle>>) -> Response {
    let s = &s.0;
    let status = if s.indexes_loaded { StatusCode::OK } else { StatusCode::SERVICE_UNAVAILABLE };
    (status, Json(json!({ "indexes_loaded": s.indexes_loaded, "model": s.model }))).into_response()
}

async fn chat(State(s): State<Arc<AppStateHandle>>, Json(body): Json<ChatCompletionRequest>) -> Response {
    if body.messages.is_empty() {
        return (StatusCode::BAD_REQUEST, Json(json!({ "error": "messages must not be empty" }))).into_response();
    }
    let mut req = LlmRequest::prompt(s.0.model.clone(), "");
    req.messages = body.messages;
    req.temperature = body.temperature.unwrap_or(0.0);
    req.max_tokens = body.max_tokens.unwrap_or(req.max_tokens);
    req.seed = body.seed;
    let worker = s.clone();
    let served = tokio::task::spawn_blocking(move || worker.0.guard.serve(&*worker.0.policy, &req)).await;
    match served {
        Ok((text, decision)) => {
            let id = format!("ppvd-{}", &decision.prompt_sha256[..16]);
            let resp = ChatCompletionResponse::single(id, s.0.model.clone(), text);
            ([(ACTION_HEADER, decision.action.as_str())], Json(resp)).into_response()
        }
        Err(_) => (StatusCode::INTERNAL_SERVER_ERROR, [(ACTION_HEADER, "refuse")], Json(json!({ "error": "guard failed" })))
            .into_response(),
    }
}

pub fn run(cfg: &PipelineConfig, providers: &Providers, index_dir: &Path, log: &Path) -> Result<()> {
    let indexes = match load_indexes(index_dir) {
        Ok(ix) => Some(ix),
        Err(e) => {
            eprintln!("warning: indexes in {} unusable ({e}); every request will be refused", index_dir.display());
            None
        }
    };
    let indexes_loaded = indexes.is_some();
    let log_file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(log)
        .with_context(|| format!("opening decision log {}", log.display()))?;
    let guard = Guard::new(
        indexes,
        providers.embedder.clone(),
        cfg.ppvd.match_threshold,
        cfg.ppvd.match_on,
        Box::new(log_file),
    )?;
    let state = Arc::new(AppStateHandle(AppState {
        guard,
        policy: providers.chat.clone(),
        model: cfg.providers.policy_model.clone(),
        indexes_loaded,
    }));

    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(&cfg.ppvd.bind)
            .await
            .with_context(|| format!("binding {}", cfg.ppvd.bind))?;
        println!("listening on {}", listener.local_addr()?);
        std::io::stdout().flush()?;
        axum::serve(listener, router(state))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(())
    })
}
