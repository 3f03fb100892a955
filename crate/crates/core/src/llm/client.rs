use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Condvar, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::provider::{request_fingerprint, ChatProvider, LlmRequest};
use crate::{ProviderError, ProviderErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RetryPolicy {
    /// Total attempts including the first one.
    pub max_attempts: u32,
    pub base_delay_ms: u64,
    pub max_delay_ms: u64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self { max_attempts: 4, base_delay_ms: 500, max_delay_ms: 8_000 }
    }
}

impl RetryPolicy {
    /// Delay before retry number `retry` (1-based): base · 2^(retry−1), capped.
    pub fn delay(&self, retry: u32) -> Duration {
        let factor = 1u64.checked_shl(retry.saturating_sub(1)).unwrap_or(u64::MAX);
        Duration::from_millis(self.base_delay_ms.saturating_mul(factor).min(self.max_delay_ms))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClientConfig {
    pub retry: RetryPolicy,
    pub max_in_flight: usize,
    /// Requests per second; `None` disables rate limiting.
    pub rate_per_sec: Option<f64>,
    pub burst: u32,
}

impl Default for ClientConfig {
    fn default() -> Self {
        Self { retry: RetryPolicy::default(), max_in_flight: 8, rate_per_sec: None, burst: 8 }
    }
}

/// Token bucket shared by every request to one endpoint.
#[derive(Debug)]
pub struct TokenBucket {
    capacity: f64,
    rate: f64,
    state: Mutex<(f64, Instant)>,
}

impl TokenBucket {
    pub fn new(rate_per_sec: f64, burst: u32) -> Self {
        let capacity = f64::from(burst.max(1));
        Self { capacity, rate: rate_per_sec, state: Mutex::new((capacity, Instant::now())) }
    }

    /// Blocks until a token is available.
    pub fn acquire(&self) {
        loop {
            let wait = {
                let mut s = self.state.lock().unwrap();
                let now = Instant::now();
                let refill = now.duration_since(s.1).as_secs_f64() * self.rate;
                s.0 = (s.0 + refill).min(self.capacity);
                s.1 = now;
                if s.0 >= 1.0 {
                    s.0 -= 1.0;
                    return;
                }
                Duration::from_secs_f64((1.0 - s.0) / self.rate)
            };
            std::thread::sleep(wait);
        }
    }
}

#[derive(Debug)]
struct Semaphore {
    permits: Mutex<usize>,
    cv: Condvar,
}

impl Semaphore {
    fn new(n: usize) -> Self {
        Self { permits: Mutex::new(n.max(1)), cv: Condvar::new() }
    }

    fn acquire(&self) -> Permit<'_> {
        let mut p = self.permits.lock().unwrap();
        while *p == 0 {
            p = self.cv.wait(p).unwrap();
        }
        *p -= 1;
        Permit(self)
    }
}

struct Permit<'a>(&'a Semaphore);

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        *self.0.permits.lock().unwrap() += 1;
        self.0.cv.notify_one();
    }
}

type Sleeper = Arc<dyn Fn(Duration) + Send + Sync>;

/// Retrying, rate-limited front for a raw provider.
///
/// Transient errors are retried with exponential backoff up to
/// `retry.max_attempts`; permanent and parse errors surface immediately.
/// Running out of attempts is reported as a permanent error.
pub struct ChatClient {
    inner: Arc<dyn ChatProvider>,
    config: ClientConfig,
    limiter: Option<TokenBucket>,
    in_flight: Semaphore,
    sleeper: Sleeper,
    transcript: Option<Mutex<Box<dyn Write + Send>>>,
    attempts: AtomicU64,
}

impl ChatClient {
    pub fn new(inner: Arc<dyn ChatProvider>, config: ClientConfig) -> Self {
        Self {
            limiter: config.rate_per_sec.map(|r| TokenBucket::new(r, config.burst)),
            in_flight: Semaphore::new(config.max_in_flight),
            inner,
            config,
            sleeper: Arc::new(std::thread::sleep),
            transcript: None,
            attempts: AtomicU64::new(0),
        }
    }

    /// Replaces the backoff sleep, e.g. with a no-op in tests.
    pub fn with_sleeper(mut self, sleeper: impl Fn(Duration) + Send + Sync + 'static) -> Self {
        self.sleeper = Arc::new(sleeper);
        self
    }

    /// Logs every exchange as one JSON line.
    pub fn with_transcript(mut self, sink: Box<dyn Write + Send>) -> Self {
        self.transcript = Some(Mutex::new(sink));
        self
    }

    /// Provider calls made so far, retries included.
    pub fn attempts(&self) -> u64 {
        self.attempts.load(Ordering::Relaxed)
    }

    pub fn chat(&self, req: &LlmRequest) -> Result<String, ProviderError> {
        req.validate()?;
        let _permit = self.in_flight.acquire();
        let policy = self.config.retry;
        let mut attempt = 0u32;
        let result = loop {
            attempt += 1;
            if let Some(l) = &self.limiter {
                l.acquire();
            }
            self.attempts.fetch_add(1, Ordering::Relaxed);
            match self.inner.complete(req) {
                Ok(text) => break Ok(text),
                Err(e) if e.kind == ProviderErrorKind::Transient => {
                    if attempt >= policy.max_attempts.max(1) {
                        break Err(ProviderError {
                            kind: ProviderErrorKind::Permanent,
                            status: e.status,
                            message: format!(
                                "retry budget exhausted after {attempt} attempts: {}",
                                e.message
                            ),
                        });
                    }
                    (self.sleeper)(policy.delay(attempt));
                }
                Err(e) => break Err(e),
            }
        };
        self.log(req, &result);
        result
    }

    fn log(&self, req: &LlmRequest, result: &Result<String, ProviderError>) {
        let Some(sink) = &self.transcript else { return };
        let line = serde_json::json!({
            "fingerprint": request_fingerprint(req),
            "model": req.model,
            "messages": req.messages,
            "reply": result.as_ref().ok(),
            "error": result.as_ref().err().map(|e| e.to_string()),
        });
        let mut w = sink.lock().unwrap();
        let _ = writeln!(w, "{line}");
    }
}

impl ChatProvider for ChatClient {
    fn complete(&self, req: &LlmRequest) -> Result<String, ProviderError> {
        self.chat(req)
    }
}
