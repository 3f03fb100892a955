use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::clean::FilterConfig;
use crate::dedup::DedupParams;
use crate::llm::{ChainMode, ClientConfig};
use crate::ppvd::MatchOn;
use crate::text::TokenMode;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    pub seed: u64,
    pub artifact_dir: PathBuf,
    pub inputs: InputsConfig,
    pub providers: ProviderConfig,
    pub lm: LmConfig,
    pub filter: FilterConfig,
    pub dedup: DedupParams,
    pub select: SelectConfig,
    pub instruct: InstructConfig,
    pub preference: PreferenceConfig,
    pub ppvd: PpvdConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            artifact_dir: PathBuf::from("artifacts"),
            inputs: InputsConfig::default(),
            providers: ProviderConfig::default(),
            lm: LmConfig::default(),
            filter: FilterConfig::default(),
            dedup: DedupParams::default(),
            select: SelectConfig::default(),
            instruct: InstructConfig::default(),
            preference: PreferenceConfig::default(),
            ppvd: PpvdConfig::default(),
        }
    }
}

/// Source files for a full run. Relative paths resolve against the config
/// file's directory.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InputsConfig {
    pub corpus: Option<PathBuf>,
    pub sft: Option<PathBuf>,
    pub seed_pool: Option<PathBuf>,
    pub supplementary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderKind {
    #[default]
    Mock,
    Http,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProviderConfig {
    pub kind: ProviderKind,
    /// OpenAI-style chat completions URL.
    pub chat_url: String,
    pub embed_url: String,
    /// Environment variable holding the bearer token.
    pub api_key_env: String,
    pub timeout_secs: u64,
    pub generator_model: String,
    pub judge_model: String,
    pub optimizer_model: String,
    pub policy_model: String,
    pub general_model: String,
    pub vote_models: Vec<String>,
    pub embed_model: String,
    /// Dimension of the offline hashing embedder.
    pub mock_embed_dim: usize,
    /// JSON object of request fingerprint -> reply, consulted before the
    /// built-in mock replies.
    pub mock_fixtures: Option<PathBuf>,
    /// JSONL records whose text the mock policy model regurgitates, for
    /// exercising the memorization scan offline.
    pub mock_memorized: Option<PathBuf>,
    pub client: ClientConfig,
}

impl Default for ProviderConfig {
    fn default() -> Self {
        Self {
            kind: ProviderKind::Mock,
            chat_url: "http://127.0.0.1:8000/v1/chat/completions".into(),
            embed_url: "http://127.0.0.1:8000/v1/embeddings".into(),
            api_key_env: "DPF_API_KEY".into(),
            timeout_secs: 120,
            generator_model: "generator".into(),
            judge_model: "judge".into(),
            optimizer_model: "optimizer".into(),
            policy_model: "policy".into(),
            general_model: "general".into(),
            vote_models: vec!["judge-a".into(), "judge-b".into(), "judge-c".into()],
            embed_model: "embedder".into(),
            mock_embed_dim: 256,
            mock_fixtures: None,
            mock_memorized: None,
            client: ClientConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LmConfig {
    /// Pre-trained model file; when absent the model is fit on the input.
    pub model: Option<PathBuf>,
    pub order: usize,
    pub mode: TokenMode,
    pub k: f64,
}

impl Default for LmConfig {
    fn default() -> Self {
        Self { model: None, order: 3, mode: TokenMode::Char, k: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelectConfig {
    pub threshold: u8,
}

impl Default for SelectConfig {
    fn default() -> Self {
        Self { threshold: 9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InstructConfig {
    pub chain_len: usize,
    pub mode: ChainMode,
}

impl Default for InstructConfig {
    fn default() -> Self {
        Self { chain_len: crate::instruct::DEFAULT_CHAIN_LEN, mode: ChainMode::Chained }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScorerKind {
    #[default]
    Feature,
    Http,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScorerSpec {
    pub id: String,
    #[serde(default)]
    pub kind: ScorerKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub url: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PreferenceConfig {
    pub n_sft: usize,
    pub n_supplementary: usize,
    pub candidates: usize,
    pub temperature: f64,
    pub low: f64,
    pub high: f64,
    pub drop_negative: bool,
    pub scorers: Vec<ScorerSpec>,
}

impl Default for PreferenceConfig {
    fn default() -> Self {
        use crate::pref::*;
        Self {
            n_sft: DEFAULT_N_SFT,
            n_supplementary: DEFAULT_N_SUPPLEMENTARY,
            candidates: DEFAULT_CANDIDATES,
            temperature: DEFAULT_TEMPERATURE,
            low: DEFAULT_CUT,
            high: DEFAULT_CUT,
            drop_negative: false,
            scorers: (1..=5)
                .map(|i| ScorerSpec { id: format!("rm-{i}"), kind: ScorerKind::Feature, seed: i, url: None })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PpvdConfig {
    pub split_ratio: f64,
    pub scan_threshold: f64,
    pub match_threshold: f64,
    pub match_on: MatchOn,
    pub bind: String,
    pub decision_log: Option<PathBuf>,
}

impl Default for PpvdConfig {
    fn default() -> Self {
        use crate::ppvd::*;
        Self {
            split_ratio: DEFAULT_SPLIT_RATIO,
            scan_threshold: DEFAULT_SCAN_THRESHOLD,
            match_threshold: DEFAULT_MATCH_THRESHOLD,
            match_on: MatchOn::PromptAndDraft,
            bind: "127.0.0.1:8088".into(),
            decision_log: None,
        }
    }
}

fn unit_interval(name: &str, v: f64, open_low: bool) -> Result<()> {
    let ok = if open_low { v > 0.0 && v <= 1.0 } else { (0.0..=1.0).contains(&v) };
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} = {v} is out of range")))
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads and validates a config file, resolving relative paths against
    /// its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if let Some(base) = path.parent() {
            cfg.resolve_paths(base);
        }
        Ok(cfg)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.artifact_dir);
        for p in [
            &mut self.inputs.corpus,
            &mut self.inputs.sft,
            &mut self.inputs.seed_pool,
            &mut self.inputs.supplementary,
            &mut self.lm.model,
            &mut self.providers.mock_fixtures,
            &mut self.providers.mock_memorized,
            &mut self.ppvd.decision_log,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn defaults_toml() -> String {
        Self::default().to_toml().unwrap_or_default()
    }

    pub fn validate(&self) -> Result<()> {
        self.filter.validate()?;
        self.dedup.validate()?;
        if self.lm.order < 1 || self.lm.k.is_nan() || self.lm.k <= 0.0 {
            return Err(Error::Config("lm.order must be >= 1 and lm.k > 0".into()));
        }
        if !(1..=10).contains(&self.select.threshold) {
            return Err(Error::Config("select.threshold must lie in 1..=10".into()));
        }
        if self.instruct.chain_len < 2 {
            return Err(Error::Config("instruct.chain_len must be >= 2".into()));
        }
        let p = &self.preference;
        if p.candidates < 2 {
            return Err(Error::Config("preference.candidates must be >= 2".into()));
        }
        if !(p.temperature > 0.0 && p.temperature.is_finite()) {
            return Err(Error::Config("preference.temperature must be > 0".into()));
        }
        if !(p.low >= 0.0 && p.high >= 0.0 && p.low + p.high < 1.0) {
            return Err(Error::Config("preference.low + preference.high must be < 1, both >= 0".into()));
        }
        if p.scorers.is_empty() {
            return Err(Error::Config("preference.scorers must list at least one scorer".into()));
        }
        let mut ids = std::collections::BTreeSet::new();
        for s in &p.scorers {
            if !ids.insert(&s.id) {
                return Err(Error::Config(format!("duplicate scorer id {:?}", s.id)));
            }
            if s.kind == ScorerKind::Http && s.url.is_none() {
                return Err(Error::Config(format!("scorer {:?} is http but has no url", s.id)));
            }
        }
        if self.providers.vote_models.len() != crate::pref::JUDGES {
            return Err(Error::Config(format!("providers.vote_models must name exactly {} models", crate::pref::JUDGES)));
        }
        if self.providers.mock_embed_dim == 0 {
            return Err(Error::Config("providers.mock_embed_dim must be >= 1".into()));
        }
        if self.providers.client.max_in_flight == 0 || self.providers.client.retry.max_attempts == 0 {
            return Err(Error::Config("client.max_in_flight and retry.max_attempts must be >= 1".into()));
        }
        let v = &self.ppvd;
        if !(v.split_ratio > 0.0 && v.split_ratio < 1.0) {
            return Err(Error::Config("ppvd.split_ratio must lie in (0, 1)".into()));
        }
        unit_interval("ppvd.scan_threshold", v.scan_threshold, true)?;
        unit_interval("ppvd.match_threshold", v.match_threshold, true)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let text = PipelineConfig::defaults_toml();
        assert_eq!(PipelineConfig::from_toml(&text).unwrap(), PipelineConfig::default());
        assert_eq!(PipelineConfig::from_toml("").unwrap(), PipelineConfig::default());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(PipelineConfig::from_toml("sed = 1").is_err());
        assert!(PipelineConfig::from_toml("[dedup]\nbandz = 3").is_err());
    }

    #[test]
    fn bounds_checked() {
        assert!(PipelineConfig::from_toml("[dedup]\nbands = 10").is_err());
        assert!(PipelineConfig::from_toml("[preference]\nlow = 0.6\nhigh = 0.5").is_err());
        assert!(PipelineConfig::from_toml("[ppvd]\nscan_threshold = 0.0").is_err());
        assert!(PipelineConfig::from_toml("[select]\nthreshold = 11").is_err());
        let ok = PipelineConfig::from_toml("seed = 7\n[ppvd]\nmatch_on = \"prompt\"").unwrap();
        assert_eq!((ok.seed, ok.ppvd.match_on), (7, MatchOn::Prompt));
    }
}
