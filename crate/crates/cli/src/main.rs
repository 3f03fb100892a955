mod cmd;
mod http;
mod serve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Data processing pipeline for domain-model corpora: pretraining cleanup,
/// SFT curation, preference data and privacy-preserving serving.
#[derive(Parser, Debug)]
#[command(name = "dpf", version, propagate_version = true)]
pub struct Cli {
    /// Pipeline config (TOML). Built-in defaults when omitted.
    #[arg(long, short, global = true)]
    pub config: Option<PathBuf>,
    /// Override the config's global seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Re-run a stage even when its manifest says the outputs are current.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct InOut {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Heuristic quality filtering of pretraining documents.
    Clean {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_kept: PathBuf,
        /// Defaults to `<out-kept stem>.rejected.jsonl`.
        #[arg(long)]
        out_rejected: Option<PathBuf>,
        /// Saved n-gram model for the perplexity rule; fit on the input otherwise.
        #[arg(long)]
        lm: Option<PathBuf>,
    },
    /// MinHash-LSH near-duplicate removal over JSONL records.
    Dedup {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Keep SFT samples the judge scores at or above the threshold.
    Select {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        threshold: Option<u8>,
    },
    /// Let the optimizer model rewrite answers that need it.
    Optimize {
        #[command(flatten)]
        io: InOut,
    },
    /// Fill missing instructions with the quality-ordered example chain.
    GenInstructions {
        #[arg(long)]
        seed_pool: PathBuf,
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        chain_len: Option<usize>,
        /// `chained` or `plain-fewshot`.
        #[arg(long, value_parser = cmd::parse_enum::<dpf_core::llm::ChainMode>)]
        mode: Option<dpf_core::llm::ChainMode>,
    },
    /// Sample candidates and vote chosen/rejected pairs.
    GenPreference {
        #[arg(long)]
        sft: PathBuf,
        #[arg(long)]
        supplementary: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score pairs with the reward-model ensemble.
    ScorePreference {
        #[command(flatten)]
        io: InOut,
        /// TOML file with `[[scorers]]` entries; the config's list otherwise.
        #[arg(long)]
        scorers: Option<PathBuf>,
    },
    /// Drop the lowest and highest preference-distance quantiles.
    Denoise {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        low: Option<f64>,
        #[arg(long)]
        high: Option<f64>,
        #[arg(long)]
        drop_negative: bool,
    },
    /// Probe the policy model for memorized training samples.
    PpvdScan {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        split_ratio: Option<f64>,
    },
    /// Build the linked high-risk and secure vector indexes.
    PpvdBuild {
        #[arg(long)]
        reports: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Serve chat completions behind the match-and-replace guard.
    PpvdServe {
        #[arg(long)]
        index_dir: PathBuf,
        #[arg(long)]
        match_threshold: Option<f64>,
        /// `prompt_and_draft` or `prompt`.
        #[arg(long, value_parser = cmd::parse_enum::<dpf_core::ppvd::MatchOn>)]
        match_on: Option<dpf_core::ppvd::MatchOn>,
        /// Address to bind; port 0 picks a free port (printed on stdout).
        #[arg(long)]
        bind: Option<String>,
        /// Defaults to `<index-dir>/decisions.jsonl`.
        #[arg(long)]
        decision_log: Option<PathBuf>,
    },
    /// Score candidate outputs against references.
    Evaluate {
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long)]
        references: PathBuf,
        /// `similarity`, `ai-judge` or `choices`.
        #[arg(long)]
        mode: dpf_core::pipeline::EvalMode,
        /// Full report with per-row values; the summary always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every stage over the config's inputs.
    Run,
    /// Spot-check text metrics.
    Metrics {
        #[command(subcommand)]
        which: MetricsCmd,
    },
    /// Inspect or check configuration.
    Config {
        #[command(subcommand)]
        which: ConfigCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum MetricsCmd {
    /// ROUGE-L between two texts.
    Rouge {
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        reference: String,
        #[arg(long, default_value = "word", value_parser = cmd::parse_enum::<dpf_core::text::TokenMode>)]
        mode: dpf_core::text::TokenMode,
    },
    /// Embedding-F1 and ROUGE-L average, using the configured embedder.
    Similarity {
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        reference: String,
        #[arg(long, default_value = "word", value_parser = cmd::parse_enum::<dpf_core::text::TokenMode>)]
        mode: dpf_core::text::TokenMode,
    },
    /// Every filter measurement and the resulting verdict for one text.
    Filter {
        #[arg(long)]
        text: String,
        /// Model for the perplexity rule; without it perplexity is measured
        /// against a model fit on the text itself.
        #[arg(long)]
        lm: Option<PathBuf>,
    },
    /// Perplexity of a text under a saved model.
    Perplexity {
        #[arg(long)]
        lm: PathBuf,
        #[arg(long)]
        text: String,
    },
    /// Fit an n-gram model on a JSONL corpus and save it.
    TrainLm {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConfigCmd {
    /// Print the full default configuration.
    PrintDefaults,
    /// Load, check every bound and print the effective configuration.
    Validate,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cmd::EXIT_USAGE } else { 0 });
        }
    };
    match cmd::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(cmd::exit_code(&e))
        }
    }
}
