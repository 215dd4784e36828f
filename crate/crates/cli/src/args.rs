use std::path::PathBuf;

use agentroof::report::{AttentionVariants, Formats};
use agentroof::{AnalysisOptions, Grid, MetricsOptions, WeightPlacement};
use agentroof::config::LoadOptions;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::{parse_counts, Command, PhaseSelection, ReportRequest};

#[derive(Debug, Parser)]
#[command(
    name = "agentroof",
    version,
    about = "Operational intensity and capacity footprint analysis for LLM agent inference"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Classify one operating point per phase.
    Analyze(CommonArgs),
    /// Classify every point of a grid or workload trace.
    Sweep(CommonArgs),
    /// Capacity footprint versus context for MHA, GQA and MLA variants.
    CompareAttention(CommonArgs),
    /// Dense versus MoE footprint and decode OI.
    CompareMoe(CommonArgs),
    /// Per-agent token usage, footprint and phase OI.
    AgentProfile(CommonArgs),
    /// Roofline chart with points colored by bound class.
    RooflinePlot(CommonArgs),
}

/// Comma-separated count list.
#[derive(Debug, Clone)]
pub struct Counts(pub Vec<u64>);

fn counts(s: &str) -> Result<Counts, String> {
    parse_counts(s).map(Counts)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PhaseArg {
    Prefill,
    Decode,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlacementArg {
    Shared,
    Replicated,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Model preset name or config path; repeat for compare-moe.
    #[arg(long)]
    pub model: Vec<String>,

    /// Hardware preset name or config path.
    #[arg(long)]
    pub hardware: Option<String>,

    /// Workload preset name or config path; repeat for agent-profile.
    #[arg(long)]
    pub workload: Vec<String>,

    #[arg(long, value_enum, default_value = "both")]
    pub phase: PhaseArg,

    /// Batch sizes, comma separated.
    #[arg(long, value_parser = counts)]
    pub batch: Option<Counts>,

    /// Context lengths, comma separated; k and m suffixes accepted.
    #[arg(long, value_parser = counts)]
    pub context: Option<Counts>,

    /// Grid such as "B=1..64,L=1k..1m:log".
    #[arg(long)]
    pub grid: Option<Grid>,

    #[arg(long, default_value = "out")]
    pub out: PathBuf,

    /// Any of csv, svg, text.
    #[arg(long, default_value = "csv,svg,text")]
    pub format: Formats,

    /// Exit with status 3 if any point is capacity-exceeded.
    #[arg(long)]
    pub strict: bool,

    /// Ignore unknown keys in config files instead of rejecting them.
    #[arg(long)]
    pub allow_unknown_keys: bool,

    #[arg(long, value_enum, default_value = "shared")]
    pub placement: PlacementArg,

    /// Precision used for peak FLOP/s; defaults to the model's weight bits.
    #[arg(long)]
    pub compute_bits: Option<u32>,

    /// Count activation spills in traffic and footprint.
    #[arg(long)]
    pub include_activations: bool,

    /// KV heads of the GQA variant (compare-attention).
    #[arg(long, default_value_t = 8)]
    pub kv_heads: u64,

    /// Latent width of the MLA variant (compare-attention).
    #[arg(long, default_value_t = 512)]
    pub d_latent: u64,

    /// Decoupled RoPE width of the MLA variant (compare-attention).
    #[arg(long, default_value_t = 64)]
    pub d_rope: u64,
}

impl Cli {
    pub fn into_request(self) -> ReportRequest {
        let (command, a) = match self.command {
            CliCommand::Analyze(a) => (Command::Analyze, a),
            CliCommand::Sweep(a) => (Command::Sweep, a),
            CliCommand::CompareAttention(a) => (Command::CompareAttention, a),
            CliCommand::CompareMoe(a) => (Command::CompareMoe, a),
            CliCommand::AgentProfile(a) => (Command::AgentProfile, a),
            CliCommand::RooflinePlot(a) => (Command::RooflinePlot, a),
        };
        ReportRequest {
            command,
            models: a.model,
            hardware: a.hardware,
            workloads: a.workload,
            phase: match a.phase {
                PhaseArg::Prefill => PhaseSelection::Prefill,
                PhaseArg::Decode => PhaseSelection::Decode,
                PhaseArg::Both => PhaseSelection::Both,
            },
            batches: a.batch.map(|c| c.0).unwrap_or_default(),
            contexts: a.context.map(|c| c.0).unwrap_or_default(),
            grid: a.grid,
            out: a.out,
            formats: a.format,
            strict: a.strict,
            load: LoadOptions { allow_unknown_keys: a.allow_unknown_keys },
            analysis: AnalysisOptions {
                placement: match a.placement {
                    PlacementArg::Shared => WeightPlacement::Shared,
                    PlacementArg::Replicated => WeightPlacement::Replicated,
                },
                metrics: MetricsOptions { include_activations: a.include_activations },
                compute_bits: a.compute_bits,
            },
            variants: AttentionVariants {
                num_kv_heads: a.kv_heads,
                d_latent: a.d_latent,
                d_rope: a.d_rope,
            },
        }
    }
}
