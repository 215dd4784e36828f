//! Command dispatch for the `agentroof` binary.
//!
//! [`run`] is a pure function of the request and the referenced config
//! files: it reads no clock and no environment, and writes only under the
//! requested output directory.

use std::path::PathBuf;

use agentroof::analysis::parse_count;
use agentroof::config::{resolve_hardware, resolve_model, resolve_workload, LoadOptions};
use agentroof::report::{self, AttentionVariants, Formats, Report};
use agentroof::{
    sweep, AnalysisOptions, BoundClass, ConfigError, Error, Grid, HardwareSpec, ModelSpec,
    OperatingPoint, Phase, SweepInput, WorkloadSpec,
};
use thiserror::Error;

pub mod args;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Sweep,
    CompareAttention,
    CompareMoe,
    AgentProfile,
    RooflinePlot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseSelection {
    Prefill,
    Decode,
    #[default]
    Both,
}

impl PhaseSelection {
    pub fn phases(&self) -> Vec<Phase> {
        match self {
            PhaseSelection::Prefill => vec![Phase::Prefill],
            PhaseSelection::Decode => vec![Phase::Decode],
            PhaseSelection::Both => vec![Phase::Prefill, Phase::Decode],
        }
    }
}

/// Fully parsed invocation.
#[derive(Debug, Clone)]
pub struct ReportRequest {
    pub command: Command,
    pub models: Vec<String>,
    pub hardware: Option<String>,
    pub workloads: Vec<String>,
    pub phase: PhaseSelection,
    pub batches: Vec<u64>,
    pub contexts: Vec<u64>,
    pub grid: Option<Grid>,
    pub out: PathBuf,
    pub formats: Formats,
    /// Exit with [`EXIT_INFEASIBLE`] when any analyzed point is capacity-exceeded.
    pub strict: bool,
    pub load: LoadOptions,
    pub analysis: AnalysisOptions,
    pub variants: AttentionVariants,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Analysis(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(c) => CliError::Config(c),
            Error::Spec(s) => CliError::Usage(s.to_string()),
            Error::UnknownPrecision { .. } => CliError::Usage(e.to_string()),
            other => CliError::Analysis(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => EXIT_CONFIG,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Analysis(_) => EXIT_FAILURE,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub written: Vec<PathBuf>,
    /// Human-readable summary, empty unless the text format was requested.
    pub text: String,
}

fn model_or(req: &ReportRequest, default: &str) -> Result<ModelSpec, CliError> {
    let name = req.models.first().map_or(default, String::as_str);
    Ok(resolve_model(name, &req.load)?)
}

fn hardware_or(req: &ReportRequest, default: &str) -> Result<HardwareSpec, CliError> {
    Ok(resolve_hardware(req.hardware.as_deref().unwrap_or(default), &req.load)?)
}

fn workloads(req: &ReportRequest) -> Result<Vec<WorkloadSpec>, CliError> {
    req.workloads
        .iter()
        .map(|w| resolve_workload(w, &req.load).map_err(CliError::from))
        .collect()
}

fn check_strict(req: &ReportRequest, classes: impl IntoIterator<Item = (OperatingPoint, BoundClass)>) -> Result<(), CliError> {
    if !req.strict {
        return Ok(());
    }
    for (p, class) in classes {
        if class == BoundClass::CapacityExceeded {
            return Err(CliError::Infeasible(format!(
                "{} point B={} L={} does not fit in memory",
                p.phase, p.batch_size, p.context_len
            )));
        }
    }
    Ok(())
}

const DEFAULT_HARDWARE: &str = "b200";
const DEFAULT_MODEL: &str = "llama3-70b";
const DEFAULT_AGENTS: [&str; 4] = ["chatbot", "coding", "web-use", "computer-use"];

pub fn build_report(req: &ReportRequest) -> Result<Report, CliError> {
    match req.command {
        Command::Analyze => {
            let spec = model_or(req, DEFAULT_MODEL)?;
            let hw = hardware_or(req, DEFAULT_HARDWARE)?;
            let ws = workloads(req)?;
            let batch = match (req.batches.first(), ws.first()) {
                (Some(&b), _) => b,
                (None, Some(w)) => w.batch_size,
                (None, None) => 1,
            };
            let contexts = if !req.contexts.is_empty() {
                req.contexts.clone()
            } else if let Some(w) = ws.first() {
                vec![w.expand().final_context().max(1)]
            } else {
                vec![4096]
            };
            let points: Vec<OperatingPoint> = req
                .phase
                .phases()
                .into_iter()
                .flat_map(|ph| contexts.iter().map(move |&l| OperatingPoint::new(ph, batch, l)))
                .collect();
            let (report, analyses) = report::analyze(&spec, &hw, &points, &req.analysis)?;
            check_strict(req, analyses.iter().map(|a| (a.point, a.class)))?;
            Ok(report)
        }
        Command::Sweep | Command::RooflinePlot => {
            let spec = model_or(req, DEFAULT_MODEL)?;
            let hw = hardware_or(req, DEFAULT_HARDWARE)?;
            let ws = workloads(req)?;
            let result = match (&req.grid, ws.first()) {
                (Some(grid), _) => {
                    let grid = Grid { phases: req.phase.phases(), ..grid.clone() };
                    sweep(&spec, &hw, SweepInput::Grid(&grid), &req.analysis)?
                }
                (None, Some(w)) => {
                    let mut result = sweep(&spec, &hw, SweepInput::Workload(w), &req.analysis)?;
                    let keep = req.phase.phases();
                    result.rows.retain(|r| keep.contains(&r.analysis.point.phase));
                    result
                }
                (None, None) if req.command == Command::RooflinePlot => {
                    let grid: Grid = "B=1|16|64,L=1k|32k|300k".parse().map_err(CliError::Usage)?;
                    let grid = Grid { phases: req.phase.phases(), ..grid };
                    sweep(&spec, &hw, SweepInput::Grid(&grid), &req.analysis)?
                }
                (None, None) => {
                    return Err(CliError::Usage("sweep needs --grid or --workload".into()))
                }
            };
            check_strict(req, result.rows.iter().map(|r| (r.analysis.point, r.analysis.class)))?;
            let mut report = report::sweep_report(&result, &hw)?;
            if req.command == Command::RooflinePlot {
                for (name, _) in report.tables.iter_mut() {
                    *name = name.replacen("sweep", "roofline", 1);
                }
                for (name, _) in report.svgs.iter_mut() {
                    *name = "roofline".into();
                }
            }
            Ok(report)
        }
        Command::CompareAttention => {
            let spec = model_or(req, "attn48-mha")?;
            let hw = req.hardware.as_deref().map(|h| resolve_hardware(h, &req.load)).transpose()?;
            let contexts = match (&req.grid, req.contexts.is_empty()) {
                (Some(g), _) => g.contexts.clone(),
                (None, false) => req.contexts.clone(),
                (None, true) => "L=1k..1m:log".parse::<Grid>().map_err(CliError::Usage)?.contexts,
            };
            let batch = req.batches.first().copied().unwrap_or(1);
            Ok(report::compare_attention(&spec, &req.variants, &contexts, batch, hw.as_ref())?)
        }
        Command::CompareMoe => {
            let names: Vec<&str> = if req.models.is_empty() {
                vec![DEFAULT_MODEL, "mixtral-8x22b"]
            } else {
                req.models.iter().map(String::as_str).collect()
            };
            let models = names
                .iter()
                .map(|n| resolve_model(n, &req.load).map_err(CliError::from))
                .collect::<Result<Vec<_>, _>>()?;
            let hw = hardware_or(req, DEFAULT_HARDWARE)?;
            let batches = if req.batches.is_empty() { vec![1, 16] } else { req.batches.clone() };
            let context = req.contexts.first().copied().unwrap_or(4096);
            Ok(report::compare_moe(&models, &batches, context, Some(&hw))?)
        }
        Command::AgentProfile => {
            let spec = model_or(req, DEFAULT_MODEL)?;
            let hw = hardware_or(req, DEFAULT_HARDWARE)?;
            let mut ws = workloads(req)?;
            if ws.is_empty() {
                ws = DEFAULT_AGENTS
                    .iter()
                    .map(|n| resolve_workload(n, &req.load))
                    .collect::<Result<_, _>>()?;
            }
            if let Some(&b) = req.batches.first() {
                for w in &mut ws {
                    w.batch_size = b;
                }
            }
            Ok(report::agent_profile(&spec, &hw, &ws, &req.analysis)?)
        }
    }
}

pub fn run(req: &ReportRequest) -> Result<RunOutcome, CliError> {
    let report = build_report(req)?;
    let written = report.write(&req.out, &req.formats)?;
    let text = if req.formats.text { report.text.clone() } else { String::new() };
    Ok(RunOutcome { written, text })
}

/// Parses a comma-separated count list such as `4096,32k,1m`.
pub fn parse_counts(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| match parse_count(p)? {
            0 => Err(format!("`{p}` must be at least 1")),
            v => Ok(v),
        })
        .collect()
}
