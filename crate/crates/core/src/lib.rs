//! Analytical roofline modeling for LLM agent inference.
//!
//! Computes operational intensity (FLOPs per off-chip byte) and capacity
//! footprint (off-chip bytes per request) for prefill and decode, places
//! operating points on a roofline extended with memory-capacity classes,
//! and builds comparison reports across models, agent workloads and
//! accelerators.
//!
//! ```
//! use agentroof::{classify, AnalysisOptions, OperatingPoint, Phase};
//! use agentroof::config::{resolve_hardware, resolve_model, LoadOptions};
//!
//! let opts = LoadOptions::default();
//! let model = resolve_model("llama3-70b", &opts).unwrap();
//! let hw = resolve_hardware("b200", &opts).unwrap();
//! let point = OperatingPoint::new(Phase::Decode, 1, 4096);
//! let a = classify(&model, &hw, &point, &AnalysisOptions::default()).unwrap();
//! assert!(a.metrics.oi < a.ridge);
//! ```

pub mod analysis;
pub mod catalog;
pub mod config;
pub mod error;
pub mod hardware;
pub mod metrics;
pub mod model;
pub mod report;
pub mod workload;

pub use analysis::{
    classify, max_feasible_batch, min_devices, sweep, AgentTotals, AnalysisOptions, BoundClass,
    Grid, PhaseAnalysis, SweepInput, SweepResult, SweepRow, WeightPlacement,
};
pub use error::{ConfigError, Error, Result, SpecError};
pub use hardware::HardwareSpec;
pub use metrics::{
    cf_request, decode_metrics, oi_matmul, oi_matmul_bytes, prefill_metrics, MetricsOptions,
    OperatingPoint, Phase, PhaseMetrics,
};
pub use model::{AttentionKind, ModelSpec, MoeSpec};
pub use workload::{TokenTotals, TurnRecord, TurnTrace, WorkloadSpec};
