//! Capacity-extended roofline classification, utilization estimates,
//! capacity planning and parameter sweeps.
//!
//! The classic roofline splits points into compute-bound and
//! bandwidth-bound. Two capacity classes are added:
//!
//! - [`BoundClass::CapacityExceeded`]: a single request (B = 1) does not fit
//!   in the aggregate memory.
//! - [`BoundClass::CapacityLimited`]: requests fit and the point is below the
//!   ridge, but no batch that fits in memory reaches the ridge. Batching is
//!   the only lever that raises OI, so memory capacity caps utilization.
//!
//! MFU and MBU here are roofline estimates, not measurements.

use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hardware::HardwareSpec;
use crate::metrics::{phase_metrics, MetricsOptions, OperatingPoint, Phase, PhaseMetrics};
use crate::model::ModelSpec;
use crate::workload::{TokenTotals, WorkloadSpec};

/// Largest batch used when probing how far batching can raise OI.
const MAX_PROBE_BATCH: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundClass {
    ComputeBound,
    BandwidthBound,
    CapacityLimited,
    CapacityExceeded,
}

impl BoundClass {
    pub const ALL: [BoundClass; 4] = [
        BoundClass::ComputeBound,
        BoundClass::BandwidthBound,
        BoundClass::CapacityLimited,
        BoundClass::CapacityExceeded,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundClass::ComputeBound => "compute-bound",
            BoundClass::BandwidthBound => "bandwidth-bound",
            BoundClass::CapacityLimited => "capacity-limited",
            BoundClass::CapacityExceeded => "capacity-exceeded",
        }
    }

    pub fn is_capacity_class(&self) -> bool {
        matches!(self, BoundClass::CapacityLimited | BoundClass::CapacityExceeded)
    }
}

impl std::fmt::Display for BoundClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How weights are laid out over `num_devices`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum WeightPlacement {
    /// One copy of the weights spread over all devices (lower bound).
    #[default]
    Shared,
    /// Every device holds a full copy and serves its own requests (upper bound).
    Replicated,
}

impl FromStr for WeightPlacement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "shared" => Ok(WeightPlacement::Shared),
            "replicated" => Ok(WeightPlacement::Replicated),
            other => Err(format!("unknown placement `{other}` (expected shared or replicated)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AnalysisOptions {
    pub placement: WeightPlacement,
    pub metrics: MetricsOptions,
    /// Precision used to look up peak FLOP/s; defaults to the model's
    /// `weight_bits`.
    pub compute_bits: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseAnalysis {
    pub point: OperatingPoint,
    pub metrics: PhaseMetrics,
    pub class: BoundClass,
    pub compute_bits: u32,
    pub ridge: f64,
    /// Per-device FLOP/s the roofline allows; for capacity-limited points
    /// this is evaluated at `max_feasible_batch`.
    pub attainable_flops: f64,
    pub attainable_tokens_per_s: f64,
    pub mfu_est: f64,
    pub mbu_est: f64,
    pub max_feasible_batch: u64,
    /// `None` when no number of devices can hold the point (replicated
    /// weights larger than one device).
    pub min_devices: Option<u64>,
    /// Whether `point.batch_size` itself fits in the configured devices.
    pub batch_fits: bool,
    pub capacity_required: f64,
    pub capacity_available: f64,
}

/// Footprint of one request beyond the weights, in bits.
fn request_bits(spec: &ModelSpec, point: &OperatingPoint, opts: &AnalysisOptions) -> u128 {
    let act = if opts.metrics.include_activations {
        let in_flight = match point.phase {
            Phase::Prefill => point.context_len,
            Phase::Decode => 1,
        };
        2 * spec.d_model as u128 * in_flight as u128 * spec.kv_bits as u128
    } else {
        0
    };
    spec.kv_bits_per_token() * point.context_len as u128 + act
}

fn batch_within(capacity_bits: u128, weight_bits: u128, per_request: u128) -> u128 {
    if weight_bits > capacity_bits {
        0
    } else if per_request == 0 {
        u64::MAX as u128
    } else {
        (capacity_bits - weight_bits) / per_request
    }
}

fn max_feasible_at(
    spec: &ModelSpec,
    hw: &HardwareSpec,
    point: &OperatingPoint,
    opts: &AnalysisOptions,
) -> u64 {
    let w = spec.weight_bits_total();
    let r = request_bits(spec, point, opts);
    let b = match opts.placement {
        WeightPlacement::Shared => batch_within(8 * hw.aggregate_capacity(), w, r),
        WeightPlacement::Replicated => {
            batch_within(8 * hw.mem_capacity as u128, w, r) * hw.num_devices as u128
        }
    };
    b.min(u64::MAX as u128) as u64
}

/// Largest number of concurrent decode requests at context `context_len`
/// that fit next to the weights. Zero when the weights alone do not fit.
pub fn max_feasible_batch(
    spec: &ModelSpec,
    hw: &HardwareSpec,
    context_len: u64,
    opts: &AnalysisOptions,
) -> u64 {
    max_feasible_at(spec, hw, &OperatingPoint::new(Phase::Decode, 1, context_len), opts)
}

/// Fewest devices of type `hw` that hold `point.batch_size` requests.
pub fn min_devices(
    spec: &ModelSpec,
    hw: &HardwareSpec,
    point: &OperatingPoint,
    opts: &AnalysisOptions,
) -> Option<u64> {
    let w = spec.weight_bits_total();
    let r = request_bits(spec, point, opts);
    let b = point.batch_size as u128;
    let cap = 8 * hw.mem_capacity as u128;
    let k = match opts.placement {
        WeightPlacement::Shared => (w + b * r).div_ceil(cap).max(1),
        WeightPlacement::Replicated => {
            let per_device = batch_within(cap, w, r);
            if per_device == 0 {
                return None;
            }
            b.div_ceil(per_device).max(1)
        }
    };
    u64::try_from(k).ok()
}

pub fn classify(
    spec: &ModelSpec,
    hw: &HardwareSpec,
    point: &OperatingPoint,
    opts: &AnalysisOptions,
) -> Result<PhaseAnalysis> {
    point.validate()?;
    let compute_bits = opts.compute_bits.unwrap_or(spec.weight_bits);
    let peak = hw.peak(compute_bits)?;
    let ridge = hw.ridge_point(compute_bits)?;
    let metrics = phase_metrics(spec, point, &opts.metrics)?;
    let max_b = max_feasible_at(spec, hw, point, opts);

    let (class, mfu_est, mbu_est, attainable_flops) = if max_b == 0 {
        (BoundClass::CapacityExceeded, 0.0, 0.0, 0.0)
    } else if metrics.oi >= ridge {
        (BoundClass::ComputeBound, 1.0, ridge / metrics.oi, peak)
    } else {
        let probe = max_b.min(MAX_PROBE_BATCH);
        let best = phase_metrics(spec, &point.with_batch(probe), &opts.metrics)?.oi;
        if best >= ridge {
            let flops = hw.attainable_flops(compute_bits, metrics.oi)?;
            (BoundClass::BandwidthBound, metrics.oi / ridge, 1.0, flops)
        } else {
            // On the bandwidth arm even at the largest batch that fits.
            let flops = hw.attainable_flops(compute_bits, best)?;
            (BoundClass::CapacityLimited, best / ridge, 1.0, flops)
        }
    };

    let attainable_tokens_per_s =
        attainable_flops / metrics.flops_per_token * hw.num_devices as f64;
    let capacity_required = (spec.weight_bits_total()
        + point.batch_size as u128 * request_bits(spec, point, opts))
        as f64
        / 8.0;
    let capacity_available = match opts.placement {
        WeightPlacement::Shared => hw.aggregate_capacity() as f64,
        WeightPlacement::Replicated => hw.mem_capacity as f64,
    };

    Ok(PhaseAnalysis {
        point: *point,
        metrics,
        class,
        compute_bits,
        ridge,
        attainable_flops,
        attainable_tokens_per_s,
        mfu_est,
        mbu_est,
        max_feasible_batch: max_b,
        min_devices: min_devices(spec, hw, point, opts),
        batch_fits: point.batch_size <= max_b,
        capacity_required,
        capacity_available,
    })
}

/// Cartesian grid of operating points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub phases: Vec<Phase>,
    pub batches: Vec<u64>,
    pub contexts: Vec<u64>,
}

impl Grid {
    pub fn points(&self) -> Vec<OperatingPoint> {
        let mut out = Vec::with_capacity(self.phases.len() * self.batches.len() * self.contexts.len());
        for &phase in &self.phases {
            for &b in &self.batches {
                for &l in &self.contexts {
                    out.push(OperatingPoint::new(phase, b, l));
                }
            }
        }
        out
    }
}

const MAX_AXIS_POINTS: usize = 100_000;

/// Parses `B=<axis>,L=<axis>`; phases default to both.
///
/// An axis is `v`, `v1|v2|...`, `a..b` (every integer), `a..b:log`
/// (doubling from `a`, `b` always included), `a..b:log:N` or `a..b:lin:N`
/// (`N` points, rounded). Values accept `k` (1e3) and `m` (1e6) suffixes.
impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut batches = None;
        let mut contexts = None;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, axis) = part
                .split_once('=')
                .ok_or_else(|| format!("grid entry `{part}` is not KEY=VALUES"))?;
            let values = parse_axis(axis.trim())?;
            match key.trim() {
                "B" | "b" => batches = Some(values),
                "L" | "l" => contexts = Some(values),
                other => return Err(format!("unknown grid key `{other}` (expected B or L)")),
            }
        }
        Ok(Grid {
            phases: vec![Phase::Prefill, Phase::Decode],
            batches: batches.unwrap_or_else(|| vec![1]),
            contexts: contexts.ok_or("grid needs an L axis")?,
        })
    }
}

pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, scale) = match s.chars().last() {
        Some('k' | 'K') => (&s[..s.len() - 1], 1_000),
        Some('m' | 'M') => (&s[..s.len() - 1], 1_000_000),
        _ => (s, 1),
    };
    let v: u64 = digits.parse().map_err(|_| format!("`{s}` is not a count"))?;
    v.checked_mul(scale).ok_or_else(|| format!("`{s}` overflows"))
}

fn parse_axis(axis: &str) -> Result<Vec<u64>, String> {
    let mut parts = axis.split(':');
    let range = parts.next().unwrap_or_default();
    let mode = parts.next();
    let count = parts.next().map(parse_count).transpose()?;
    let mut values = if let Some((a, b)) = range.split_once("..") {
        let (a, b) = (parse_count(a)?, parse_count(b)?);
        if a == 0 || a > b {
            return Err(format!("range `{range}` must satisfy 1 <= start <= end"));
        }
        match (mode, count) {
            (None, _) => {
                if (b - a) as usize >= MAX_AXIS_POINTS {
                    return Err(format!("range `{range}` has too many points; add :log"));
                }
                (a..=b).collect()
            }
            (Some("log"), None) => {
                let mut v = Vec::new();
                let mut x = a;
                while x < b {
                    v.push(x);
                    x = x.saturating_mul(2);
                }
                v.push(b);
                v
            }
            (Some("log"), Some(n)) => spaced(a, b, n, |lo, hi, t| (lo.ln() + t * (hi.ln() - lo.ln())).exp())?,
            (Some("lin"), Some(n)) => spaced(a, b, n, |lo, hi, t| lo + t * (hi - lo))?,
            (Some(m), _) => return Err(format!("unknown axis mode `{m}`")),
        }
    } else {
        if mode.is_some() {
            return Err(format!("axis mode needs a range, got `{axis}`"));
        }
        range.split('|').map(parse_count).collect::<Result<Vec<_>, _>>()?
    };
    if values.iter().any(|&v| v == 0) {
        return Err("axis values must be at least 1".into());
    }
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

fn spaced(a: u64, b: u64, n: u64, f: impl Fn(f64, f64, f64) -> f64) -> Result<Vec<u64>, String> {
    if n < 2 || n as usize > MAX_AXIS_POINTS {
        return Err(format!("point count must be in 2..={MAX_AXIS_POINTS}"));
    }
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                b
            } else {
                f(a as f64, b as f64, i as f64 / (n - 1) as f64).round() as u64
            }
        })
        .collect())
}

/// What to sweep over.
#[derive(Debug, Clone, Copy)]
pub enum SweepInput<'a> {
    Grid(&'a Grid),
    /// One prefill point at each turn's prompt length and one decode point at
    /// each turn's final context, at the workload's batch size.
    Workload(&'a WorkloadSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Workload turn this point came from, if any.
    pub turn: Option<u64>,
    pub analysis: PhaseAnalysis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentTotals {
    pub workload: String,
    pub turns: u64,
    pub tokens: TokenTotals,
    pub final_context: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub model: String,
    pub hardware: String,
    pub rows: Vec<SweepRow>,
    pub totals: Option<AgentTotals>,
}

pub fn sweep(
    spec: &ModelSpec,
    hw: &HardwareSpec,
    input: SweepInput<'_>,
    opts: &AnalysisOptions,
) -> Result<SweepResult> {
    let (points, totals): (Vec<(Option<u64>, OperatingPoint)>, _) = match input {
        SweepInput::Grid(grid) => (grid.points().into_iter().map(|p| (None, p)).collect(), None),
        SweepInput::Workload(workload) => {
            workload.validate()?;
            let trace = workload.expand();
            let b = workload.batch_size;
            let mut points = Vec::new();
            for turn in &trace.turns {
                if turn.prompt_context() > 0 {
                    points.push((
                        Some(turn.turn_index),
                        OperatingPoint::new(Phase::Prefill, b, turn.prompt_context()),
                    ));
                }
                if turn.decode_tokens() > 0 {
                    points.push((
                        Some(turn.turn_index),
                        OperatingPoint::new(Phase::Decode, b, turn.decode_contexts.end - 1),
                    ));
                }
            }
            let totals = AgentTotals {
                workload: workload.name.clone(),
                turns: workload.turns,
                tokens: trace.total_tokens(),
                final_context: trace.final_context(),
            };
            (points, Some(totals))
        }
    };
    if points.is_empty() {
        return Err(Error::EmptySweep("no operating points"));
    }
    let rows = points
        .par_iter()
        .map(|(turn, p)| {
            classify(spec, hw, p, opts).map(|analysis| SweepRow {
                turn: *turn,
                analysis,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        model: spec.name.clone(),
        hardware: hw.name.clone(),
        rows,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardware::tests::unit_device;
    use crate::metrics::decode_metrics;
    use crate::model::tests::{attn48, toy};
    use crate::model::AttentionKind;
    use std::collections::BTreeMap;

    fn opts() -> AnalysisOptions {
        AnalysisOptions::default()
    }

    fn hw_with_capacity(bytes: u64) -> HardwareSpec {
        HardwareSpec {
            mem_capacity: bytes,
            ..unit_device()
        }
    }

    #[test]
    fn max_batch_constructed() {
        let spec = attn48(AttentionKind::Mha);
        let l = 1000;
        let kv = spec.kv_bytes_per_token() as u64 * l;
        let w = spec.weight_bytes() as u64;
        assert_eq!(max_feasible_batch(&spec, &hw_with_capacity(w + 3 * kv), l, &opts()), 3);
        assert_eq!(max_feasible_batch(&spec, &hw_with_capacity(w + 3 * kv - 1), l, &opts()), 2);
        assert_eq!(max_feasible_batch(&spec, &hw_with_capacity(w - 1), l, &opts()), 0);
    }

    #[test]
    fn attn48_at_300k_on_192gb() {
        let spec = attn48(AttentionKind::Mha);
        let hw = hw_with_capacity(192_000_000_000);
        // 6.7 GB weights + 117.96 GB KV per request
        assert_eq!(max_feasible_batch(&spec, &hw, 300_000, &opts()), 1);
    }

    #[test]
    fn min_devices_ceiling() {
        let spec = toy();
        let point = OperatingPoint::new(Phase::Decode, 1, 1);
        // requirement 72 bytes
        assert_eq!(min_devices(&spec, &hw_with_capacity(1000), &point, &opts()), Some(1));
        assert_eq!(min_devices(&spec, &hw_with_capacity(36), &point, &opts()), Some(2));
        assert_eq!(min_devices(&spec, &hw_with_capacity(35), &point, &opts()), Some(3));
        let rep = AnalysisOptions { placement: WeightPlacement::Replicated, ..opts() };
        assert_eq!(min_devices(&spec, &hw_with_capacity(63), &point, &rep), None);
        let four = OperatingPoint::new(Phase::Decode, 4, 1);
        // 64 weight bytes + 8 per request: two requests per 80-byte device
        assert_eq!(min_devices(&spec, &hw_with_capacity(80), &four, &rep), Some(2));
    }

    #[test]
    fn compute_bound_on_unit_device() {
        // Ridge 1.0; pick a spec and point whose prefill OI is exactly 2.
        let spec = toy();
        let point = OperatingPoint::new(Phase::Prefill, 1, 1);
        let oi = phase_metrics(&spec, &point, &MetricsOptions::default()).unwrap().oi;
        let ridge = oi / 2.0;
        let hw = HardwareSpec {
            peak_flops: BTreeMap::from([(16, ridge * 1e12)]),
            ..unit_device()
        };
        let a = classify(&spec, &hw, &point, &opts()).unwrap();
        assert_eq!(a.class, BoundClass::ComputeBound);
        assert_eq!(a.mfu_est, 1.0);
        assert_eq!(a.mbu_est, 0.5);
        assert_eq!(a.attainable_flops, ridge * 1e12);
    }

    #[test]
    fn capacity_limited_when_no_batch_reaches_ridge() {
        let spec = toy();
        let point = OperatingPoint::new(Phase::Decode, 1, 1);
        // Exactly room for one request; ridge far above any decode OI.
        let hw = HardwareSpec {
            peak_flops: BTreeMap::from([(16, 1e15)]),
            mem_capacity: 72,
            ..unit_device()
        };
        let a = classify(&spec, &hw, &point, &opts()).unwrap();
        assert_eq!(a.max_feasible_batch, 1);
        assert_eq!(a.class, BoundClass::CapacityLimited);
        assert_eq!(a.mfu_est, a.metrics.oi / a.ridge);
    }

    #[test]
    fn bandwidth_bound_when_batching_helps() {
        let spec = toy();
        let point = OperatingPoint::new(Phase::Decode, 1, 1);
        // oi(B=1) = 0.9 < ridge 1.0, but larger batches pass it.
        let a = classify(&spec, &unit_device(), &point, &opts()).unwrap();
        assert_eq!(a.metrics.oi, 0.9);
        assert_eq!(a.class, BoundClass::BandwidthBound);
        assert_eq!(a.mbu_est, 1.0);
        assert!((a.mfu_est - 0.9).abs() < 1e-15);
        // Remove the headroom: capacity for 1 request only.
        let tight = hw_with_capacity(72);
        assert_eq!(classify(&spec, &tight, &point, &opts()).unwrap().class, BoundClass::CapacityLimited);
    }

    #[test]
    fn capacity_exceeded() {
        let spec = toy();
        let point = OperatingPoint::new(Phase::Decode, 1, 1);
        let a = classify(&spec, &hw_with_capacity(71), &point, &opts()).unwrap();
        assert_eq!(a.class, BoundClass::CapacityExceeded);
        assert_eq!(a.attainable_tokens_per_s, 0.0);
        assert_eq!(a.min_devices, Some(2));
    }

    #[test]
    fn unknown_precision_propagates() {
        let mut spec = toy();
        spec.weight_bits = 8;
        let point = OperatingPoint::new(Phase::Decode, 1, 1);
        assert!(matches!(
            classify(&spec, &unit_device(), &point, &opts()),
            Err(Error::UnknownPrecision { bits: 8, .. })
        ));
        let o = AnalysisOptions { compute_bits: Some(16), ..opts() };
        assert!(classify(&spec, &unit_device(), &point, &o).is_ok());
    }

    #[test]
    fn single_point_sweep_equals_classify() {
        let spec = attn48(AttentionKind::Gqa { num_kv_heads: 8 });
        let grid = Grid { phases: vec![Phase::Decode], batches: vec![4], contexts: vec![2048] };
        let res = sweep(&spec, &unit_device(), SweepInput::Grid(&grid), &opts()).unwrap();
        assert_eq!(res.rows.len(), 1);
        let direct = classify(&spec, &unit_device(), &grid.points()[0], &opts()).unwrap();
        assert_eq!(res.rows[0].analysis, direct);
        assert_eq!(
            res.rows[0].analysis.metrics,
            decode_metrics(&spec, &grid.points()[0]).unwrap()
        );
    }

    #[test]
    fn workload_sweep_rows() {
        let spec = toy();
        let w = WorkloadSpec {
            name: "w".into(),
            turns: 3,
            prefill_tokens_per_turn: 10,
            decode_tokens_per_turn: 2,
            carry_context: true,
            batch_size: 2,
        };
        let res = sweep(&spec, &unit_device(), SweepInput::Workload(&w), &opts()).unwrap();
        let got: Vec<_> = res
            .rows
            .iter()
            .map(|r| (r.turn.unwrap(), r.analysis.point.phase, r.analysis.point.context_len))
            .collect();
        assert_eq!(
            got,
            vec![
                (0, Phase::Prefill, 10),
                (0, Phase::Decode, 12),
                (1, Phase::Prefill, 22),
                (1, Phase::Decode, 24),
                (2, Phase::Prefill, 34),
                (2, Phase::Decode, 36),
            ]
        );
        let totals = res.totals.unwrap();
        assert_eq!(totals.tokens, TokenTotals { prefill: 30, decode: 6 });
        assert_eq!(totals.final_context, 36);
    }

    #[test]
    fn grid_parsing() {
        let g: Grid = "B=1..64,L=1k..1m:log".parse().unwrap();
        assert_eq!(g.batches.len(), 64);
        assert_eq!(g.contexts.first(), Some(&1000));
        assert_eq!(g.contexts.last(), Some(&1_000_000));
        assert_eq!(g.contexts[1], 2000);
        let g: Grid = "B=1|16,L=4096".parse().unwrap();
        assert_eq!(g.batches, vec![1, 16]);
        assert_eq!(g.contexts, vec![4096]);
        let g: Grid = "L=1..1000:log:4".parse().unwrap();
        assert_eq!(g.contexts, vec![1, 10, 100, 1000]);
        let g: Grid = "L=10..40:lin:4".parse().unwrap();
        assert_eq!(g.contexts, vec![10, 20, 30, 40]);
        assert!("B=1..4".parse::<Grid>().is_err());
        assert!("L=0..4".parse::<Grid>().is_err());
        assert!("X=1".parse::<Grid>().is_err());
        assert!("L=1..1m".parse::<Grid>().is_err());
    }

    #[test]
    fn more_devices_do_not_change_per_device_oi() {
        let spec = attn48(AttentionKind::Mha);
        let point = OperatingPoint::new(Phase::Decode, 1, 300_000);
        let hw = HardwareSpec {
            peak_flops: BTreeMap::from([(16, 2.25e15)]),
            mem_bandwidth: 8e12,
            mem_capacity: 192_000_000_000,
            ..unit_device()
        };
        let one = classify(&spec, &hw, &point, &opts()).unwrap();
        let eight = classify(&spec, &hw.with_devices(8), &point, &opts()).unwrap();
        assert_eq!(one.metrics, eight.metrics);
        assert_eq!(one.class, BoundClass::CapacityLimited);
        assert_eq!(eight.class, BoundClass::CapacityLimited);
    }
}
