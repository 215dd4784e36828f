//! Tables, text summaries and SVG charts for each report kind.
//!
//! CSV cells carry full `f64` precision (shortest round-trip form); text and
//! SVG labels use six significant digits.

pub mod svg;

use std::path::{Path, PathBuf};

use crate::analysis::{classify, AnalysisOptions, BoundClass, PhaseAnalysis, SweepResult};
use crate::error::{Result, SpecError};
use crate::hardware::HardwareSpec;
use crate::metrics::{cf_request, decode_metrics, prefill_metrics, OperatingPoint, Phase};
use crate::model::{AttentionKind, ModelSpec};
use crate::workload::WorkloadSpec;

use svg::{axes, bar_panel, legend, BarGroup, Frame, Reference, Segment, Svg};

/// Formats `x` with `digits` significant digits, trailing zeros trimmed.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Full-precision CSV cell.
fn num(x: f64) -> String {
    format!("{x}")
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Aligned plain-text rendering; numeric cells shortened to six
    /// significant digits.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| match c.parse::<f64>() {
                        Ok(v) if c.contains('.') || c.contains('e') || c.len() > 7 => fmt_sig(v, 6),
                        _ => c.clone(),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.headers[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |r: &[String]| {
            r.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                + "\n"
        };
        let mut out = line(&self.headers);
        for r in &cells {
            out.push_str(&line(r));
        }
        out
    }
}

/// Everything one command produces, before it is written anywhere.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub tables: Vec<(String, Table)>,
    pub svgs: Vec<(String, String)>,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Formats {
    pub csv: bool,
    pub svg: bool,
    pub text: bool,
}

impl std::str::FromStr for Formats {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut f = Formats::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "csv" => f.csv = true,
                "svg" => f.svg = true,
                "text" => f.text = true,
                other => return Err(format!("unknown format `{other}` (expected csv, svg, text)")),
            }
        }
        if f == Formats::default() {
            return Err("at least one output format is required".into());
        }
        Ok(f)
    }
}

impl Report {
    /// Writes the selected artifacts into `dir` and returns their paths.
    pub fn write(&self, dir: &Path, formats: &Formats) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let mut put = |name: &str, contents: &str| -> Result<()> {
            let path = dir.join(name);
            std::fs::write(&path, contents)?;
            written.push(path);
            Ok(())
        };
        if formats.csv {
            for (name, table) in &self.tables {
                put(&format!("{name}.csv"), &table.to_csv()?)?;
            }
        }
        if formats.svg {
            for (name, svg) in &self.svgs {
                put(&format!("{name}.svg"), svg)?;
            }
        }
        if formats.text && !self.text.is_empty() {
            let name = self.tables.first().map_or("report", |(n, _)| n.as_str());
            put(&format!("{name}.txt"), &self.text)?;
        }
        Ok(written)
    }
}

pub fn class_color(class: BoundClass) -> &'static str {
    match class {
        BoundClass::ComputeBound => "#1f77b4",
        BoundClass::BandwidthBound => "#e6b800",
        BoundClass::CapacityLimited => "#d62728",
        BoundClass::CapacityExceeded => "#7f7f7f",
    }
}

const SERIES: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#17becf"];

pub const SWEEP_COLUMNS: [&str; 22] = [
    "model",
    "hardware",
    "turn",
    "phase",
    "batch_size",
    "context_len",
    "oi",
    "cf_bytes",
    "flops_per_token",
    "bytes_per_token",
    "class",
    "compute_bits",
    "ridge",
    "attainable_flops",
    "attainable_tokens_per_s",
    "mfu_est",
    "mbu_est",
    "max_feasible_batch",
    "min_devices",
    "batch_fits",
    "capacity_required_bytes",
    "capacity_available_bytes",
];

pub fn analysis_row(model: &str, hardware: &str, turn: Option<u64>, a: &PhaseAnalysis) -> Vec<String> {
    vec![
        model.to_string(),
        hardware.to_string(),
        turn.map_or(String::new(), |t| t.to_string()),
        a.point.phase.to_string(),
        a.point.batch_size.to_string(),
        a.point.context_len.to_string(),
        num(a.metrics.oi),
        num(a.metrics.cf),
        num(a.metrics.flops_per_token),
        num(a.metrics.bytes_per_token),
        a.class.to_string(),
        a.compute_bits.to_string(),
        num(a.ridge),
        num(a.attainable_flops),
        num(a.attainable_tokens_per_s),
        num(a.mfu_est),
        num(a.mbu_est),
        a.max_feasible_batch.to_string(),
        a.min_devices.map_or("none".into(), |k| k.to_string()),
        a.batch_fits.to_string(),
        num(a.capacity_required),
        num(a.capacity_available),
    ]
}

pub fn sweep_table(result: &SweepResult) -> Table {
    let mut t = Table::new(&SWEEP_COLUMNS);
    for row in &result.rows {
        t.push(analysis_row(&result.model, &result.hardware, row.turn, &row.analysis));
    }
    t
}

pub fn totals_table(result: &SweepResult) -> Option<Table> {
    let totals = result.totals.as_ref()?;
    let mut t = Table::new(&["workload", "turns", "prefill_tokens", "decode_tokens", "final_context"]);
    t.push(vec![
        totals.workload.clone(),
        totals.turns.to_string(),
        totals.tokens.prefill.to_string(),
        totals.tokens.decode.to_string(),
        totals.final_context.to_string(),
    ]);
    Some(t)
}

fn describe(a: &PhaseAnalysis) -> String {
    let m = &a.metrics;
    let mut s = format!(
        "{phase} B={b} L={l}\n  OI               {oi} FLOP/byte (ridge {ridge})\n  CF               {cf} bytes/request\n  FLOPs/token      {f}\n  bytes/token      {by}\n  class            {class}\n  MFU est          {mfu}\n  MBU est          {mbu}\n  tokens/s est     {tps}\n  max batch        {maxb}\n  min devices      {mind}\n",
        phase = a.point.phase,
        b = a.point.batch_size,
        l = a.point.context_len,
        oi = fmt_sig(m.oi, 6),
        ridge = fmt_sig(a.ridge, 6),
        cf = fmt_sig(m.cf, 6),
        f = fmt_sig(m.flops_per_token, 6),
        by = fmt_sig(m.bytes_per_token, 6),
        class = a.class,
        mfu = fmt_sig(a.mfu_est, 6),
        mbu = fmt_sig(a.mbu_est, 6),
        tps = fmt_sig(a.attainable_tokens_per_s, 6),
        maxb = a.max_feasible_batch,
        mind = a.min_devices.map_or("none".into(), |k| k.to_string()),
    );
    if !a.batch_fits {
        s.push_str("  note             requested batch does not fit in the configured devices\n");
    }
    s
}

/// Single-point analysis for one or both phases.
pub fn analyze(
    spec: &ModelSpec,
    hw: &HardwareSpec,
    points: &[OperatingPoint],
    opts: &AnalysisOptions,
) -> Result<(Report, Vec<PhaseAnalysis>)> {
    let analyses = points
        .iter()
        .map(|p| classify(spec, hw, p, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&SWEEP_COLUMNS);
    let mut text = format!(
        "model {} ({} params, {} activated, {} weight bytes, {} KV bytes/token)\nhardware {} x{}\n\n",
        spec.name,
        spec.total_params(),
        spec.activated_params(),
        fmt_sig(spec.weight_bytes(), 6),
        fmt_sig(spec.kv_bytes_per_token(), 6),
        hw.name,
        hw.num_devices,
    );
    for a in &analyses {
        table.push(analysis_row(&spec.name, &hw.name, None, a));
        text.push_str(&describe(a));
    }
    Ok((
        Report {
            tables: vec![("analyze".into(), table)],
            svgs: Vec::new(),
            text,
        },
        analyses,
    ))
}

pub fn sweep_report(result: &SweepResult, hw: &HardwareSpec) -> Result<Report> {
    let table = sweep_table(result);
    let text = table.to_text();
    let mut tables = vec![("sweep".to_string(), table)];
    if let Some(t) = totals_table(result) {
        tables.push(("sweep_totals".into(), t));
    }
    let analyses: Vec<&PhaseAnalysis> = result.rows.iter().map(|r| &r.analysis).collect();
    Ok(Report {
        tables,
        svgs: vec![("sweep".into(), roofline_svg(&result.model, hw, &analyses)?)],
        text,
    })
}

/// Roofline arms, ridge and points colored by class.
pub fn roofline_svg(model: &str, hw: &HardwareSpec, points: &[&PhaseAnalysis]) -> Result<String> {
    let bits = points.first().map_or_else(
        || hw.peak_flops.keys().next_back().copied().unwrap_or(16),
        |a| a.compute_bits,
    );
    let peak = hw.peak(bits)?;
    let ridge = hw.ridge_point(bits)?;
    let mut svg = Svg::new(720.0, 480.0);
    let frame = Frame { left: 80.0, top: 40.0, width: 470.0, height: 380.0 };
    let ois: Vec<f64> = points.iter().map(|a| a.metrics.oi).collect();
    let x = frame.x_scale(ois.iter().copied().chain([ridge / 10.0, ridge * 10.0]), true);
    let y = frame.y_scale([peak, x.lo * hw.mem_bandwidth], true);
    axes(
        &mut svg,
        &frame,
        Some(&x),
        &y,
        &format!("{model} on {} ({bits}-bit)", hw.name),
        "operational intensity (FLOP/byte)",
        "attainable FLOP/s per device",
    );
    let arm = [
        (x.map(x.lo), y.map(x.lo * hw.mem_bandwidth)),
        (x.map(ridge), y.map(peak)),
        (x.map(x.hi), y.map(peak)),
    ];
    svg.polyline(&arm, "#000000", 2.0);
    svg.line(x.map(ridge), frame.top, x.map(ridge), frame.bottom(), "#555555", 1.0, true);
    svg.text(x.map(ridge) + 4.0, frame.top + 12.0, &format!("ridge {}", fmt_sig(ridge, 6)), 9.0, "start");
    for a in points {
        let px = x.map(a.metrics.oi);
        let py = y.map(peak.min(a.metrics.oi * hw.mem_bandwidth));
        let color = class_color(a.class);
        let fill = if a.class == BoundClass::CapacityExceeded { "none" } else { color };
        svg.circle(px, py, 4.0, fill, color);
    }
    let entries: Vec<(&str, &str)> = BoundClass::ALL.iter().map(|c| (c.as_str(), class_color(*c))).collect();
    legend(&mut svg, frame.right() + 20.0, frame.top + 10.0, &entries);
    Ok(svg.finish())
}

/// Line chart with optional horizontal capacity line.
fn line_chart(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[(String, Vec<(f64, f64)>)],
    capacity: Option<(String, f64)>,
) -> String {
    let mut svg = Svg::new(720.0, 480.0);
    let frame = Frame { left: 80.0, top: 40.0, width: 470.0, height: 380.0 };
    let x = frame.x_scale(series.iter().flat_map(|(_, p)| p.iter().map(|q| q.0)), true);
    let y = frame.y_scale(
        series
            .iter()
            .flat_map(|(_, p)| p.iter().map(|q| q.1))
            .chain(capacity.as_ref().map(|c| c.1)),
        true,
    );
    axes(&mut svg, &frame, Some(&x), &y, title, xlabel, ylabel);
    let mut entries = Vec::new();
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = SERIES[i % SERIES.len()];
        let px: Vec<(f64, f64)> = pts.iter().map(|(a, b)| (x.map(*a), y.map(*b))).collect();
        svg.polyline(&px, color, 2.0);
        entries.push((name.as_str(), color));
    }
    if let Some((label, cap)) = &capacity {
        svg.line(frame.left, y.map(*cap), frame.right(), y.map(*cap), "#7f7f7f", 1.2, true);
        svg.text(frame.right() - 2.0, y.map(*cap) - 3.0, label, 9.0, "end");
    }
    legend(&mut svg, frame.right() + 20.0, frame.top + 10.0, &entries);
    svg.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttentionVariants {
    pub num_kv_heads: u64,
    pub d_latent: u64,
    pub d_rope: u64,
}

/// KV bytes and CF versus context for MHA, GQA and MLA variants of one model.
pub fn compare_attention(
    base: &ModelSpec,
    variants: &AttentionVariants,
    contexts: &[u64],
    batch_size: u64,
    hw: Option<&HardwareSpec>,
) -> Result<Report> {
    let specs = [
        base.with_attention(AttentionKind::Mha),
        base.with_attention(AttentionKind::Gqa { num_kv_heads: variants.num_kv_heads }),
        base.with_attention(AttentionKind::Mla { d_latent: variants.d_latent, d_rope: variants.d_rope }),
    ];
    for s in &specs {
        s.validate()?;
    }
    if contexts.is_empty() {
        return Err(SpecError::invalid("context", "at least one context length is required").into());
    }
    let mut table = Table::new(&[
        "context_len",
        "batch_size",
        "mha_kv_bytes",
        "gqa_kv_bytes",
        "mla_kv_bytes",
        "mha_cf_bytes",
        "gqa_cf_bytes",
        "mla_cf_bytes",
    ]);
    let mut series: Vec<(String, Vec<(f64, f64)>)> = specs
        .iter()
        .map(|s| (format!("{} CF", s.attention.label().to_uppercase()), Vec::new()))
        .collect();
    for &l in contexts {
        let point = OperatingPoint::new(Phase::Decode, batch_size, l);
        let kv: Vec<f64> = specs.iter().map(|s| (s.kv_bits_per_token() * l as u128) as f64 / 8.0).collect();
        let cf: Vec<f64> = specs.iter().map(|s| cf_request(s, &point)).collect();
        let mut row = vec![l.to_string(), batch_size.to_string()];
        row.extend(kv.iter().map(|v| num(*v)));
        row.extend(cf.iter().map(|v| num(*v)));
        table.push(row);
        for (i, c) in cf.iter().enumerate() {
            series[i].1.push((l as f64, *c));
        }
    }
    let capacity = hw.map(|h| (format!("{} capacity", h.name), h.aggregate_capacity() as f64));
    let svg = line_chart(
        &format!("{}: capacity footprint vs context (B={batch_size})", base.name),
        "context length (tokens)",
        "bytes per request",
        &series,
        capacity,
    );
    let text = table.to_text();
    Ok(Report {
        tables: vec![("compare_attention".into(), table)],
        svgs: vec![("compare_attention".into(), svg)],
        text,
    })
}

/// Dense versus MoE: CF split into weight floor and KV, plus decode OI.
pub fn compare_moe(
    models: &[ModelSpec],
    batches: &[u64],
    context_len: u64,
    hw: Option<&HardwareSpec>,
) -> Result<Report> {
    if models.is_empty() || batches.is_empty() {
        return Err(SpecError::invalid("model", "at least one model and batch size are required").into());
    }
    let mut table = Table::new(&[
        "model",
        "kind",
        "total_params",
        "activated_params",
        "batch_size",
        "context_len",
        "weight_bytes_per_request",
        "kv_bytes_per_request",
        "cf_bytes",
        "decode_oi",
    ]);
    let mut cf_groups = Vec::new();
    let mut oi_groups = Vec::new();
    for m in models {
        let mut cf_bars = Vec::new();
        let mut oi_bars = Vec::new();
        for &b in batches {
            let point = OperatingPoint::new(Phase::Decode, b, context_len);
            let metrics = decode_metrics(m, &point)?;
            let weight = m.weight_bits_total() as f64 / (8 * b) as f64;
            let kv = (m.kv_bits_per_token() * context_len as u128) as f64 / 8.0;
            table.push(vec![
                m.name.clone(),
                if m.is_moe() { "moe" } else { "dense" }.into(),
                m.total_params().to_string(),
                m.activated_params().to_string(),
                b.to_string(),
                context_len.to_string(),
                num(weight),
                num(kv),
                num(metrics.cf),
                num(metrics.oi),
            ]);
            cf_bars.push(vec![
                Segment { value: weight, color: "#9e9e9e", hatched: true },
                Segment { value: kv, color: SERIES[cf_bars.len() % SERIES.len()], hatched: false },
            ]);
            oi_bars.push(vec![Segment {
                value: metrics.oi,
                color: SERIES[oi_bars.len() % SERIES.len()],
                hatched: false,
            }]);
        }
        cf_groups.push(BarGroup { label: m.name.clone(), bars: cf_bars });
        oi_groups.push(BarGroup { label: m.name.clone(), bars: oi_bars });
    }
    let mut svg = Svg::new(960.0, 480.0);
    let left = Frame { left: 80.0, top: 40.0, width: 360.0, height: 380.0 };
    let right = Frame { left: 540.0, top: 40.0, width: 300.0, height: 380.0 };
    let refs: Vec<Reference> = hw
        .map(|h| Reference {
            label: format!("{} capacity", h.name),
            value: h.aggregate_capacity() as f64,
            color: "#7f7f7f",
            band: false,
        })
        .into_iter()
        .collect();
    bar_panel(
        &mut svg,
        &left,
        &format!("capacity footprint at L={context_len} (hatched: weights)"),
        "bytes per request",
        &cf_groups,
        false,
        &refs,
    );
    let mut oi_refs = Vec::new();
    if let Some(h) = hw {
        if let Some(&bits) = models.first().map(|m| &m.weight_bits) {
            if let Ok(r) = h.ridge_point(bits) {
                oi_refs.push(Reference { label: "ridge".into(), value: r, color: "#000000", band: false });
            }
        }
    }
    bar_panel(&mut svg, &right, "decode OI", "FLOP/byte", &oi_groups, true, &oi_refs);
    let batch_labels: Vec<String> = batches.iter().map(|b| format!("B={b}")).collect();
    let entries: Vec<(&str, &str)> = batch_labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), SERIES[i % SERIES.len()]))
        .collect();
    legend(&mut svg, right.right() + 20.0, right.top + 10.0, &entries);
    let text = table.to_text();
    Ok(Report {
        tables: vec![("compare_moe".into(), table)],
        svgs: vec![("compare_moe".into(), svg.finish())],
        text,
    })
}

/// Per-agent token usage, footprint at the final context, and phase OI.
pub fn agent_profile(
    spec: &ModelSpec,
    hw: &HardwareSpec,
    workloads: &[WorkloadSpec],
    opts: &AnalysisOptions,
) -> Result<Report> {
    if workloads.is_empty() {
        return Err(SpecError::invalid("workload", "at least one workload is required").into());
    }
    let mut table = Table::new(&[
        "workload",
        "turns",
        "prefill_tokens",
        "decode_tokens",
        "final_context",
        "batch_size",
        "cf_bytes",
        "capacity_bytes",
        "prefill_oi",
        "decode_oi",
        "ridge",
        "decode_class",
        "min_devices",
    ]);
    let mut tokens = Vec::new();
    let mut cfs = Vec::new();
    let mut ois = Vec::new();
    let mut ridge = 0.0;
    for w in workloads {
        w.validate()?;
        let trace = w.expand();
        let totals = trace.total_tokens();
        let last = trace.turns.last().expect("at least one turn");
        let final_ctx = trace.final_context().max(1);
        let prompt = last.prompt_context().max(1);
        let pre = prefill_metrics(spec, &OperatingPoint::new(Phase::Prefill, w.batch_size, prompt))?;
        let dec_point = OperatingPoint::new(Phase::Decode, w.batch_size, final_ctx);
        let dec = classify(spec, hw, &dec_point, opts)?;
        ridge = dec.ridge;
        table.push(vec![
            w.name.clone(),
            w.turns.to_string(),
            totals.prefill.to_string(),
            totals.decode.to_string(),
            final_ctx.to_string(),
            w.batch_size.to_string(),
            num(dec.metrics.cf),
            num(hw.aggregate_capacity() as f64),
            num(pre.oi),
            num(dec.metrics.oi),
            num(dec.ridge),
            dec.class.to_string(),
            dec.min_devices.map_or("none".into(), |k| k.to_string()),
        ]);
        tokens.push(BarGroup {
            label: w.name.clone(),
            bars: vec![
                vec![Segment { value: totals.prefill as f64, color: SERIES[0], hatched: false }],
                vec![Segment { value: totals.decode as f64, color: SERIES[1], hatched: false }],
            ],
        });
        let weight = spec.weight_bits_total() as f64 / (8 * w.batch_size) as f64;
        cfs.push(BarGroup {
            label: w.name.clone(),
            bars: vec![vec![
                Segment { value: weight, color: "#9e9e9e", hatched: true },
                Segment { value: dec.metrics.cf - weight, color: SERIES[2], hatched: false },
            ]],
        });
        ois.push(BarGroup {
            label: w.name.clone(),
            bars: vec![
                vec![Segment { value: pre.oi, color: SERIES[0], hatched: false }],
                vec![Segment { value: dec.metrics.oi, color: SERIES[1], hatched: false }],
            ],
        });
    }
    let mut svg = Svg::new(1200.0, 480.0);
    let frames = [
        Frame { left: 80.0, top: 40.0, width: 280.0, height: 380.0 },
        Frame { left: 460.0, top: 40.0, width: 280.0, height: 380.0 },
        Frame { left: 840.0, top: 40.0, width: 260.0, height: 380.0 },
    ];
    bar_panel(&mut svg, &frames[0], "tokens per task", "tokens", &tokens, true, &[]);
    bar_panel(
        &mut svg,
        &frames[1],
        "capacity footprint (hatched: weights)",
        "bytes per request",
        &cfs,
        false,
        &[Reference {
            label: format!("{} capacity", hw.name),
            value: hw.aggregate_capacity() as f64,
            color: "#bdbdbd",
            band: true,
        }],
    );
    bar_panel(
        &mut svg,
        &frames[2],
        "phase OI",
        "FLOP/byte",
        &ois,
        true,
        &[Reference { label: "ridge".into(), value: ridge, color: "#000000", band: false }],
    );
    legend(&mut svg, 1110.0, 60.0, &[("prefill", SERIES[0]), ("decode", SERIES[1])]);
    let text = table.to_text();
    Ok(Report {
        tables: vec![("agent_profile".into(), table)],
        svgs: vec![("agent_profile".into(), svg.finish())],
        text,
    })
}
