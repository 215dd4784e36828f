//! Declarative JSON configs for models, hardware and workloads.
//!
//! Unknown keys are rejected unless [`LoadOptions::allow_unknown_keys`] is
//! set. See `docs/schemas.md` for the field reference.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{ConfigError, SpecError};
use crate::hardware::HardwareSpec;
use crate::model::{AttentionKind, ModelSpec, MoeSpec};
use crate::workload::WorkloadSpec;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    pub allow_unknown_keys: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AttentionTag {
    #[default]
    Mha,
    Gqa,
    Mla,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
struct AttentionFile {
    kind: AttentionTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num_kv_heads: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d_latent: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d_rope: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MoeFile {
    num_experts: u64,
    top_k: u64,
    #[serde(default)]
    num_shared_experts: u64,
    d_ff_expert: u64,
}

fn default_true() -> bool {
    true
}

fn default_bits() -> u32 {
    16
}

fn default_one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ModelFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    num_layers: u64,
    d_model: u64,
    num_heads: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    head_dim: Option<u64>,
    #[serde(default)]
    attention: AttentionFile,
    #[serde(default)]
    d_ff: u64,
    #[serde(default = "default_true")]
    ffn_gated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    moe: Option<MoeFile>,
    #[serde(default)]
    vocab_size: u64,
    #[serde(default = "default_bits")]
    weight_bits: u32,
    #[serde(default = "default_bits")]
    kv_bits: u32,
}

impl TryFrom<ModelFile> for ModelSpec {
    type Error = SpecError;

    fn try_from(f: ModelFile) -> Result<Self, Self::Error> {
        if f.num_heads == 0 {
            return Err(SpecError::invalid("num_heads", "must be positive"));
        }
        let head_dim = match f.head_dim {
            Some(h) => h,
            None if f.d_model % f.num_heads == 0 => f.d_model / f.num_heads,
            None => {
                return Err(SpecError::invalid(
                    "head_dim",
                    "required when d_model is not divisible by num_heads",
                ))
            }
        };
        let a = &f.attention;
        let unused = |field: &str, kind: &str| {
            SpecError::invalid(format!("attention.{field}"), format!("not used by {kind}"))
        };
        let attention = match a.kind {
            AttentionTag::Mha => {
                if a.num_kv_heads.is_some() {
                    return Err(unused("num_kv_heads", "mha"));
                }
                if a.d_latent.is_some() {
                    return Err(unused("d_latent", "mha"));
                }
                if a.d_rope.is_some() {
                    return Err(unused("d_rope", "mha"));
                }
                AttentionKind::Mha
            }
            AttentionTag::Gqa => {
                if a.d_latent.is_some() {
                    return Err(unused("d_latent", "gqa"));
                }
                if a.d_rope.is_some() {
                    return Err(unused("d_rope", "gqa"));
                }
                AttentionKind::Gqa {
                    num_kv_heads: a.num_kv_heads.ok_or_else(|| {
                        SpecError::invalid("attention.num_kv_heads", "required for gqa")
                    })?,
                }
            }
            AttentionTag::Mla => {
                if a.num_kv_heads.is_some() {
                    return Err(unused("num_kv_heads", "mla"));
                }
                AttentionKind::Mla {
                    d_latent: a
                        .d_latent
                        .ok_or_else(|| SpecError::invalid("attention.d_latent", "required for mla"))?,
                    d_rope: a.d_rope.unwrap_or(0),
                }
            }
        };
        let spec = ModelSpec {
            name: f.name,
            num_layers: f.num_layers,
            d_model: f.d_model,
            num_heads: f.num_heads,
            head_dim,
            attention,
            d_ff: f.d_ff,
            ffn_gated: f.ffn_gated,
            moe: f.moe.map(|m| MoeSpec {
                num_experts: m.num_experts,
                top_k: m.top_k,
                num_shared_experts: m.num_shared_experts,
                d_ff_expert: m.d_ff_expert,
            }),
            vocab_size: f.vocab_size,
            weight_bits: f.weight_bits,
            kv_bits: f.kv_bits,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<&ModelSpec> for ModelFile {
    fn from(s: &ModelSpec) -> Self {
        let attention = match s.attention {
            AttentionKind::Mha => AttentionFile::default(),
            AttentionKind::Gqa { num_kv_heads } => AttentionFile {
                kind: AttentionTag::Gqa,
                num_kv_heads: Some(num_kv_heads),
                ..Default::default()
            },
            AttentionKind::Mla { d_latent, d_rope } => AttentionFile {
                kind: AttentionTag::Mla,
                d_latent: Some(d_latent),
                d_rope: Some(d_rope),
                ..Default::default()
            },
        };
        ModelFile {
            name: s.name.clone(),
            provenance: None,
            num_layers: s.num_layers,
            d_model: s.d_model,
            num_heads: s.num_heads,
            head_dim: Some(s.head_dim),
            attention,
            d_ff: s.d_ff,
            ffn_gated: s.ffn_gated,
            moe: s.moe.map(|m| MoeFile {
                num_experts: m.num_experts,
                top_k: m.top_k,
                num_shared_experts: m.num_shared_experts,
                d_ff_expert: m.d_ff_expert,
            }),
            vocab_size: s.vocab_size,
            weight_bits: s.weight_bits,
            kv_bits: s.kv_bits,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct HardwareFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    peak_flops: BTreeMap<u32, f64>,
    mem_bandwidth: f64,
    mem_capacity: u64,
    #[serde(default = "default_one")]
    num_devices: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct WorkloadFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    turns: u64,
    prefill_tokens_per_turn: u64,
    decode_tokens_per_turn: u64,
    #[serde(default = "default_true")]
    carry_context: bool,
    #[serde(default = "default_one")]
    batch_size: u64,
}

fn parse_strict<T: DeserializeOwned>(
    text: &str,
    origin: &str,
    opts: &LoadOptions,
) -> Result<T, ConfigError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let mut unknown = Vec::new();
    let value: T = serde_ignored::deserialize(&mut de, |path| unknown.push(path.to_string()))
        .map_err(|e| ConfigError::Parse {
            origin: origin.to_string(),
            message: e.to_string(),
        })?;
    de.end().map_err(|e| ConfigError::Parse {
        origin: origin.to_string(),
        message: e.to_string(),
    })?;
    if !opts.allow_unknown_keys {
        if let Some(key) = unknown.into_iter().next() {
            return Err(ConfigError::UnknownKey {
                origin: origin.to_string(),
                key,
            });
        }
    }
    Ok(value)
}

fn invalid(origin: &str) -> impl FnOnce(SpecError) -> ConfigError + '_ {
    move |source| ConfigError::Invalid {
        origin: origin.to_string(),
        source,
    }
}

pub fn parse_model(text: &str, origin: &str, opts: &LoadOptions) -> Result<ModelSpec, ConfigError> {
    let file: ModelFile = parse_strict(text, origin, opts)?;
    ModelSpec::try_from(file).map_err(invalid(origin))
}

pub fn parse_hardware(
    text: &str,
    origin: &str,
    opts: &LoadOptions,
) -> Result<HardwareSpec, ConfigError> {
    let f: HardwareFile = parse_strict(text, origin, opts)?;
    let hw = HardwareSpec {
        name: f.name,
        peak_flops: f.peak_flops,
        mem_bandwidth: f.mem_bandwidth,
        mem_capacity: f.mem_capacity,
        num_devices: f.num_devices,
        provenance: f.provenance,
    };
    hw.validate().map_err(invalid(origin))?;
    Ok(hw)
}

pub fn parse_workload(
    text: &str,
    origin: &str,
    opts: &LoadOptions,
) -> Result<WorkloadSpec, ConfigError> {
    let f: WorkloadFile = parse_strict(text, origin, opts)?;
    let w = WorkloadSpec {
        name: f.name,
        turns: f.turns,
        prefill_tokens_per_turn: f.prefill_tokens_per_turn,
        decode_tokens_per_turn: f.decode_tokens_per_turn,
        carry_context: f.carry_context,
        batch_size: f.batch_size,
    };
    w.validate().map_err(invalid(origin))?;
    Ok(w)
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_model(path: &Path, opts: &LoadOptions) -> Result<ModelSpec, ConfigError> {
    parse_model(&read(path)?, &path.display().to_string(), opts)
}

pub fn load_hardware(path: &Path, opts: &LoadOptions) -> Result<HardwareSpec, ConfigError> {
    parse_hardware(&read(path)?, &path.display().to_string(), opts)
}

pub fn load_workload(path: &Path, opts: &LoadOptions) -> Result<WorkloadSpec, ConfigError> {
    parse_workload(&read(path)?, &path.display().to_string(), opts)
}

/// Any of the three config kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    Model(ModelSpec),
    Hardware(HardwareSpec),
    Workload(WorkloadSpec),
}

/// Loads a config of any kind, recognized by its distinguishing key
/// (`num_layers`, `peak_flops` or `turns`).
pub fn load_config(path: &Path, opts: &LoadOptions) -> Result<Config, ConfigError> {
    let text = read(path)?;
    let origin = path.display().to_string();
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
        origin: origin.clone(),
        message: e.to_string(),
    })?;
    let has = |k: &str| value.get(k).is_some();
    if has("num_layers") {
        parse_model(&text, &origin, opts).map(Config::Model)
    } else if has("peak_flops") {
        parse_hardware(&text, &origin, opts).map(Config::Hardware)
    } else if has("turns") {
        parse_workload(&text, &origin, opts).map(Config::Workload)
    } else {
        Err(ConfigError::Parse {
            origin,
            message: "not a model, hardware or workload config (missing `num_layers`, `peak_flops` or `turns`)".into(),
        })
    }
}

pub fn model_to_json(spec: &ModelSpec) -> String {
    serde_json::to_string_pretty(&ModelFile::from(spec)).expect("model config serializes")
}

pub fn hardware_to_json(hw: &HardwareSpec) -> String {
    let f = HardwareFile {
        name: hw.name.clone(),
        provenance: hw.provenance.clone(),
        peak_flops: hw.peak_flops.clone(),
        mem_bandwidth: hw.mem_bandwidth,
        mem_capacity: hw.mem_capacity,
        num_devices: hw.num_devices,
    };
    serde_json::to_string_pretty(&f).expect("hardware config serializes")
}

pub fn workload_to_json(w: &WorkloadSpec) -> String {
    let f = WorkloadFile {
        name: w.name.clone(),
        provenance: None,
        turns: w.turns,
        prefill_tokens_per_turn: w.prefill_tokens_per_turn,
        decode_tokens_per_turn: w.decode_tokens_per_turn,
        carry_context: w.carry_context,
        batch_size: w.batch_size,
    };
    serde_json::to_string_pretty(&f).expect("workload config serializes")
}

fn looks_like_path(reference: &str) -> bool {
    reference.contains('/') || reference.contains('\\') || reference.ends_with(".json")
}

/// A reference is a file path if it exists or looks like one, otherwise a
/// built-in catalog name.
fn resolve<T>(
    reference: &str,
    opts: &LoadOptions,
    kind: &'static str,
    entries: &[(&str, &str)],
    load: fn(&Path, &LoadOptions) -> Result<T, ConfigError>,
    parse: fn(&str, &str, &LoadOptions) -> Result<T, ConfigError>,
) -> Result<T, ConfigError> {
    let path = Path::new(reference);
    if path.is_file() || looks_like_path(reference) {
        return load(path, opts);
    }
    match entries.iter().find(|(name, _)| *name == reference) {
        Some((name, text)) => parse(text, &format!("builtin:{name}"), &LoadOptions::default()),
        None => Err(ConfigError::NotFound {
            kind,
            name: reference.to_string(),
            available: entries.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "),
        }),
    }
}

pub fn resolve_model(reference: &str, opts: &LoadOptions) -> Result<ModelSpec, ConfigError> {
    resolve(reference, opts, "model", catalog::MODELS, load_model, parse_model)
}

pub fn resolve_hardware(reference: &str, opts: &LoadOptions) -> Result<HardwareSpec, ConfigError> {
    resolve(reference, opts, "hardware", catalog::HARDWARE, load_hardware, parse_hardware)
}

pub fn resolve_workload(reference: &str, opts: &LoadOptions) -> Result<WorkloadSpec, ConfigError> {
    resolve(reference, opts, "workload", catalog::WORKLOADS, load_workload, parse_workload)
}
