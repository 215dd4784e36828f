//! Model architecture descriptor and closed-form parameter, FLOP and byte
//! accounting.
//!
//! Conventions:
//! - 2 FLOPs per multiply-accumulate. Softmax, normalization and activation
//!   functions are not counted.
//! - Normalization weights and biases are not counted as parameters.
//! - The embedding lookup counts toward capacity but not toward FLOPs; the
//!   output head is an ordinary matmul and counts toward both.
//! - MLA keeps one joint `d_model x (d_latent + d_rope)` down-projection for
//!   the KV path; the per-head up-projections are folded into the query and
//!   output projections and are not counted separately.

use crate::error::SpecError;
use crate::metrics::Phase;

/// Bit widths accepted for weights and KV-cache elements.
pub const SUPPORTED_BITS: [u32; 5] = [2, 4, 8, 16, 32];

/// Attention variant, which fixes the width of the cached KV state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttentionKind {
    Mha,
    Gqa { num_kv_heads: u64 },
    Mla { d_latent: u64, d_rope: u64 },
}

impl AttentionKind {
    pub fn label(&self) -> &'static str {
        match self {
            AttentionKind::Mha => "mha",
            AttentionKind::Gqa { .. } => "gqa",
            AttentionKind::Mla { .. } => "mla",
        }
    }
}

/// Mixture-of-experts FFN configuration, applied to every layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MoeSpec {
    pub num_experts: u64,
    pub top_k: u64,
    pub num_shared_experts: u64,
    pub d_ff_expert: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    pub name: String,
    pub num_layers: u64,
    pub d_model: u64,
    pub num_heads: u64,
    pub head_dim: u64,
    pub attention: AttentionKind,
    /// Dense FFN inner dimension. Unused when `moe` is set.
    pub d_ff: u64,
    /// Gated FFNs carry three projection matrices, plain FFNs two.
    pub ffn_gated: bool,
    pub moe: Option<MoeSpec>,
    pub vocab_size: u64,
    pub weight_bits: u32,
    pub kv_bits: u32,
}

impl ModelSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        for (field, value) in [
            ("num_layers", self.num_layers),
            ("d_model", self.d_model),
            ("num_heads", self.num_heads),
            ("head_dim", self.head_dim),
        ] {
            if value == 0 {
                return Err(SpecError::invalid(field, "must be positive"));
            }
        }
        if self.moe.is_none() && self.d_ff == 0 {
            return Err(SpecError::invalid("d_ff", "must be positive for a dense FFN"));
        }
        for (field, bits) in [("weight_bits", self.weight_bits), ("kv_bits", self.kv_bits)] {
            if !SUPPORTED_BITS.contains(&bits) {
                return Err(SpecError::invalid(
                    field,
                    format!("{bits} is not one of {SUPPORTED_BITS:?}"),
                ));
            }
        }
        match self.attention {
            AttentionKind::Mha => {}
            AttentionKind::Gqa { num_kv_heads } => {
                if num_kv_heads == 0 || num_kv_heads > self.num_heads {
                    return Err(SpecError::invalid(
                        "attention.num_kv_heads",
                        format!(
                            "must be in 1..={} (num_heads), got {num_kv_heads}",
                            self.num_heads
                        ),
                    ));
                }
                if self.num_heads % num_kv_heads != 0 {
                    return Err(SpecError::invalid(
                        "attention.num_kv_heads",
                        format!(
                            "num_heads ({}) is not divisible by num_kv_heads ({num_kv_heads})",
                            self.num_heads
                        ),
                    ));
                }
            }
            AttentionKind::Mla { d_latent, .. } => {
                if d_latent == 0 {
                    return Err(SpecError::invalid("attention.d_latent", "must be positive"));
                }
            }
        }
        if let Some(moe) = &self.moe {
            if moe.num_experts == 0 {
                return Err(SpecError::invalid("moe.num_experts", "must be positive"));
            }
            if moe.top_k == 0 {
                return Err(SpecError::invalid("moe.top_k", "must be at least 1"));
            }
            if moe.top_k > moe.num_experts {
                return Err(SpecError::invalid(
                    "moe.top_k",
                    format!(
                        "moe.top_k ({}) exceeds moe.num_experts ({})",
                        moe.top_k, moe.num_experts
                    ),
                ));
            }
            if moe.d_ff_expert == 0 {
                return Err(SpecError::invalid("moe.d_ff_expert", "must be positive"));
            }
        }
        Ok(())
    }

    pub fn is_moe(&self) -> bool {
        self.moe.is_some()
    }

    /// Width of the concatenated query projection, `n_h * h_d`.
    pub fn q_width(&self) -> u64 {
        self.num_heads * self.head_dim
    }

    /// Output width of each of the K and V projections (MHA/GQA) or of the
    /// joint compressed KV projection (MLA).
    pub fn kv_proj_width(&self) -> u64 {
        match self.attention {
            AttentionKind::Mha => self.q_width(),
            AttentionKind::Gqa { num_kv_heads } => num_kv_heads * self.head_dim,
            AttentionKind::Mla { d_latent, d_rope } => d_latent + d_rope,
        }
    }

    /// Q, K, V (or joint latent KV) and O projections of one layer.
    pub fn attention_params_per_layer(&self) -> u64 {
        let d = self.d_model;
        let kv = match self.attention {
            AttentionKind::Mha | AttentionKind::Gqa { .. } => 2 * d * self.kv_proj_width(),
            AttentionKind::Mla { .. } => d * self.kv_proj_width(),
        };
        d * self.q_width() + kv + self.q_width() * d
    }

    fn ffn_matrices(&self) -> u64 {
        if self.ffn_gated {
            3
        } else {
            2
        }
    }

    fn expert_params(&self, d_ff: u64) -> u64 {
        self.ffn_matrices() * self.d_model * d_ff
    }

    /// All FFN weights of one layer, including every expert and the router.
    pub fn ffn_params_per_layer(&self) -> u64 {
        match &self.moe {
            None => self.expert_params(self.d_ff),
            Some(moe) => {
                (moe.num_experts + moe.num_shared_experts) * self.expert_params(moe.d_ff_expert)
                    + self.d_model * moe.num_experts
            }
        }
    }

    /// FFN weights touched by one token: routed top-k, shared experts and router.
    pub fn active_ffn_params_per_layer(&self) -> u64 {
        match &self.moe {
            None => self.expert_params(self.d_ff),
            Some(moe) => {
                (moe.top_k + moe.num_shared_experts) * self.expert_params(moe.d_ff_expert)
                    + self.d_model * moe.num_experts
            }
        }
    }

    pub fn embedding_params(&self) -> u64 {
        self.vocab_size * self.d_model
    }

    pub fn output_head_params(&self) -> u64 {
        self.vocab_size * self.d_model
    }

    pub fn total_params(&self) -> u64 {
        self.embedding_params()
            + self.num_layers * (self.attention_params_per_layer() + self.ffn_params_per_layer())
            + self.output_head_params()
    }

    pub fn activated_params(&self) -> u64 {
        self.embedding_params()
            + self.num_layers
                * (self.attention_params_per_layer() + self.active_ffn_params_per_layer())
            + self.output_head_params()
    }

    /// Activated parameters that take part in a matmul (everything but the
    /// embedding table).
    pub fn matmul_params(&self) -> u64 {
        self.activated_params() - self.embedding_params()
    }

    pub fn weight_bits_total(&self) -> u128 {
        self.total_params() as u128 * self.weight_bits as u128
    }

    pub fn weight_bytes(&self) -> f64 {
        self.weight_bits_total() as f64 / 8.0
    }

    /// Elements cached per token in one layer.
    pub fn kv_elements_per_token_per_layer(&self) -> u64 {
        match self.attention {
            AttentionKind::Mha => 2 * self.num_heads * self.head_dim,
            AttentionKind::Gqa { num_kv_heads } => 2 * num_kv_heads * self.head_dim,
            AttentionKind::Mla { d_latent, d_rope } => d_latent + d_rope,
        }
    }

    pub fn kv_bits_per_token(&self) -> u128 {
        self.num_layers as u128
            * self.kv_elements_per_token_per_layer() as u128
            * self.kv_bits as u128
    }

    /// KV-cache bytes per token summed over all layers.
    pub fn kv_bytes_per_token(&self) -> f64 {
        self.kv_bits_per_token() as f64 / 8.0
    }

    /// Coefficient of the attention-score term: FLOPs per cached token of
    /// context (`QK^T` plus attention-weighted `V`).
    pub fn attention_flops_per_context_token(&self) -> u64 {
        4 * self.num_layers * self.num_heads * self.head_dim
    }

    /// FLOPs to process one token that attends over `context_len` positions.
    ///
    /// The phase does not change the per-token cost: a prefill token at
    /// position `p` costs the same as a decode token at context `p`.
    /// [`crate::metrics::prefill_metrics`] integrates this over the prompt.
    pub fn flops_per_token(&self, _phase: Phase, context_len: u64) -> Result<f64, SpecError> {
        if context_len == 0 {
            return Err(SpecError::invalid("context_len", "must be at least 1"));
        }
        let flops = 2 * self.matmul_params() as u128
            + self.attention_flops_per_context_token() as u128 * context_len as u128;
        Ok(flops as f64)
    }

    /// Same model with a different attention variant; used by the attention
    /// comparison report.
    pub fn with_attention(&self, attention: AttentionKind) -> ModelSpec {
        let mut out = self.clone();
        out.attention = attention;
        out.name = format!("{}-{}", self.name, attention.label());
        out
    }
}
