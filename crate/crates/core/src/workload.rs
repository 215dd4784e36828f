//! Multi-turn agent workload profiles and their expansion into per-phase
//! token traces.
//!
//! Decode tokens of one turn stay in the KV cache and are not re-prefilled
//! by the next turn.

use std::ops::Range;

use crate::error::SpecError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WorkloadSpec {
    pub name: String,
    /// Number of environment-agent interactions.
    pub turns: u64,
    /// System prompt, tool output and observations ingested per turn.
    pub prefill_tokens_per_turn: u64,
    pub decode_tokens_per_turn: u64,
    /// Whether context accumulates across turns.
    pub carry_context: bool,
    pub batch_size: u64,
}

impl WorkloadSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.turns == 0 {
            return Err(SpecError::invalid("turns", "must be at least 1"));
        }
        if self.batch_size == 0 {
            return Err(SpecError::invalid("batch_size", "must be at least 1"));
        }
        Ok(())
    }

    pub fn expand(&self) -> TurnTrace {
        let mut turns = Vec::with_capacity(self.turns as usize);
        let mut carried = 0u64;
        for turn_index in 0..self.turns {
            let start = if self.carry_context { carried } else { 0 };
            let prompt_end = start + self.prefill_tokens_per_turn;
            let cumulative = prompt_end + self.decode_tokens_per_turn;
            turns.push(TurnRecord {
                turn_index,
                prefill_start_context: start,
                prefill_tokens: self.prefill_tokens_per_turn,
                decode_contexts: prompt_end + 1..cumulative + 1,
                cumulative_context: cumulative,
            });
            carried = cumulative;
        }
        TurnTrace { turns }
    }
}

/// One environment-agent interaction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TurnRecord {
    pub turn_index: u64,
    /// Tokens already cached when this turn's prefill begins.
    pub prefill_start_context: u64,
    pub prefill_tokens: u64,
    /// Context length seen by each generated token, one per decode step.
    pub decode_contexts: Range<u64>,
    /// Context held at the end of the turn.
    pub cumulative_context: u64,
}

impl TurnRecord {
    /// Context length once the turn's prompt has been ingested.
    pub fn prompt_context(&self) -> u64 {
        self.prefill_start_context + self.prefill_tokens
    }

    pub fn decode_tokens(&self) -> u64 {
        self.decode_contexts.end - self.decode_contexts.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TurnTrace {
    pub turns: Vec<TurnRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TokenTotals {
    pub prefill: u64,
    pub decode: u64,
}

impl TurnTrace {
    pub fn total_tokens(&self) -> TokenTotals {
        self.turns.iter().fold(TokenTotals { prefill: 0, decode: 0 }, |acc, t| TokenTotals {
            prefill: acc.prefill + t.prefill_tokens,
            decode: acc.decode + t.decode_tokens(),
        })
    }

    pub fn final_context(&self) -> u64 {
        self.turns.last().map_or(0, |t| t.cumulative_context)
    }

    /// Largest context reached by any turn.
    pub fn peak_context(&self) -> u64 {
        self.turns.iter().map(|t| t.cumulative_context).max().unwrap_or(0)
    }
}
