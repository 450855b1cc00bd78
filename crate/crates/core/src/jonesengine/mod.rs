//! Colored Jones invariants of KTGs from move sequences.
//!
//! A sequence is reversed into a multisum over fusion channels
//! ([`build_expression`]); the multisum is then evaluated either exactly as a
//! rational function ([`eval_generic`]) or at `ζ_N` by Taylor jets
//! ([`eval_at_root`]), which resolves the removable singularities term by term.

mod closed;
mod eval;
mod expr;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ktgmodel::{serialize, stats, EdgeId, KtgError, MoveSequence, MoveStats};

pub use closed::{
    augmented_closed_form, log_abs_closed_form, sufficient_ring_count, verify_conjecture, AugmentationBound,
    ConjectureReport, ConjectureRow,
};
pub use eval::{eval_at_point, eval_at_root, eval_generic, normalize_generic, summand_jets, RootValue};
pub use expr::{build_expression, ExprNode, Factor, FactorValue, InstFactor, JonesExpr, Label, Summand};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("move {move_index} unzips e{edge} carrying {twist} half-twists")]
    TwistedUnzip {
        move_index: usize,
        edge: EdgeId,
        twist: i64,
    },
    #[error("expression cannot be reduced: {0}")]
    NotReducible(String),
    #[error("multisum has more than {budget} terms")]
    BudgetExceeded { budget: usize },
    #[error("pole of order {order} at the root of unity")]
    UnexpectedPole { order: i64 },
    #[error("value not determined at precision {precision}")]
    PrecisionExhausted { precision: usize },
    #[error("sequence is not augmented")]
    NotAugmented,
    #[error("move {0}: {1}")]
    InvalidSequence(usize, KtgError),
    #[error("{0}")]
    DomainError(String),
}

/// How unzips of twisted edges are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum TwistMode {
    /// Refuse them.
    #[default]
    Strict,
    /// Fuse the twisted pair like an untwisted one; the half-twist factors
    /// already on the strands account for the twist.
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub mode: TwistMode,
    /// Upper bound on the number of summands.
    pub budget: usize,
    /// Largest jet precision tried before giving up.
    pub max_precision: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            mode: TwistMode::Strict,
            budget: 200_000,
            max_precision: 16,
        }
    }
}

/// One evaluation, as written by `ktgj jones --format json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JonesRecord {
    pub sequence_hash: String,
    #[serde(rename = "N")]
    pub n: u32,
    pub value_re: f64,
    pub value_im: f64,
    pub method: String,
    pub stats: MoveStats,
}

/// SHA-256 of the serialized sequence, in hex.
pub fn sequence_hash(seq: &MoveSequence) -> String {
    hex::encode(Sha256::digest(serialize(seq).as_bytes()))
}

impl JonesRecord {
    pub fn new(seq: &MoveSequence, n: u32, value: num_complex::Complex64, method: &str) -> Self {
        Self {
            sequence_hash: sequence_hash(seq),
            n,
            value_re: value.re,
            value_im: value.im,
            method: method.to_string(),
            stats: stats(seq),
        }
    }
}
