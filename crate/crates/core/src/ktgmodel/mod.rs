//! Knotted trivalent graphs as fat graphs, the move calculus that builds
//! them from the standard tetrahedron, and a line-oriented text format for
//! move sequences.

mod dsl;
mod graph;
mod stats;

pub use dsl::{parse_sequence, serialize, ParseError, ParseErrorKind};
pub use graph::{Dart, Edge, EdgeId, Ktg, MoveRecord, Ring, RingId, Slot, VertexId};
pub use stats::{augment, replay, stats, validate, History, MoveStats, RingSpec, ValidationReport};

use crate::qsymbols::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KtgError {
    #[error("bad target: {0}")]
    BadTarget(String),
    #[error("cannot unzip loop edge e{0}")]
    UnzipLoopEdge(EdgeId),
    #[error("cannot unzip circle e{0}")]
    UnzipCircle(EdgeId),
    #[error("domain error: {0}")]
    DomainError(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Triangle(VertexId),
    HalfTwist(EdgeId, Sign),
    /// Unzip with `rings` parallel rings around the two new strands.
    Unzip { edge: EdgeId, rings: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveSequence {
    pub moves: Vec<Move>,
    /// Number of split components; splitness is not decidable from the fat
    /// graph, so this is supplied by the caller.
    pub declared_split_components: u32,
}

impl Default for MoveSequence {
    fn default() -> Self {
        Self::new(Vec::new())
    }
}

impl MoveSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        Self {
            moves,
            declared_split_components: 1,
        }
    }

    pub fn with_split_components(mut self, s: u32) -> Self {
        self.declared_split_components = s;
        self
    }

    pub fn is_augmented(&self) -> bool {
        self.moves
            .iter()
            .all(|m| !matches!(m, Move::Unzip { rings: 0, .. }))
    }
}

pub fn standard_tetrahedron() -> Ktg {
    Ktg::standard_tetrahedron()
}

pub fn apply_move(g: &Ktg, m: &Move) -> Result<Ktg, KtgError> {
    g.apply_move(m)
}
