//! Brute-force Temperley–Lieb evaluation of closed colored diagrams.
//!
//! Independent of the closed formulas in [`crate::qsymbols`]; used to check
//! them at small colors.

mod compose;
mod primitives;
mod tl;

pub use compose::{evaluate, Gen, PlanarComposition};
pub use primitives::{
    bracket_primitive, bracket_primitive_with, evaluate_bounded, primitive_diagram, DiagramBuilder,
    OracleConfig, Primitive,
};
pub use tl::{jw, loop_value, Diagram, TLElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TlError {
    #[error("diagram is not closed: width {bottom} at the bottom, {top} at the top")]
    NotClosed { bottom: usize, top: usize },
    #[error("row {row} expects width {expected}, found {found}")]
    WidthMismatch { row: usize, expected: usize, found: usize },
    #[error("diagram needs {strands} strands, limit is {limit}")]
    TooLarge { strands: usize, limit: usize },
    #[error("inadmissible triple ({0}, {1}, {2})")]
    InadmissibleTriple(u32, u32, u32),
    #[error("cannot close bundles of colors {0} and {1}")]
    ColorMismatch(u32, u32),
}
