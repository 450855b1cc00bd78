//! Octahedral decomposition of augmented graph exteriors and their volumes.

mod gluing;
mod volume;

use thiserror::Error;

pub use gluing::{
    build_gluing, face_corners, gluing_json, is_blue, verify_gluing, FaceRef, GluingReport, OctGluing, Pairing, TruncOct,
    VertexSphere, CORNER_NAMES,
};
pub use volume::{
    asymptotic_series, asymptotics_csv, lobachevsky, lobachevsky_series, vol_oct, volume, AsymptoticRow, JsjReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctGeomError {
    #[error("sequence is not augmented")]
    NotAugmented,
    #[error("N = {0} must be odd")]
    EvenColor(u32),
    #[error("face {0} paired twice")]
    GluingConflict(String),
    #[error("invalid sequence at move {0}: {1}")]
    InvalidSequence(usize, crate::ktgmodel::KtgError),
}
