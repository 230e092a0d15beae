//! Dirichlet-minimizing 2-valued extensions of boundary data on the unit
//! circle.
//!
//! Boundary data is first split into continuous loops, which decides the
//! class: two loops of period `2π` (identity) or one loop of period `4π`
//! (swap). Each loop is expanded in Fourier modes and every mode of frequency
//! `ν` is extended by `ρ^ν`. For the swap class this is the harmonic
//! extension on the double cover `w ↦ w²`, whose energy equals the 2-valued
//! energy. [`relax_oracle`] recomputes the minimizer by finite-volume
//! relaxation as an independent check.

mod lift;
mod minimize;
mod relax;
mod spectrum;
pub mod synth;
mod trace;

pub use lift::{canonical_lifts, collision_clusters, lift_boundary, lift_in_class, BoundaryLift};
pub use minimize::{check_oracle, minimize, minimize_in_class, MinimizeResult};
pub use relax::{relax_oracle, RelaxOutcome, DEFAULT_MAX_SWEEPS, DEFAULT_RELAX_TOL};
pub use spectrum::{
    analyze_spectrum, frequency_from_spectrum, harmonic_extension, ModeCoeff, Spectrum,
    SPECTRUM_ZERO_TOL,
};
pub use trace::{BoundaryTrace, TraceSample, DEFAULT_SEP_TOL};

use crate::field::{DiskField, FieldError};
use crate::homogeneous::Continuation;

#[derive(Debug, PartialEq, thiserror::Error)]
pub enum MinimizerError {
    #[error("sheet values collide; the continuation class cannot be decided (pass the class explicitly)")]
    AmbiguousClass,
    #[error("requested {requested} continuation but the data is {detected}")]
    ClassMismatch { requested: Continuation, detected: Continuation },
    #[error("grid has {n_theta} rays but the trace has {samples} samples")]
    GridMismatch { n_theta: usize, samples: usize },
    #[error("spectrum is identically zero")]
    ZeroSpectrum,
    #[error("relaxation did not converge after {sweeps} sweeps (last relative decrease {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64, field: Box<DiskField> },
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("trace file: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<serde_json::Error> for MinimizerError {
    fn from(e: serde_json::Error) -> Self {
        MinimizerError::Json(e.to_string())
    }
}
