use super::lift::{canonical_lifts, lift_in_class, BoundaryLift};
use super::relax::{relax_oracle, RelaxOutcome};
use super::spectrum::{analyze_spectrum, harmonic_extension, Spectrum};
use super::trace::BoundaryTrace;
use super::MinimizerError;
use crate::field::{dirichlet_energy, DiskField, PolarGrid};
use crate::homogeneous::Continuation;

#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub field: DiskField,
    pub class: Continuation,
    /// Closed-form energy of the spectral extension.
    pub energy: f64,
    /// Energy of the other canonical class, when the data allowed both.
    pub alt_energy: Option<f64>,
    /// Relative gap to the relaxation oracle, once [`check_oracle`] ran.
    pub oracle_gap: Option<f64>,
    pub lift: BoundaryLift,
    pub spectrum: Spectrum,
}

fn extend(lift: BoundaryLift, grid: PolarGrid) -> MinimizeResult {
    let spectrum = analyze_spectrum(&lift);
    let field = harmonic_extension(&spectrum, grid);
    MinimizeResult {
        field,
        class: lift.class,
        energy: spectrum.energy(),
        alt_energy: None,
        oracle_gap: None,
        lift,
        spectrum,
    }
}

/// Dirichlet minimizer with the given boundary data.
///
/// Separated data is extended within its detected class. Data with a single
/// collision run is extended in both canonical classes and the cheaper one is
/// kept; data colliding everywhere is a doubled loop.
pub fn minimize(
    trace: &BoundaryTrace,
    grid: PolarGrid,
    sep_tol: f64,
) -> Result<MinimizeResult, MinimizerError> {
    let mut results: Vec<MinimizeResult> =
        canonical_lifts(trace, sep_tol)?.into_iter().map(|l| extend(l, grid)).collect();
    results.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let alt = results.get(1).map(|r| r.energy);
    let mut best = results.swap_remove(0);
    best.alt_energy = alt;
    Ok(best)
}

/// Minimizer within an explicitly requested class.
pub fn minimize_in_class(
    trace: &BoundaryTrace,
    grid: PolarGrid,
    sep_tol: f64,
    class: Continuation,
) -> Result<MinimizeResult, MinimizerError> {
    Ok(extend(lift_in_class(trace, sep_tol, class)?, grid))
}

/// Run the relaxation oracle on the same lift and record
/// `|D_spectral - D_relaxed| / D_spectral`, both measured with the field
/// quadrature. Requires one grid ray per boundary sample.
pub fn check_oracle(
    result: &mut MinimizeResult,
    max_sweeps: usize,
    tol: f64,
) -> Result<RelaxOutcome, MinimizerError> {
    let out = relax_oracle(&result.lift, result.field.grid(), max_sweeps, tol)?;
    let ds = dirichlet_energy(&result.field, 1.0)?;
    let dr = dirichlet_energy(&out.field, 1.0)?;
    result.oracle_gap = Some(if ds > 0.0 { (ds - dr).abs() / ds } else { dr.abs() });
    Ok(out)
}
