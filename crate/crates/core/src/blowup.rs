//! Blow-ups at the origin: domain-rescaled, energy-normalized copies of a
//! field, their mutual distances, and identification of the homogeneous limit
//! with a catalog entry.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::field::{
    boundary_mass, dirichlet_energy, frequency_profile, DiskField, FieldError, PolarGrid,
    MIN_FREQUENCY_RING,
};
use crate::homogeneous::{sheet_eval, Continuation, FourTuple, HomogeneousPair};
use crate::minimizer::Spectrum;
use crate::qcore::{pair_distance, Vec2};

/// Rescaled energies at or below this count as zero.
pub const ZERO_ENERGY_EPS: f64 = 1e-14;

/// Radii of the normalized limit used to fit its frequency.
pub const FIT_RADII: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// Largest distance from a half-integer accepted by [`identify_catalog`].
pub const HALF_INTEGER_SLACK: f64 = 0.1;

#[derive(Debug, PartialEq, thiserror::Error)]
pub enum BlowupError {
    #[error("Dirichlet energy vanishes on B_{r}")]
    ZeroEnergy { r: f64 },
    #[error("invalid radii: {0}")]
    InvalidRadii(String),
    #[error("no catalog entry matches: {0}")]
    NoCatalogMatch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Anything that can be evaluated sheet by sheet on the slit disk.
///
/// Grid fields are interpolated; spectra and catalog entries are exact, which
/// keeps small blow-up radii meaningful.
pub trait FieldSampler {
    fn seam(&self) -> Continuation;
    /// Sheet `s` at `(ρ, θ)` with `θ ∈ [0, 2π)`.
    fn sample(&self, s: usize, rho: f64, theta: f64) -> Vec2;
    /// Smallest radius the sampler resolves.
    fn min_radius(&self) -> f64 {
        0.0
    }
}

impl FieldSampler for DiskField {
    fn seam(&self) -> Continuation {
        DiskField::seam(self)
    }

    fn sample(&self, s: usize, rho: f64, theta: f64) -> Vec2 {
        self.interpolate(s, rho, theta)
    }

    fn min_radius(&self) -> f64 {
        MIN_FREQUENCY_RING as f64 * self.grid().h()
    }
}

impl FieldSampler for Spectrum {
    fn seam(&self) -> Continuation {
        self.class
    }

    fn sample(&self, s: usize, rho: f64, theta: f64) -> Vec2 {
        match self.class {
            Continuation::Identity => self.eval(s, rho, theta),
            Continuation::Swap => self.eval(0, rho, theta + TAU * s as f64),
        }
    }
}

impl FieldSampler for HomogeneousPair {
    fn seam(&self) -> Continuation {
        self.continuation
    }

    fn sample(&self, s: usize, rho: f64, theta: f64) -> Vec2 {
        sheet_eval(if s == 0 { self.t1 } else { self.t2 }, self.n, rho, theta)
    }
}

/// `f ∘ μ[r]` on `target`, scaled to unit discrete energy on the unit disk.
pub fn rescale_normalize<S: FieldSampler + ?Sized>(
    f: &S,
    r: f64,
    target: PolarGrid,
) -> Result<DiskField, BlowupError> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(BlowupError::InvalidRadii(format!("radius {r} outside (0,1]")));
    }
    let raw = DiskField::from_fn(target, f.seam(), |s, rho, th| f.sample(s, r * rho, th));
    let d = dirichlet_energy(&raw, 1.0)?;
    if d <= ZERO_ENERGY_EPS {
        return Err(BlowupError::ZeroEnergy { r });
    }
    Ok(raw.scaled(1.0 / d.sqrt()))
}

#[derive(Clone, Debug)]
pub struct BlowupSequence {
    pub radii: Vec<f64>,
    pub fields: Vec<DiskField>,
    /// Sup pair distance between consecutive fields, skipping the rings
    /// inside `3 h` where rescaling amplifies center errors.
    pub cauchy_defects: Vec<f64>,
}

impl BlowupSequence {
    /// The field at the smallest radius.
    pub fn limit(&self) -> &DiskField {
        self.fields.last().expect("nonempty sequence")
    }
}

pub fn blowup_sequence<S: FieldSampler + ?Sized>(
    f: &S,
    radii: &[f64],
    target: PolarGrid,
) -> Result<BlowupSequence, BlowupError> {
    if radii.is_empty() {
        return Err(BlowupError::InvalidRadii("no radii".into()));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(BlowupError::InvalidRadii("radii must decrease".into()));
    }
    let floor = f.min_radius();
    if let Some(r) = radii.iter().find(|&&r| r < floor) {
        return Err(BlowupError::InvalidRadii(format!("radius {r} below grid resolution {floor}")));
    }
    let fields = radii
        .iter()
        .map(|&r| rescale_normalize(f, r, target))
        .collect::<Result<Vec<_>, _>>()?;
    let cauchy_defects =
        fields.windows(2).map(|w| w[0].sup_distance(&w[1], MIN_FREQUENCY_RING)).collect();
    Ok(BlowupSequence { radii: radii.to_vec(), fields, cauchy_defects })
}

/// `max` over nodes inside the unit circle of `G(g(x), |x|^N g(x/|x|))`.
pub fn homogeneity_defect(g: &DiskField, n: f64) -> f64 {
    let grid = g.grid();
    let nr = grid.n_r();
    let mut worst = 0.0f64;
    for i in 0..nr {
        let w = if i == 0 { 0.0 } else { grid.r(i).powf(n) };
        for j in 0..grid.n_theta() {
            let outer = g.value(nr, j).scale(w);
            worst = worst.max(pair_distance(&g.value(i, j), &outer));
        }
    }
    worst
}

/// `(H(1), 1/N₀)`; equal for a unit-energy homogeneous field.
pub fn boundary_mass_identity(g: &DiskField, n0: f64) -> (f64, f64) {
    (boundary_mass(g, 1.0), 1.0 / n0)
}

/// Frequency of a (nearly) homogeneous field, extrapolated to the origin.
pub fn fit_frequency(g: &DiskField) -> Result<f64, BlowupError> {
    Ok(frequency_profile(g, &FIT_RADII)?.n0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogMatch {
    pub entry: HomogeneousPair,
    pub fitted_n: f64,
    /// Sup pair distance between the field and the entry over the grid.
    pub residual: f64,
}

/// Least-squares `(a, b, c, d)` with `v ≈ (a cos Nθ + b sin Nθ, c cos Nθ + d sin Nθ)`.
fn fit_tuple(samples: &[(f64, Vec2)], n: f64) -> Result<FourTuple, BlowupError> {
    let (mut cc, mut cs, mut ss) = (0.0, 0.0, 0.0);
    let (mut xc, mut xs, mut yc, mut ys) = (0.0, 0.0, 0.0, 0.0);
    for &(th, v) in samples {
        let (s, c) = (n * th).sin_cos();
        cc += c * c;
        cs += c * s;
        ss += s * s;
        xc += v.x * c;
        xs += v.x * s;
        yc += v.y * c;
        ys += v.y * s;
    }
    let det = cc * ss - cs * cs;
    if det.abs() <= 1e-12 * (cc * ss).max(f64::MIN_POSITIVE) {
        return Err(BlowupError::NoCatalogMatch("degenerate angular fit".into()));
    }
    let solve = |p: f64, q: f64| ((ss * p - cs * q) / det, (cc * q - cs * p) / det);
    let (a, b) = solve(xc, xs);
    let (c, d) = solve(yc, ys);
    Ok(FourTuple::new(a, b, c, d))
}

/// Match a blow-up limit against the homogeneous catalog.
///
/// `N` is fitted from the frequency profile and rounded to a half-integer;
/// the unit-circle values are fitted per sheet (identity seam) or along the
/// lifted `4π` loop (swap seam); the tuples, scaled to unit size, must then
/// pass [`HomogeneousPair::validate`] at `tol`.
pub fn identify_catalog(g: &DiskField, tol: f64) -> Result<CatalogMatch, BlowupError> {
    let fitted_n = fit_frequency(g)?;
    let k = (2.0 * fitted_n).round().max(1.0);
    let n = 0.5 * k;
    if (fitted_n - n).abs() > HALF_INTEGER_SLACK {
        return Err(BlowupError::NoCatalogMatch(format!(
            "fitted N={fitted_n:.4} is not within {HALF_INTEGER_SLACK} of a half-integer"
        )));
    }
    let grid = g.grid();
    let (nr, nt) = (grid.n_r(), grid.n_theta());
    let ring = |s: usize, shift: f64| (0..nt).map(move |j| (grid.theta(j) + shift, g.get(s, nr, j)));
    let seam = g.seam();
    let (t1, t2) = match seam {
        Continuation::Identity => {
            let t1 = fit_tuple(&ring(0, 0.0).collect::<Vec<_>>(), n)?;
            let t2 = fit_tuple(&ring(1, 0.0).collect::<Vec<_>>(), n)?;
            (t1, t2)
        }
        Continuation::Swap => {
            let lp: Vec<_> = ring(0, 0.0).chain(ring(1, TAU)).collect();
            let t1 = fit_tuple(&lp, n)?;
            (t1, t1.phase_shift(TAU * n))
        }
    };
    let entry = HomogeneousPair::new(n, t1, t2, seam);
    let size = t1.max_abs().max(t2.max_abs());
    if size <= 0.0 {
        return Err(BlowupError::NoCatalogMatch("fitted tuples vanish".into()));
    }
    let unit = HomogeneousPair::new(n, t1.scale(1.0 / size), t2.scale(1.0 / size), seam);
    unit.validate(tol).map_err(|e| BlowupError::NoCatalogMatch(e.to_string()))?;
    let mut residual = 0.0f64;
    for i in 0..=nr {
        for j in 0..nt {
            let exact = entry.eval(grid.r(i), grid.theta(j));
            residual = residual.max(pair_distance(&g.value(i, j), &exact));
        }
    }
    Ok(CatalogMatch { entry, fitted_n, residual })
}

/// Summary of a blow-up run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlowupReport {
    #[serde(rename = "fitted_N")]
    pub fitted_n: f64,
    #[serde(rename = "rounded_N")]
    pub rounded_n: f64,
    pub continuation: Continuation,
    pub residual: f64,
    pub boundary_mass: f64,
    #[serde(rename = "1/N")]
    pub inv_n: f64,
    pub radii: Vec<f64>,
    pub cauchy_defects: Vec<f64>,
    pub entry: HomogeneousPair,
}

impl BlowupReport {
    pub fn new(seq: &BlowupSequence, m: &CatalogMatch) -> Self {
        let (boundary_mass, inv_n) = boundary_mass_identity(seq.limit(), m.fitted_n);
        BlowupReport {
            fitted_n: m.fitted_n,
            rounded_n: m.entry.n,
            continuation: m.entry.continuation,
            residual: m.residual,
            boundary_mass,
            inv_n,
            radii: seq.radii.clone(),
            cauchy_defects: seq.cauchy_defects.clone(),
            entry: m.entry,
        }
    }
}
