//! Fourier analysis of lifted boundary loops and their harmonic extension.

use std::f64::consts::{PI, TAU};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::lift::BoundaryLift;
use super::MinimizerError;
use crate::field::{DiskField, PolarGrid};
use crate::homogeneous::Continuation;
use crate::qcore::Vec2;

/// Coefficients below this norm count as absent.
pub const SPECTRUM_ZERO_TOL: f64 = 1e-12;

/// `cos` and `sin` coefficients of one mode, each a vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ModeCoeff {
    pub cos: Vec2,
    pub sin: Vec2,
}

impl ModeCoeff {
    pub fn norm_sq(&self) -> f64 {
        self.cos.norm_sq() + self.sin.norm_sq()
    }
}

/// Trigonometric coefficients of each loop. Mode `m` of a loop has angular
/// frequency `m` (identity) or `m/2` (swap, in the angle `α ∈ [0, 4π)`).
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub class: Continuation,
    pub loops: Vec<Vec<ModeCoeff>>,
}

impl Spectrum {
    pub fn frequency(&self, m: usize) -> f64 {
        match self.class {
            Continuation::Identity => m as f64,
            Continuation::Swap => 0.5 * m as f64,
        }
    }

    /// Angular period of each loop.
    pub fn period(&self) -> f64 {
        match self.class {
            Continuation::Identity => TAU,
            Continuation::Swap => 2.0 * TAU,
        }
    }

    /// Evaluate loop `k` at angle `alpha` and radius `rho` using the
    /// harmonic extension of each mode.
    pub fn eval(&self, k: usize, rho: f64, alpha: f64) -> Vec2 {
        let mut acc = Vec2::ZERO;
        for (m, c) in self.loops[k].iter().enumerate() {
            let nu = self.frequency(m);
            let radial = if m == 0 { 1.0 } else { rho.powf(nu) };
            let (s, co) = (nu * alpha).sin_cos();
            acc = acc + radial * (co * c.cos + s * c.sin);
        }
        acc
    }

    /// Dirichlet energy of the harmonic extension over the unit disk, in
    /// closed form: `π m |c_m|²` per identity mode and `2π ν |c_ν|²` per swap
    /// mode (the loop covers the circle twice).
    pub fn energy(&self) -> f64 {
        let per = match self.class {
            Continuation::Identity => PI,
            Continuation::Swap => TAU,
        };
        self.loops
            .iter()
            .flat_map(|l| l.iter().enumerate())
            .map(|(m, c)| per * self.frequency(m) * c.norm_sq())
            .sum()
    }
}

fn real_dft(samples: &[f64], planner: &mut FftPlanner<f64>) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
    planner.plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

fn loop_modes(lp: &[Vec2], planner: &mut FftPlanner<f64>) -> Vec<ModeCoeff> {
    let n = lp.len();
    let xs: Vec<f64> = lp.iter().map(|v| v.x).collect();
    let ys: Vec<f64> = lp.iter().map(|v| v.y).collect();
    let (fx, fy) = (real_dft(&xs, planner), real_dft(&ys, planner));
    let nf = n as f64;
    let mut out = Vec::with_capacity(n / 2 + 1);
    out.push(ModeCoeff { cos: Vec2::new(fx[0].re / nf, fy[0].re / nf), sin: Vec2::ZERO });
    for m in 1..=n / 2 {
        if 2 * m == n {
            out.push(ModeCoeff { cos: Vec2::new(fx[m].re / nf, fy[m].re / nf), sin: Vec2::ZERO });
        } else {
            out.push(ModeCoeff {
                cos: Vec2::new(2.0 * fx[m].re / nf, 2.0 * fy[m].re / nf),
                sin: Vec2::new(-2.0 * fx[m].im / nf, -2.0 * fy[m].im / nf),
            });
        }
    }
    out
}

/// Discrete Fourier coefficients of each loop; exact on band-limited data.
pub fn analyze_spectrum(lift: &BoundaryLift) -> Spectrum {
    let mut planner = FftPlanner::new();
    Spectrum {
        class: lift.class,
        loops: lift.loops.iter().map(|l| loop_modes(l, &mut planner)).collect(),
    }
}

/// Extend every mode of frequency `ν` by `ρ^ν` and sample onto the slit grid.
pub fn harmonic_extension(sp: &Spectrum, grid: PolarGrid) -> DiskField {
    let (nr, nt) = (grid.n_r(), grid.n_theta());
    let mut sheets = [vec![Vec2::ZERO; grid.len()], vec![Vec2::ZERO; grid.len()]];
    for (s, sheet) in sheets.iter_mut().enumerate() {
        let (k, shift) = match sp.class {
            Continuation::Identity => (s, 0.0),
            Continuation::Swap => (0, TAU * s as f64),
        };
        let modes = &sp.loops[k];
        // Angular factor of each mode on each ray, then sum over rings.
        let mut ang = vec![Vec2::ZERO; modes.len() * nt];
        for j in 0..nt {
            let alpha = grid.theta(j) + shift;
            for (m, c) in modes.iter().enumerate() {
                let (sn, cs) = (sp.frequency(m) * alpha).sin_cos();
                ang[m * nt + j] = cs * c.cos + sn * c.sin;
            }
        }
        sheet[..nt].fill(modes[0].cos);
        for i in 1..=nr {
            let rho = grid.r(i);
            let row = &mut sheet[i * nt..(i + 1) * nt];
            for (m, _) in modes.iter().enumerate() {
                let w = if m == 0 { 1.0 } else { rho.powf(sp.frequency(m)) };
                if w == 0.0 {
                    continue;
                }
                for (j, v) in row.iter_mut().enumerate() {
                    *v = *v + w * ang[m * nt + j];
                }
            }
        }
    }
    let [s1, s2] = sheets;
    DiskField::from_sheets(grid, sp.class, s1, s2)
}

/// Frequency at the origin of the harmonic extension: 0 when some loop has a
/// nonzero mean, otherwise the lowest frequency present.
pub fn frequency_from_spectrum(sp: &Spectrum) -> Result<f64, MinimizerError> {
    if sp.loops.iter().any(|l| l[0].norm_sq().sqrt() > SPECTRUM_ZERO_TOL) {
        return Ok(0.0);
    }
    sp.loops
        .iter()
        .filter_map(|l| l.iter().position(|c| c.norm_sq().sqrt() > SPECTRUM_ZERO_TOL))
        .min()
        .map(|m| sp.frequency(m))
        .ok_or(MinimizerError::ZeroSpectrum)
}
