use serde::{Deserialize, Serialize};

use super::FieldError;

/// Polar grid on the closed unit disk: rings `r_i = i/n_r` for `i = 0..=n_r`
/// and rays `θ_j = 2πj/n_θ` for `j = 0..n_θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarGrid {
    n_r: usize,
    n_theta: usize,
}

impl PolarGrid {
    /// `n_theta` must be even and at least 8, `n_r` at least 4.
    pub fn new(n_r: usize, n_theta: usize) -> Result<Self, FieldError> {
        if n_r < 4 {
            return Err(FieldError::InvalidGrid(format!("n_r = {n_r} < 4")));
        }
        if n_theta < 8 || !n_theta.is_multiple_of(2) {
            return Err(FieldError::InvalidGrid(format!(
                "n_theta = {n_theta} must be even and >= 8"
            )));
        }
        Ok(PolarGrid { n_r, n_theta })
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    /// Radial spacing.
    pub fn h(&self) -> f64 {
        1.0 / self.n_r as f64
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.n_theta as f64
    }

    pub fn r(&self, i: usize) -> f64 {
        i as f64 / self.n_r as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        self.dtheta() * j as f64
    }

    /// Nearest ring index to radius `r`, clamped to the grid.
    pub fn ring_of(&self, r: f64) -> usize {
        ((r * self.n_r as f64).round().max(0.0) as usize).min(self.n_r)
    }

    /// Total node count per sheet, counting ring 0 once per ray.
    pub fn len(&self) -> usize {
        (self.n_r + 1) * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
