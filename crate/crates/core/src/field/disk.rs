use std::f64::consts::TAU;

use super::grid::PolarGrid;
use crate::homogeneous::{sheet_eval, Continuation, HomogeneousPair};
use crate::qcore::{QPoint, Vec2};

/// A 2-valued function on the polar grid, stored as two sheets over the slit
/// disk `θ ∈ [0, 2π)` plus the permutation that reconnects them across the
/// slit.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskField {
    grid: PolarGrid,
    sheets: [Vec<Vec2>; 2],
    seam: Continuation,
}

impl DiskField {
    /// Build from `f(sheet, r, θ)`. Ring 0 takes its `θ = 0` value on every ray.
    pub fn from_fn(
        grid: PolarGrid,
        seam: Continuation,
        mut f: impl FnMut(usize, f64, f64) -> Vec2,
    ) -> Self {
        let nt = grid.n_theta();
        let mut sheets = [vec![Vec2::ZERO; grid.len()], vec![Vec2::ZERO; grid.len()]];
        for (s, sheet) in sheets.iter_mut().enumerate() {
            let center = f(s, 0.0, 0.0);
            sheet[..nt].fill(center);
            for i in 1..=grid.n_r() {
                for j in 0..nt {
                    sheet[i * nt + j] = f(s, grid.r(i), grid.theta(j));
                }
            }
        }
        DiskField { grid, sheets, seam }
    }

    /// Raw constructor; both sheets must hold `grid.len()` values laid out
    /// ring by ring.
    pub fn from_sheets(grid: PolarGrid, seam: Continuation, s1: Vec<Vec2>, s2: Vec<Vec2>) -> Self {
        assert_eq!(s1.len(), grid.len(), "sheet 1 size");
        assert_eq!(s2.len(), grid.len(), "sheet 2 size");
        DiskField { grid, sheets: [s1, s2], seam }
    }

    pub fn constant(grid: PolarGrid, value: QPoint) -> Self {
        DiskField::from_fn(grid, Continuation::Identity, |s, _, _| {
            if s == 0 {
                value.p1
            } else {
                value.p2
            }
        })
    }

    pub fn grid(&self) -> PolarGrid {
        self.grid
    }

    pub fn seam(&self) -> Continuation {
        self.seam
    }

    pub fn sheet(&self, s: usize) -> &[Vec2] {
        &self.sheets[s]
    }

    pub fn get(&self, s: usize, i: usize, j: usize) -> Vec2 {
        self.sheets[s][i * self.grid.n_theta() + j]
    }

    pub fn value(&self, i: usize, j: usize) -> QPoint {
        QPoint::new(self.get(0, i, j), self.get(1, i, j))
    }

    /// Value of sheet `s` at ray `j + off` on ring `i`, following the sheet
    /// through the seam permutation when the offset crosses the slit.
    pub fn angular(&self, s: usize, i: usize, j: usize, off: isize) -> Vec2 {
        let (s2, j2) = self.wrap(s, j as isize + off);
        self.get(s2, i, j2)
    }

    pub(crate) fn wrap(&self, mut s: usize, mut j: isize) -> (usize, usize) {
        let n = self.grid.n_theta() as isize;
        while j >= n {
            j -= n;
            s = self.seam.perm(s);
        }
        while j < 0 {
            j += n;
            s = self.seam.perm(s);
        }
        (s, j as usize)
    }

    /// Bilinear interpolation of sheet `s` at `(ρ, θ)`, `ρ ∈ [0,1]`,
    /// `θ ∈ [0, 2π)`. Angular interpolation past the last ray goes through
    /// the seam.
    pub fn interpolate(&self, s: usize, rho: f64, theta: f64) -> Vec2 {
        let g = self.grid;
        let x = (rho * g.n_r() as f64).clamp(0.0, g.n_r() as f64);
        let i0 = (x.floor() as usize).min(g.n_r() - 1);
        let tr = x - i0 as f64;
        let th = theta.rem_euclid(TAU);
        let y = th / g.dtheta();
        let j0 = (y.floor() as usize).min(g.n_theta() - 1);
        let ta = y - j0 as f64;
        let at = |i: usize| {
            let a = self.get(s, i, j0);
            let b = self.angular(s, i, j0, 1);
            (1.0 - ta) * a + ta * b
        };
        (1.0 - tr) * at(i0) + tr * at(i0 + 1)
    }

    /// Unordered interpolated value at `(ρ, θ)`.
    pub fn interpolate_pair(&self, rho: f64, theta: f64) -> QPoint {
        QPoint::new(self.interpolate(0, rho, theta), self.interpolate(1, rho, theta))
    }

    /// Same field with both sheets scaled by `k`.
    pub fn scaled(&self, k: f64) -> DiskField {
        let map = |v: &Vec<Vec2>| v.iter().map(|&p| k * p).collect::<Vec<_>>();
        DiskField { grid: self.grid, sheets: [map(&self.sheets[0]), map(&self.sheets[1])], seam: self.seam }
    }

    /// Largest nodewise pair distance to another field on the same grid,
    /// over rings `i ≥ i_min`.
    pub fn sup_distance(&self, other: &DiskField, i_min: usize) -> f64 {
        assert_eq!(self.grid, other.grid, "grids differ");
        let mut m = 0.0f64;
        for i in i_min..=self.grid.n_r() {
            for j in 0..self.grid.n_theta() {
                m = m.max(self.value(i, j).distance(&other.value(i, j)));
            }
        }
        m
    }
}

/// Sample a homogeneous candidate on the grid.
pub fn sample_field(entry: &HomogeneousPair, grid: PolarGrid) -> DiskField {
    let t = [entry.t1, entry.t2];
    DiskField::from_fn(grid, entry.continuation, |s, r, th| sheet_eval(t[s], entry.n, r, th))
}
