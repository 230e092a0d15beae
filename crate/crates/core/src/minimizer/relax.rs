//! Finite-volume relaxation oracle, independent of the spectral path.
//!
//! The discrete energy sums `w |u_a - u_b|²` over grid edges: radial edges
//! `(i, i+1)` weigh `ρ_{i+½} Δθ / h`, angular edges on ring `i` weigh
//! `h / (ρ_i Δθ)` and cross the slit through the seam permutation. The origin
//! is one unknown per sheet (identity) or one shared unknown (swap). Rings are
//! relaxed as whole lines, odd rings then even rings, with over-relaxation;
//! every line is a cyclic tridiagonal solve along the ring (both sheets
//! chained into one cycle under swap).

use super::lift::BoundaryLift;
use super::MinimizerError;
use crate::field::{DiskField, PolarGrid};
use crate::homogeneous::Continuation;
use crate::qcore::Vec2;

/// Default stopping threshold on the relative energy decrease per sweep.
pub const DEFAULT_RELAX_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SWEEPS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct RelaxOutcome {
    pub field: DiskField,
    pub sweeps: usize,
    /// Finite-volume energy of the returned field.
    pub energy: f64,
    /// Relative energy decrease of the last sweep.
    pub last_decrease: f64,
}

/// Cyclic tridiagonal system with diagonal `d` and off-diagonals `-a`,
/// solved by the Thomas algorithm plus a Sherman–Morrison correction.
struct CyclicSolver {
    a: f64,
    cp: Vec<f64>,
    inv_den: Vec<f64>,
    z: Vec<f64>,
    ratio: f64,
    z_den: f64,
}

impl CyclicSolver {
    fn new(d: f64, a: f64, n: usize) -> Self {
        let gamma = -d;
        let mut diag = vec![d; n];
        diag[0] = d - gamma;
        diag[n - 1] = d - a * a / gamma;
        let (l, u) = (-a, -a);
        let mut cp = vec![0.0; n];
        let mut inv_den = vec![0.0; n];
        inv_den[0] = 1.0 / diag[0];
        cp[0] = u * inv_den[0];
        for k in 1..n {
            inv_den[k] = 1.0 / (diag[k] - l * cp[k - 1]);
            cp[k] = u * inv_den[k];
        }
        let mut rhs = vec![0.0; n];
        rhs[0] = gamma;
        rhs[n - 1] = -a;
        let z = Self::thomas(&cp, &inv_den, l, &rhs);
        let ratio = (-a) / gamma;
        let z_den = 1.0 + z[0] + ratio * z[n - 1];
        CyclicSolver { a, cp, inv_den, z, ratio, z_den }
    }

    fn thomas(cp: &[f64], inv_den: &[f64], l: f64, r: &[f64]) -> Vec<f64> {
        let n = r.len();
        let mut dp = vec![0.0; n];
        dp[0] = r[0] * inv_den[0];
        for k in 1..n {
            dp[k] = (r[k] - l * dp[k - 1]) * inv_den[k];
        }
        for k in (0..n - 1).rev() {
            dp[k] -= cp[k] * dp[k + 1];
        }
        dp
    }

    fn solve(&self, rhs: &[Vec2], out: &mut [Vec2]) {
        let l = -self.a;
        let n = rhs.len();
        let mut dp = vec![Vec2::ZERO; n];
        dp[0] = self.inv_den[0] * rhs[0];
        for k in 1..n {
            dp[k] = self.inv_den[k] * (rhs[k] - l * dp[k - 1]);
        }
        for k in (0..n - 1).rev() {
            dp[k] = dp[k] - self.cp[k] * dp[k + 1];
        }
        let fact = (1.0 / self.z_den) * (dp[0] + self.ratio * dp[n - 1]);
        for k in 0..n {
            out[k] = dp[k] - self.z[k] * fact;
        }
    }
}

struct Relaxer {
    grid: PolarGrid,
    class: Continuation,
    /// `u[s][i * nt + j]`
    u: [Vec<Vec2>; 2],
    w_rad: Vec<f64>,
    w_ang: Vec<f64>,
    solvers: Vec<Option<CyclicSolver>>,
}

impl Relaxer {
    fn new(lift: &BoundaryLift, grid: PolarGrid) -> Self {
        let (nr, nt) = (grid.n_r(), grid.n_theta());
        let (h, dth) = (grid.h(), grid.dtheta());
        let w_rad: Vec<f64> = (0..nr).map(|i| (grid.r(i) + 0.5 * h) * dth / h).collect();
        let mut w_ang: Vec<f64> = (0..=nr)
            .map(|i| if i == 0 { 0.0 } else { h / (grid.r(i) * dth) })
            .collect();
        w_ang[nr] *= 0.5;
        let cycle = match lift.class {
            Continuation::Identity => nt,
            Continuation::Swap => 2 * nt,
        };
        let solvers = (0..nr)
            .map(|i| {
                (i >= 1).then(|| {
                    let d = w_rad[i] + w_rad[i - 1] + 2.0 * w_ang[i];
                    CyclicSolver::new(d, w_ang[i], cycle)
                })
            })
            .collect();

        let bnd = lift.sheets();
        let means: [Vec2; 2] = match lift.class {
            Continuation::Identity => [mean(&bnd[0]), mean(&bnd[1])],
            Continuation::Swap => {
                let m = 0.5 * (mean(&bnd[0]) + mean(&bnd[1]));
                [m, m]
            }
        };
        let mut u = [vec![Vec2::ZERO; grid.len()], vec![Vec2::ZERO; grid.len()]];
        for s in 0..2 {
            for i in 0..=nr {
                let rho = grid.r(i);
                for j in 0..nt {
                    u[s][i * nt + j] = means[s] + rho * (bnd[s][j] - means[s]);
                }
            }
        }
        Relaxer { grid, class: lift.class, u, w_rad, w_ang, solvers }
    }

    fn nt(&self) -> usize {
        self.grid.n_theta()
    }

    fn energy(&self) -> f64 {
        let (nr, nt) = (self.grid.n_r(), self.nt());
        let mut e = 0.0;
        for s in 0..2 {
            let u = &self.u[s];
            for j in 0..nt {
                for i in 0..nr {
                    e += self.w_rad[i] * (u[(i + 1) * nt + j] - u[i * nt + j]).norm_sq();
                }
            }
            for i in 1..=nr {
                for j in 0..nt {
                    let (s2, j2) = if j + 1 < nt { (s, j + 1) } else { (self.class.perm(s), 0) };
                    e += self.w_ang[i] * (self.u[s2][i * nt + j2] - u[i * nt + j]).norm_sq();
                }
            }
        }
        e
    }

    fn relax_ring(&mut self, i: usize, omega: f64, rhs: &mut Vec<Vec2>, sol: &mut Vec<Vec2>) {
        let nt = self.nt();
        let (wo, wi) = (self.w_rad[i], self.w_rad[i - 1]);
        let solver = self.solvers[i].as_ref().expect("interior ring");
        let cycles: &[&[usize]] = match self.class {
            Continuation::Identity => &[&[0], &[1]],
            Continuation::Swap => &[&[0, 1]],
        };
        for sheets in cycles {
            rhs.clear();
            for &s in sheets.iter() {
                for j in 0..nt {
                    let u = &self.u[s];
                    rhs.push(wo * u[(i + 1) * nt + j] + wi * u[(i - 1) * nt + j]);
                }
            }
            sol.resize(rhs.len(), Vec2::ZERO);
            solver.solve(rhs, sol);
            for (k, &s) in sheets.iter().enumerate() {
                for j in 0..nt {
                    let cur = &mut self.u[s][i * nt + j];
                    *cur = *cur + omega * (sol[k * nt + j] - *cur);
                }
            }
        }
    }

    fn relax_origin(&mut self, omega: f64) {
        let nt = self.nt();
        let ring1 = |s: usize| mean(&self.u[s][nt..2 * nt]);
        let targets = match self.class {
            Continuation::Identity => [ring1(0), ring1(1)],
            Continuation::Swap => {
                let m = 0.5 * (ring1(0) + ring1(1));
                [m, m]
            }
        };
        for (s, t) in targets.into_iter().enumerate() {
            let cur = self.u[s][0];
            let next = cur + omega * (t - cur);
            self.u[s][..nt].fill(next);
        }
    }

    fn sweep(&mut self, omega: f64) {
        let nr = self.grid.n_r();
        let mut rhs = Vec::new();
        let mut sol = Vec::new();
        for i in (1..nr).step_by(2) {
            self.relax_ring(i, omega, &mut rhs, &mut sol);
        }
        self.relax_origin(omega);
        for i in (2..nr).step_by(2) {
            self.relax_ring(i, omega, &mut rhs, &mut sol);
        }
    }

    fn into_field(self) -> DiskField {
        let [s1, s2] = self.u;
        DiskField::from_sheets(self.grid, self.class, s1, s2)
    }
}

fn mean(v: &[Vec2]) -> Vec2 {
    let n = v.len() as f64;
    (1.0 / n) * v.iter().fold(Vec2::ZERO, |a, &b| a + b)
}

/// Relax the lifted boundary data into the interior of `grid`.
///
/// The grid must have one ray per boundary sample. Stops once a sweep lowers
/// the energy by less than `tol` relative; otherwise fails with
/// `NoConvergence` after `max_sweeps`, carrying the last iterate.
pub fn relax_oracle(
    lift: &BoundaryLift,
    grid: PolarGrid,
    max_sweeps: usize,
    tol: f64,
) -> Result<RelaxOutcome, MinimizerError> {
    if grid.n_theta() != lift.n() {
        return Err(MinimizerError::GridMismatch { n_theta: grid.n_theta(), samples: lift.n() });
    }
    let mut r = Relaxer::new(lift, grid);
    let omega = 2.0 / (1.0 + (std::f64::consts::PI / grid.n_r() as f64).sin());
    let mut e = r.energy();
    let mut last = f64::INFINITY;
    for sweep in 1..=max_sweeps {
        r.sweep(omega);
        let e_new = r.energy();
        last = if e > 0.0 { (e - e_new) / e } else { 0.0 };
        e = e_new;
        if last < tol {
            return Ok(RelaxOutcome { field: r.into_field(), sweeps: sweep, energy: e, last_decrease: last });
        }
    }
    Err(MinimizerError::NoConvergence {
        sweeps: max_sweeps,
        residual: last,
        field: Box::new(r.into_field()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{dirichlet_energy, sample_field};
    use crate::homogeneous::{FourTuple, HomogeneousPair};
    use crate::minimizer::{lift_boundary, BoundaryTrace};
    use crate::qcore::QPoint;

    #[test]
    fn cyclic_solver_matches_dense() {
        let (d, a, n) = (5.0, 1.3, 9);
        let s = CyclicSolver::new(d, a, n);
        let rhs: Vec<Vec2> = (0..n).map(|k| Vec2::new(k as f64, (k * k) as f64 - 3.0)).collect();
        let mut x = vec![Vec2::ZERO; n];
        s.solve(&rhs, &mut x);
        for k in 0..n {
            let lhs = d * x[k] - a * (x[(k + 1) % n] + x[(k + n - 1) % n]);
            assert!((lhs - rhs[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn harmonic_data_is_reproduced() {
        let id = FourTuple::new(1., 0., 0., 1.);
        let grid = PolarGrid::new(32, 128).unwrap();
        let t = BoundaryTrace::from_fn(128, |th| QPoint::doubled(Vec2::polar(th))).unwrap();
        let lift = lift_boundary(&t, -1.0).unwrap();
        let out = relax_oracle(&lift, grid, 20_000, 1e-12).unwrap();
        let exact = sample_field(&HomogeneousPair::new(1.0, id, id, Continuation::Identity), grid);
        let err = out.field.sup_distance(&exact, 0);
        // Second-order discretization: agreement to O(h²).
        assert!(err < grid.h() * grid.h(), "{err}");
    }

    #[test]
    fn branched_energy_close_to_spectral() {
        let grid = PolarGrid::new(64, 256).unwrap();
        let t = BoundaryTrace::from_lifted(256, |a| Vec2::polar(0.5 * a)).unwrap();
        let lift = lift_boundary(&t, 1e-6).unwrap();
        let out = relax_oracle(&lift, grid, 20_000, 1e-10).unwrap();
        let d = dirichlet_energy(&out.field, 1.0).unwrap();
        let exact = std::f64::consts::PI * 2.0;
        assert!((d - exact).abs() / exact < 0.01, "{d} vs {exact}");
    }

    #[test]
    fn zero_sweeps_returns_initial_guess() {
        let grid = PolarGrid::new(8, 16).unwrap();
        let t = BoundaryTrace::from_lifted(16, |a| Vec2::polar(0.5 * a)).unwrap();
        let lift = lift_boundary(&t, 1e-6).unwrap();
        match relax_oracle(&lift, grid, 0, 1e-10) {
            Err(MinimizerError::NoConvergence { sweeps: 0, field, .. }) => {
                assert_eq!(field.get(0, 8, 3), lift.sheets()[0][3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let g2 = PolarGrid::new(8, 32).unwrap();
        assert!(matches!(relax_oracle(&lift, g2, 10, 1e-10), Err(MinimizerError::GridMismatch { .. })));
    }
}
