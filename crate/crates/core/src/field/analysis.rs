//! Support cardinality, seam continuity, Hölder exponent and energy decay.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::disk::DiskField;
use super::energy::dirichlet_profile;
use super::FieldError;
use crate::homogeneous::Continuation;
use crate::qcore::{pair_distance, support_card, QPoint};

/// A grid node; the origin is `(0, 0)` and stands for the whole ring 0.
pub type Node = (usize, usize);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchReport {
    /// `σ` per node, ring-major; ring 0 is stored once (index 0).
    pub sigma_map: Vec<u8>,
    pub sigma_min: u8,
    /// Number of distinct sheets on the slit disk.
    pub j: u8,
    pub branch_at_origin: bool,
    /// Nodes whose `σ` differs from that of every neighbour.
    pub sigma_candidates: Vec<Node>,
}

impl BranchReport {
    pub fn sigma(&self, n_theta: usize, node: Node) -> u8 {
        if node.0 == 0 {
            self.sigma_map[0]
        } else {
            self.sigma_map[1 + (node.0 - 1) * n_theta + node.1]
        }
    }
}

pub fn branch_report(f: &DiskField, tol: f64) -> BranchReport {
    let g = f.grid();
    let (nr, nt) = (g.n_r(), g.n_theta());
    let mut sigma_map = Vec::with_capacity(1 + nr * nt);
    sigma_map.push(support_card(&f.value(0, 0), tol));
    for i in 1..=nr {
        for j in 0..nt {
            sigma_map.push(support_card(&f.value(i, j), tol));
        }
    }
    let at = |i: usize, j: usize| -> u8 {
        if i == 0 {
            sigma_map[0]
        } else {
            sigma_map[1 + (i - 1) * nt + j]
        }
    };
    let mut cands = Vec::new();
    let s0 = sigma_map[0];
    if (0..nt).all(|j| at(1, j) != s0) {
        cands.push((0, 0));
    }
    for i in 1..=nr {
        for j in 0..nt {
            let s = at(i, j);
            let mut nbrs = vec![at(i - 1, j), at(i, (j + 1) % nt), at(i, (j + nt - 1) % nt)];
            if i < nr {
                nbrs.push(at(i + 1, j));
            }
            if nbrs.iter().all(|&x| x != s) {
                cands.push((i, j));
            }
        }
    }
    let sigma_min = *sigma_map.iter().min().unwrap();
    let j = if sigma_map.contains(&2) { 2 } else { 1 };
    BranchReport {
        sigma_map,
        sigma_min,
        j,
        branch_at_origin: f.seam() == Continuation::Swap,
        sigma_candidates: cands,
    }
}

/// Largest mismatch, over rings, between the pair extrapolated to `θ = 2π`
/// (cubic extrapolation from the last four rays of each sheet) and the pair
/// at `θ = 0`.
pub fn seam_defect(f: &DiskField) -> f64 {
    let g = f.grid();
    let n = g.n_theta();
    let mut worst = 0.0f64;
    for i in 1..=g.n_r() {
        let ext = |s: usize| {
            4.0 * f.get(s, i, n - 1) - 6.0 * f.get(s, i, n - 2) + 4.0 * f.get(s, i, n - 3)
                - f.get(s, i, n - 4)
        };
        let end = QPoint::new(ext(0), ext(1));
        worst = worst.max(pair_distance(&end, &f.value(i, 0)));
    }
    worst
}

/// Cross-scale Hölder exponent at the origin.
///
/// Picks `samples` random rays and compares each even ring `i ≥ 4` with ring
/// `i/2` on the same ray; the slope of `log G(f(p), f(q))` against
/// `log |p - q|`, pooled within rays, is returned. For an `N`-homogeneous
/// field the slope is `N`.
pub fn holder_fit(f: &DiskField, samples: usize, seed: u64) -> Result<f64, FieldError> {
    let g = f.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    let mut used = 0usize;
    for _ in 0..samples.max(1) {
        let j = rng.gen_range(0..g.n_theta());
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in (4..=g.n_r()).step_by(2) {
            let d = pair_distance(&f.value(i, j), &f.value(i / 2, j));
            if d > 1e-13 {
                xs.push((0.5 * g.r(i)).ln());
                ys.push(d.ln());
            }
        }
        if xs.len() < 2 {
            continue;
        }
        let mx = xs.iter().sum::<f64>() / xs.len() as f64;
        let my = ys.iter().sum::<f64>() / ys.len() as f64;
        for (x, y) in xs.iter().zip(&ys) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
        used += 1;
    }
    if used == 0 || sxx == 0.0 {
        return Err(FieldError::DegenerateField);
    }
    Ok(sxy / sxx)
}

/// `(D(sr), s·D(r))`; energy decay with exponent 1 means `lhs ≤ rhs`.
pub fn energy_decay_check(f: &DiskField, s: f64, r: f64) -> (f64, f64) {
    let g = f.grid();
    let d = dirichlet_profile(f);
    (d[g.ring_of(s * r)], s * d[g.ring_of(r)])
}
