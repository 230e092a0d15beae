//! Dirichlet energy `D(r)`, boundary mass `H(r)` and frequency `N(r) = rD/H`.
//!
//! Radial derivatives are taken in `s = √r`, where branched fields of
//! frequency `k/2` are polynomial: five-point Lagrange stencils on the nodes
//! `s_i = √(i/n_r)`, then `∂_r = ∂_s / (2s)`. Angular derivatives are centered
//! fourth-order differences through the seam. For harmonic fields the ring
//! density `g(r)` is a polynomial in `r`, so it is integrated in `r` with
//! Gregory end corrections; the density on the center ring is extrapolated.

use std::io::Write;

use serde::Serialize;

use super::disk::DiskField;
use super::FieldError;
use crate::qcore::{dist_to_zero_sq, Vec2};

/// `H(r)` at or below this counts as zero.
pub const DEFAULT_H_EPS: f64 = 1e-14;

/// Frequencies are refused on rings closer to the origin than this.
pub const MIN_FREQUENCY_RING: usize = 3;

/// Derivative at `x` of the Lagrange basis on `nodes`.
fn lagrange_derivative_weights(nodes: &[f64; 5], x: f64) -> [f64; 5] {
    let mut w = [0.0; 5];
    for k in 0..5 {
        for m in (0..5).filter(|&m| m != k) {
            let mut term = 1.0 / (nodes[k] - nodes[m]);
            for l in (0..5).filter(|&l| l != k && l != m) {
                term *= (x - nodes[l]) / (nodes[k] - nodes[l]);
            }
            w[k] += term;
        }
    }
    w
}

/// `(first node, weights)` of the `∂_r` stencil on each ring `i ≥ 1`.
fn radial_stencils(n: usize) -> Vec<(usize, [f64; 5])> {
    let s = |i: usize| (i as f64 / n as f64).sqrt();
    (0..=n)
        .map(|i| {
            if i == 0 {
                return (0, [0.0; 5]);
            }
            let base = i.saturating_sub(2).min(n - 4);
            let nodes = [s(base), s(base + 1), s(base + 2), s(base + 3), s(base + 4)];
            let mut w = lagrange_derivative_weights(&nodes, s(i));
            for v in &mut w {
                *v /= 2.0 * s(i);
            }
            (base, w)
        })
        .collect()
}

/// Per-ring energy density `g_i = ρ_i ∫ Σ_sheets (|∂_r f|² + |∂_θ f|²/ρ²) dθ`.
pub fn ring_energy_density(f: &DiskField) -> Vec<f64> {
    let g = f.grid();
    let (nr, nt) = (g.n_r(), g.n_theta());
    let dth = g.dtheta();
    let stencils = radial_stencils(nr);
    let mut out = vec![0.0; nr + 1];
    let mut col = vec![Vec2::ZERO; nr + 1];
    for s in 0..2 {
        for j in 0..nt {
            for (i, c) in col.iter_mut().enumerate() {
                *c = f.get(s, i, j);
            }
            for (i, o) in out.iter_mut().enumerate().skip(1) {
                let rho = g.r(i);
                let (base, w) = stencils[i];
                let fr = w.iter().enumerate().fold(Vec2::ZERO, |acc, (k, wk)| acc + *wk * col[base + k]);
                let ft = (1.0 / (12.0 * dth))
                    * (f.angular(s, i, j, -2) - 8.0 * f.angular(s, i, j, -1)
                        + 8.0 * f.angular(s, i, j, 1)
                        - f.angular(s, i, j, 2));
                *o += rho * (fr.norm_sq() + ft.norm_sq() / (rho * rho)) * dth;
            }
        }
    }
    out[0] = (4.0 * out[1] - 6.0 * out[2] + 4.0 * out[3] - out[4]).max(0.0);
    out
}

/// `h ∫_0^{r_m} g` for every `m`, trapezoid with Gregory end corrections
/// (plain trapezoid when fewer than six points are available).
pub fn cumulative_integral(g: &[f64], h: f64) -> Vec<f64> {
    let mut prefix = vec![0.0; g.len() + 1];
    for (k, v) in g.iter().enumerate() {
        prefix[k + 1] = prefix[k] + v;
    }
    (0..g.len())
        .map(|m| {
            if m == 0 {
                return 0.0;
            }
            let trap = prefix[m + 1] - 0.5 * (g[0] + g[m]);
            if m < 5 {
                return h * trap;
            }
            let corr = (3.0 / 8.0 - 0.5) * (g[0] + g[m])
                + (7.0 / 6.0 - 1.0) * (g[1] + g[m - 1])
                + (23.0 / 24.0 - 1.0) * (g[2] + g[m - 2]);
            h * (trap + corr)
        })
        .collect()
}

/// `D(r_m)` for every ring `m`.
pub fn dirichlet_profile(f: &DiskField) -> Vec<f64> {
    cumulative_integral(&ring_energy_density(f), f.grid().h())
}

/// Energy over `B_r`, `r` snapped to the nearest ring.
pub fn dirichlet_energy(f: &DiskField, r: f64) -> Result<f64, FieldError> {
    if f.grid().n_r() < 4 {
        return Err(FieldError::GridTooCoarse);
    }
    let m = f.grid().ring_of(r);
    Ok(dirichlet_profile(f)[m])
}

/// `H` on ring `m`.
pub fn boundary_mass_ring(f: &DiskField, m: usize) -> f64 {
    let g = f.grid();
    let sum: f64 = (0..g.n_theta()).map(|j| dist_to_zero_sq(&f.value(m, j))).sum();
    sum * g.r(m) * g.dtheta()
}

/// `∫_{∂B_r} |f|²`, `r` snapped to the nearest ring.
pub fn boundary_mass(f: &DiskField, r: f64) -> f64 {
    boundary_mass_ring(f, f.grid().ring_of(r))
}

fn frequency_from(d: f64, h: f64, r: f64, ring: usize) -> Result<f64, FieldError> {
    if ring < MIN_FREQUENCY_RING {
        return Err(FieldError::GridTooCoarse);
    }
    if h <= DEFAULT_H_EPS {
        return Err(FieldError::ZeroBoundaryMass { r });
    }
    Ok(r * d / h)
}

/// `N(r) = r D(r) / H(r)` on the nearest ring.
pub fn frequency(f: &DiskField, r: f64) -> Result<f64, FieldError> {
    let m = f.grid().ring_of(r);
    let rm = f.grid().r(m);
    let d = dirichlet_profile(f)[m];
    frequency_from(d, boundary_mass_ring(f, m), rm, m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrequencyProfile {
    pub radii: Vec<f64>,
    pub d: Vec<f64>,
    pub h: Vec<f64>,
    pub n: Vec<f64>,
    /// Limit of `N` at the origin, extrapolated linearly in `r` from the two
    /// smallest radii.
    pub n0: f64,
    /// `max_i N(r_i) - N(r_{i+1})`; positive means `N` decreased somewhere.
    pub monotonicity_defect: f64,
}

impl FrequencyProfile {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "D", "H", "N"])?;
        for k in 0..self.radii.len() {
            w.write_record([
                self.radii[k].to_string(),
                self.d[k].to_string(),
                self.h[k].to_string(),
                self.n[k].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Evaluate `D`, `H`, `N` on each radius (snapped to rings) with one sweep.
pub fn frequency_profile(f: &DiskField, radii: &[f64]) -> Result<FrequencyProfile, FieldError> {
    if radii.is_empty() {
        return Err(FieldError::InvalidRadii("no radii".into()));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r <= 1.0)) || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FieldError::InvalidRadii("radii must be increasing within (0,1]".into()));
    }
    let grid = f.grid();
    let dprof = dirichlet_profile(f);
    let mut out = FrequencyProfile {
        radii: Vec::new(),
        d: Vec::new(),
        h: Vec::new(),
        n: Vec::new(),
        n0: 0.0,
        monotonicity_defect: 0.0,
    };
    for &r in radii {
        let m = grid.ring_of(r);
        let rm = grid.r(m);
        let h = boundary_mass_ring(f, m);
        let n = frequency_from(dprof[m], h, rm, m)?;
        out.radii.push(rm);
        out.d.push(dprof[m]);
        out.h.push(h);
        out.n.push(n);
    }
    out.n0 = if out.n.len() >= 2 && out.radii[1] > out.radii[0] {
        let (r1, r2, n1, n2) = (out.radii[0], out.radii[1], out.n[0], out.n[1]);
        n1 - r1 * (n2 - n1) / (r2 - r1)
    } else {
        out.n[0]
    };
    out.monotonicity_defect =
        out.n.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{sample_field, PolarGrid};
    use crate::homogeneous::{Continuation, FourTuple, HomogeneousPair};
    use crate::qcore::QPoint;
    use std::f64::consts::PI;

    fn grid() -> PolarGrid {
        PolarGrid::new(64, 256).unwrap()
    }

    fn id() -> FourTuple {
        FourTuple::new(1., 0., 0., 1.)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn doubled_z() {
        let f = sample_field(&HomogeneousPair::new(1.0, id(), id(), Continuation::Identity), grid());
        for &r in &[0.25, 0.5, 1.0] {
            assert!(rel(dirichlet_energy(&f, r).unwrap(), 4.0 * PI * r * r) < 0.02);
            assert!(rel(boundary_mass(&f, r), 4.0 * PI * r.powi(3)) < 0.01);
            assert!((frequency(&f, r).unwrap() - 1.0).abs() < 0.02);
        }
    }

    #[test]
    fn single_sheet_powers() {
        let d = 1.7;
        let t = FourTuple::new(d, 0., 0., d);
        for k in 1..=4 {
            let e = HomogeneousPair::new(k as f64, t, FourTuple::ZERO, Continuation::Identity);
            let f = sample_field(&e, grid());
            let r: f64 = 0.75;
            let kf = k as f64;
            assert!(rel(dirichlet_energy(&f, r).unwrap(), 2.0 * PI * d * d * kf * r.powf(2.0 * kf)) < 0.02);
            assert!(rel(boundary_mass(&f, r), 2.0 * PI * d * d * r.powf(2.0 * kf + 1.0)) < 0.01);
        }
    }

    #[test]
    fn constant_and_zero() {
        let f = DiskField::constant(grid(), QPoint::doubled(Vec2::new(1.0, 0.0)));
        assert!(dirichlet_energy(&f, 1.0).unwrap().abs() < 1e-12);
        let z = DiskField::constant(grid(), QPoint::zero());
        assert_eq!(boundary_mass(&z, 0.5), 0.0);
        assert!(matches!(frequency(&z, 0.5), Err(FieldError::ZeroBoundaryMass { .. })));
        assert!(matches!(frequency(&f, 2.0 / 64.0), Err(FieldError::GridTooCoarse)));
    }

    #[test]
    fn branched_three_halves() {
        let e = HomogeneousPair::new(1.5, id(), -id(), Continuation::Swap);
        let f = sample_field(&e, grid());
        assert!((frequency(&f, 0.5).unwrap() - 1.5).abs() < 0.02);
    }

    #[test]
    fn half_profile_is_flat() {
        let e = HomogeneousPair::new(0.5, id(), -id(), Continuation::Swap);
        let f = sample_field(&e, grid());
        let p = frequency_profile(&f, &[0.25, 0.5, 0.75, 1.0]).unwrap();
        for n in &p.n {
            assert!((n - 0.5).abs() < 0.02, "{n}");
        }
        assert!(p.monotonicity_defect <= 0.02);
        assert!((p.n0 - 0.5).abs() < 0.02);
    }

    #[test]
    fn branched_fields_near_origin() {
        for n in [0.5, 1.5] {
            let e = HomogeneousPair::new(n, id(), -id(), Continuation::Swap);
            let f = sample_field(&e, grid());
            assert!((frequency(&f, 8.0 / 64.0).unwrap() - n).abs() < 1e-4);
        }
    }

    #[test]
    fn stencils_differentiate_half_powers() {
        let n = 16;
        let col: Vec<Vec2> = (0..=n).map(|i| Vec2::new((i as f64 / n as f64).powf(1.5), 0.0)).collect();
        for (i, (base, w)) in radial_stencils(n).into_iter().enumerate().skip(1) {
            let d = w.iter().enumerate().fold(0.0, |a, (k, wk)| a + wk * col[base + k].x);
            assert!((d - 1.5 * (i as f64 / n as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn gregory_weights_integrate_cubics() {
        let h = 0.1;
        let g: Vec<f64> = (0..=10).map(|i| (i as f64 * h).powi(3)).collect();
        let c = cumulative_integral(&g, h);
        assert!((c[10] - 0.25).abs() < 1e-13);
        assert!((c[7] - 0.7f64.powi(4) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn profile_rejects_bad_radii() {
        let f = DiskField::constant(grid(), QPoint::zero());
        assert!(frequency_profile(&f, &[0.5, 0.25]).is_err());
        assert!(frequency_profile(&f, &[]).is_err());
        assert!(frequency_profile(&f, &[1.5]).is_err());
    }

    #[test]
    fn profile_csv() {
        let f = sample_field(&HomogeneousPair::new(1.0, id(), id(), Continuation::Identity), grid());
        let p = frequency_profile(&f, &[0.5, 1.0]).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("r,D,H,N\n0.5,"));
        assert_eq!(s.lines().count(), 3);
    }
}
