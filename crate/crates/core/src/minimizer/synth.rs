//! Seeded random band-limited boundary data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::lift::lift_boundary;
use super::trace::BoundaryTrace;
use crate::homogeneous::Continuation;
use crate::qcore::{QPoint, Vec2};

/// Options for [`random_trace`].
#[derive(Clone, Copy, Debug)]
pub struct SynthOptions {
    pub class: Continuation,
    /// Boundary samples (rays).
    pub n: usize,
    /// Highest mode index (frequency `m` or `m/2`).
    pub max_mode: usize,
    /// Include a nonzero constant mode.
    pub constant: bool,
    /// Minimum sheet separation; draws below it are rejected.
    pub min_separation: f64,
}

impl SynthOptions {
    pub fn new(class: Continuation, n: usize) -> Self {
        let max_mode = match class {
            Continuation::Identity => 4,
            Continuation::Swap => 7,
        };
        SynthOptions { class, n, max_mode, constant: false, min_separation: 0.2 }
    }
}

fn gauss<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn random_coeffs<R: Rng>(rng: &mut R, modes: usize) -> Vec<[Vec2; 2]> {
    (1..=modes)
        .map(|m| {
            let s = 1.0 / (m * m) as f64;
            [
                Vec2::new(s * gauss(rng), s * gauss(rng)),
                Vec2::new(s * gauss(rng), s * gauss(rng)),
            ]
        })
        .collect()
}

fn series(c0: Vec2, coeffs: &[[Vec2; 2]], freq: f64, angle: f64) -> Vec2 {
    coeffs.iter().enumerate().fold(c0, |acc, (k, c)| {
        let (s, co) = (freq * (k + 1) as f64 * angle).sin_cos();
        acc + co * c[0] + s * c[1]
    })
}

/// Random boundary data of the requested class, with mode coefficients
/// decaying like `1/m²`. Draws whose sheets come closer than
/// `min_separation` (or whose detected class differs) are rejected.
pub fn random_trace(opts: SynthOptions, seed: u64) -> BoundaryTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c0 = |rng: &mut ChaCha8Rng| {
            if opts.constant {
                Vec2::new(gauss(rng), gauss(rng))
            } else {
                Vec2::ZERO
            }
        };
        let trace = match opts.class {
            Continuation::Identity => {
                let (a0, b0) = (c0(&mut rng), c0(&mut rng));
                let a = random_coeffs(&mut rng, opts.max_mode);
                let b = random_coeffs(&mut rng, opts.max_mode);
                BoundaryTrace::from_fn(opts.n, |th| {
                    QPoint::new(series(a0, &a, 1.0, th), series(b0, &b, 1.0, th))
                })
            }
            Continuation::Swap => {
                let a0 = c0(&mut rng);
                let a = random_coeffs(&mut rng, opts.max_mode);
                BoundaryTrace::from_lifted(opts.n, |al| series(a0, &a, 0.5, al))
            }
        }
        .expect("valid sample count");
        if trace.separation() < opts.min_separation {
            continue;
        }
        if lift_boundary(&trace, opts.min_separation).map(|l| l.class) == Ok(opts.class) {
            return trace;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_classed() {
        for class in [Continuation::Identity, Continuation::Swap] {
            let o = SynthOptions::new(class, 64);
            let a = random_trace(o, 5);
            assert_eq!(a, random_trace(o, 5));
            assert_ne!(a, random_trace(o, 6));
            assert!(a.separation() >= 0.2);
            assert_eq!(lift_boundary(&a, 1e-6).unwrap().class, class);
        }
    }
}
