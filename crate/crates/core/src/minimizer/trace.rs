use std::f64::consts::TAU;
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::MinimizerError;
use crate::qcore::{QPoint, Vec2};

/// Default minimum sheet separation for automatic class detection.
pub const DEFAULT_SEP_TOL: f64 = 1e-6;

/// One record of a boundary trace file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub theta: f64,
    pub p1: Vec2,
    pub p2: Vec2,
}

/// Samples of 2-valued boundary data at `θ_j = 2πj/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryTrace {
    points: Vec<QPoint>,
}

impl BoundaryTrace {
    pub fn new(points: Vec<QPoint>) -> Result<Self, MinimizerError> {
        if points.len() < 8 || !points.len().is_multiple_of(2) {
            return Err(MinimizerError::InvalidTrace(format!(
                "{} samples; need an even count of at least 8",
                points.len()
            )));
        }
        if points.iter().any(|p| ![p.p1.x, p.p1.y, p.p2.x, p.p2.y].iter().all(|v| v.is_finite())) {
            return Err(MinimizerError::InvalidTrace("non-finite sample".into()));
        }
        Ok(BoundaryTrace { points })
    }

    /// Sample `f(θ)` at `n` uniform angles.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> QPoint) -> Result<Self, MinimizerError> {
        BoundaryTrace::new((0..n).map(|j| f(TAU * j as f64 / n as f64)).collect())
    }

    /// Branched data from a loop `α ↦ L(α)` of period `4π`: the two values at
    /// `θ` are `L(θ)` and `L(θ + 2π)`.
    pub fn from_lifted(n: usize, lift: impl Fn(f64) -> Vec2) -> Result<Self, MinimizerError> {
        BoundaryTrace::from_fn(n, |th| QPoint::new(lift(th), lift(th + TAU)))
    }

    /// Validate angles (uniform, starting at 0) and build the trace.
    pub fn from_samples(samples: &[TraceSample]) -> Result<Self, MinimizerError> {
        let n = samples.len();
        for (j, s) in samples.iter().enumerate() {
            let expect = TAU * j as f64 / n.max(1) as f64;
            if (s.theta - expect).abs() > 1e-9 * TAU.max(expect) {
                return Err(MinimizerError::InvalidTrace(format!(
                    "sample {j} at theta={} but uniform spacing requires {expect}",
                    s.theta
                )));
            }
        }
        BoundaryTrace::new(samples.iter().map(|s| QPoint::new(s.p1, s.p2)).collect())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self, MinimizerError> {
        let samples: Vec<TraceSample> = serde_json::from_reader(input)?;
        BoundaryTrace::from_samples(&samples)
    }

    pub fn to_samples(&self) -> Vec<TraceSample> {
        self.points
            .iter()
            .enumerate()
            .map(|(j, p)| TraceSample { theta: self.theta(j), p1: p.p1, p2: p.p2 })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.points.len() as f64
    }

    pub fn points(&self) -> &[QPoint] {
        &self.points
    }

    /// `min_j |p1 - p2|`.
    pub fn separation(&self) -> f64 {
        self.points.iter().map(|p| (p.p1 - p.p2).norm()).fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let t = BoundaryTrace::from_lifted(16, |a| Vec2::polar(0.5 * a)).unwrap();
        let js = serde_json::to_string(&t.to_samples()).unwrap();
        assert!(js.starts_with(r#"[{"theta":0.0,"p1":[1.0,0.0],"p2":[-1.0,"#));
        let back = BoundaryTrace::read_json(js.as_bytes()).unwrap();
        assert_eq!(back, t);
        assert!((t.separation() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_spacing() {
        let mut s = BoundaryTrace::from_lifted(16, |a| Vec2::polar(0.5 * a)).unwrap().to_samples();
        s[3].theta += 0.01;
        assert!(BoundaryTrace::from_samples(&s).is_err());
        assert!(BoundaryTrace::new(vec![QPoint::zero(); 7]).is_err());
        assert!(BoundaryTrace::read_json("not json".as_bytes()).is_err());
    }
}
