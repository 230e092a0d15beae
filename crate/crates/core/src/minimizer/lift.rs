//! Continuous selections of boundary data and the resulting topological class.

use super::trace::BoundaryTrace;
use super::MinimizerError;
use crate::homogeneous::Continuation;
use crate::qcore::{QPoint, Vec2};

/// Boundary data split into continuous loops.
///
/// `Identity`: two loops of `n` samples over `[0, 2π)`.
/// `Swap`: one loop of `2n` samples over `[0, 4π)`; its first half is sheet 1
/// and its second half sheet 2 on the slit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryLift {
    pub class: Continuation,
    pub loops: Vec<Vec<Vec2>>,
}

impl BoundaryLift {
    /// Number of samples per `2π`.
    pub fn n(&self) -> usize {
        match self.class {
            Continuation::Identity => self.loops[0].len(),
            Continuation::Swap => self.loops[0].len() / 2,
        }
    }

    /// Boundary values of the two slit-disk sheets.
    pub fn sheets(&self) -> [Vec<Vec2>; 2] {
        match self.class {
            Continuation::Identity => [self.loops[0].clone(), self.loops[1].clone()],
            Continuation::Swap => {
                let n = self.n();
                [self.loops[0][..n].to_vec(), self.loops[0][n..].to_vec()]
            }
        }
    }
}

fn keeps_order(cur: (Vec2, Vec2), next: &QPoint) -> bool {
    let direct = (cur.0 - next.p1).norm_sq() + (cur.1 - next.p2).norm_sq();
    let crossed = (cur.0 - next.p2).norm_sq() + (cur.1 - next.p1).norm_sq();
    direct <= crossed
}

/// Maximal cyclic runs of samples whose values are closer than `sep_tol`.
pub fn collision_clusters(trace: &BoundaryTrace, sep_tol: f64) -> Vec<Vec<usize>> {
    let n = trace.len();
    let hit: Vec<bool> = trace.points().iter().map(|p| (p.p1 - p.p2).norm() < sep_tol).collect();
    let Some(start) = (0..n).find(|&j| !hit[j]) else {
        return vec![(0..n).collect()];
    };
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut run: Vec<usize> = Vec::new();
    for k in 1..=n {
        let j = (start + k) % n;
        if hit[j] {
            run.push(j);
        } else if !run.is_empty() {
            out.push(std::mem::take(&mut run));
        }
    }
    out
}

/// Track the nearest continuation from the best-separated sample, flipping the
/// pairing right after the samples listed in `flip_after`.
fn track(trace: &BoundaryTrace, flip_after: &[usize]) -> BoundaryLift {
    let pts = trace.points();
    let n = pts.len();
    let js = (0..n)
        .max_by(|&a, &b| {
            let sa = (pts[a].p1 - pts[a].p2).norm();
            let sb = (pts[b].p1 - pts[b].p2).norm();
            sa.total_cmp(&sb)
        })
        .expect("nonempty trace");
    let mut a = vec![Vec2::ZERO; n];
    let mut b = vec![Vec2::ZERO; n];
    let mut cur = (pts[js].p1, pts[js].p2);
    a[js] = cur.0;
    b[js] = cur.1;
    for k in 1..=n {
        let j = (js + k) % n;
        let prev = (js + k - 1) % n;
        let mut keep = keeps_order(cur, &pts[j]);
        if flip_after.contains(&prev) {
            keep = !keep;
        }
        cur = if keep { (pts[j].p1, pts[j].p2) } else { (pts[j].p2, pts[j].p1) };
        if k < n {
            a[j] = cur.0;
            b[j] = cur.1;
        }
    }
    // Back at the starting sample: `cur` is the continuation of sheet A.
    // Loops are normalized so that the first one starts at `p1(0)`.
    if cur.0 == a[js] && cur.1 == b[js] {
        if a[0] != pts[0].p1 {
            std::mem::swap(&mut a, &mut b);
        }
        BoundaryLift { class: Continuation::Identity, loops: vec![a, b] }
    } else {
        let mut lp = Vec::with_capacity(2 * n);
        for j in 0..n {
            lp.push(if j < js { a[j] } else { b[j] });
        }
        for j in 0..n {
            lp.push(if j < js { b[j] } else { a[j] });
        }
        if lp[0] != pts[0].p1 {
            lp.rotate_left(n);
        }
        BoundaryLift { class: Continuation::Swap, loops: vec![lp] }
    }
}

/// Detect the class of well-separated data.
pub fn lift_boundary(trace: &BoundaryTrace, sep_tol: f64) -> Result<BoundaryLift, MinimizerError> {
    if trace.separation() < sep_tol {
        return Err(MinimizerError::AmbiguousClass);
    }
    Ok(track(trace, &[]))
}

/// The canonical lifts of possibly colliding data.
///
/// Separated data has exactly one lift. Data that collides everywhere is the
/// doubled loop. A single collision run admits two splittings (the sheets
/// cross or bounce there), one of each class. More runs are ambiguous.
pub fn canonical_lifts(
    trace: &BoundaryTrace,
    sep_tol: f64,
) -> Result<Vec<BoundaryLift>, MinimizerError> {
    let clusters = collision_clusters(trace, sep_tol);
    match clusters.len() {
        0 => Ok(vec![track(trace, &[])]),
        1 if clusters[0].len() == trace.len() => {
            let loop1: Vec<Vec2> = trace.points().iter().map(|p| p.p1).collect();
            Ok(vec![BoundaryLift { class: Continuation::Identity, loops: vec![loop1.clone(), loop1] }])
        }
        1 => {
            let last = *clusters[0].last().unwrap();
            Ok(vec![track(trace, &[]), track(trace, &[last])])
        }
        _ => Err(MinimizerError::AmbiguousClass),
    }
}

/// A lift in the requested class. Separated data must already be in that
/// class; colliding data is split so that it is.
pub fn lift_in_class(
    trace: &BoundaryTrace,
    sep_tol: f64,
    class: Continuation,
) -> Result<BoundaryLift, MinimizerError> {
    let clusters = collision_clusters(trace, sep_tol);
    if clusters.len() == 1 && clusters[0].len() == trace.len() {
        return canonical_lifts(trace, sep_tol).map(|mut v| v.remove(0)).and_then(|l| {
            if l.class == class {
                Ok(l)
            } else {
                Err(MinimizerError::ClassMismatch { requested: class, detected: l.class })
            }
        });
    }
    let natural = track(trace, &[]);
    if natural.class == class {
        return Ok(natural);
    }
    match clusters.first() {
        Some(c) => Ok(track(trace, &[*c.last().unwrap()])),
        None => Err(MinimizerError::ClassMismatch { requested: class, detected: natural.class }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn half_root_is_swap() {
        let t = BoundaryTrace::from_lifted(64, |a| Vec2::polar(0.5 * a)).unwrap();
        let l = lift_boundary(&t, 1e-6).unwrap();
        assert_eq!(l.class, Continuation::Swap);
        assert_eq!(l.loops.len(), 1);
        assert_eq!(l.loops[0].len(), 128);
        for (k, v) in l.loops[0].iter().enumerate() {
            let a = TAU * k as f64 / 64.0;
            assert!((*v - Vec2::polar(0.5 * a)).norm() < 1e-12);
        }
    }

    #[test]
    fn opposite_loops_are_identity() {
        let t = BoundaryTrace::from_fn(32, |th| QPoint::new(Vec2::polar(th), -Vec2::polar(th))).unwrap();
        let l = lift_boundary(&t, 1e-6).unwrap();
        assert_eq!(l.class, Continuation::Identity);
        assert_eq!(l.loops[0][5], Vec2::polar(TAU * 5.0 / 32.0));
    }

    #[test]
    fn collisions() {
        let t = BoundaryTrace::from_fn(32, |th| QPoint::new(Vec2::new(th.sin(), 0.0), Vec2::ZERO)).unwrap();
        assert_eq!(lift_boundary(&t, 1e-6), Err(MinimizerError::AmbiguousClass));
        assert_eq!(collision_clusters(&t, 1e-6).len(), 2);
        assert_eq!(canonical_lifts(&t, 1e-6), Err(MinimizerError::AmbiguousClass));

        // A single touching point: both classes are available.
        let t = BoundaryTrace::from_fn(32, |th| {
            QPoint::new(Vec2::new(1.0 - th.cos(), 0.0), Vec2::new(th.cos() - 1.0, 0.0))
        })
        .unwrap();
        let lifts = canonical_lifts(&t, 1e-6).unwrap();
        assert_eq!(lifts.len(), 2);
        assert_ne!(lifts[0].class, lifts[1].class);
        assert_eq!(lift_in_class(&t, 1e-6, Continuation::Swap).unwrap().class, Continuation::Swap);

        let c = BoundaryTrace::from_fn(16, |_| QPoint::doubled(Vec2::new(1.0, 2.0))).unwrap();
        let l = canonical_lifts(&c, 1e-6).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].class, Continuation::Identity);
    }
}
