//! Concrete homogeneous candidates and the seeded catalog of admissible ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::forms::{sheet_eval, FormClass, FormTag, FourTuple, DEFAULT_FORM_TOL};
use super::seam::{match_pair_tol, Continuation, FrequencyClass};
use super::HomogeneousError;
use crate::qcore::{pair_distance, QPoint};

/// `g(r, θ) = [[r^N g₁(θ)]] + [[r^N g₂(θ)]]` with the given seam.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousPair {
    #[serde(rename = "N")]
    pub n: f64,
    pub t1: FourTuple,
    pub t2: FourTuple,
    pub continuation: Continuation,
}

impl HomogeneousPair {
    pub fn new(n: f64, t1: FourTuple, t2: FourTuple, continuation: Continuation) -> Self {
        HomogeneousPair { n, t1, t2, continuation }
    }

    /// Unordered value at polar point `(r, θ)`, `θ ∈ [0, 2π]` on the slit disk.
    pub fn eval(&self, r: f64, theta: f64) -> QPoint {
        QPoint::new(sheet_eval(self.t1, self.n, r, theta), sheet_eval(self.t2, self.n, r, theta))
    }

    /// `2N` when it is a positive integer.
    pub fn twice_n(&self) -> Option<u32> {
        let k = 2.0 * self.n;
        ((k - k.round()).abs() < 1e-9 && k.round() >= 1.0).then(|| k.round() as u32)
    }

    /// Mismatch between the values at `θ = 2π` and `θ = 0` on the ring `r`.
    pub fn seam_gap(&self, r: f64) -> f64 {
        pair_distance(&self.eval(r, 2.0 * std::f64::consts::PI), &self.eval(r, 0.0))
    }

    /// Check the entry against [`match_pair_tol`]: the sum must be admissible
    /// and `N` must lie in the frequency class of its continuation.
    pub fn validate(&self, tol: f64) -> Result<(), HomogeneousError> {
        let m = match_pair_tol(self.t1, self.t2, tol)?;
        let class = match self.continuation {
            Continuation::Identity => m.identity_class,
            Continuation::Swap => m.swap_class,
        };
        if class.contains(self.n) {
            Ok(())
        } else {
            Err(HomogeneousError::InvalidEntry(format!(
                "N={} not in {class} for {} continuation",
                self.n, self.continuation
            )))
        }
    }
}

fn draw_param<R: Rng>(rng: &mut R) -> f64 {
    let m = rng.gen_range(0.1..=2.0);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// Random instance of a form with parameters in `[-2,-0.1] ∪ [0.1,2]`.
pub fn random_form<R: Rng>(tag: FormTag, rng: &mut R) -> FormClass {
    match tag {
        FormTag::F1 => FormClass::F1 { d: draw_param(rng) },
        FormTag::F2 => FormClass::F2 { d: draw_param(rng) },
        FormTag::F3 => FormClass::F3 { b: draw_param(rng) },
        FormTag::F4 => FormClass::F4 { b: draw_param(rng) },
        FormTag::F5 => FormClass::F5 { l: draw_param(rng), c: draw_param(rng) },
        FormTag::F6 => FormClass::F6 { l: draw_param(rng), c: draw_param(rng) },
        FormTag::F7 => FormClass::F7,
    }
}

fn tuple(fc: FormClass) -> FourTuple {
    fc.to_tuple().expect("conformal form")
}

/// Admissible entries for `k = 1..=k_max`, `N = k/2`.
///
/// Odd `k`: one swap entry per nonzero form, second sheet the negated first.
/// Even `k`: an identity entry for every unordered same-orientation pair
/// (including pairs with F7), then one doubled sheet per nonzero form.
pub fn enumerate_entries(k_max: u32, seed: u64) -> Vec<HomogeneousPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 1..=k_max {
        let n = k as f64 / 2.0;
        if k % 2 == 1 {
            for &tag in &FormTag::ALL[..6] {
                let t = tuple(random_form(tag, &mut rng));
                out.push(HomogeneousPair::new(n, t, -t, Continuation::Swap));
            }
            continue;
        }
        for (a, &i) in FormTag::ALL.iter().enumerate() {
            for &j in &FormTag::ALL[a..] {
                let admissible_pair = match (i.chirality(), j.chirality()) {
                    (Some(x), Some(y)) => x == y,
                    (None, None) => false,
                    _ => true,
                };
                if !admissible_pair {
                    continue;
                }
                let t1 = tuple(random_form(i, &mut rng));
                let t2 = tuple(random_form(j, &mut rng));
                out.push(HomogeneousPair::new(n, t1, t2, Continuation::Identity));
            }
        }
        for &tag in &FormTag::ALL[..6] {
            let t = tuple(random_form(tag, &mut rng));
            out.push(HomogeneousPair::new(n, t, t, Continuation::Identity));
        }
    }
    debug_assert!(out.iter().all(|e| e.validate(DEFAULT_FORM_TOL).is_ok()));
    out
}

/// Swap entries must carry odd `2N`; identity entries even `2N`.
pub fn parity_consistent(e: &HomogeneousPair) -> bool {
    match (e.twice_n(), e.continuation) {
        (Some(k), Continuation::Swap) => FrequencyClass::OddHalfIntegers.contains(k as f64 / 2.0),
        (Some(k), Continuation::Identity) => {
            FrequencyClass::AllPositiveIntegers.contains(k as f64 / 2.0)
        }
        (None, _) => false,
    }
}
