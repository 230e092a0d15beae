//! Seam matching: which frequencies let a pair of sheets close up across the
//! slit, and whether the averaged sheet is still conformal.
//!
//! Going once around the circle advances each sheet's phase by `ψ = 2πN`, so
//! `sheet(2π) = (a cosψ + b sinψ, c cosψ + d sinψ)` while `sheet(0) = (a, c)`.
//! The two continuations give four linear equations in `(cosψ, sinψ)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::forms::{classify_form, FormClass, FourTuple, Param, DEFAULT_FORM_TOL};
use super::HomogeneousError;

/// How the sheets reconnect when crossing the slit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Continuation {
    /// Each sheet continues into itself.
    Identity,
    /// Sheet 1 continues into sheet 2 and vice versa.
    Swap,
}

impl Continuation {
    /// Sheet reached after crossing the slit from sheet `s` (0 or 1).
    pub fn perm(self, s: usize) -> usize {
        match self {
            Continuation::Identity => s,
            Continuation::Swap => 1 - s,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Continuation::Identity => "identity",
            Continuation::Swap => "swap",
        }
    }
}

impl fmt::Display for Continuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Continuation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "identity" => Ok(Continuation::Identity),
            "swap" => Ok(Continuation::Swap),
            other => Err(format!("unknown continuation '{other}' (expected identity or swap)")),
        }
    }
}

/// Set of frequencies `N` for which the seam closes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrequencyClass {
    /// `N = k`, `k ≥ 1`.
    AllPositiveIntegers,
    /// `N = k/2`, `k` odd.
    OddHalfIntegers,
    /// `ψ` is pinned to a value that depends on the coefficients rather than
    /// to a multiple of `π`. Only mixed-orientation swaps land here, and
    /// those are always vetoed by the sum condition.
    ParameterDependent,
    /// No frequency closes the seam.
    #[serde(rename = "None")]
    NoSolution,
}

impl FrequencyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FrequencyClass::AllPositiveIntegers => "AllPositiveIntegers",
            FrequencyClass::OddHalfIntegers => "OddHalfIntegers",
            FrequencyClass::ParameterDependent => "ParameterDependent",
            FrequencyClass::NoSolution => "None",
        }
    }

    /// Whether `n` belongs to the class (`ParameterDependent` admits none
    /// that can be decided without the coefficients).
    pub fn contains(self, n: f64) -> bool {
        let k = 2.0 * n;
        let is_int = (k - k.round()).abs() < 1e-9 && k.round() >= 1.0;
        match self {
            FrequencyClass::AllPositiveIntegers => is_int && (k.round() as i64) % 2 == 0,
            FrequencyClass::OddHalfIntegers => is_int && (k.round() as i64) % 2 == 1,
            _ => false,
        }
    }
}

impl fmt::Display for FrequencyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relation forced between a parameter of the first sheet and the same
/// parameter of the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Negated,
    Equal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub param: Param,
    pub relation: Relation,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.param;
        match self.relation {
            Relation::Negated => write!(f, "{p}~=-{p}"),
            Relation::Equal => write!(f, "{p}~={p}"),
        }
    }
}

/// Join constraints as `c~=-c;l~=l`.
pub fn format_constraints(cs: &[Constraint]) -> String {
    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeamSolution {
    pub class: FrequencyClass,
    /// The solved `(cosψ, sinψ)` when the system pins it down.
    pub cos_sin: Option<(f64, f64)>,
    pub constraints: Vec<Constraint>,
}

impl SeamSolution {
    fn none() -> Self {
        SeamSolution { class: FrequencyClass::NoSolution, cos_sin: None, constraints: Vec::new() }
    }
}

/// Classification of the averaged tuple `t + t̃`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SumForm {
    Admissible(FormClass),
    NotAdmissible,
}

impl SumForm {
    pub fn is_admissible(&self) -> bool {
        matches!(self, SumForm::Admissible(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchOutcome {
    pub identity_class: FrequencyClass,
    pub swap_class: FrequencyClass,
    /// Relations forced by the odd-half swap solution, if any.
    pub constraints: Vec<Constraint>,
    pub sum_admissible: SumForm,
}

fn scale_of(t: FourTuple, t2: FourTuple) -> f64 {
    t.max_abs().max(t2.max_abs())
}

fn classify_pair(
    t: FourTuple,
    t2: FourTuple,
    tol: f64,
) -> Result<(FormClass, FormClass, f64), HomogeneousError> {
    let s = scale_of(t, t2);
    if s == 0.0 {
        return Err(HomogeneousError::DegeneratePair);
    }
    let f1 = classify_form(t.scale(1.0 / s), tol);
    let f2 = classify_form(t2.scale(1.0 / s), tol);
    if !f1.is_conformal() || !f2.is_conformal() {
        return Err(HomogeneousError::NotConformal);
    }
    if f1 == FormClass::F7 && f2 == FormClass::F7 {
        return Err(HomogeneousError::DegeneratePair);
    }
    Ok((f1, f2, s))
}

/// Rows `[cos coefficient, sin coefficient, rhs]` of the seam equations.
fn seam_rows(t: FourTuple, t2: FourTuple, cont: Continuation) -> [[f64; 3]; 4] {
    let (tgt1, tgt2) = match cont {
        Continuation::Identity => (t, t2),
        Continuation::Swap => (t2, t),
    };
    [
        [t.a, t.b, tgt1.a],
        [t.c, t.d, tgt1.c],
        [t2.a, t2.b, tgt2.a],
        [t2.c, t2.d, tgt2.c],
    ]
}

fn residual(rows: &[[f64; 3]; 4], x: f64, y: f64) -> f64 {
    rows.iter().map(|r| (r[0] * x + r[1] * y - r[2]).abs()).fold(0.0, f64::max)
}

fn solve_unit(rows: &[[f64; 3]; 4], tol: f64) -> Option<(f64, f64)> {
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..4 {
        for j in i + 1..4 {
            let det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
            if best.is_none_or(|(b, _, _)| det.abs() > b) {
                best = Some((det.abs(), i, j));
            }
        }
    }
    let (det, i, j) = best.expect("four rows");
    if det > tol {
        let (r, q) = (rows[i], rows[j]);
        let d = r[0] * q[1] - r[1] * q[0];
        let x = (r[2] * q[1] - r[1] * q[2]) / d;
        let y = (r[0] * q[2] - r[2] * q[0]) / d;
        let unit = (x * x + y * y - 1.0).abs() <= tol.sqrt();
        if unit && residual(rows, x, y) <= tol.sqrt() {
            return Some((x, y));
        }
        return None;
    }
    // Rank-deficient systems: only the two real roots of unity can occur.
    [(1.0, 0.0), (-1.0, 0.0)]
        .into_iter()
        .find(|&(x, y)| residual(rows, x, y) <= tol.sqrt())
}

fn forced_relations(f1: &FormClass, f2: &FormClass, tol: f64) -> Vec<Constraint> {
    let Some(tag) = f1.tag() else { return Vec::new() };
    if f2.tag() != Some(tag) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &p in tag.params() {
        let (x, y) = (f1.param(p).unwrap(), f2.param(p).unwrap());
        let s = x.abs().max(y.abs()).max(1.0);
        if (x + y).abs() <= tol.sqrt() * s {
            out.push(Constraint { param: p, relation: Relation::Negated });
        } else if (x - y).abs() <= tol.sqrt() * s {
            out.push(Constraint { param: p, relation: Relation::Equal });
        }
    }
    out
}

/// Solve the seam equations for one continuation.
///
/// Under `Swap`, `ψ ≡ 0` means the two sheets coincide; that configuration
/// is the doubled sheet and is reported as `NoSolution` here.
pub fn seam_solutions(
    t: FourTuple,
    t2: FourTuple,
    cont: Continuation,
    tol: f64,
) -> Result<SeamSolution, HomogeneousError> {
    let (f1, f2, s) = classify_pair(t, t2, tol)?;
    let rows = seam_rows(t.scale(1.0 / s), t2.scale(1.0 / s), cont);
    let Some((x, y)) = solve_unit(&rows, tol) else {
        return Ok(SeamSolution::none());
    };
    let near = |u: f64, v: f64| (x - u).abs() <= tol.sqrt() && (y - v).abs() <= tol.sqrt();
    let (class, constraints) = match cont {
        Continuation::Identity if near(1.0, 0.0) => (FrequencyClass::AllPositiveIntegers, Vec::new()),
        Continuation::Swap if near(-1.0, 0.0) => {
            (FrequencyClass::OddHalfIntegers, forced_relations(&f1, &f2, tol))
        }
        Continuation::Swap if near(1.0, 0.0) => return Ok(SeamSolution::none()),
        _ => (FrequencyClass::ParameterDependent, Vec::new()),
    };
    Ok(SeamSolution { class, cos_sin: Some((x, y)), constraints })
}

/// Classify the componentwise sum, with tolerance relative to the inputs.
pub fn sum_form_admissible(t: FourTuple, t2: FourTuple, tol: f64) -> SumForm {
    let s = scale_of(t, t2);
    if s == 0.0 {
        return SumForm::Admissible(FormClass::F7);
    }
    match classify_form((t + t2).scale(1.0 / s), tol) {
        FormClass::NotConformal => SumForm::NotAdmissible,
        fc => SumForm::Admissible(fc.scaled(s)),
    }
}

/// Full matching analysis of a pair of sheets at the default tolerance.
pub fn match_pair(t: FourTuple, t2: FourTuple) -> Result<MatchOutcome, HomogeneousError> {
    match_pair_tol(t, t2, DEFAULT_FORM_TOL)
}

pub fn match_pair_tol(
    t: FourTuple,
    t2: FourTuple,
    tol: f64,
) -> Result<MatchOutcome, HomogeneousError> {
    classify_pair(t, t2, tol)?;
    let sum = sum_form_admissible(t, t2, tol);
    if !sum.is_admissible() {
        return Ok(MatchOutcome {
            identity_class: FrequencyClass::NoSolution,
            swap_class: FrequencyClass::NoSolution,
            constraints: Vec::new(),
            sum_admissible: sum,
        });
    }
    let id = seam_solutions(t, t2, Continuation::Identity, tol)?;
    let sw = seam_solutions(t, t2, Continuation::Swap, tol)?;
    Ok(MatchOutcome {
        identity_class: id.class,
        swap_class: sw.class,
        constraints: sw.constraints,
        sum_admissible: sum,
    })
}
