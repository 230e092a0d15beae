//! Coefficient tuples of homogeneous sheets and their conformal forms.
//!
//! A degree-`N` sheet is `r^N (a cos Nθ + b sin Nθ, c cos Nθ + d sin Nθ)`.
//! It is conformal exactly when `a²+c²-b²-d² = 0` and `ab+cd = 0`, and the
//! solutions fall into seven parametric families:
//!
//! | tag | tuple `(a,b,c,d)`   | side conditions |
//! |-----|---------------------|-----------------|
//! | F1  | `(d, 0, 0, d)`      | `d ≠ 0`         |
//! | F2  | `(-d, 0, 0, d)`     | `d ≠ 0`         |
//! | F3  | `(0, b, b, 0)`      | `b ≠ 0`         |
//! | F4  | `(0, b, -b, 0)`     | `b ≠ 0`         |
//! | F5  | `(lc, -c, c, lc)`   | `l ≠ 0, c ≠ 0`  |
//! | F6  | `(lc, c, c, -lc)`   | `l ≠ 0, c ≠ 0`  |
//! | F7  | `(0, 0, 0, 0)`      |                 |
//!
//! F1, F4, F5 are multiples of `z^N` (holomorphic), F2, F3, F6 multiples of
//! `conj(z)^N`.

use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Serialize};

use crate::qcore::Vec2;

/// Default absolute tolerance on both conformality defects.
pub const DEFAULT_FORM_TOL: f64 = 1e-9;

/// Coefficients `(a, b, c, d)` of a homogeneous sheet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourTuple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl FourTuple {
    pub const ZERO: FourTuple = FourTuple::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        FourTuple { a, b, c, d }
    }

    pub fn scale(self, s: f64) -> Self {
        FourTuple::new(s * self.a, s * self.b, s * self.c, s * self.d)
    }

    pub fn max_abs(self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn as_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Value of the sheet on the slit at `θ = 0`, i.e. `(a, c)`.
    pub fn start_value(self) -> Vec2 {
        Vec2::new(self.a, self.c)
    }

    /// Coefficients of the same sheet with its angle advanced by `psi`, so that
    /// `sheet(θ + ψ/N)` is the sheet of the returned tuple at `θ`.
    pub fn phase_shift(self, psi: f64) -> Self {
        let (s, c) = psi.sin_cos();
        FourTuple::new(
            self.a * c + self.b * s,
            self.b * c - self.a * s,
            self.c * c + self.d * s,
            self.d * c - self.c * s,
        )
    }
}

impl Add for FourTuple {
    type Output = FourTuple;
    fn add(self, o: FourTuple) -> FourTuple {
        FourTuple::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Neg for FourTuple {
    type Output = FourTuple;
    fn neg(self) -> FourTuple {
        self.scale(-1.0)
    }
}

impl From<[f64; 4]> for FourTuple {
    fn from(v: [f64; 4]) -> Self {
        FourTuple::new(v[0], v[1], v[2], v[3])
    }
}

/// Orientation of a nonzero conformal sheet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    /// `α z^N`
    Holomorphic,
    /// `β conj(z)^N`
    Antiholomorphic,
}

/// The seven conformal families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormTag {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
}

impl FormTag {
    pub const ALL: [FormTag; 7] = [
        FormTag::F1,
        FormTag::F2,
        FormTag::F3,
        FormTag::F4,
        FormTag::F5,
        FormTag::F6,
        FormTag::F7,
    ];

    /// 1-based index of the family.
    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn from_index(i: usize) -> Option<FormTag> {
        FormTag::ALL.get(i.checked_sub(1)?).copied()
    }

    pub fn chirality(self) -> Option<Chirality> {
        match self {
            FormTag::F1 | FormTag::F4 | FormTag::F5 => Some(Chirality::Holomorphic),
            FormTag::F2 | FormTag::F3 | FormTag::F6 => Some(Chirality::Antiholomorphic),
            FormTag::F7 => None,
        }
    }

    /// Free parameters of the family, in reporting order.
    pub fn params(self) -> &'static [Param] {
        match self {
            FormTag::F1 | FormTag::F2 => &[Param::D],
            FormTag::F3 | FormTag::F4 => &[Param::B],
            FormTag::F5 | FormTag::F6 => &[Param::C, Param::L],
            FormTag::F7 => &[],
        }
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.index())
    }
}

/// Named free parameter of a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    B,
    C,
    D,
    L,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Param::B => "b",
            Param::C => "c",
            Param::D => "d",
            Param::L => "l",
        };
        f.write_str(s)
    }
}

/// Result of classifying a tuple into one of the seven forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FormClass {
    F1 { d: f64 },
    F2 { d: f64 },
    F3 { b: f64 },
    F4 { b: f64 },
    F5 { l: f64, c: f64 },
    F6 { l: f64, c: f64 },
    F7,
    NotConformal,
}

impl FormClass {
    pub fn tag(&self) -> Option<FormTag> {
        Some(match self {
            FormClass::F1 { .. } => FormTag::F1,
            FormClass::F2 { .. } => FormTag::F2,
            FormClass::F3 { .. } => FormTag::F3,
            FormClass::F4 { .. } => FormTag::F4,
            FormClass::F5 { .. } => FormTag::F5,
            FormClass::F6 { .. } => FormTag::F6,
            FormClass::F7 => FormTag::F7,
            FormClass::NotConformal => return None,
        })
    }

    pub fn is_conformal(&self) -> bool {
        !matches!(self, FormClass::NotConformal)
    }

    /// Value of a named parameter, when the form carries it.
    pub fn param(&self, p: Param) -> Option<f64> {
        match (*self, p) {
            (FormClass::F1 { d } | FormClass::F2 { d }, Param::D) => Some(d),
            (FormClass::F3 { b } | FormClass::F4 { b }, Param::B) => Some(b),
            (FormClass::F5 { c, .. } | FormClass::F6 { c, .. }, Param::C) => Some(c),
            (FormClass::F5 { l, .. } | FormClass::F6 { l, .. }, Param::L) => Some(l),
            _ => None,
        }
    }

    /// Rebuild the coefficient tuple. `NotConformal` has no tuple.
    pub fn to_tuple(&self) -> Option<FourTuple> {
        Some(match *self {
            FormClass::F1 { d } => FourTuple::new(d, 0.0, 0.0, d),
            FormClass::F2 { d } => FourTuple::new(-d, 0.0, 0.0, d),
            FormClass::F3 { b } => FourTuple::new(0.0, b, b, 0.0),
            FormClass::F4 { b } => FourTuple::new(0.0, b, -b, 0.0),
            FormClass::F5 { l, c } => FourTuple::new(l * c, -c, c, l * c),
            FormClass::F6 { l, c } => FourTuple::new(l * c, c, c, -l * c),
            FormClass::F7 => FourTuple::ZERO,
            FormClass::NotConformal => return None,
        })
    }

    /// Same form with the tuple scaled by `s` (the ratio `l` is unchanged).
    pub fn scaled(&self, s: f64) -> FormClass {
        match *self {
            FormClass::F1 { d } => FormClass::F1 { d: s * d },
            FormClass::F2 { d } => FormClass::F2 { d: s * d },
            FormClass::F3 { b } => FormClass::F3 { b: s * b },
            FormClass::F4 { b } => FormClass::F4 { b: s * b },
            FormClass::F5 { l, c } => FormClass::F5 { l, c: s * c },
            FormClass::F6 { l, c } => FormClass::F6 { l, c: s * c },
            other => other,
        }
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormClass::F1 { d } => write!(f, "F1(d={d})"),
            FormClass::F2 { d } => write!(f, "F2(d={d})"),
            FormClass::F3 { b } => write!(f, "F3(b={b})"),
            FormClass::F4 { b } => write!(f, "F4(b={b})"),
            FormClass::F5 { l, c } => write!(f, "F5(l={l}, c={c})"),
            FormClass::F6 { l, c } => write!(f, "F6(l={l}, c={c})"),
            FormClass::F7 => f.write_str("F7"),
            FormClass::NotConformal => f.write_str("NotConformal"),
        }
    }
}

/// The two conformality defects `(a²+c²-b²-d², ab+cd)`.
pub fn conformal_defect(t: FourTuple) -> (f64, f64) {
    let FourTuple { a, b, c, d } = t;
    (a * a + c * c - b * b - d * d, a * b + c * d)
}

/// Classify `t` into one of the seven forms.
///
/// `tol` bounds both defects and decides which components count as zero;
/// `tol = 0` is exact classification. Tuples on the boundary of a family are
/// tagged with the lower-parameter family (F5 with `l = 0` is F4, and so on).
pub fn classify_form(t: FourTuple, tol: f64) -> FormClass {
    let (e1, e2) = conformal_defect(t);
    if e1.abs() > tol || e2.abs() > tol {
        return FormClass::NotConformal;
    }
    let FourTuple { a, b, c, d } = t;
    let zero = |x: f64| x.abs() <= tol;
    if zero(a) && zero(b) && zero(c) && zero(d) {
        return FormClass::F7;
    }
    // Equal norms and orthogonal columns leave (b, d) = ±rot90(a, c).
    let holo = (a - d).abs() + (b + c).abs();
    let anti = (a + d).abs() + (b - c).abs();
    debug_assert!(
        !(holo <= 2.0 * tol && anti <= 2.0 * tol),
        "tuple {t:?} fits both orientations"
    );
    if holo <= anti {
        let re = 0.5 * (a + d);
        let im = 0.5 * (c - b);
        if zero(im) {
            FormClass::F1 { d: re }
        } else if zero(re) {
            FormClass::F4 { b: -im }
        } else {
            FormClass::F5 { l: re / im, c: im }
        }
    } else {
        let re = 0.5 * (a - d);
        let im = 0.5 * (b + c);
        if zero(im) {
            FormClass::F2 { d: -re }
        } else if zero(re) {
            FormClass::F3 { b: im }
        } else {
            FormClass::F6 { l: re / im, c: im }
        }
    }
}

/// `r^N (a cos Nθ + b sin Nθ, c cos Nθ + d sin Nθ)`.
pub fn sheet_eval(t: FourTuple, n: f64, r: f64, theta: f64) -> Vec2 {
    let rn = if r == 0.0 { 0.0 } else { r.powf(n) };
    let (s, c) = (n * theta).sin_cos();
    Vec2::new(rn * (t.a * c + t.b * s), rn * (t.c * c + t.d * s))
}

/// Cartesian Jacobian `[[∂f1/∂x, ∂f1/∂y], [∂f2/∂x, ∂f2/∂y]]` of the sheet at
/// polar point `(r, θ)`, `r > 0`.
pub fn sheet_gradient(t: FourTuple, n: f64, r: f64, theta: f64) -> [[f64; 2]; 2] {
    let phi = (n - 1.0) * theta;
    let (s, c) = phi.sin_cos();
    let k = n * r.powf(n - 1.0);
    [
        [k * (t.a * c + t.b * s), k * (t.b * c - t.a * s)],
        [k * (t.c * c + t.d * s), k * (t.d * c - t.c * s)],
    ]
}
