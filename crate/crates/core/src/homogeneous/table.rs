//! The complete matching table over form pairs, derived symbolically.
//!
//! Each nonzero form is `α z^N` or `β conj(z)^N` with the complex coefficient
//! confined to a line: real (F1, F2), imaginary (F4, F3) or generic with
//! ratio `l` (F5, F6). Those two facts decide every row:
//!
//! * the sum `t + t̃` is conformal unless one sheet is holomorphic and the
//!   other antiholomorphic (a sum `α z^N + β conj(z)^N` with both nonzero is
//!   not conformal);
//! * the identity seam forces `e^{iψ} = 1` since nonzero coefficient matrices
//!   are invertible;
//! * the swap seam of two same-orientation sheets forces `e^{2iψ} = 1`; the
//!   root `e^{iψ} = 1` makes the sheets coincide, and `e^{iψ} = -1` needs
//!   `α̃ = -α`, which keeps `α̃` on the line of `α` only when both sheets have
//!   the same form.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::forms::{Chirality, FormTag, Param};
use super::seam::{format_constraints, Constraint, Continuation, FrequencyClass, Relation};

/// Constraint text for rows vetoed by the sum condition.
pub const SUM_INADMISSIBLE: &str = "sum_inadmissible";
/// Constraint text for the excluded identically-zero pair.
pub const ZERO_FUNCTION: &str = "zero_function";

/// Second column of a table row: another form, or the doubled sheet `2[[g₁]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Partner {
    Form(FormTag),
    Doubled,
}

impl fmt::Display for Partner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Partner::Form(t) => write!(f, "{t}"),
            Partner::Doubled => f.write_str("doubled"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowClass {
    Class(FrequencyClass),
    /// The pair is the zero function and is not a candidate.
    Excluded,
}

impl fmt::Display for RowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowClass::Class(c) => write!(f, "{c}"),
            RowClass::Excluded => f.write_str("Excluded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchTableRow {
    pub form_i: FormTag,
    pub form_j: Partner,
    pub continuation: Continuation,
    pub class: RowClass,
    pub sum_admissible: bool,
    pub constraints: Vec<Constraint>,
}

impl MatchTableRow {
    pub fn constraint_text(&self) -> String {
        match self.class {
            RowClass::Excluded => ZERO_FUNCTION.to_string(),
            _ if !self.sum_admissible => SUM_INADMISSIBLE.to_string(),
            _ => format_constraints(&self.constraints),
        }
    }

    pub fn to_record(&self) -> TableRecord {
        TableRecord {
            form_i: self.form_i.to_string(),
            form_j: self.form_j.to_string(),
            continuation: self.continuation.to_string(),
            frequency_class: self.class.to_string(),
            constraints: self.constraint_text(),
        }
    }
}

/// Flat string form of a row, shared by the CSV and JSON exports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub form_i: String,
    pub form_j: String,
    pub continuation: String,
    pub frequency_class: String,
    pub constraints: String,
}

fn sum_admissible(i: FormTag, j: FormTag) -> bool {
    match (i.chirality(), j.chirality()) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    }
}

fn swap_relations(tag: FormTag) -> Vec<Constraint> {
    tag.params()
        .iter()
        .map(|&param| Constraint {
            param,
            relation: if param == Param::L { Relation::Equal } else { Relation::Negated },
        })
        .collect()
}

fn swap_class(i: FormTag, j: FormTag) -> (FrequencyClass, Vec<Constraint>) {
    match (i.chirality(), j.chirality()) {
        (None, _) | (_, None) => (FrequencyClass::NoSolution, Vec::new()),
        (Some(x), Some(y)) if x != y => (FrequencyClass::ParameterDependent, Vec::new()),
        _ if i == j => (FrequencyClass::OddHalfIntegers, swap_relations(i)),
        _ => (FrequencyClass::NoSolution, Vec::new()),
    }
}

/// Rows for all 28 unordered form pairs under both continuations, followed by
/// the six doubled single-form rows.
pub fn build_match_table() -> Vec<MatchTableRow> {
    let mut rows = Vec::with_capacity(62);
    for (n, &i) in FormTag::ALL.iter().enumerate() {
        for &j in &FormTag::ALL[n..] {
            for cont in [Continuation::Identity, Continuation::Swap] {
                rows.push(pair_row(i, j, cont));
            }
        }
    }
    for &i in &FormTag::ALL[..6] {
        rows.push(MatchTableRow {
            form_i: i,
            form_j: Partner::Doubled,
            continuation: Continuation::Identity,
            class: RowClass::Class(FrequencyClass::AllPositiveIntegers),
            sum_admissible: true,
            constraints: Vec::new(),
        });
    }
    rows
}

fn pair_row(i: FormTag, j: FormTag, cont: Continuation) -> MatchTableRow {
    let mut row = MatchTableRow {
        form_i: i,
        form_j: Partner::Form(j),
        continuation: cont,
        class: RowClass::Class(FrequencyClass::NoSolution),
        sum_admissible: sum_admissible(i, j),
        constraints: Vec::new(),
    };
    if i == FormTag::F7 && j == FormTag::F7 {
        row.class = RowClass::Excluded;
        return row;
    }
    if !row.sum_admissible {
        return row;
    }
    let (class, constraints) = match cont {
        Continuation::Identity => (FrequencyClass::AllPositiveIntegers, Vec::new()),
        Continuation::Swap => swap_class(i, j),
    };
    row.class = RowClass::Class(class);
    row.constraints = constraints;
    row
}

/// Whether the pair `(i, j)` (in either order) is vetoed by the sum condition.
pub fn is_sum_inadmissible(i: FormTag, j: FormTag) -> bool {
    !sum_admissible(i, j)
}

/// Forms of the given orientation, in tag order.
pub fn forms_with(ch: Chirality) -> Vec<FormTag> {
    FormTag::ALL.into_iter().filter(|t| t.chirality() == Some(ch)).collect()
}

pub fn write_table_csv<W: Write>(rows: &[MatchTableRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r.to_record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_table_csv<R: std::io::Read>(input: R) -> Result<Vec<TableRecord>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn table_to_json(rows: &[MatchTableRow]) -> serde_json::Value {
    serde_json::to_value(rows.iter().map(|r| r.to_record()).collect::<Vec<_>>())
        .expect("records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let t = build_match_table();
        assert_eq!(t.len(), 28 * 2 + 6);
        let inadmissible: Vec<_> = t
            .iter()
            .filter(|r| r.continuation == Continuation::Identity && !r.sum_admissible)
            .map(|r| (r.form_i.index(), match r.form_j { Partner::Form(f) => f.index(), _ => 0 }))
            .collect();
        assert_eq!(
            inadmissible,
            vec![(1, 2), (1, 3), (1, 6), (2, 4), (2, 5), (3, 4), (3, 5), (4, 6), (5, 6)]
        );
    }

    #[test]
    fn named_rows() {
        let t = build_match_table();
        let find = |i: FormTag, j: Partner, c: Continuation| {
            t.iter().find(|r| r.form_i == i && r.form_j == j && r.continuation == c).unwrap()
        };
        let r = find(FormTag::F1, Partner::Form(FormTag::F2), Continuation::Identity);
        assert_eq!(r.constraint_text(), SUM_INADMISSIBLE);
        let r = find(FormTag::F7, Partner::Form(FormTag::F7), Continuation::Swap);
        assert_eq!(r.class, RowClass::Excluded);
        let r = find(FormTag::F3, Partner::Doubled, Continuation::Identity);
        assert_eq!(r.class, RowClass::Class(FrequencyClass::AllPositiveIntegers));
        let r = find(FormTag::F6, Partner::Form(FormTag::F6), Continuation::Swap);
        assert_eq!(r.to_record().constraints, "c~=-c;l~=l");
    }

    #[test]
    fn orientation_split() {
        assert_eq!(forms_with(Chirality::Holomorphic), vec![FormTag::F1, FormTag::F4, FormTag::F5]);
    }

    #[test]
    fn csv_round_trip() {
        let t = build_match_table();
        let mut buf = Vec::new();
        write_table_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("form_i,form_j,continuation,frequency_class,constraints\n"));
        let back = read_table_csv(&buf[..]).unwrap();
        let recs: Vec<_> = t.iter().map(|r| r.to_record()).collect();
        assert_eq!(back, recs);
        let js = table_to_json(&t);
        let from_js: Vec<TableRecord> = serde_json::from_value(js).unwrap();
        assert_eq!(from_js, recs);
    }
}
