//! Homogeneous degree-`N` sheets: conformal forms, seam matching and the
//! admissible catalog.

mod catalog;
mod forms;
mod seam;
mod table;

pub use catalog::{enumerate_entries, parity_consistent, random_form, HomogeneousPair};
pub use forms::{
    classify_form, conformal_defect, sheet_eval, sheet_gradient, Chirality, FormClass, FormTag,
    FourTuple, Param, DEFAULT_FORM_TOL,
};
pub use seam::{
    format_constraints, match_pair, match_pair_tol, seam_solutions, sum_form_admissible,
    Constraint, Continuation, FrequencyClass, MatchOutcome, Relation, SeamSolution, SumForm,
};
pub use table::{
    build_match_table, forms_with, is_sum_inadmissible, read_table_csv, table_to_json,
    write_table_csv, MatchTableRow, Partner, RowClass, TableRecord, SUM_INADMISSIBLE,
    ZERO_FUNCTION,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HomogeneousError {
    #[error("both sheets vanish identically")]
    DegeneratePair,
    #[error("tuple is not conformal")]
    NotConformal,
    #[error("invalid entry: {0}")]
    InvalidEntry(String),
}
