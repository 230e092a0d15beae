//! Frequency function analytics for 2-valued Dirichlet minimizers on the
//! planar unit disk.

pub mod blowup;
pub mod cli;
pub mod field;
pub mod homogeneous;
pub mod minimizer;
pub mod qcore;
