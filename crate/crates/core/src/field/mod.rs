//! 2-valued functions on a polar grid of the unit disk and their frequency
//! analytics.

mod analysis;
mod disk;
mod energy;
mod grid;
mod io;

pub use analysis::{branch_report, energy_decay_check, holder_fit, seam_defect, BranchReport, Node};
pub use disk::{sample_field, DiskField};
pub use energy::{
    boundary_mass, boundary_mass_ring, cumulative_integral, dirichlet_energy, dirichlet_profile,
    frequency, frequency_profile, ring_energy_density, FrequencyProfile, DEFAULT_H_EPS,
    MIN_FREQUENCY_RING,
};
pub use grid::PolarGrid;
pub use io::{field_header, read_field_csv, write_field_csv, FieldHeader};

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid too coarse for the requested radius")]
    GridTooCoarse,
    #[error("boundary mass vanishes at r = {r}")]
    ZeroBoundaryMass { r: f64 },
    #[error("field is constant on the sampled pairs")]
    DegenerateField,
    #[error("invalid radii: {0}")]
    InvalidRadii(String),
    #[error("malformed field data: {0}")]
    Format(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PartialEq for FieldError {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}
