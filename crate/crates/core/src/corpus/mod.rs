//! Example systems, exhaustive enumeration of small systems, and the
//! translates of the signed harmonic set by multiples of `π`.

mod enumerate;
mod named;
mod sieben;

pub use enumerate::{enumerate_systems, enumerate_systems_capped, labeled_systems, DEFAULT_CAP};
pub use named::{lattice_id, named_system, NamedSystem};
pub use sieben::{
    density_ladder, harmonic, intersect_unions, pi_enclosure, sieben_density_gap,
    sieben_disjointness, DensityLadder, DisjointnessReport, GapReport, PiRational, SiebenSet,
};
