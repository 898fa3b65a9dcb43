//! Numerical ranges: support-function sweeps, disc certificates, value
//! realization, Schur-Horn feasibility and covering perturbations.

pub mod geometry;
mod hull;
mod perturb;
mod realize;
mod schur_horn;

pub use hull::{
    contains_disc, numerical_range_hull, support_point, BoundarySample, DiscCertificate, RangeHull,
    DEFAULT_DISC_ANGLES,
};
pub use perturb::perturb_to_cover;
pub use realize::{default_interior_margin, realize_value};
pub use schur_horn::{schur_horn_feasible, MajorizationWitness, SchurHornVerdict};

pub(crate) use realize::{polish, realize_from_samples, realize_on_segment};
