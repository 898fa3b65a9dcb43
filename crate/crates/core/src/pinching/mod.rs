//! Block equalization and synthesis of compressions inside a host operator.

mod compress;
mod host;
mod parker;
mod pinch;
mod walsh;

pub use compress::{
    faithful_budget, fast_budget, realize_contraction_compression, realize_diagonal_compression, realize_with_mass,
    walsh_level_for, MassRealization,
};
pub use host::POLYGON_ANGLES;
pub use parker::parker_equalize;
pub use pinch::{pinch, pinch_normal, pinch_with, MassBound, PinchMode, PinchOptions, PinchingCertificate};
pub use walsh::{choose_walsh_level, equalize_blocks, walsh_matrix, WalshPlan, MAX_WALSH_LEVEL};

pub(crate) use walsh::check_contraction;
