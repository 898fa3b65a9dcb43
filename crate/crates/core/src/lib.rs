//! Compressions and pinchings of finite matrices, with certificates.
//!
//! Numerical ranges are sampled by support-function sweeps. On top of that
//! sit dilations of contractions and the synthesis of target matrices as
//! compressions of a host, or jointly as diagonal blocks of one host
//! compression.

pub mod dilation;
pub mod error;
pub mod essrange;
pub mod linalg;
pub mod numrange;
pub mod pinching;
pub mod random;

pub use error::{Error, Result};
pub use linalg::{compress, orthonormal_complement, ComplexMatrix, Frame, Tolerances, C64};
