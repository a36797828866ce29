//! Exact invariants of expanding dynamical systems presented three ways:
//! subshifts of finite type, integer torus dilations, and contracting
//! self-similar groups. The crate computes the K-theory of the associated
//! operator algebras, the spectral data of the shift-tail groupoid, and the
//! KMS equilibrium structure, with certified arithmetic throughout: exact
//! integers and rationals everywhere, and interval enclosures with directed
//! rounding wherever a logarithm or exponential appears.

// Index-based loops over matrix entries read better than iterator chains
// in the dense-linear-algebra code below.
#![allow(clippy::needless_range_loop)]

pub mod circle;
pub mod error;
pub mod groupoid;
pub mod kms;
pub mod linalg;
pub mod oracles;
pub mod presets;
pub mod selfsimilar;
pub mod sft;
pub mod torus;

pub use error::{Error, Result};
pub use linalg::{
    abelian_group_of, exterior_power, perron_bounds, perron_vector_intervals, positive_definite,
    smith_normal_form, stationary_limit, AbelianGroup, IntMatrix, RationalInterval,
    SmithDecomposition, StationaryLimitModule,
};
pub use sft::{CylinderMeasure, EventuallyPeriodicWord, RecurrenceClass, SftSystem};
