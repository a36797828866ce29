//! Exact arbitrary-precision integer linear algebra: Smith normal forms,
//! kernels and cokernels, exterior powers, stationary inductive limits and
//! certified Perron-Frobenius enclosures. No floating point anywhere.

pub mod abelian;
pub mod interval;
pub mod matrix;
pub mod perron;
pub mod smith;
pub mod stationary;
pub mod transcend;

pub use abelian::{abelian_group_of, AbelianGroup};
pub use interval::RationalInterval;
pub use matrix::IntMatrix;
pub use perron::{is_primitive, perron_bounds, perron_vector_intervals, strongly_connected};
pub use smith::{smith_normal_form, SmithDecomposition};
pub use stationary::{stationary_limit, StationaryLimitModule};

use num_traits::Signed;

use crate::error::Result;

/// Sylvester's criterion, computed exactly: a symmetric integer matrix is
/// positive definite iff every leading principal minor is strictly positive.
pub fn positive_definite(m: &IntMatrix) -> Result<bool> {
    m.require_square()?;
    if !m.is_symmetric() {
        return Err(crate::error::Error::NotSymmetric);
    }
    Ok(m
        .leading_principal_minors()?
        .iter()
        .all(|d| d.is_positive()))
}

/// Exterior power as a standalone operation (lexicographic minor order).
pub fn exterior_power(m: &IntMatrix, j: usize) -> Result<IntMatrix> {
    m.exterior_power(j)
}
