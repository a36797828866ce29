use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use crate::error::Result;

/// Presentation of the stationary inductive limit colim(Z^m -> Z^m -> ...)
/// along a fixed connecting matrix, with the Laurent variable t acting as the
/// shift of the colimit.
///
/// This is a presentation, not a classification: no isomorphism test between
/// two such modules is offered. Only canonical invariants are exposed: the
/// eventual rank, and for rank-one presentations the localization label.
#[derive(Clone, Debug, Serialize)]
pub struct StationaryLimitModule {
    pub base_rank: usize,
    pub action: IntMatrix,
    /// Rank over Q of action^base_rank; the rank of the limit group.
    pub eventual_rank: usize,
    /// Canonical description when base_rank == 1: "0", "Z" or "Z[1/n]".
    pub label: Option<String>,
    /// How t acts on the colimit in the rank-one case: the rational 1/n.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub t_action: Option<BigRational>,
}

fn serialize_opt_rational<S: serde::Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Builds the colimit presentation for a square connecting matrix.
///
/// For a 1x1 action (n): the colimit is 0 when n = 0, Z when n = +-1 (t acts
/// as n), and Z[1/n] when |n| >= 2 (t acts as 1/n).
pub fn stationary_limit(action: &IntMatrix) -> Result<StationaryLimitModule> {
    let m = action.require_square()?;
    let eventual_rank = if m == 0 { 0 } else { action.pow(m).rank() };
    let (label, t_action) = if m == 1 {
        let n = action[(0, 0)].clone();
        if n.is_zero() {
            (Some("0".to_string()), None)
        } else if n.abs().is_one() {
            (
                Some("Z".to_string()),
                Some(BigRational::from(n.clone()).recip()),
            )
        } else {
            (
                Some(format!("Z[1/{}]", n.abs())),
                Some(BigRational::new(BigInt::one(), n)),
            )
        }
    } else {
        (None, None)
    };
    Ok(StationaryLimitModule {
        base_rank: m,
        action: action.clone(),
        eventual_rank,
        label,
        t_action,
    })
}
