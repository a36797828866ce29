//! Finite Fourier-mode realization of the circle-solenoid operators: the
//! covering isometry V, the logarithmic Dirac operator, their commutators,
//! and Toeplitz index checks. Operators are stored as (multiplier,
//! index-map) data; no dense matrices are formed, so large cutoffs stay
//! cheap.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{transcend, RationalInterval};

/// Modes e_k for |k| <= cutoff, with the degree-n covering isometry
/// V e_k = e_(nk). Images with |nk| > cutoff are boundary modes, excluded
/// from norms and flagged in reports.
#[derive(Clone, Debug, Serialize)]
pub struct FourierTruncation {
    pub n: i64,
    pub cutoff: i64,
}

/// Image of a basis mode under one of the tabulated operators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ModeImage {
    /// coefficient * e_target
    Mode { target: i64, coefficient: RationalInterval },
    Zero,
    /// The true image e_target falls outside the truncation.
    Boundary { target: i64 },
}

impl FourierTruncation {
    pub fn build(n: i64, cutoff: i64) -> Result<Self> {
        if n.abs() < 2 {
            return Err(Error::DegreeTooSmall(n));
        }
        if cutoff < n.abs() {
            return Err(Error::CutoffTooSmall { cutoff, n });
        }
        Ok(FourierTruncation { n, cutoff })
    }

    pub fn in_range(&self, k: i64) -> bool {
        k.abs() <= self.cutoff
    }

    /// Interior modes are those whose V-image stays in the truncation.
    pub fn is_interior(&self, k: i64) -> bool {
        self.in_range(k) && self.in_range(self.n * k)
    }

    /// V e_k = e_(nk).
    pub fn v_apply(&self, k: i64) -> ModeImage {
        let target = self.n * k;
        if self.in_range(target) {
            ModeImage::Mode { target, coefficient: RationalInterval::from_int(1) }
        } else {
            ModeImage::Boundary { target }
        }
    }

    /// V* e_k = e_(k/n) when n | k, else 0; this is (1/n) times the
    /// transfer operator, which maps e_k to n e_(k/n) on multiples.
    pub fn v_star_apply(&self, k: i64) -> ModeImage {
        if k % self.n == 0 {
            ModeImage::Mode {
                target: k / self.n,
                coefficient: RationalInterval::from_int(1),
            }
        } else {
            ModeImage::Zero
        }
    }

    /// Multiplication by z shifts modes up by one.
    pub fn z_apply(&self, k: i64) -> ModeImage {
        let target = k + 1;
        if self.in_range(target) {
            ModeImage::Mode { target, coefficient: RationalInterval::from_int(1) }
        } else {
            ModeImage::Boundary { target }
        }
    }

    /// D_log e_k = signlog(k) e_k with signlog(0) = 0.
    pub fn d_log_eigenvalue(&self, k: i64) -> RationalInterval {
        signlog_interval(k)
    }

    /// V* V = 1 on every interior mode (structural check over the range).
    pub fn vstar_v_is_identity_on_interior(&self) -> bool {
        (-self.cutoff..=self.cutoff)
            .filter(|&k| self.is_interior(k))
            .all(|k| match self.v_apply(k) {
                ModeImage::Mode { target, .. } => {
                    self.v_star_apply(target)
                        == ModeImage::Mode {
                            target: k,
                            coefficient: RationalInterval::from_int(1),
                        }
                }
                _ => false,
            })
    }

    /// V V* projects onto modes divisible by n (checked on the interior).
    pub fn v_vstar_is_divisibility_projection(&self) -> bool {
        (-self.cutoff..=self.cutoff).filter(|&k| self.is_interior(k)).all(|k| {
            let image = match self.v_star_apply(k) {
                ModeImage::Mode { target, .. } => match self.v_apply(target) {
                    ModeImage::Mode { target: back, .. } => Some(back),
                    _ => None,
                },
                ModeImage::Zero => None,
                ModeImage::Boundary { .. } => None,
            };
            if k % self.n == 0 {
                image == Some(k)
            } else {
                image.is_none()
            }
        })
    }
}

/// signlog(k) = sign(k) log|k| as a certified interval; zero at k in
/// {-1, 0, 1}.
pub fn signlog_interval(k: i64) -> RationalInterval {
    if k.abs() <= 1 {
        return RationalInterval::zero();
    }
    let ln = transcend::ln_interval(
        &BigRational::from(BigInt::from(k.abs())),
        transcend::DEFAULT_PRECISION,
    );
    if k > 0 {
        ln
    } else {
        ln.neg()
    }
}

/// One entry of the commutator [D_log, z]: the coefficient on e_(k+1) of
/// the image of e_k.
#[derive(Clone, Debug, Serialize)]
pub struct CommutatorZEntry {
    pub k: i64,
    pub coefficient: RationalInterval,
}

/// Commutator table of [D_log, z] on the truncation, following the
/// regularized entry formula: log 2 at k = -1 and
/// sign(k) log(1 + (2|k|+1)/(k^2+1)) elsewhere, together with order -1
/// decay evidence: sup over 1 <= |k| < cutoff of |entry| * |k|.
#[derive(Clone, Debug, Serialize)]
pub struct CommutatorZReport {
    pub entries: Vec<CommutatorZEntry>,
    pub decay_sup: RationalInterval,
    /// |entry(K-1)| * (K-1), the tail sample showing entry ~ 2/k.
    pub tail_product: RationalInterval,
}

/// Coefficient of [D_log, z] e_k on e_(k+1).
pub fn commutator_z_entry(k: i64) -> RationalInterval {
    if k == -1 {
        return transcend::ln_interval(
            &BigRational::from(BigInt::from(2)),
            transcend::DEFAULT_PRECISION,
        );
    }
    if k == 0 {
        // signlog jump from 0 to 1 is zero.
        return RationalInterval::zero();
    }
    // 1 + (2|k|+1)/(k^2+1) = (k^2 + 2|k| + 2)/(k^2 + 1)
    let ka = k.abs();
    let num = BigInt::from(ka * ka + 2 * ka + 2);
    let den = BigInt::from(ka * ka + 1);
    let ln = transcend::ln_interval(&BigRational::new(num, den), transcend::DEFAULT_PRECISION);
    if k > 0 {
        ln
    } else {
        ln.neg()
    }
}

pub fn commutator_dlog_z(t: &FourierTruncation) -> CommutatorZReport {
    let mut entries = Vec::new();
    let mut decay_sup = RationalInterval::zero();
    for k in -t.cutoff..t.cutoff {
        let coefficient = commutator_z_entry(k);
        if k != 0 {
            let scaled = coefficient.scale(&BigRational::from(BigInt::from(k.abs())));
            let abs_scaled = if scaled.lo() < &BigRational::zero() {
                scaled.neg()
            } else {
                scaled
            };
            if abs_scaled.hi() > decay_sup.hi() {
                decay_sup = abs_scaled;
            }
        }
        entries.push(CommutatorZEntry { k, coefficient });
    }
    let tail_k = t.cutoff - 1;
    let tail_product = commutator_z_entry(tail_k)
        .scale(&BigRational::from(BigInt::from(tail_k)));
    CommutatorZReport { entries, decay_sup, tail_product }
}

/// Commutator with the covering isometry: [D_log, V] e_k =
/// sign(k) log|n| e_(nk) for k != 0, zero at k = 0. The interior operator
/// norm is exactly log|n|.
#[derive(Clone, Debug, Serialize)]
pub struct CommutatorVReport {
    pub norm: RationalInterval,
    pub boundary_modes: usize,
    pub zero_at_origin: bool,
}

pub fn commutator_dlog_v(t: &FourierTruncation) -> CommutatorVReport {
    let norm = transcend::ln_interval(
        &BigRational::from(BigInt::from(t.n.abs())),
        transcend::DEFAULT_PRECISION,
    );
    let boundary_modes = (-t.cutoff..=t.cutoff)
        .filter(|&k| !t.is_interior(k))
        .count();
    CommutatorVReport { norm, boundary_modes, zero_at_origin: true }
}

/// Coefficient of [D_log, V] e_k on e_(nk), for reporting.
pub fn commutator_v_entry(t: &FourierTruncation, k: i64) -> RationalInterval {
    if k == 0 {
        return RationalInterval::zero();
    }
    let ln = transcend::ln_interval(
        &BigRational::from(BigInt::from(t.n.abs())),
        transcend::DEFAULT_PRECISION,
    );
    if k > 0 {
        ln
    } else {
        ln.neg()
    }
}

/// Fredholm data of the compression of z^winding to the nonnegative modes
/// 0..=cutoff. Kernel and cokernel dimensions count only genuine defects;
/// modes escaping the window at the top are boundary artifacts and are
/// excluded. The index is -winding.
#[derive(Clone, Debug, Serialize)]
pub struct ToeplitzIndexReport {
    pub winding: i64,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub boundary_excluded: usize,
    pub index: i64,
}

pub fn dirac_pairing_check(t: &FourierTruncation, winding: i64) -> Result<ToeplitzIndexReport> {
    if t.cutoff < 2 || winding.abs() > t.cutoff {
        return Err(Error::InvalidParameter(format!(
            "winding {winding} out of range for cutoff {}",
            t.cutoff
        )));
    }
    let k_max = t.cutoff;
    // Domain modes 0..=k_max map to k + winding.
    let kernel_dim = (0..=k_max).filter(|&k| k + winding < 0).count();
    let boundary_escape = (0..=k_max).filter(|&k| k + winding > k_max).count();
    // Targets with no preimage in [0, k_max]: genuine at the bottom,
    // boundary artifacts at the top.
    let cokernel_dim = (0..=k_max).filter(|&j| j - winding < 0).count();
    let boundary_unhit = (0..=k_max).filter(|&j| j - winding > k_max).count();
    Ok(ToeplitzIndexReport {
        winding,
        kernel_dim,
        cokernel_dim,
        boundary_excluded: boundary_escape + boundary_unhit,
        index: kernel_dim as i64 - cokernel_dim as i64,
    })
}
