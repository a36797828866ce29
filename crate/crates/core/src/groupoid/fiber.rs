//! Localization of the groupoid module in a single one-sided point: the
//! discrete fiber carrying the diagonal operator whose eigenvalues are
//! psi(j, kappa), together with heat-trace and summability evidence for
//! theta-summability of the induced spectral triple.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::{kappa, psi};
use crate::error::{Error, Result};
use crate::linalg::{transcend, RationalInterval};
use crate::sft::{EventuallyPeriodicWord, SftSystem};

/// One point of the localized fiber: an unstable-set point with a pure
/// periodic past (the rotated anchor cycle), a finite middle, and a forward
/// tail locked to the localization point, together with its lag, grade
/// kappa_z and diagonal eigenvalue psi(j, kappa_z).
#[derive(Clone, Debug, Serialize)]
pub struct FiberPoint {
    /// Rotation of the anchor cycle forming the two-sided past (the sheet
    /// label of the covering).
    pub left_tail: Vec<usize>,
    /// The one-sided word seen from position zero: middle glued onto a
    /// shift of the localization point.
    pub word: EventuallyPeriodicWord,
    pub middle_len: usize,
    pub j: i64,
    pub kappa_z: usize,
    pub eigenvalue: i64,
}

/// The enumerated slice of the fiber over the localization point.
#[derive(Clone, Debug, Serialize)]
pub struct LocalizedFiber {
    pub window: usize,
    pub points: Vec<FiberPoint>,
}

impl LocalizedFiber {
    /// Eigenvalues with multiplicities, ascending.
    pub fn spectrum(&self) -> Vec<(i64, usize)> {
        let mut merged = std::collections::BTreeMap::new();
        for p in &self.points {
            *merged.entry(p.eigenvalue).or_insert(0usize) += 1;
        }
        merged.into_iter().collect()
    }

    /// Certified heat trace sum exp(-t lambda^2) over the enumerated
    /// eigenvalues, for each positive rational sample point t.
    pub fn heat_trace(&self, samples: &[BigRational]) -> Result<Vec<(BigRational, RationalInterval)>> {
        let spectrum = self.spectrum();
        samples
            .iter()
            .map(|t| {
                if !t.is_positive() {
                    return Err(Error::InvalidParameter(
                        "heat trace sample points must be positive".into(),
                    ));
                }
                let mut acc = RationalInterval::zero();
                for &(ev, mult) in &spectrum {
                    let lam2 = BigRational::from(BigInt::from(ev) * BigInt::from(ev));
                    let term = transcend::exp_interval(&(-t * lam2), 64);
                    acc = acc.add(&term.scale(&BigRational::from(BigInt::from(mult as i64))));
                }
                Ok((t.clone(), acc.compress(96)))
            })
            .collect()
    }

    /// Certified summability profile sum (1 + lambda^2)^(-s/2) for each
    /// rational sample exponent s.
    pub fn summability_profile(
        &self,
        exponents: &[BigRational],
    ) -> Result<Vec<(BigRational, RationalInterval)>> {
        let spectrum = self.spectrum();
        exponents
            .iter()
            .map(|s| {
                let mut acc = RationalInterval::zero();
                let exponent = -s / BigRational::from(BigInt::from(2));
                for &(ev, mult) in &spectrum {
                    let base =
                        BigRational::from(BigInt::from(1) + BigInt::from(ev) * BigInt::from(ev));
                    let term = transcend::pow_interval(&base, &exponent, 64);
                    acc = acc.add(&term.scale(&BigRational::from(BigInt::from(mult as i64))));
                }
                Ok((s.clone(), acc.compress(96)))
            })
            .collect()
    }
}

/// Enumerates the fiber over `v`: points whose past runs through a rotation
/// of the anchor orbit (with an admissible junction), whose forward word is
/// a finite middle of length <= window glued onto a shift of `v`, and whose
/// lag satisfies |j| <= window.
pub fn localized_fiber(
    system: &SftSystem,
    anchor: &EventuallyPeriodicWord,
    v: &EventuallyPeriodicWord,
    window: usize,
) -> Result<LocalizedFiber> {
    match system.recurrence_class() {
        crate::sft::RecurrenceClass::Mixing => {}
        other => return Err(Error::NotMixing(format!("{other:?}"))),
    }
    if !anchor.is_purely_periodic() {
        return Err(Error::InvalidParameter(
            "anchor must be purely periodic".into(),
        ));
    }
    system.word(Vec::new(), anchor.cycle().to_vec())?;
    if v.prefix().iter().chain(v.cycle()).any(|&s| s >= system.dim()) {
        return Err(Error::UnknownSymbol(format!("{v:?}")));
    }

    // Candidate one-sided words: middles glued onto every distinct shift of
    // the localization point. Distinct (middle, shift) data can describe
    // the same sequence, and equal sequences are the same fiber point, so
    // deduplicate through the word normal form keeping the shortest middle.
    let mut words: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
    let shift_classes = v.prefix().len() + v.cycle().len();
    for t in 0..shift_classes {
        let tail = v.shift_by(t);
        for len in 0..=window {
            for u in system.admissible_words(len) {
                if let Some(&last) = u.last() {
                    if !system.is_allowed(last, tail.at(0)) {
                        continue;
                    }
                }
                let x = tail.prepend(&u);
                let key = (x.prefix().to_vec(), x.cycle().to_vec());
                words
                    .entry(key)
                    .and_modify(|m| *m = (*m).min(u.len()))
                    .or_insert(u.len());
            }
        }
    }

    // Sheet labels: rotations of the anchor cycle whose final letter can
    // feed the word's first letter.
    let period = anchor.cycle().len();
    let rotations: Vec<Vec<usize>> = (0..period)
        .map(|r| {
            let mut c = anchor.cycle().to_vec();
            c.rotate_left(r);
            c
        })
        .collect();

    let mut points = Vec::new();
    let w = window as i64;
    for ((prefix, cycle), middle_len) in words {
        let x = EventuallyPeriodicWord::new(prefix, cycle);
        for j in -w..=w {
            let Some(k) = kappa(system, &x, j, v)? else {
                continue;
            };
            for rot in &rotations {
                // The two-sided past ends with the rotated cycle's last
                // letter; the junction into the visible word must be
                // admissible.
                if !system.is_allowed(*rot.last().unwrap(), x.at(0)) {
                    continue;
                }
                points.push(FiberPoint {
                    left_tail: rot.clone(),
                    word: x.clone(),
                    middle_len,
                    j,
                    kappa_z: k,
                    eigenvalue: psi(j, k),
                });
            }
        }
    }
    Ok(LocalizedFiber { window, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn full2() -> SftSystem {
        SftSystem::from_rows(&[&[1, 1], &[1, 1]]).unwrap()
    }

    fn golden() -> SftSystem {
        SftSystem::from_rows(&[&[1, 1], &[1, 0]]).unwrap()
    }

    fn zeros() -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::periodic(vec![0])
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn anchor_point_present_with_eigenvalue_zero() {
        let f = localized_fiber(&full2(), &zeros(), &zeros(), 1).unwrap();
        assert!(f
            .points
            .iter()
            .any(|p| p.word == zeros() && p.j == 0 && p.eigenvalue == 0));
    }

    #[test]
    fn inserted_middle_gets_negative_eigenvalue() {
        let f = localized_fiber(&full2(), &zeros(), &zeros(), 2).unwrap();
        // x = 1 0^inf at lag 0: sigma(x) = 0^inf so kappa = 1, psi = -1.
        let x = EventuallyPeriodicWord::new(vec![1], vec![0]);
        let p = f
            .points
            .iter()
            .find(|p| p.word == x && p.j == 0)
            .expect("point with middle 1 must appear");
        assert_eq!(p.kappa_z, 1);
        assert_eq!(p.eigenvalue, -1);
    }

    #[test]
    fn zero_kappa_points_have_nonnegative_eigenvalue_j() {
        let f = localized_fiber(&full2(), &zeros(), &zeros(), 2).unwrap();
        for p in &f.points {
            if p.kappa_z == 0 {
                assert!(p.j >= 0);
                assert_eq!(p.eigenvalue, p.j);
            }
        }
    }

    #[test]
    fn fiber_over_a_different_point_is_nonempty() {
        // The projection is a covering: localizing away from the anchor
        // tail still has points, with forward tails locked to v.
        let sys = full2();
        let v = sys.word(vec![], vec![0, 1]).unwrap();
        let f = localized_fiber(&sys, &zeros(), &v, 2).unwrap();
        assert!(!f.points.is_empty());
        // Every point's word is shift-tail equivalent to v.
        for p in &f.points {
            assert!(
                kappa(&sys, &p.word, p.j, &v).unwrap().is_some(),
                "point {p:?} not equivalent to v"
            );
        }
        // The point v itself appears at lag 0 with eigenvalue 0.
        assert!(f
            .points
            .iter()
            .any(|p| p.word == v && p.j == 0 && p.eigenvalue == 0));
    }

    #[test]
    fn period_two_anchor_labels_sheets() {
        // Golden mean, anchor (01)^inf: two rotations, but only the one
        // ending in a letter that can feed the word's start is a valid
        // sheet for each point.
        let sys = golden();
        let anchor = sys.word(vec![], vec![0, 1]).unwrap();
        let f = localized_fiber(&sys, &anchor, &zeros(), 1).unwrap();
        assert!(!f.points.is_empty());
        for p in &f.points {
            let last = *p.left_tail.last().unwrap();
            assert!(sys.is_allowed(last, p.word.at(0)), "junction must hold");
        }
        // The word 0^inf admits both pasts ...0101 and ...1010 (1 -> 0 and
        // 0 -> 0 are both allowed), so the zero word at lag 0 carries two
        // sheets.
        let sheets = f
            .points
            .iter()
            .filter(|p| p.word == zeros() && p.j == 0)
            .count();
        assert_eq!(sheets, 2);
    }

    #[test]
    fn heat_trace_decreases_in_t_and_converges_in_window() {
        let sys = full2();
        let samples = vec![rat(1, 2), rat(1, 1), rat(2, 1)];
        let f2 = localized_fiber(&sys, &zeros(), &zeros(), 2).unwrap();
        let t2 = f2.heat_trace(&samples).unwrap();
        // Non-increasing in t.
        assert!(t2[0].1.lo() >= t2[1].1.hi() || t2[0].1.midpoint_f64() >= t2[1].1.midpoint_f64());
        assert!(t2[1].1.midpoint_f64() >= t2[2].1.midpoint_f64());

        // Monotone in window, with shrinking increments.
        let values: Vec<f64> = (1..=4)
            .map(|w| {
                let f = localized_fiber(&sys, &zeros(), &zeros(), w).unwrap();
                f.heat_trace(&[rat(1, 1)]).unwrap()[0].1.midpoint_f64()
            })
            .collect();
        for i in 1..values.len() {
            assert!(values[i] >= values[i - 1] - 1e-12);
        }
        let d1 = values[2] - values[1];
        let d2 = values[3] - values[2];
        assert!(d2 <= d1 + 1e-9, "increments should decrease: {values:?}");
    }

    #[test]
    fn summability_profile_decreasing_in_s() {
        let f = localized_fiber(&full2(), &zeros(), &zeros(), 2).unwrap();
        let prof = f
            .summability_profile(&[rat(2, 1), rat(3, 1), rat(4, 1)])
            .unwrap();
        let vals: Vec<f64> = prof.iter().map(|(_, iv)| iv.midpoint_f64()).collect();
        assert!(vals[0] >= vals[1] && vals[1] >= vals[2]);
        // s = 2 gives exact rationals: sum of 1/(1 + ev^2).
        let exact: f64 = f
            .spectrum()
            .iter()
            .map(|&(ev, m)| m as f64 / (1.0 + (ev * ev) as f64))
            .sum();
        assert!((prof[0].1.midpoint_f64() - exact).abs() < 1e-9);
        let _ = prof[0].1.width().to_f64();
    }

    #[test]
    fn incompatible_localization_point_rejected() {
        let sys = full2();
        let bad = EventuallyPeriodicWord::periodic(vec![7]);
        assert!(matches!(
            localized_fiber(&sys, &zeros(), &bad, 1),
            Err(Error::UnknownSymbol(_))
        ));
    }
}
