use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::SftSystem;
use crate::error::{Error, Result};
use crate::linalg::RationalInterval;

/// Certified cylinder masses of the transfer-operator eigenmeasure at a
/// fixed level: mu([i_0 .. i_k]) = lambda^-k * v_(i_k).
///
/// `values` maps every admissible word of length `level` to its certified
/// interval. The defining data (lambda enclosure and vertex masses) is kept
/// so masses of shorter cylinders and refinement checks stay exact.
#[derive(Clone, Debug, Serialize)]
pub struct CylinderMeasure {
    pub level: usize,
    pub lambda: RationalInterval,
    pub vertex_masses: Vec<RationalInterval>,
    pub values: BTreeMap<Vec<usize>, RationalInterval>,
}

impl CylinderMeasure {
    pub(crate) fn build(
        system: &SftSystem,
        level: usize,
        lambda: RationalInterval,
        vertex_masses: Vec<RationalInterval>,
    ) -> Self {
        let mut m = CylinderMeasure {
            level,
            lambda,
            vertex_masses,
            values: BTreeMap::new(),
        };
        for w in system.admissible_words(level) {
            let mass = m.mass(&w);
            m.values.insert(w, mass);
        }
        m
    }

    /// Certified mass of the cylinder on a nonempty admissible word.
    pub fn mass(&self, word: &[usize]) -> RationalInterval {
        assert!(!word.is_empty(), "cylinder word must be nonempty");
        let last = *word.last().unwrap();
        let lam_pow = self.lambda.powi((word.len() - 1) as u32);
        self.vertex_masses[last].div(&lam_pow)
    }

    /// Interval sum over all stored words; contains 1 by construction.
    pub fn total_mass(&self) -> RationalInterval {
        self.values
            .values()
            .fold(RationalInterval::zero(), |acc, v| acc.add(v))
    }

    /// Checks that the total mass interval contains 1.
    pub fn sums_to_one(&self) -> bool {
        self.total_mass().contains(&BigRational::one())
    }

    /// One-step refinement consistency at the level boundary: for every
    /// stored word w of length `level`, the interval for mu([w']) with w'
    /// the length-(level-1) parent must be consistent with the interval sum
    /// of the masses of its admissible one-symbol extensions. Returns the
    /// maximal gap (zero iff every pair of intervals overlaps).
    pub fn refinement_defect(&self, system: &SftSystem) -> BigRational {
        let mut worst = BigRational::from_integer(0.into());
        if self.level < 2 {
            return worst;
        }
        for parent in system.admissible_words(self.level - 1) {
            let direct = self.mass(&parent);
            let mut sum = RationalInterval::zero();
            let last = *parent.last().unwrap();
            for s in 0..system.dim() {
                if system.is_allowed(last, s) {
                    let mut child = parent.clone();
                    child.push(s);
                    sum = sum.add(&self.mass(&child));
                }
            }
            let gap = direct.gap(&sum);
            if gap > worst {
                worst = gap;
            }
        }
        worst
    }

    /// Componentwise interval residual of the eigen-relation A v - lambda v.
    /// Every component straddles zero because the true Perron data lies in
    /// the certified boxes.
    pub fn eigen_residuals(&self, system: &SftSystem) -> Vec<RationalInterval> {
        let n = system.dim();
        (0..n)
            .map(|i| {
                let mut av = RationalInterval::zero();
                for j in 0..n {
                    if system.is_allowed(i, j) {
                        av = av.add(&self.vertex_masses[j]);
                    }
                }
                av.sub(&self.lambda.mul(&self.vertex_masses[i]))
            })
            .collect()
    }

    pub fn residuals_straddle_zero(&self, system: &SftSystem) -> bool {
        self.eigen_residuals(system)
            .iter()
            .all(|r| r.contains(&BigRational::from_integer(0.into())))
    }
}

/// Maximal eigenmeasure defect over all stored cylinders: for each word
/// [i_0 .. i_k] at the measure's level, the transfer relation says
/// mu([i_0 .. i_k]) * rho should equal mu([i_1 .. i_k]). Returns the largest
/// interval gap between the two sides.
pub fn verify_eigenmeasure(
    system: &SftSystem,
    measure: &CylinderMeasure,
    rho: &RationalInterval,
) -> Result<BigRational> {
    if measure.level < 2 {
        return Err(Error::LevelTooSmall { need: 2, got: measure.level });
    }
    let mut worst = BigRational::from_integer(0.into());
    for (word, mass) in &measure.values {
        debug_assert!(system.finite_word_admissible(word));
        let shifted = &word[1..];
        let lhs = mass.mul(rho);
        let rhs = measure.mass(shifted);
        let gap = lhs.gap(&rhs);
        if gap > worst {
            worst = gap;
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn golden() -> SftSystem {
        SftSystem::from_rows(&[&[1, 1], &[1, 0]]).unwrap()
    }

    fn full2() -> SftSystem {
        SftSystem::from_rows(&[&[1, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn full_shift_level_one_is_uniform() {
        let m = full2().kms_measure(1, 1).unwrap();
        for i in 0..2 {
            assert!(m.vertex_masses[i].contains(&rat(1, 2)));
        }
        assert!(m.sums_to_one());
        assert!(m.residuals_straddle_zero(&full2()));
    }

    #[test]
    fn golden_mean_vertex_ratio_is_phi() {
        let m = golden().kms_measure(1, 40).unwrap();
        let ratio = m.vertex_masses[0].div(&m.vertex_masses[1]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((ratio.midpoint_f64() - phi).abs() < 1e-9);
        assert!(ratio.width() < rat(1, 1_000_000_000));
    }

    #[test]
    fn level_two_recursion_holds() {
        let sys = golden();
        let m = sys.kms_measure(2, 30).unwrap();
        // mu([00]) = lambda^-1 mu([0]) as intervals: consistency.
        let m00 = m.values.get(&vec![0usize, 0]).unwrap();
        let target = m.mass(&[0]).div(&m.lambda);
        assert!(m00.intersects(&target));
        assert!(m.sums_to_one());
        assert_eq!(m.refinement_defect(&sys), BigRational::from_integer(0.into()));
    }

    #[test]
    fn eigenmeasure_verification_full_shift_exact() {
        let sys = full2();
        let m = sys.kms_measure(3, 1).unwrap();
        let rho = RationalInterval::from_int(2);
        let defect = verify_eigenmeasure(&sys, &m, &rho).unwrap();
        assert_eq!(defect, BigRational::from_integer(0.into()));
    }

    #[test]
    fn eigenmeasure_verification_golden_below_width() {
        let sys = golden();
        let m = sys.kms_measure(2, 40).unwrap();
        let rho = sys.entropy(40).unwrap().rho;
        let defect = verify_eigenmeasure(&sys, &m, &rho).unwrap();
        assert!(defect < rat(1, 1_000_000_000));
    }

    #[test]
    fn perturbed_measure_is_flagged() {
        let sys = golden();
        let mut m = sys.kms_measure(2, 40).unwrap();
        // Bump one cylinder by 1e-3.
        let key = vec![0usize, 0];
        let bumped = m.values.get(&key).unwrap().add(&RationalInterval::point(rat(1, 1000)));
        m.values.insert(key, bumped);
        let rho = sys.entropy(40).unwrap().rho;
        let defect = verify_eigenmeasure(&sys, &m, &rho).unwrap();
        // Defect at least 1e-3 * lambda_min (lambda > 1).
        assert!(defect >= rat(1, 1000));
    }

    #[test]
    fn verification_needs_level_two() {
        let sys = full2();
        let m = sys.kms_measure(1, 1).unwrap();
        let rho = RationalInterval::from_int(2);
        assert!(matches!(
            verify_eigenmeasure(&sys, &m, &rho),
            Err(Error::LevelTooSmall { .. })
        ));
    }
}
