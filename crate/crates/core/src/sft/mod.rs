//! Subshifts of finite type: recurrence classification, Cuntz-Krieger
//! K-theory, certified entropy, and the Perron (KMS) cylinder measure.

pub mod measure;
pub mod word;

pub use measure::CylinderMeasure;
pub use word::EventuallyPeriodicWord;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    abelian_group_of, is_primitive, perron_bounds, perron_vector_intervals, strongly_connected,
    transcend, AbelianGroup, IntMatrix, RationalInterval,
};

/// Vertex shift over a 0-1 transition matrix with labeled symbols.
///
/// Validity requires no zero row and no zero column, so the shift is a
/// surjective local homeomorphism. Edge shifts must be converted to vertex
/// shifts by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SftSystem {
    alphabet: Vec<String>,
    #[serde(serialize_with = "serialize_zero_one")]
    matrix: IntMatrix,
}

fn serialize_zero_one<S: serde::Serializer>(
    m: &IntMatrix,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<u8>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| if m[(i, j)].is_zero() { 0 } else { 1 })
                .collect()
        })
        .collect();
    rows.serialize(s)
}

impl<'de> Deserialize<'de> for SftSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            alphabet: Vec<String>,
            matrix: Vec<Vec<u8>>,
        }
        let raw = Raw::deserialize(d)?;
        let dim = raw.matrix.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in &raw.matrix {
            if row.len() != dim {
                return Err(D::Error::custom("transition matrix must be square"));
            }
            entries.extend(row.iter().map(|&e| i64::from(e)));
        }
        let matrix = IntMatrix::from_i64(dim, dim, &entries);
        SftSystem::new(raw.alphabet, matrix).map_err(D::Error::custom)
    }
}

/// Recurrence classification of the transition digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecurrenceClass {
    Mixing,
    IrreducibleNotMixing,
    Reducible,
}

/// K-theory and K-homology of the Cuntz-Krieger algebra of the shift.
#[derive(Clone, Debug, Serialize)]
pub struct CkKTheory {
    pub khom0: AbelianGroup,
    pub khom1: AbelianGroup,
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
}

/// Certified entropy data: the Perron eigenvalue enclosure and the induced
/// enclosure of beta = log rho.
#[derive(Clone, Debug, Serialize)]
pub struct EntropyReport {
    pub rho: RationalInterval,
    pub beta: RationalInterval,
}

impl SftSystem {
    pub fn new(alphabet: Vec<String>, matrix: IntMatrix) -> Result<Self> {
        let n = matrix.require_square()?;
        if alphabet.len() != n {
            return Err(Error::AlphabetMismatch { alphabet: alphabet.len(), dim: n });
        }
        for e in matrix.entries() {
            if !e.is_zero() && !e.is_one() {
                return Err(Error::NotZeroOne);
            }
        }
        for i in 0..n {
            if (0..n).all(|j| matrix[(i, j)].is_zero()) || (0..n).all(|j| matrix[(j, i)].is_zero())
            {
                return Err(Error::ZeroLine);
            }
        }
        Ok(SftSystem { alphabet, matrix })
    }

    /// Helper for presets and tests: single-character symbol labels 0..n.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let alphabet = (0..rows.len()).map(|i| i.to_string()).collect();
        SftSystem::new(alphabet, IntMatrix::from_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_allowed(&self, from: usize, to: usize) -> bool {
        self.matrix[(from, to)].is_one()
    }

    pub fn symbol_index(&self, label: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownSymbol(label.to_string()))
    }

    /// Checks that consecutive symbols are allowed transitions.
    pub fn finite_word_admissible(&self, w: &[usize]) -> bool {
        w.iter().all(|&s| s < self.dim())
            && w.windows(2).all(|p| self.is_allowed(p[0], p[1]))
    }

    /// Validates prefix . cycle^inf admissibility, including the junction
    /// and the cycle wrap.
    pub fn word(&self, prefix: Vec<usize>, cycle: Vec<usize>) -> Result<EventuallyPeriodicWord> {
        if cycle.is_empty() {
            return Err(Error::Inadmissible("empty cycle".into()));
        }
        if !self.finite_word_admissible(&prefix) || !self.finite_word_admissible(&cycle) {
            return Err(Error::Inadmissible(format!("{prefix:?}|{cycle:?}")));
        }
        if let (Some(&last), Some(&first)) = (prefix.last(), cycle.first()) {
            if !self.is_allowed(last, first) {
                return Err(Error::Inadmissible("prefix-cycle junction".into()));
            }
        }
        if !self.is_allowed(*cycle.last().unwrap(), cycle[0]) {
            return Err(Error::Inadmissible("cycle wrap".into()));
        }
        Ok(EventuallyPeriodicWord::new(prefix, cycle))
    }

    /// All admissible finite words of exactly the given length, in
    /// lexicographic order. Length 0 gives the empty word.
    pub fn admissible_words(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        self.admissible_rec(len, &mut cur, &mut out);
        out
    }

    fn admissible_rec(&self, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for s in 0..self.dim() {
            if cur.last().is_none_or(|&p| self.is_allowed(p, s)) {
                cur.push(s);
                self.admissible_rec(len, cur, out);
                cur.pop();
            }
        }
    }

    pub fn recurrence_class(&self) -> RecurrenceClass {
        if is_primitive(&self.matrix) {
            RecurrenceClass::Mixing
        } else if strongly_connected(&self.matrix) {
            RecurrenceClass::IrreducibleNotMixing
        } else {
            RecurrenceClass::Reducible
        }
    }

    fn require_irreducible(&self) -> Result<()> {
        match self.recurrence_class() {
            RecurrenceClass::Reducible => Err(Error::Reducible),
            _ => Ok(()),
        }
    }

    fn require_mixing(&self) -> Result<()> {
        match self.recurrence_class() {
            RecurrenceClass::Mixing => Ok(()),
            other => Err(Error::NotMixing(format!("{other:?}"))),
        }
    }

    /// K-groups of the Cuntz-Krieger algebra O_A:
    /// K^0 = ker(1-A), K^1 = coker(1-A) in K-homology, and
    /// K_0 = coker(1-A^T), K_1 = ker(1-A^T) in K-theory.
    pub fn ck_ktheory(&self) -> Result<CkKTheory> {
        self.require_irreducible()?;
        let one_minus_a = IntMatrix::identity(self.dim()).sub(&self.matrix);
        let (khom0, khom1) = abelian_group_of(&one_minus_a);
        let (k1, k0) = abelian_group_of(&one_minus_a.transpose());
        Ok(CkKTheory { khom0, khom1, k0, k1 })
    }

    /// Certified enclosure for rho(A) and beta = log rho(A).
    pub fn entropy(&self, iterations: usize) -> Result<EntropyReport> {
        self.require_irreducible()?;
        let rho = perron_bounds(&self.matrix, iterations)?;
        let beta = transcend::ln_of_interval(&rho, transcend::DEFAULT_PRECISION);
        Ok(EntropyReport { rho, beta })
    }

    /// The unique eigenmeasure of the transfer operator on cylinder sets,
    /// as certified intervals: mu([i_0..i_k]) = lambda^-k * v_(i_k) with v
    /// the right Perron vector normalized to sum 1.
    ///
    /// Requires mixing; uniqueness of the pair (measure, beta) fails
    /// otherwise.
    pub fn kms_measure(&self, level: usize, iterations: usize) -> Result<CylinderMeasure> {
        self.require_mixing()?;
        self.eigenmeasure_unchecked(level, iterations)
    }

    /// Same construction without the mixing requirement; used by the KMS
    /// report to describe irreducible non-mixing systems (where the Perron
    /// vector still exists but the KMS data is no longer unique).
    pub(crate) fn eigenmeasure_unchecked(
        &self,
        level: usize,
        iterations: usize,
    ) -> Result<CylinderMeasure> {
        if level == 0 {
            return Err(Error::LevelTooSmall { need: 1, got: 0 });
        }
        let lambda = perron_bounds(&self.matrix, iterations)?;
        let vertex = perron_vector_intervals(&self.matrix, iterations)?;
        Ok(CylinderMeasure::build(self, level, lambda, vertex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn golden() -> SftSystem {
        SftSystem::from_rows(&[&[1, 1], &[1, 0]]).unwrap()
    }

    fn full(n: usize) -> SftSystem {
        let row = vec![1i64; n];
        let rows: Vec<&[i64]> = (0..n).map(|_| row.as_slice()).collect();
        SftSystem::from_rows(&rows).unwrap()
    }

    #[test]
    fn validation_rejects_bad_systems() {
        // Zero column.
        assert_eq!(
            SftSystem::from_rows(&[&[1, 0], &[1, 0]]).unwrap_err(),
            Error::ZeroLine
        );
        // Entry out of range.
        assert_eq!(
            SftSystem::from_rows(&[&[2, 1], &[1, 0]]).unwrap_err(),
            Error::NotZeroOne
        );
    }

    #[test]
    fn recurrence_classes() {
        assert_eq!(full(2).recurrence_class(), RecurrenceClass::Mixing);
        let perm = SftSystem::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(
            perm.recurrence_class(),
            RecurrenceClass::IrreducibleNotMixing
        );
        let lower = SftSystem::from_rows(&[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(lower.recurrence_class(), RecurrenceClass::Reducible);
        assert_eq!(golden().recurrence_class(), RecurrenceClass::Mixing);
    }

    #[test]
    fn cuntz_algebra_k_theory() {
        // O_2: all four groups trivial.
        let k = full(2).ck_ktheory().unwrap();
        assert!(k.khom0.is_trivial());
        assert!(k.khom1.is_trivial());
        assert!(k.k0.is_trivial());
        assert!(k.k1.is_trivial());

        // O_5: coker(1-A) = Z/4 on both sides.
        let k = full(5).ck_ktheory().unwrap();
        assert_eq!(k.khom1.to_string(), "Z/4");
        assert_eq!(k.k0.to_string(), "Z/4");
        assert!(k.khom0.is_trivial());
        assert!(k.k1.is_trivial());
    }

    #[test]
    fn one_by_one_fixed_point() {
        let s = SftSystem::from_rows(&[&[1]]).unwrap();
        let k = s.ck_ktheory().unwrap();
        assert_eq!(k.khom0, AbelianGroup::free(1));
        assert_eq!(k.khom1, AbelianGroup::free(1));
    }

    #[test]
    fn ktheory_invariant_under_vertex_relabeling() {
        let a = SftSystem::from_rows(&[&[1, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        // Conjugate by the permutation swapping vertices 0 and 2.
        let b = SftSystem::from_rows(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 1]]).unwrap();
        let ka = a.ck_ktheory().unwrap();
        let kb = b.ck_ktheory().unwrap();
        assert_eq!(ka.khom0, kb.khom0);
        assert_eq!(ka.khom1, kb.khom1);
        assert_eq!(ka.k0, kb.k0);
        assert_eq!(ka.k1, kb.k1);
    }

    #[test]
    fn entropy_full_shift_is_log_n() {
        for n in 2..=4usize {
            let rep = full(n).entropy(1).unwrap();
            let exact = BigRational::from(BigInt::from(n as i64));
            assert_eq!(rep.rho.lo(), &exact);
            assert_eq!(rep.rho.hi(), &exact);
            // beta encloses log n.
            let expect = (n as f64).ln();
            assert!((rep.beta.midpoint_f64() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_golden_mean_tight_after_40_iterations() {
        let rep = golden().entropy(40).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(rep.rho.width_f64() < 1e-9);
        assert!((rep.rho.midpoint_f64() - phi).abs() < 1e-9);
        assert!((rep.beta.midpoint_f64() - phi.ln()).abs() < 1e-9);
    }

    #[test]
    fn entropy_of_permutation_is_zero() {
        let perm = SftSystem::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let rep = perm.entropy(10).unwrap();
        assert_eq!(rep.rho.lo(), rep.rho.hi());
        assert!(rep.rho.contains(&BigRational::one()));
        assert!(rep.beta.contains(&BigRational::zero()));
    }

    #[test]
    fn entropy_excludes_zero_when_some_row_sum_exceeds_one() {
        let rep = golden().entropy(20).unwrap();
        assert!(rep.beta.lo() > &BigRational::zero());
    }

    #[test]
    fn admissible_word_enumeration() {
        assert_eq!(golden().admissible_words(2).len(), 3); // 00, 01, 10
        assert_eq!(full(2).admissible_words(2).len(), 4);
        assert_eq!(golden().admissible_words(0).len(), 1);
    }

    #[test]
    fn word_validation_checks_junction_and_wrap() {
        let g = golden();
        assert!(g.word(vec![1], vec![0]).is_ok());
        // Cycle 11 is inadmissible (wrap 1->1 forbidden).
        assert!(g.word(vec![], vec![1]).is_err());
        // Junction 1->1 forbidden.
        assert!(g.word(vec![1], vec![1, 0]).is_err());
    }

    #[test]
    fn kms_measure_requires_mixing() {
        let perm = SftSystem::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(matches!(
            perm.kms_measure(1, 5),
            Err(Error::NotMixing(_))
        ));
    }
}
