//! KMS verification layer: eigenmeasure residuals, uniqueness reporting,
//! and the induced weight on the crossed-product side evaluated on diagonal
//! indicator functions through the covering structure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalInterval;
use crate::sft::{CylinderMeasure, EventuallyPeriodicWord, RecurrenceClass, SftSystem};

pub use crate::sft::measure::verify_eigenmeasure;

/// Assembled equilibrium report: the certified temperature data, the
/// cylinder measure, and whether the KMS pair is unique (exactly when the
/// system is mixing).
#[derive(Clone, Debug, Serialize)]
pub struct KmsReport {
    pub rho: RationalInterval,
    pub beta: RationalInterval,
    pub measure: CylinderMeasure,
    pub unique: bool,
    pub rationale: RecurrenceClass,
}

/// A diagonal compact open window: finitely many covering sheets, each
/// identified by a rotation of the anchor orbit (the left-tail class) and a
/// base cylinder word.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SheetWindow {
    pub tail_shift: usize,
    pub middle: Vec<usize>,
}

/// Weight of the indicator of a disjoint union of sheets: the pullback mass
/// of one sheet over a cylinder equals the cylinder's mass, so the value is
/// the interval sum of base cylinder masses.
pub fn ruelle_weight(
    system: &SftSystem,
    anchor: &EventuallyPeriodicWord,
    measure: &CylinderMeasure,
    windows: &[SheetWindow],
) -> Result<RationalInterval> {
    if !anchor.is_purely_periodic() {
        return Err(Error::InvalidParameter(
            "anchor must be purely periodic".into(),
        ));
    }
    system.word(Vec::new(), anchor.cycle().to_vec())?;
    // Validate each sheet and check pairwise disjointness: same-tail sheets
    // overlap iff one middle is a prefix of the other.
    for (i, w) in windows.iter().enumerate() {
        if w.middle.is_empty() {
            return Err(Error::MalformedWindow("empty middle word".into()));
        }
        if !system.finite_word_admissible(&w.middle) {
            return Err(Error::MalformedWindow(format!(
                "inadmissible middle {:?}",
                w.middle
            )));
        }
        let tail = anchor.shift_by(w.tail_shift % anchor.cycle().len());
        let last = *w.middle.last().unwrap();
        if !system.is_allowed(last, tail.at(0)) {
            return Err(Error::MalformedWindow(format!(
                "middle {:?} cannot attach to the anchor tail",
                w.middle
            )));
        }
        for other in &windows[i + 1..] {
            if w.tail_shift == other.tail_shift
                && (w.middle.starts_with(&other.middle) || other.middle.starts_with(&w.middle))
            {
                return Err(Error::MalformedWindow(format!(
                    "sheets over {:?} and {:?} overlap",
                    w.middle, other.middle
                )));
            }
        }
    }
    let mut total = RationalInterval::zero();
    for w in windows {
        total = total.add(&measure.mass(&w.middle));
    }
    Ok(total)
}

/// Builds the KMS report for an irreducible system. Mixing systems get the
/// unique pair; irreducible non-mixing systems get the Perron data with
/// uniqueness reported false.
pub fn kms_report(system: &SftSystem, iterations: usize, level: usize) -> Result<KmsReport> {
    let class = system.recurrence_class();
    if class == RecurrenceClass::Reducible {
        return Err(Error::Reducible);
    }
    let entropy = system.entropy(iterations)?;
    let measure = system.eigenmeasure_unchecked(level, iterations)?;
    Ok(KmsReport {
        rho: entropy.rho,
        beta: entropy.beta,
        measure,
        unique: class == RecurrenceClass::Mixing,
        rationale: class,
    })
}
