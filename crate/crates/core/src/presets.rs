//! Bundled example systems shared by the CLI and the test suites.

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::selfsimilar::{presets as ssg, MealyAutomaton};
use crate::sft::SftSystem;

/// Full shift on n symbols: the all-ones transition matrix.
pub fn full_shift(n: usize) -> Result<SftSystem> {
    if n < 1 {
        return Err(Error::InvalidParameter("full shift needs n >= 1".into()));
    }
    let alphabet = (0..n).map(|i| i.to_string()).collect();
    SftSystem::new(alphabet, IntMatrix::from_i64(n, n, &vec![1; n * n]))
}

/// Golden mean shift: words over `{0, 1}` with no adjacent ones.
pub fn golden_mean() -> SftSystem {
    SftSystem::from_rows(&[&[1, 1], &[1, 0]]).expect("golden mean preset")
}

/// The conformal 2-torus dilation `[[1,-1],[1,1]]` with A^T A = 2 I.
pub fn conformal_2d() -> IntMatrix {
    IntMatrix::from_rows(&[&[1, -1], &[1, 1]])
}

/// Named SFT presets: "full-N" or "golden-mean".
pub fn sft_preset(name: &str) -> Result<SftSystem> {
    if let Some(n) = name.strip_prefix("full-") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad preset {name:?}")))?;
        return full_shift(n);
    }
    match name {
        "golden-mean" => Ok(golden_mean()),
        _ => Err(Error::InvalidParameter(format!(
            "unknown sft preset {name:?} (try full-N or golden-mean)"
        ))),
    }
}

/// Named automaton presets: "odometer", "odometer-N", "grigorchuk",
/// "trivial".
pub fn automaton_preset(name: &str) -> Result<MealyAutomaton> {
    if let Some(n) = name.strip_prefix("odometer-") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad preset {name:?}")))?;
        if n < 2 {
            return Err(Error::InvalidParameter("odometer base must be >= 2".into()));
        }
        return Ok(ssg::odometer_n(n));
    }
    match name {
        "odometer" => Ok(ssg::odometer()),
        "grigorchuk" => Ok(ssg::grigorchuk()),
        "trivial" => Ok(ssg::trivial()),
        _ => Err(Error::InvalidParameter(format!(
            "unknown automaton preset {name:?}"
        ))),
    }
}

/// Named torus presets: "conformal-2d" or "dilation-N" for the 1x1 matrix.
pub fn torus_preset(name: &str) -> Result<IntMatrix> {
    if let Some(n) = name.strip_prefix("dilation-") {
        let n: i64 = n
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad preset {name:?}")))?;
        return Ok(IntMatrix::from_i64(1, 1, &[n]));
    }
    match name {
        "conformal-2d" => Ok(conformal_2d()),
        _ => Err(Error::InvalidParameter(format!(
            "unknown torus preset {name:?} (try conformal-2d or dilation-N)"
        ))),
    }
}
