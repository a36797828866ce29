use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

/// Smith normal form U * source * V = S with unimodular U, V and diagonal S
/// whose entries are nonnegative and divide each other in order.
#[derive(Clone, Debug, Serialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of S up to min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries, i.e. the rank of the source.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Recomputes U * source * V and compares with S.
    pub fn verify(&self) -> bool {
        let prod = self.u.mul(&self.source).mul(&self.v);
        if prod != self.s {
            return false;
        }
        let det_ok = |m: &IntMatrix| {
            m.det()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
        };
        if !det_ok(&self.u) || !det_ok(&self.v) {
            return false;
        }
        let diag = self.diagonal();
        for i in 0..diag.len() {
            if diag[i].is_negative() {
                return false;
            }
            if i + 1 < diag.len() && !diag[i].is_zero() && !(&diag[i + 1] % &diag[i]).is_zero() {
                return false;
            }
            if diag[i].is_zero() && i + 1 < diag.len() && !diag[i + 1].is_zero() {
                return false;
            }
        }
        true
    }
}

/// Computes the Smith normal form over the integers.
///
/// Pivots are chosen with minimal absolute value in the remaining block to
/// control coefficient growth; the unimodular row and column transforms are
/// tracked explicitly.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let n = rows.min(cols);
    for k in 0..n {
        // Pivot loop; exits when the remaining block is zero or the pivot
        // row and column are clean and divide the trailing block.
        while let Some((pi, pj)) = min_abs_pivot(&s, k) {
            swap_rows(&mut s, &mut u, k, pi);
            swap_cols(&mut s, &mut v, k, pj);

            // Clear the pivot row and column by Euclidean steps. Since the
            // pivot has minimal absolute value, remainders strictly shrink
            // and this terminates.
            let mut dirty = false;
            for i in k + 1..rows {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = div_round(&s[(i, k)], &s[(k, k)]);
                row_axpy(&mut s, &mut u, i, k, &q);
                if !s[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = div_round(&s[(k, j)], &s[(k, k)]);
                col_axpy(&mut s, &mut v, j, k, &q);
                if !s[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Pivot row/column clean. Enforce divisibility: if some entry of
            // the trailing block is not divisible by the pivot, fold its row
            // into row k and restart this pivot position.
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&s[(i, j)] % &s[(k, k)]).is_zero() {
                        let one = BigInt::from(-1);
                        row_axpy(&mut s, &mut u, k, i, &one); // row_k += row_i
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if s[(k, k)].is_negative() {
            negate_row(&mut s, &mut u, k);
        }
    }
    let dec = SmithDecomposition { u, s, v, source: m.clone() };
    debug_assert!(dec.verify(), "U * source * V = S must hold");
    dec
}

/// Rounded division: q minimizing |a - q*b|, so remainders satisfy
/// |r| <= |b|/2. Floor division leaves a remainder with the divisor's sign,
/// so the half-step correction is q + 1 regardless of that sign.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        q + 1
    } else {
        q
    }
}

fn min_abs_pivot(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let a = s[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            match &best {
                Some((_, _, b)) if *b <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..s.cols() {
        let tmp = s[(a, j)].clone();
        s[(a, j)] = s[(b, j)].clone();
        s[(b, j)] = tmp;
    }
    for j in 0..u.cols() {
        let tmp = u[(a, j)].clone();
        u[(a, j)] = u[(b, j)].clone();
        u[(b, j)] = tmp;
    }
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..s.rows() {
        let tmp = s[(i, a)].clone();
        s[(i, a)] = s[(i, b)].clone();
        s[(i, b)] = tmp;
    }
    for i in 0..v.rows() {
        let tmp = v[(i, a)].clone();
        v[(i, a)] = v[(i, b)].clone();
        v[(i, b)] = tmp;
    }
}

/// row_i -= q * row_k, mirrored on U.
fn row_axpy(s: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..s.cols() {
        let delta = q * &s[(k, j)];
        s[(i, j)] -= delta;
    }
    for j in 0..u.cols() {
        let delta = q * &u[(k, j)];
        u[(i, j)] -= delta;
    }
}

/// col_j -= q * col_k, mirrored on V.
fn col_axpy(s: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for i in 0..s.rows() {
        let delta = q * &s[(i, k)];
        s[(i, j)] -= delta;
    }
    for i in 0..v.rows() {
        let delta = q * &v[(i, k)];
        v[(i, j)] -= delta;
    }
}

fn negate_row(s: &mut IntMatrix, u: &mut IntMatrix, k: usize) {
    for j in 0..s.cols() {
        let v = -s[(k, j)].clone();
        s[(k, j)] = v;
    }
    for j in 0..u.cols() {
        let v = -u[(k, j)].clone();
        u[(k, j)] = v;
    }
}
