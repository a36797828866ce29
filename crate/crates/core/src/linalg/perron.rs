use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::interval::RationalInterval;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Strong connectivity of the digraph on nonzero entries: i -> j iff
/// `M[i][j] != 0`. Every vertex must reach and be reached by vertex 0.
pub fn strongly_connected(m: &IntMatrix) -> bool {
    let n = m.rows();
    if n == 0 || !m.is_square() {
        return false;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let edge = if forward { !m[(v, w)].is_zero() } else { !m[(w, v)].is_zero() };
                if edge && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Primitivity test: some power of the boolean pattern is strictly positive.
/// Uses the Wielandt bound (n-1)^2 + 1 on the exponent.
pub fn is_primitive(m: &IntMatrix) -> bool {
    let n = m.rows();
    if n == 0 || !m.is_square() {
        return false;
    }
    let mut pattern: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| !m[(i, j)].is_zero()).collect())
        .collect();
    let all_positive = |p: &Vec<Vec<bool>>| p.iter().all(|row| row.iter().all(|&b| b));
    if all_positive(&pattern) {
        return true;
    }
    let bound = (n - 1) * (n - 1) + 1;
    let base = pattern.clone();
    for _ in 1..bound {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if pattern[i][k] {
                    for j in 0..n {
                        if base[k][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        pattern = next;
        if all_positive(&pattern) {
            return true;
        }
    }
    false
}

fn validate(a: &IntMatrix) -> Result<usize> {
    let n = a.require_square()?;
    if a.entries().iter().any(|e| e.is_negative()) {
        return Err(Error::NegativeEntry);
    }
    for i in 0..n {
        if (0..n).all(|j| a[(i, j)].is_zero()) {
            return Err(Error::ZeroLine);
        }
    }
    if !strongly_connected(a) {
        return Err(Error::Reducible);
    }
    Ok(n)
}

/// Collatz-Wielandt enclosure of the Perron-Frobenius eigenvalue.
///
/// Runs `iterations` exact power steps from the all-ones vector and returns
/// [min_i (Ax)_i / x_i, max_i (Ax)_i / x_i] for the final iterate x. The
/// interval always contains rho(A); for primitive A the bounds are monotone
/// in the iteration count.
pub fn perron_bounds(a: &IntMatrix, iterations: usize) -> Result<RationalInterval> {
    let n = validate(a)?;
    let iterations = iterations.max(1);
    let mut x: Vec<BigInt> = vec![BigInt::from(1); n];
    for _ in 0..iterations - 1 {
        x = apply(a, &x);
    }
    let ax = apply(a, &x);
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for i in 0..n {
        // Irreducibility keeps every iterate strictly positive.
        debug_assert!(x[i].is_positive());
        let ratio = BigRational::new(ax[i].clone(), x[i].clone());
        lo = Some(match lo {
            Some(l) => l.min(ratio.clone()),
            None => ratio.clone(),
        });
        hi = Some(match hi {
            Some(h) => h.max(ratio),
            None => ratio,
        });
    }
    Ok(RationalInterval::new(lo.unwrap(), hi.unwrap()))
}

fn apply(a: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    let n = a.rows();
    (0..n)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if !a[(i, j)].is_zero() {
                    acc += &a[(i, j)] * &x[j];
                }
            }
            acc
        })
        .collect()
}

/// Certified componentwise enclosure of the right Perron vector, normalized
/// to sum 1.
///
/// For irreducible A the matrix P = (I + A)^(n-1) is strictly positive and
/// has the same Perron vector. Writing C = P^t, the ratio v_i / v_0 of the
/// true eigenvector lies between `min_k C[i][k]/C[0][k]` and the corresponding
/// max, because v_i/v_0 is a weighted mediant of those column ratios. The
/// bounds tighten geometrically in t.
pub fn perron_vector_intervals(a: &IntMatrix, iterations: usize) -> Result<Vec<RationalInterval>> {
    let n = validate(a)?;
    if n == 1 {
        return Ok(vec![RationalInterval::from_int(1)]);
    }
    let p = IntMatrix::identity(n).add(a).pow(n - 1);
    let c = p.pow(iterations.max(1));
    let mut ratios = Vec::with_capacity(n);
    for i in 0..n {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for k in 0..n {
            let r = BigRational::new(c[(i, k)].clone(), c[(0, k)].clone());
            lo = Some(match lo {
                Some(l) => l.min(r.clone()),
                None => r.clone(),
            });
            hi = Some(match hi {
                Some(h) => h.max(r),
                None => r,
            });
        }
        ratios.push(RationalInterval::new(lo.unwrap(), hi.unwrap()));
    }
    // Normalize: v_i = r_i / sum_j r_j with interval arithmetic.
    let total = ratios
        .iter()
        .fold(RationalInterval::zero(), |acc, r| acc.add(r));
    Ok(ratios.iter().map(|r| r.div(&total)).collect())
}
