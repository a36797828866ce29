//! Brute-force reference implementations, independent of the main
//! algorithms, used by the test suites and surfaced through the CLI
//! `--oracle` flag. Each oracle recomputes its target by a different route:
//! determinantal divisors instead of elimination, fundamental-domain point
//! counts instead of Smith diagonals, plain window comparison instead of
//! the bounded kappa search, and a floating-point Jacobi eigensolver as a
//! sanity mirror for the exact expansiveness certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::matrix::combinations;
use crate::linalg::IntMatrix;
use crate::sft::{EventuallyPeriodicWord, SftSystem};

/// Invariant factors d_k = D_k / D_(k-1) with D_k the gcd of all k x k
/// minors. Shares no code with the Smith elimination.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    let mut divisors = Vec::with_capacity(n);
    for k in 1..=n {
        let row_sets = combinations(m.rows(), k);
        let col_sets = combinations(m.cols(), k);
        let mut g = BigInt::zero();
        'outer: for rs in &row_sets {
            for cs in &col_sets {
                let mut sub = IntMatrix::zero(k, k);
                for (i, &r) in rs.iter().enumerate() {
                    for (j, &c) in cs.iter().enumerate() {
                        sub[(i, j)] = m[(r, c)].clone();
                    }
                }
                g = num_integer::Integer::gcd(&g, &sub.det().unwrap());
                if g.is_one() {
                    break 'outer;
                }
            }
        }
        divisors.push(g);
    }
    let mut factors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for d in divisors {
        if d.is_zero() {
            factors.push(BigInt::zero());
            prev = BigInt::zero();
        } else {
            factors.push(&d / &prev);
            prev = d;
        }
    }
    factors
}

/// Order of Z^n / im(M) for square nonsingular M, by literally counting the
/// integer points of the half-open fundamental parallelepiped M [0,1)^n.
/// Returns None when the quotient is infinite.
pub fn coset_count_by_fundamental_domain(m: &IntMatrix) -> Option<BigInt> {
    let n = m.require_square().ok()?;
    if m.det().ok()?.is_zero() {
        return None;
    }
    let inv = m.inverse_rational().ok()?;
    // Bounding box of the parallelepiped from its vertex coordinates.
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    for mask in 0..(1u32 << n) {
        for i in 0..n {
            let mut coord = BigInt::zero();
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    coord += &m[(i, j)];
                }
            }
            if coord < lo[i] {
                lo[i] = coord.clone();
            }
            if coord > hi[i] {
                hi[i] = coord;
            }
        }
    }
    let mut count = BigInt::zero();
    let mut point = vec![BigInt::zero(); n];
    count_points(&inv, &lo, &hi, 0, &mut point, &mut count);
    Some(count)
}

fn count_points(
    inv: &[Vec<BigRational>],
    lo: &[BigInt],
    hi: &[BigInt],
    idx: usize,
    point: &mut Vec<BigInt>,
    count: &mut BigInt,
) {
    let n = lo.len();
    if idx == n {
        // p is in M [0,1)^n iff all coordinates of M^-1 p lie in [0,1).
        let inside = (0..n).all(|i| {
            let mut acc = BigRational::zero();
            for j in 0..n {
                acc += &inv[i][j] * BigRational::from(point[j].clone());
            }
            !acc.is_negative() && acc < BigRational::one()
        });
        if inside {
            *count += 1;
        }
        return;
    }
    let mut v = lo[idx].clone();
    while v <= hi[idx] {
        point[idx] = v.clone();
        count_points(inv, lo, hi, idx + 1, point, count);
        v += 1;
    }
}

/// Plain-window kappa: expand both shifted sequences into explicit symbol
/// buffers and compare, scanning k upward to the limit.
pub fn naive_kappa(
    x: &EventuallyPeriodicWord,
    n: i64,
    y: &EventuallyPeriodicWord,
    limit: usize,
) -> Option<usize> {
    let expand = |w: &EventuallyPeriodicWord, from: usize, len: usize| -> Vec<usize> {
        let mut out = Vec::with_capacity(len);
        let mut stream = w.prefix().to_vec();
        while stream.len() < from + len {
            stream.extend_from_slice(w.cycle());
        }
        out.extend_from_slice(&stream[from..from + len]);
        out
    };
    let window = x.prefix().len()
        + y.prefix().len()
        + x.cycle().len() * y.cycle().len()
        + n.unsigned_abs() as usize
        + 2;
    let start = 0.max(-n) as usize;
    for k in start..=start + limit {
        let a = (n + k as i64) as usize;
        if expand(x, a, window) == expand(y, k, window) {
            return Some(k);
        }
    }
    None
}

/// Floating-point singular-value test sigma_min(A) > 1, via a Jacobi
/// eigensolver on A^T A. Returns None inside the ambiguous band where the
/// float verdict is not trustworthy; the exact certificate wins there.
pub fn sigma_min_exceeds_one_f64(a: &IntMatrix) -> Option<bool> {
    let n = a.require_square().ok()?;
    let mut g = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0f64;
            for k in 0..n {
                acc += a[(k, i)].to_f64()? * a[(k, j)].to_f64()?;
            }
            g[i][j] = acc;
        }
    }
    // Cyclic Jacobi sweeps.
    for _ in 0..64 {
        let mut off = 0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += g[p][q] * g[p][q];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if g[p][q].abs() < 1e-18 {
                    continue;
                }
                let theta = 0.5 * (g[q][q] - g[p][p]) / g[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let gpk = g[p][k];
                    let gqk = g[q][k];
                    g[p][k] = c * gpk - s * gqk;
                    g[q][k] = s * gpk + c * gqk;
                }
                for k in 0..n {
                    let gkp = g[k][p];
                    let gkq = g[k][q];
                    g[k][p] = c * gkp - s * gkq;
                    g[k][q] = s * gkp + c * gkq;
                }
            }
        }
    }
    let min_eig = (0..n).map(|i| g[i][i]).fold(f64::INFINITY, f64::min);
    let sigma_min = min_eig.max(0.0).sqrt();
    if (sigma_min - 1.0).abs() < 1e-9 {
        None
    } else {
        Some(sigma_min > 1.0)
    }
}

/// Brute-force admissible word count, used to validate bucket ranks.
pub fn admissible_word_count(system: &SftSystem, len: usize) -> usize {
    system.admissible_words(len).len()
}
