//! Certified enclosures of logarithms, exponentials and rational powers.
//!
//! Internals run in dyadic fixed point: nonnegative BigInt mantissas with an
//! explicit scale of `bits` fractional bits, floor- or ceiling-rounded per
//! operation so every returned interval contains the true real value. The
//! default precision keeps widths far below 1e-12.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::RationalInterval;

/// Working precision in fractional bits.
pub const DEFAULT_PRECISION: u32 = 96;

/// Guard bits on top of the requested precision.
const GUARD: u32 = 32;

fn fx_to_rational(v: &BigInt, bits: u32) -> BigRational {
    BigRational::new(v.clone(), BigInt::one() << bits)
}

fn fx_floor(x: &BigRational, bits: u32) -> BigInt {
    (x * BigRational::from(BigInt::one() << bits)).floor().to_integer()
}

fn fx_ceil(x: &BigRational, bits: u32) -> BigInt {
    (x * BigRational::from(BigInt::one() << bits)).ceil().to_integer()
}

fn mul_floor(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a * b) >> bits
}

fn mul_ceil(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    ((a * b) + ((BigInt::one() << bits) - 1)) >> bits
}

fn div_floor_int(a: &BigInt, m: u64) -> BigInt {
    a / BigInt::from(m)
}

fn div_ceil_int(a: &BigInt, m: u64) -> BigInt {
    (a + BigInt::from(m - 1)) / BigInt::from(m)
}

/// Fixed-point enclosure of atanh-based ln((1+u)/(1-u)) = 2 sum
/// u^(2k+1)/(2k+1) for 0 <= u < 1/2, from directed-rounded mantissas of u.
/// Returns mantissas (lo, hi) of the logarithm.
fn ln_atanh_fx(u_lo: &BigInt, u_hi: &BigInt, bits: u32) -> (BigInt, BigInt) {
    debug_assert!(!u_lo.is_negative() && u_hi >= u_lo);
    debug_assert!(*u_hi < (BigInt::one() << (bits - 1)), "need u < 1/2");
    // Lower bound: floor arithmetic on u_lo, truncated series.
    // Upper bound: ceiling arithmetic on u_hi plus the tail bound
    // u^(2k+3)/((2k+3)(1 - u^2)) <= 2 u^(2k+3)/(2k+3) for u < 1/2,
    // plus one ulp per rounded operation (absorbed by ceiling rounding).
    let u2_lo = mul_floor(u_lo, u_lo, bits);
    let u2_hi = mul_ceil(u_hi, u_hi, bits);
    let mut term_lo = u_lo.clone();
    let mut term_hi = u_hi.clone();
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        sum_lo += div_floor_int(&term_lo, 2 * k + 1);
        sum_hi += div_ceil_int(&term_hi, 2 * k + 1);
        term_lo = mul_floor(&term_lo, &u2_lo, bits);
        term_hi = mul_ceil(&term_hi, &u2_hi, bits);
        k += 1;
        if term_hi <= BigInt::from(1 << 8) || k > 4 * bits as u64 {
            // Tail: 2 * term_hi / (2k+1) bounds the remaining series; the
            // cap on k cannot trigger for u < 1/2 but keeps this total.
            let tail = div_ceil_int(&(2 * &term_hi), 2 * k + 1) + 2;
            sum_hi += tail;
            break;
        }
    }
    (2 * sum_lo, 2 * sum_hi)
}

/// Mantissas of ln 2 at the requested precision.
fn ln2_fx(bits: u32) -> (BigInt, BigInt) {
    static CACHE: OnceLock<(BigInt, BigInt, u32)> = OnceLock::new();
    let (lo, hi, p) = CACHE.get_or_init(|| {
        let p = DEFAULT_PRECISION + 2 * GUARD;
        let third_lo = (BigInt::one() << p) / 3;
        let third_hi = &third_lo + 1;
        let (lo, hi) = ln_atanh_fx(&third_lo, &third_hi, p);
        (lo, hi, p)
    });
    debug_assert!(bits <= *p);
    ((lo >> (p - bits)) - 1, ((hi >> (p - bits)) + 1))
}

/// Enclosure of ln(x) for a positive rational x.
pub fn ln_interval(x: &BigRational, bits: u32) -> RationalInterval {
    assert!(x.is_positive(), "ln of a non-positive rational");
    if x.is_one() {
        return RationalInterval::zero();
    }
    if x < &BigRational::one() {
        return ln_interval(&x.recip(), bits).neg();
    }
    let p = bits + GUARD;
    // Range reduction x = 2^e * t with t in [1, 2).
    let mut e: u32 = 0;
    let two = BigRational::from(BigInt::from(2));
    let mut t = x.clone();
    while t >= two {
        t /= &two;
        e += 1;
    }
    // u = (t-1)/(t+1) in [0, 1/3), with directed rounding into fixed point.
    let u = (&t - BigRational::one()) / (&t + BigRational::one());
    let u_lo = fx_floor(&u, p);
    let u_hi = fx_ceil(&u, p);
    let (mut lo, mut hi) = ln_atanh_fx(&u_lo, &u_hi, p);
    if e > 0 {
        let (l2_lo, l2_hi) = ln2_fx(p);
        lo += BigInt::from(e) * l2_lo;
        hi += BigInt::from(e) * l2_hi;
    }
    RationalInterval::new(fx_to_rational(&lo, p), fx_to_rational(&hi, p))
}

/// Enclosure of ln over an interval of positive rationals.
pub fn ln_of_interval(x: &RationalInterval, bits: u32) -> RationalInterval {
    let lo = ln_interval(x.lo(), bits).lo().clone();
    let hi = ln_interval(x.hi(), bits).hi().clone();
    RationalInterval::new(lo, hi)
}

/// Fixed-point enclosure of e^f for mantissas of 0 <= f <= 1.
fn exp_unit_fx(f_lo: &BigInt, f_hi: &BigInt, bits: u32) -> (BigInt, BigInt) {
    debug_assert!(!f_lo.is_negative());
    debug_assert!(*f_hi <= (BigInt::one() << bits) + 1);
    let one = BigInt::one() << bits;
    let mut term_lo = one.clone();
    let mut term_hi = one.clone();
    let mut sum_lo = one.clone();
    let mut sum_hi = one;
    let mut k: u64 = 0;
    loop {
        k += 1;
        term_lo = div_floor_int(&mul_floor(&term_lo, f_lo, bits), k);
        term_hi = div_ceil_int(&mul_ceil(&term_hi, f_hi, bits), k);
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        if term_hi <= BigInt::from(1 << 8) || k > 4 * bits as u64 {
            // Tail of sum_{j>k} f^j/j! <= term * sum 2^-j <= 2 term for
            // f <= 1 and k >= 1.
            sum_hi += div_ceil_int(&(2 * &term_hi), 1) + 2;
            break;
        }
    }
    (sum_lo, sum_hi)
}

/// Mantissas of Euler's number.
fn euler_fx(bits: u32) -> (BigInt, BigInt) {
    static CACHE: OnceLock<(BigInt, BigInt, u32)> = OnceLock::new();
    let (lo, hi, p) = CACHE.get_or_init(|| {
        let p = DEFAULT_PRECISION + 2 * GUARD;
        let one = BigInt::one() << p;
        let (lo, hi) = exp_unit_fx(&one, &one, p);
        (lo, hi, p)
    });
    debug_assert!(bits <= *p);
    ((lo >> (p - bits)) - 1, ((hi >> (p - bits)) + 1))
}

/// Enclosure of e^x for rational x of either sign.
pub fn exp_interval(x: &BigRational, bits: u32) -> RationalInterval {
    if x.is_negative() {
        return exp_interval(&-x.clone(), bits).recip();
    }
    let p = bits + GUARD;
    let n = x.floor().to_integer();
    let f = x - BigRational::from(n.clone());
    let (f_lo_m, f_hi_m) = (fx_floor(&f, p), fx_ceil(&f, p));
    let (unit_lo, unit_hi) = exp_unit_fx(&f_lo_m, &f_hi_m, p);
    let base = RationalInterval::new(fx_to_rational(&unit_lo, p), fx_to_rational(&unit_hi, p));
    if n.is_zero() {
        return base;
    }
    let n_u32 = u32::try_from(&n).expect("exponent too large for enclosure");
    let (e_lo, e_hi) = euler_fx(p);
    let e_iv = RationalInterval::new(fx_to_rational(&e_lo, p), fx_to_rational(&e_hi, p));
    pow_binary(&e_iv, n_u32).mul(&base)
}

/// Interval power by binary exponentiation (all values positive here).
fn pow_binary(base: &RationalInterval, mut e: u32) -> RationalInterval {
    let mut acc = RationalInterval::point(BigRational::one());
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq);
        }
    }
    acc
}

/// Enclosure of e^x over an interval x.
pub fn exp_of_interval(x: &RationalInterval, bits: u32) -> RationalInterval {
    let lo = exp_interval(x.lo(), bits).lo().clone();
    let hi = exp_interval(x.hi(), bits).hi().clone();
    RationalInterval::new(lo, hi)
}

/// Enclosure of base^p for positive rational base and rational exponent p,
/// via exp(p * ln base); integer exponents stay exact.
pub fn pow_interval(base: &BigRational, p: &BigRational, bits: u32) -> RationalInterval {
    if p.is_integer() && !p.is_negative() {
        if let Ok(e) = u32::try_from(&p.to_integer()) {
            return pow_binary(&RationalInterval::point(base.clone()), e);
        }
    }
    let ln_b = ln_interval(base, bits);
    exp_of_interval(&ln_b.scale(p), bits)
}
