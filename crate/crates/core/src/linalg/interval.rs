use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Closed interval with exact rational endpoints, lo <= hi.
///
/// Used wherever a real quantity (Perron eigenvalue, logarithm, heat trace)
/// must be reported with a certificate instead of a float.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RationalInterval { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(BigRational::from(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_int(&self, v: i64) -> bool {
        self.contains(&BigRational::from(BigInt::from(v)))
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Distance between the intervals; zero when they overlap.
    pub fn gap(&self, other: &RationalInterval) -> BigRational {
        if self.intersects(other) {
            BigRational::zero()
        } else if self.hi < other.lo {
            &other.lo - &self.hi
        } else {
            &self.lo - &other.hi
        }
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }

    pub fn scale(&self, c: &BigRational) -> RationalInterval {
        if c.is_negative() {
            RationalInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RationalInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Reciprocal; panics if the interval contains zero.
    pub fn recip(&self) -> RationalInterval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        RationalInterval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, other: &RationalInterval) -> RationalInterval {
        self.mul(&other.recip())
    }

    /// Integer power with correct endpoint selection.
    pub fn powi(&self, e: u32) -> RationalInterval {
        let mut acc = RationalInterval::point(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(RationalInterval { lo, hi })
        } else {
            None
        }
    }

    /// Outward-rounds both endpoints to dyadics with denominator 2^bits.
    /// Keeps coefficient growth in long interval computations under control
    /// while preserving the enclosure.
    pub fn compress(&self, bits: u32) -> RationalInterval {
        RationalInterval {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }

    /// Midpoint as f64, for display only.
    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap_or(f64::NAN)
    }
}

pub fn dyadic_floor(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

pub fn dyadic_ceil(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} ± {:.3e}]",
            self.midpoint_f64(),
            self.width_f64() / 2.0
        )
    }
}

// Serialized with exact endpoints plus float hints for human consumers.
impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RationalInterval", 4)?;
        s.serialize_field("lo", &self.lo.to_string())?;
        s.serialize_field("hi", &self.hi.to_string())?;
        s.serialize_field("approx", &self.midpoint_f64())?;
        s.serialize_field("width", &self.width_f64())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_respects_enclosure() {
        let a = RationalInterval::new(rat(1, 2), rat(3, 4));
        let b = RationalInterval::new(rat(-1, 3), rat(1, 3));
        let sum = a.add(&b);
        assert!(sum.contains(&(rat(1, 2) + rat(0, 1))));
        let prod = a.mul(&b);
        assert!(prod.contains(&(rat(3, 4) * rat(-1, 3))));
        assert!(prod.contains(&BigRational::zero()));
    }

    #[test]
    fn compress_is_outward() {
        let x = RationalInterval::new(rat(1, 3), rat(2, 3));
        let c = x.compress(8);
        assert!(c.contains_interval(&x));
        assert!(c.width() <= x.width() + rat(2, 256));
    }

    #[test]
    fn gap_measures_distance() {
        let a = RationalInterval::new(rat(0, 1), rat(1, 1));
        let b = RationalInterval::new(rat(3, 2), rat(2, 1));
        assert_eq!(a.gap(&b), rat(1, 2));
        assert_eq!(a.gap(&a), BigRational::zero());
    }
}
