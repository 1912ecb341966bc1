//! Closed rational intervals guaranteed to contain the real value they
//! approximate. Endpoint arithmetic is exact, so no outward rounding is ever
//! needed.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{rat_pow, Rational};
use super::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QInterval {
    lo: Rational,
    hi: Rational,
}

impl QInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        QInterval { lo, hi }
    }

    pub fn point(value: Rational) -> Self {
        QInterval { lo: value.clone(), hi: value }
    }

    pub fn zero() -> Self {
        QInterval::point(Rational::zero())
    }

    pub fn one() -> Self {
        QInterval::point(Rational::one())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        QInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn neg(&self) -> Self {
        QInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_negative() {
            QInterval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            QInterval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        QInterval { lo, hi }
    }

    /// Tight interval power (handles even powers of mixed-sign intervals).
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return QInterval::one();
        }
        if n % 2 == 1 || !self.lo.is_negative() {
            return QInterval { lo: rat_pow(&self.lo, n), hi: rat_pow(&self.hi, n) };
        }
        if !self.hi.is_positive() {
            return QInterval { lo: rat_pow(&self.hi, n), hi: rat_pow(&self.lo, n) };
        }
        // straddles zero, even power
        let lo_pow = rat_pow(&self.lo, n);
        let hi_pow = rat_pow(&self.hi, n);
        QInterval { lo: Rational::zero(), hi: lo_pow.max(hi_pow) }
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// `Some(sign)` when the interval pins the sign down, `None` otherwise.
    pub fn determined_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// Approximate midpoint as f64 (display / candidate geometry only).
    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back on a coarse quotient when numerator/denominator overflow
        (r.numer().to_f64().unwrap_or(f64::MAX)) / (r.denom().to_f64().unwrap_or(1.0))
    })
}

impl fmt::Display for QInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
