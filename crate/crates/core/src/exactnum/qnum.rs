//! Exact reals as rational coordinate vectors over a symbol space.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::{IndeterminateSign, QInterval, Sign, SymbolSpace};

/// A rational linear combination of 1 and the declared symbols.
///
/// Two values over the same space are equal as reals iff their coordinates
/// are identical (that is exactly what the independence declaration buys).
/// Arithmetic is coordinatewise and exact.
#[derive(Clone, Debug)]
pub struct QNum {
    space: SymbolSpace,
    coords: Vec<Rational>,
}

impl QNum {
    pub fn new(space: SymbolSpace, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), space.dim(), "coordinate count must match space dimension");
        QNum { space, coords }
    }

    pub fn from_rational(space: &SymbolSpace, value: Rational) -> Self {
        let mut coords = vec![Rational::zero(); space.dim()];
        coords[0] = value;
        QNum { space: space.clone(), coords }
    }

    pub fn from_integer(space: &SymbolSpace, value: i64) -> Self {
        QNum::from_rational(space, Rational::from_integer(value.into()))
    }

    /// The `idx`-th declared symbol as a value.
    pub fn symbol(space: &SymbolSpace, idx: usize) -> Self {
        let mut coords = vec![Rational::zero(); space.dim()];
        coords[1 + idx] = Rational::one();
        QNum { space: space.clone(), coords }
    }

    pub fn zero(space: &SymbolSpace) -> Self {
        QNum::from_rational(space, Rational::zero())
    }

    pub fn one(space: &SymbolSpace) -> Self {
        QNum::from_rational(space, Rational::one())
    }

    pub fn space(&self) -> &SymbolSpace {
        &self.space
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// `Some(r)` when the value has no symbol component.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Rational::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QNum {
            space: self.space.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Interval guaranteed to contain the real value.
    pub fn eval_interval(&self) -> QInterval {
        let mut acc = QInterval::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.space.coord_interval(i).scale(c));
        }
        acc
    }

    /// Exact sign: `Zero` iff all coordinates vanish, otherwise decided by
    /// interval evaluation.
    pub fn sign(&self) -> Result<Sign, IndeterminateSign> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        let iv = self.eval_interval();
        match iv.determined_sign() {
            Some(s) => Ok(s),
            None => Err(IndeterminateSign { lo: iv.lo().clone(), hi: iv.hi().clone() }),
        }
    }

    pub fn is_positive(&self) -> Result<bool, IndeterminateSign> {
        Ok(self.sign()? == Sign::Positive)
    }

    /// Order two values in the same space. `Equal` iff coordinates match.
    pub fn compare(&self, other: &QNum) -> Result<Ordering, IndeterminateSign> {
        assert!(self.space.same_space(&other.space), "compare across symbol spaces");
        if self.coords == other.coords {
            return Ok(Ordering::Equal);
        }
        match (self - other).sign()? {
            Sign::Positive => Ok(Ordering::Greater),
            Sign::Negative => Ok(Ordering::Less),
            // sign() returns Zero only for all-zero coordinates, excluded above
            Sign::Zero => unreachable!("distinct coordinates cannot have exact zero sign"),
        }
    }
}

impl PartialEq for QNum {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_space(&other.space) && self.coords == other.coords
    }
}

impl Eq for QNum {}

fn zip_coords(a: &QNum, b: &QNum, f: impl Fn(&Rational, &Rational) -> Rational) -> QNum {
    assert!(a.space.same_space(&b.space), "arithmetic across symbol spaces");
    QNum {
        space: a.space.clone(),
        coords: a.coords.iter().zip(&b.coords).map(|(x, y)| f(x, y)).collect(),
    }
}

impl Add for &QNum {
    type Output = QNum;
    fn add(self, rhs: &QNum) -> QNum {
        zip_coords(self, rhs, |x, y| x + y)
    }
}

impl Sub for &QNum {
    type Output = QNum;
    fn sub(self, rhs: &QNum) -> QNum {
        zip_coords(self, rhs, |x, y| x - y)
    }
}

impl Neg for &QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        QNum { space: self.space.clone(), coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for QNum {
    /// Linear-combination text: `3/2 + 1*s1 - 2*s2`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{}", self.space.coord_name(i))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
