//! Dense univariate polynomials over the rationals and the iterated
//! finite-difference operator Δ_a φ(x) = φ(x+a) − φ(x).
//!
//! Applying Δ with n positive shifts to x^k yields the zero polynomial when
//! n > k, and otherwise a polynomial of degree k−n with all coefficients
//! nonnegative and positive leading (and, for n ≥ 1, constant) coefficient —
//! hence positive for x ≥ 0. That positivity is what coset certificates for
//! good-box impossibility lean on.

use std::fmt;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use super::rational::{rat_pow, Rational};
use super::NonPositiveShift;

/// Coefficients in ascending degree order; trailing zeros trimmed, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// The monomial x^k.
    pub fn x_power(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// p(x+a), expanded by the binomial theorem.
    pub fn compose_shift(&self, a: &Rational) -> UniPoly {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // c * (x+a)^i
            for (j, item) in out.iter_mut().enumerate().take(i + 1) {
                let binom = Rational::from_integer(binomial(i.into(), j.into()));
                *item += c * binom * rat_pow(a, (i - j) as u32);
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Δ_a p = p(x+a) − p(x).
    pub fn forward_difference(&self, a: &Rational) -> UniPoly {
        self.compose_shift(a).sub(self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Δ_{a_1}…Δ_{a_n} x^k for positive rational shifts.
pub fn finite_difference_power(
    k: usize,
    shifts: &[Rational],
) -> Result<UniPoly, NonPositiveShift> {
    for a in shifts {
        if !a.is_positive() {
            return Err(NonPositiveShift(a.clone()));
        }
    }
    let mut p = UniPoly::x_power(k);
    for a in shifts {
        p = p.forward_difference(a);
    }
    Ok(p)
}
