//! Sparse multivariate polynomials over the declared symbols with rational
//! coefficients. These carry the values of additive functions (products of
//! sides, determinants, signed vertex sums), so equality must be exact and
//! interval evaluation must always contain the real value.
//!
//! Symbolic nonzeroness does NOT certify a nonzero real value: symbols are
//! declared Q-linearly independent, not algebraically independent (s1²−2 is
//! symbolically nonzero but vanishes when s1 = √2). Certificates therefore
//! always pair a polynomial with an interval sign witness.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{rat_pow, Rational};
use super::{QInterval, QNum, SymbolSpace};

type Monomial = Vec<u32>;

#[derive(Clone, Debug)]
pub struct SymPoly {
    space: SymbolSpace,
    /// exponent vector over the declared symbols -> nonzero coefficient
    terms: BTreeMap<Monomial, Rational>,
}

impl SymPoly {
    pub fn zero(space: &SymbolSpace) -> Self {
        SymPoly { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &SymbolSpace, value: Rational) -> Self {
        let mut p = SymPoly::zero(space);
        if !value.is_zero() {
            p.terms.insert(vec![0; space.symbol_count()], value);
        }
        p
    }

    pub fn one(space: &SymbolSpace) -> Self {
        SymPoly::constant(space, Rational::one())
    }

    pub fn from_qnum(x: &QNum) -> Self {
        let space = x.space();
        let mut p = SymPoly::constant(space, x.coords()[0].clone());
        for (i, c) in x.coords()[1..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = vec![0u32; space.symbol_count()];
            mono[i] = 1;
            p.terms.insert(mono, c.clone());
        }
        p
    }

    pub fn space(&self) -> &SymbolSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(r)` when the polynomial is a constant (including zero).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (mono, coeff) = self.terms.iter().next().unwrap();
                if mono.iter().all(|&e| e == 0) {
                    Some(coeff.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += coeff;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert!(self.space.same_space(&other.space), "polynomial arithmetic across spaces");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymPoly {
        SymPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(&self.space);
        }
        SymPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert!(self.space.same_space(&other.space), "polynomial arithmetic across spaces");
        let mut out = SymPoly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(mono, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> SymPoly {
        let mut out = SymPoly::one(&self.space);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Interval arithmetic over the symbol intervals; the result contains the
    /// real value of the polynomial.
    pub fn eval_interval(&self) -> QInterval {
        let mut acc = QInterval::zero();
        for (mono, coeff) in &self.terms {
            let mut term = QInterval::point(coeff.clone());
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&self.space.coord_interval(i + 1).pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Exact evaluation with a rational value substituted for each symbol
    /// (test oracle for interval soundness).
    pub fn eval_at_rationals(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.space.symbol_count());
        let mut acc = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    term *= rat_pow(&values[i], e);
                }
            }
            acc += term;
        }
        acc
    }
}

impl PartialEq for SymPoly {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_space(&other.space) && self.terms == other.terms
    }
}

impl Eq for SymPoly {}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            if idx == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = mono.iter().all(|&e| e == 0);
            if is_const || !mag.is_one() {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.space.coord_name(i + 1))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
