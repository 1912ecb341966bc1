//! Declared symbol spaces.
//!
//! A [`SymbolSpace`] is a finite list of named real symbols, each with a
//! rational approximation interval `[approx−eps, approx+eps]`. The user
//! declares the symbols Q-linearly independent of each other and of 1; that
//! declaration is an input-level assertion and is not (and cannot be)
//! verified from finite data. Coordinate 0 of every vector over a space is
//! the implicit rational unit, carried with the exact interval `[1, 1]`.

use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::rational::Rational;
use super::{QInterval, SpaceError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    name: String,
    approx: Rational,
    eps: Rational,
}

impl Symbol {
    pub fn new(name: impl Into<String>, approx: Rational, eps: Rational) -> Self {
        Symbol { name: name.into(), approx, eps }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn approx(&self) -> &Rational {
        &self.approx
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn interval(&self) -> QInterval {
        QInterval::new(&self.approx - &self.eps, &self.approx + &self.eps)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct SpaceInner {
    symbols: Vec<Symbol>,
}

/// Shared handle to a symbol space. Cheap to clone; all values built over a
/// space hold one of these.
#[derive(Clone, Debug)]
pub struct SymbolSpace {
    inner: Arc<SpaceInner>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolSpace {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, SpaceError> {
        for (i, s) in symbols.iter().enumerate() {
            if !is_identifier(&s.name) {
                return Err(SpaceError::BadName(s.name.clone()));
            }
            if !s.eps.is_positive() {
                return Err(SpaceError::NonPositiveEps(s.name.clone()));
            }
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(SpaceError::DuplicateName(s.name.clone()));
            }
        }
        Ok(SymbolSpace { inner: Arc::new(SpaceInner { symbols }) })
    }

    /// The space with no symbols: plain rationals.
    pub fn rational_only() -> Self {
        SymbolSpace { inner: Arc::new(SpaceInner { symbols: Vec::new() }) }
    }

    /// Number of coordinates of a vector over this space (unit + symbols).
    pub fn dim(&self) -> usize {
        1 + self.inner.symbols.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.inner.symbols.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.inner.symbols
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.inner.symbols.iter().position(|s| s.name == name)
    }

    /// Interval of coordinate `i` (0 is the exact unit).
    pub fn coord_interval(&self, i: usize) -> QInterval {
        if i == 0 {
            QInterval::one()
        } else {
            self.inner.symbols[i - 1].interval()
        }
    }

    /// Name of coordinate `i` for display (`1` for the unit).
    pub fn coord_name(&self, i: usize) -> &str {
        if i == 0 {
            "1"
        } else {
            self.inner.symbols[i - 1].name()
        }
    }

    pub fn same_space(&self, other: &SymbolSpace) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl PartialEq for SymbolSpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other)
    }
}

impl Eq for SymbolSpace {}

impl fmt::Display for SymbolSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "space{{")?;
        for (i, s) in self.inner.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", s.name)?;
        }
        write!(f, "}}")
    }
}
