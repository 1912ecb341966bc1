//! Exact representation of the reals in play: arbitrary-precision rationals,
//! declared symbol spaces, rational linear combinations of symbols ([`QNum`]),
//! interval approximations for sign queries, and polynomials over symbols.
//!
//! Symbols are *declared* Q-linearly independent; every equality answer is
//! conditional on that declaration. Sign and order queries go through interval
//! arithmetic over the declared approximations and report
//! [`IndeterminateSign`] instead of guessing when the precision is too low.

mod interval;
mod qnum;
pub mod rational;
mod sympoly;
mod symspace;
mod unipoly;

pub use interval::QInterval;
pub use qnum::QNum;
pub use rational::Rational;
pub use sympoly::SymPoly;
pub(crate) use symspace::is_identifier;
pub use symspace::{Symbol, SymbolSpace};
pub use unipoly::{finite_difference_power, UniPoly};

use thiserror::Error;

/// Sign of an exact real value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// A sign or order query could not be decided at the declared symbol
/// precision: the value is symbolically nonzero but its interval straddles 0.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("sign indeterminate at declared precision: interval [{lo}, {hi}] straddles zero")]
pub struct IndeterminateSign {
    pub lo: Rational,
    pub hi: Rational,
}

/// Errors from building a [`SymbolSpace`].
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("duplicate symbol name `{0}`")]
    DuplicateName(String),
    #[error("symbol `{0}`: eps must be > 0")]
    NonPositiveEps(String),
    #[error("invalid symbol name `{0}`")]
    BadName(String),
}

/// `finite_difference_power` rejects nonpositive shifts.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("finite difference shift must be positive, got {0}")]
pub struct NonPositiveShift(pub Rational);
