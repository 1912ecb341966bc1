//! Exact-arithmetic toolkit for axis-aligned box dissections.
//!
//! Decides whether an n-dimensional box can be dissected into k-bars (boxes
//! with at most k distinct side lengths), constructs explicit dissections
//! when possible, and emits machine-checkable impossibility certificates
//! (additive functions of Dehn type, vertex/coset invariants) when not.
//!
//! Every decision path runs over exact rationals; floating point appears only
//! in candidate construction for the positive-basis search (verified exactly
//! afterwards) and in SVG output coordinates.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share and call across threads.

// error payloads carry exact rationals and whole certificates; boxing every
// variant buys nothing at desk scale
#![allow(clippy::result_large_err)]

pub mod certify;
pub mod dissector;
pub mod exactnum;
pub mod formats;
pub mod geometry;
pub mod goodness;
pub mod packer;
pub mod posbasis;
pub mod qlinalg;
pub mod svg;

pub use exactnum::{QInterval, QNum, Rational, Sign, SymPoly, SymbolSpace, UniPoly};
pub use geometry::{BoxSpec, Dissection, PlacedBox};
pub use qlinalg::{QFunctional, QMatrix};
