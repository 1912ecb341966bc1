//! Constructive dissections: product grids from per-axis cut lists, and the
//! k-bar construction that cuts every axis into positive-integer-basis
//! segments. When the rank exceeds k the dissector hands back the
//! impossibility certificate instead.
//!
//! The classical 3D special case — sides with an integer relation
//! k·a + m·b = n·c split into two commensurable-pair parts — needs no
//! separate code path: any rank-2 triple gets a positive integer basis and
//! the same grid construction covers it.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::certify::{bar_impossibility_certificate, BarOutcome, Certificate, CertifyError};
use crate::exactnum::QNum;
use crate::geometry::{index_product, BoxSpec, Dissection, GeomError, PlacedBox, DEFAULT_CELL_CAP};
use crate::posbasis::{positive_integer_basis, PosBasisError, PosBasisParams, PosBasisResult};
use crate::qlinalg::rank_over_q;

#[derive(Debug, Error)]
pub enum DissectError {
    /// The rank of the sides exceeds k; the certificate proves no dissection
    /// into k-bars exists.
    #[error("box is not dissectable into {k}-bars (rank {rank} > k); certificate issued")]
    NotDissectable { k: usize, rank: usize, certificate: Box<Certificate> },
    #[error("cut segments along axis {axis} do not sum to the side length")]
    SegmentSumMismatch { axis: usize },
    #[error("expected {expected} cut lists, got {got}")]
    CutListCount { expected: usize, got: usize },
    #[error("construction would produce {pieces} pieces, above the cap of {cap}")]
    TooManyPieces { pieces: BigInt, cap: u128 },
    #[error(transparent)]
    PosBasis(#[from] PosBasisError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

/// The product-grid dissection of `spec` cut per axis into the given segment
/// lengths. Pieces are ordered lexicographically by cell index.
pub fn grid_dissection(spec: &BoxSpec, cuts: &[Vec<QNum>]) -> Result<Dissection, DissectError> {
    let n = spec.dim();
    if cuts.len() != n {
        return Err(DissectError::CutListCount { expected: n, got: cuts.len() });
    }
    for (axis, segments) in cuts.iter().enumerate() {
        let mut sum = QNum::zero(spec.space());
        for s in segments {
            sum = &sum + s;
        }
        if &sum != spec.side(axis) {
            return Err(DissectError::SegmentSumMismatch { axis });
        }
    }
    // prefix offsets per axis
    let offsets: Vec<Vec<QNum>> = cuts
        .iter()
        .map(|segments| {
            let mut acc = QNum::zero(spec.space());
            let mut offs = Vec::with_capacity(segments.len());
            for s in segments {
                offs.push(acc.clone());
                acc = &acc + s;
            }
            offs
        })
        .collect();

    let counts: Vec<usize> = cuts.iter().map(Vec::len).collect();
    let mut pieces = Vec::with_capacity(counts.iter().product());
    for idx in index_product(counts) {
        let offset: Vec<QNum> = idx.iter().enumerate().map(|(a, &i)| offsets[a][i].clone()).collect();
        let sides: Vec<QNum> = idx.iter().enumerate().map(|(a, &i)| cuts[a][i].clone()).collect();
        pieces.push(PlacedBox::new(offset, BoxSpec::new(sides)?)?);
    }
    Ok(Dissection::new(PlacedBox::at_origin(spec.clone()), pieces)?)
}

/// A k-bar dissection plan: the integer basis actually used plus the grid.
#[derive(Debug)]
pub struct KBarPlan {
    pub basis: PosBasisResult,
    pub dissection: Dissection,
}

impl KBarPlan {
    /// Π_j (Σ_i c_ji): what the grid construction must produce.
    pub fn expected_piece_count(&self) -> BigInt {
        let ints = self.basis.integer_coeffs.as_ref().expect("integer basis");
        ints.iter()
            .map(|row| row.iter().sum::<BigInt>())
            .product()
    }
}

pub fn plan_k_bar_dissection(
    spec: &BoxSpec,
    k: usize,
    params: &PosBasisParams,
) -> Result<KBarPlan, DissectError> {
    assert!(k >= 1, "k must be at least 1");
    let sides = spec.sides();
    let rank = rank_over_q(sides);
    if rank > k {
        let certificate = match bar_impossibility_certificate(spec, k)? {
            BarOutcome::Proof(c) => c,
            BarOutcome::Dissectable => unreachable!("rank > k cannot be dissectable"),
        };
        return Err(DissectError::NotDissectable { k, rank, certificate });
    }
    let basis = positive_integer_basis(sides, params)?;
    let ints = basis.integer_coeffs.as_ref().expect("integer basis");

    let piece_count: BigInt = ints.iter().map(|row| row.iter().sum::<BigInt>()).product();
    if piece_count > BigInt::from(DEFAULT_CELL_CAP) {
        return Err(DissectError::TooManyPieces { pieces: piece_count, cap: DEFAULT_CELL_CAP });
    }

    // per axis: c_j1 segments of e_1, then c_j2 of e_2, … (ascending basis order)
    let cuts: Vec<Vec<QNum>> = ints
        .iter()
        .map(|row| {
            let mut segments = Vec::new();
            for (i, count) in row.iter().enumerate() {
                let reps = count.to_usize().expect("piece cap bounds the repetitions");
                for _ in 0..reps {
                    segments.push(basis.basis[i].clone());
                }
            }
            segments
        })
        .collect();

    let dissection = grid_dissection(spec, &cuts)?;
    Ok(KBarPlan { basis, dissection })
}

/// Dissect the box into k-bars, or fail with the impossibility certificate.
pub fn dissect_into_k_bars(spec: &BoxSpec, k: usize) -> Result<Dissection, DissectError> {
    Ok(plan_k_bar_dissection(spec, k, &PosBasisParams::default())?.dissection)
}
