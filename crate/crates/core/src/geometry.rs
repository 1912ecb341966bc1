//! Axis-aligned boxes, placed boxes, dissections, and the exact tiling
//! verifier.
//!
//! Verification refines all piece bounds per axis into a full product grid
//! and checks that every cell of the whole box is covered by exactly one
//! piece. Cells are half-open `[lo, hi)` per axis, so pieces touching at a
//! boundary are disjoint. Desk-scale dissections stay far below the cell
//! cap; anything above it is refused rather than approximated.

use std::cmp::Ordering;

use thiserror::Error;

use crate::exactnum::{IndeterminateSign, QNum, Sign, SymPoly, SymbolSpace};

/// Grids above this many cells are refused by [`verify_tiling`].
pub const DEFAULT_CELL_CAP: u128 = 1 << 22;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error(transparent)]
    Indeterminate(#[from] IndeterminateSign),
    #[error("side along axis {axis} is not positive")]
    NonPositiveSide { axis: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("refinement grid has {cells} cells, above the cap of {cap}")]
    GridTooLarge { cells: u128, cap: u128 },
    #[error("a dissection needs at least one piece")]
    NoPieces,
    #[error("cut must fall strictly inside the side")]
    BadCut,
}

/// An axis-aligned box given by its side lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    sides: Vec<QNum>,
}

impl BoxSpec {
    pub fn new(sides: Vec<QNum>) -> Result<Self, GeomError> {
        assert!(!sides.is_empty(), "a box needs at least one axis");
        for (axis, s) in sides.iter().enumerate() {
            if s.sign()? != Sign::Positive {
                return Err(GeomError::NonPositiveSide { axis });
            }
        }
        Ok(BoxSpec { sides })
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[QNum] {
        &self.sides
    }

    pub fn side(&self, axis: usize) -> &QNum {
        &self.sides[axis]
    }

    pub fn space(&self) -> &SymbolSpace {
        self.sides[0].space()
    }

    /// Product of the sides as a polynomial over the symbols.
    pub fn volume_poly(&self) -> SymPoly {
        let mut v = SymPoly::one(self.space());
        for s in &self.sides {
            v = v.mul(&SymPoly::from_qnum(s));
        }
        v
    }

    /// Number of distinct values in the multiset of sides (exact equality).
    pub fn distinct_side_count(&self) -> usize {
        let mut distinct: Vec<&QNum> = Vec::new();
        for s in &self.sides {
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        distinct.len()
    }

    /// A k-bar has at most `k` distinct side lengths.
    pub fn is_k_bar(&self, k: usize) -> bool {
        self.distinct_side_count() <= k
    }
}

/// A box placed at an exact offset (lower bound per axis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedBox {
    offset: Vec<QNum>,
    spec: BoxSpec,
}

impl PlacedBox {
    pub fn new(offset: Vec<QNum>, spec: BoxSpec) -> Result<Self, GeomError> {
        if offset.len() != spec.dim() {
            return Err(GeomError::DimensionMismatch { expected: spec.dim(), got: offset.len() });
        }
        Ok(PlacedBox { offset, spec })
    }

    pub fn at_origin(spec: BoxSpec) -> Self {
        let offset = spec.sides().iter().map(|s| QNum::zero(s.space())).collect();
        PlacedBox { offset, spec }
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn spec(&self) -> &BoxSpec {
        &self.spec
    }

    pub fn offset(&self) -> &[QNum] {
        &self.offset
    }

    pub fn lower(&self, axis: usize) -> &QNum {
        &self.offset[axis]
    }

    pub fn upper(&self, axis: usize) -> QNum {
        &self.offset[axis] + self.spec.side(axis)
    }

    /// Vertex selected by an upper/lower choice per axis (bit `a` of `mask`
    /// set = upper bound along axis `a`).
    pub fn vertex(&self, mask: usize) -> Vec<QNum> {
        (0..self.dim())
            .map(|a| if mask & (1 << a) != 0 { self.upper(a) } else { self.offset[a].clone() })
            .collect()
    }

    /// Split by an axis-aligned hyperplane `first_len` above the lower bound.
    pub fn split_at(&self, axis: usize, first_len: &QNum) -> Result<(PlacedBox, PlacedBox), GeomError> {
        let side = self.spec.side(axis);
        let rest = side - first_len;
        if first_len.sign()? != Sign::Positive || rest.sign()? != Sign::Positive {
            return Err(GeomError::BadCut);
        }
        let mut lo_sides = self.spec.sides().to_vec();
        lo_sides[axis] = first_len.clone();
        let mut hi_sides = self.spec.sides().to_vec();
        hi_sides[axis] = rest;
        let mut hi_offset = self.offset.clone();
        hi_offset[axis] = &self.offset[axis] + first_len;
        Ok((
            PlacedBox::new(self.offset.clone(), BoxSpec::new(lo_sides)?)?,
            PlacedBox::new(hi_offset, BoxSpec::new(hi_sides)?)?,
        ))
    }
}

/// A whole box plus a list of placed pieces. Validity is established only by
/// [`verify_tiling`].
#[derive(Clone, Debug)]
pub struct Dissection {
    pub whole: PlacedBox,
    pub pieces: Vec<PlacedBox>,
}

impl Dissection {
    pub fn new(whole: PlacedBox, pieces: Vec<PlacedBox>) -> Result<Self, GeomError> {
        if pieces.is_empty() {
            return Err(GeomError::NoPieces);
        }
        for p in &pieces {
            if p.dim() != whole.dim() {
                return Err(GeomError::DimensionMismatch { expected: whole.dim(), got: p.dim() });
            }
        }
        Ok(Dissection { whole, pieces })
    }

    pub fn dim(&self) -> usize {
        self.whole.dim()
    }
}

/// Why a dissection is not an exact partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingViolation {
    /// A piece sticks out of the whole box along `axis`.
    OutOfBounds { piece: usize, axis: usize },
    /// First failing refinement cell: covered `count` times by `pieces`
    /// (0 = gap, ≥2 = overlap).
    Cell { cell: Vec<usize>, count: usize, pieces: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Valid,
    Violation(TilingViolation),
}

impl VerifyOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyOutcome::Valid)
    }
}

/// Iterate all index tuples below `dims`, lexicographically.
pub fn index_product(dims: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let total: usize = dims.iter().product();
    let mut current = vec![0usize; dims.len()];
    let mut emitted = 0usize;
    std::iter::from_fn(move || {
        if emitted == total || dims.is_empty() {
            return None;
        }
        let out = current.clone();
        emitted += 1;
        for axis in (0..dims.len()).rev() {
            current[axis] += 1;
            if current[axis] < dims[axis] {
                break;
            }
            current[axis] = 0;
        }
        Some(out)
    })
}

fn insert_sorted(grid: &mut Vec<QNum>, v: &QNum) -> Result<(), IndeterminateSign> {
    let mut lo = 0usize;
    let mut hi = grid.len();
    while lo < hi {
        let mid = (lo + hi) / 2;
        match v.compare(&grid[mid])? {
            Ordering::Less => hi = mid,
            Ordering::Greater => lo = mid + 1,
            Ordering::Equal => return Ok(()),
        }
    }
    grid.insert(lo, v.clone());
    Ok(())
}

fn grid_index(grid: &[QNum], v: &QNum) -> usize {
    grid.iter().position(|g| g == v).expect("bound was inserted into the grid")
}

/// Exact partition check by full grid refinement with the default cell cap.
pub fn verify_tiling(d: &Dissection) -> Result<VerifyOutcome, GeomError> {
    verify_tiling_capped(d, DEFAULT_CELL_CAP)
}

pub fn verify_tiling_capped(d: &Dissection, cell_cap: u128) -> Result<VerifyOutcome, GeomError> {
    let n = d.dim();

    // pieces must stay inside the whole along every axis
    for (pi, p) in d.pieces.iter().enumerate() {
        for axis in 0..n {
            if p.lower(axis).compare(d.whole.lower(axis))? == Ordering::Less
                || p.upper(axis).compare(&d.whole.upper(axis))? == Ordering::Greater
            {
                return Ok(VerifyOutcome::Violation(TilingViolation::OutOfBounds {
                    piece: pi,
                    axis,
                }));
            }
        }
    }

    // X_k: sorted distinct bounds per axis
    let mut grids: Vec<Vec<QNum>> = Vec::with_capacity(n);
    for axis in 0..n {
        let mut grid: Vec<QNum> = Vec::new();
        insert_sorted(&mut grid, d.whole.lower(axis))?;
        insert_sorted(&mut grid, &d.whole.upper(axis))?;
        for p in &d.pieces {
            insert_sorted(&mut grid, p.lower(axis))?;
            insert_sorted(&mut grid, &p.upper(axis))?;
        }
        grids.push(grid);
    }

    let cell_dims: Vec<usize> = grids.iter().map(|g| g.len() - 1).collect();
    let cells: u128 = cell_dims.iter().map(|&c| c as u128).product();
    if cells > cell_cap {
        return Err(GeomError::GridTooLarge { cells, cap: cell_cap });
    }

    let strides: Vec<usize> = {
        let mut s = vec![1usize; n];
        for axis in (0..n.saturating_sub(1)).rev() {
            s[axis] = s[axis + 1] * cell_dims[axis + 1];
        }
        s
    };
    let flatten = |idx: &[usize]| -> usize { idx.iter().zip(&strides).map(|(i, s)| i * s).sum() };

    const UNCOVERED: usize = usize::MAX;
    let mut cover = vec![UNCOVERED; cells as usize];

    // per-piece cell ranges; every piece bound is a grid point by construction,
    // so each piece is exactly a union of cells
    let ranges: Vec<Vec<(usize, usize)>> = d
        .pieces
        .iter()
        .map(|p| {
            (0..n)
                .map(|axis| {
                    let lo = grid_index(&grids[axis], p.lower(axis));
                    let hi = grid_index(&grids[axis], &p.upper(axis));
                    (lo, hi)
                })
                .collect()
        })
        .collect();

    for (pi, range) in ranges.iter().enumerate() {
        let spans: Vec<usize> = range.iter().map(|(lo, hi)| hi - lo).collect();
        for rel in index_product(spans) {
            let idx: Vec<usize> = rel.iter().zip(range).map(|(r, (lo, _))| lo + r).collect();
            let flat = flatten(&idx);
            if cover[flat] != UNCOVERED {
                let offenders: Vec<usize> = ranges
                    .iter()
                    .enumerate()
                    .filter(|(_, rg)| rg.iter().zip(&idx).all(|((lo, hi), i)| lo <= i && i < hi))
                    .map(|(j, _)| j)
                    .collect();
                return Ok(VerifyOutcome::Violation(TilingViolation::Cell {
                    cell: idx,
                    count: offenders.len(),
                    pieces: offenders,
                }));
            }
            cover[flat] = pi;
        }
    }

    if let Some(flat) = cover.iter().position(|&c| c == UNCOVERED) {
        let mut rem = flat;
        let mut idx = vec![0usize; n];
        for axis in 0..n {
            idx[axis] = rem / strides[axis];
            rem %= strides[axis];
        }
        return Ok(VerifyOutcome::Violation(TilingViolation::Cell {
            cell: idx,
            count: 0,
            pieces: Vec::new(),
        }));
    }

    Ok(VerifyOutcome::Valid)
}
