//! Exact linear algebra over Q: ranks of spans, dual functionals, linear
//! system solving, and integer-lattice membership.
//!
//! Pivoting is deterministic (left-to-right, first nonzero), so independent
//! subsets, dual functionals, and the solutions embedded in certificate files
//! are reproducible across runs.

mod hnf;

pub use hnf::hermite_normal_form;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{QNum, Rational, SymbolSpace};

/// Inputs to `dual_functionals` must be Q-linearly independent.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("input lengths are Q-linearly dependent (rank {rank} < count {count})")]
pub struct DependentInput {
    pub rank: usize,
    pub count: usize,
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        QMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Reduced row echelon form plus the pivot column per pivot row.
    /// Deterministic: scans columns left to right, picks the first nonzero.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.entries.swap(row * m.cols + c, pr * m.cols + c);
                }
            }
            let inv = m.at(row, col).recip();
            for c in col..m.cols {
                let v = m.at(row, c) * &inv;
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &factor * m.at(row, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by exact elimination (square matrices).
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if pr != col {
                for c in 0..n {
                    m.entries.swap(col * n + c, pr * n + c);
                }
                det = -det;
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            let inv = pivot.recip();
            for r in col + 1..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col) * &inv;
                    for c in col..n {
                        let v = m.at(r, c) - &factor * m.at(col, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
        }
        det
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A Q-linear functional as a rational covector over the symbol space:
/// `f(x) = dot(row, coords(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFunctional {
    space: SymbolSpace,
    row: Vec<Rational>,
}

impl QFunctional {
    pub fn new(space: SymbolSpace, row: Vec<Rational>) -> Self {
        assert_eq!(row.len(), space.dim());
        QFunctional { space, row }
    }

    pub fn space(&self) -> &SymbolSpace {
        &self.space
    }

    pub fn row(&self) -> &[Rational] {
        &self.row
    }

    pub fn apply(&self, x: &QNum) -> Rational {
        assert!(self.space.same_space(x.space()), "functional applied across spaces");
        self.row.iter().zip(x.coords()).map(|(a, b)| a * b).sum()
    }

    /// Pointwise linear combination `p·self + q·other`.
    pub fn combine(&self, p: &Rational, other: &QFunctional, q: &Rational) -> QFunctional {
        assert!(self.space.same_space(&other.space));
        let row = self
            .row
            .iter()
            .zip(&other.row)
            .map(|(a, b)| a * p + b * q)
            .collect();
        QFunctional { space: self.space.clone(), row }
    }
}

fn coord_matrix(lengths: &[QNum]) -> QMatrix {
    assert!(!lengths.is_empty(), "empty length list");
    let space = lengths[0].space();
    assert!(lengths.iter().all(|l| l.space().same_space(space)), "mixed symbol spaces");
    QMatrix::from_rows(lengths.iter().map(|l| l.coords().to_vec()).collect())
}

/// Dimension of the Q-span of the given values (conditional on the declared
/// independence of the symbols).
pub fn rank_over_q(lengths: &[QNum]) -> usize {
    coord_matrix(lengths).rank()
}

/// Indices of a maximal Q-linearly-independent subset, greedy left-to-right.
pub fn independent_subset(lengths: &[QNum]) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new(); // echelonized rows, pivot index = position of first nonzero
    'outer: for (idx, l) in lengths.iter().enumerate() {
        let mut v = l.coords().to_vec();
        for b in &basis {
            let pivot = b.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let factor = &v[pivot] / &b[pivot];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &factor * y;
                }
            }
        }
        if v.iter().all(Rational::is_zero) {
            continue 'outer;
        }
        picked.push(idx);
        basis.push(v);
        basis.sort_by_key(|row| row.iter().position(|x| !x.is_zero()).unwrap());
    }
    picked
}

/// Exact solution of `A x = b`, or `None` when inconsistent. Underdetermined
/// consistent systems yield the deterministic pivot solution (free variables
/// set to zero), which is also minimal-support for the chosen pivots.
pub fn solve_exact(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), a.rows());
    let mut aug = QMatrix::zeros(a.rows(), a.cols() + 1);
    for (r, rhs) in b.iter().enumerate() {
        for c in 0..a.cols() {
            *aug.at_mut(r, c) = a.at(r, c).clone();
        }
        *aug.at_mut(r, a.cols()) = rhs.clone();
    }
    let (rref, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols()) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = rref.at(row, a.cols()).clone();
    }
    Some(x)
}

/// Functionals `f_1..f_m` with `f_i(basis[j]) = δ_ij`, each extended to the
/// whole space by the pivot solution of the underdetermined system.
pub fn dual_functionals(basis: &[QNum]) -> Result<Vec<QFunctional>, DependentInput> {
    let a = coord_matrix(basis);
    let rank = a.rank();
    if rank != basis.len() {
        return Err(DependentInput { rank, count: basis.len() });
    }
    let space = basis[0].space().clone();
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let mut e = vec![Rational::zero(); basis.len()];
        e[i] = Rational::one();
        let row = solve_exact(&a, &e).expect("independent rows admit dual solutions");
        out.push(QFunctional::new(space.clone(), row));
    }
    Ok(out)
}

/// Decide `x = Σ z_i·g_i` with integer `z_i`; returns the combination when it
/// exists. Denominators are cleared by a single common multiple, then the
/// integer system is solved through the Hermite normal form of the generator
/// coordinate matrix.
pub fn lattice_membership(x: &QNum, generators: &[QNum]) -> Option<Vec<BigInt>> {
    assert!(!generators.is_empty(), "empty generator list");
    let space = x.space();
    assert!(generators.iter().all(|g| g.space().same_space(space)), "mixed symbol spaces");
    let dim = space.dim();
    let g = generators.len();

    let mut denom_lcm = BigInt::one();
    for r in x.coords().iter().chain(generators.iter().flat_map(|v| v.coords())) {
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let scale = |r: &Rational| -> BigInt {
        let scaled = r * Rational::from_integer(denom_lcm.clone());
        debug_assert!(scaled.denom().is_one());
        scaled.numer().clone()
    };

    // columns = generators
    let mut a = vec![vec![BigInt::zero(); g]; dim];
    for (j, gen) in generators.iter().enumerate() {
        for (i, c) in gen.coords().iter().enumerate() {
            a[i][j] = scale(c);
        }
    }
    let v: Vec<BigInt> = x.coords().iter().map(scale).collect();

    let hnf = hermite_normal_form(&a);
    // forward-substitute H y = v down the echelon columns
    let mut y = vec![BigInt::zero(); g];
    let mut w = v.clone();
    let mut next_pivot = 0usize;
    for i in 0..dim {
        if next_pivot < hnf.pivots.len() && hnf.pivots[next_pivot].0 == i {
            let col = hnf.pivots[next_pivot].1;
            let pivot = hnf.h[i][col].clone();
            let (q, r) = w[i].div_rem(&pivot);
            if !r.is_zero() {
                return None;
            }
            for (row, wrow) in w.iter_mut().enumerate() {
                *wrow -= &q * &hnf.h[row][col];
            }
            y[col] = q;
            next_pivot += 1;
        } else if !w[i].is_zero() {
            return None;
        }
    }
    // z = U y
    let z: Vec<BigInt> = (0..g)
        .map(|r| (0..g).map(|c| &hnf.u[r][c] * &y[c]).sum())
        .collect();
    debug_assert!(
        (0..dim).all(|i| (0..g).map(|j| &a[i][j] * &z[j]).sum::<BigInt>() == v[i]),
        "lattice combination failed to reconstruct the target"
    );
    Some(z)
}
