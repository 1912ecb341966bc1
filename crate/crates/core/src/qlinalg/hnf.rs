//! Column-style Hermite normal form over the integers.
//!
//! `hermite_normal_form(a)` returns `H = A·U` with `U` unimodular, `H` in
//! column echelon form (pivot rows strictly increasing, pivots positive,
//! entries left of a pivot reduced into `[0, pivot)`). Generator counts in
//! this artifact are tiny, so the classic gcd-reduction loop is plenty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub struct Hnf {
    /// echelonized matrix, same dimensions as the input
    pub h: Vec<Vec<BigInt>>,
    /// unimodular column-operation accumulator (cols × cols)
    pub u: Vec<Vec<BigInt>>,
    /// (row, col) of each pivot, rows strictly increasing
    pub pivots: Vec<(usize, usize)>,
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn add_col_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, factor: &BigInt) {
    for row in m.iter_mut() {
        let delta = factor * &row[source];
        row[target] += delta;
    }
}

fn negate_col(m: &mut [Vec<BigInt>], col: usize) {
    for row in m.iter_mut() {
        let v = -row[col].clone();
        row[col] = v;
    }
}

pub fn hermite_normal_form(a: &[Vec<BigInt>]) -> Hnf {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|r| {
            (0..cols)
                .map(|c| if r == c { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();

    let mut col = 0usize;
    for row in 0..rows {
        if col == cols {
            break;
        }
        if (col..cols).all(|j| h[row][j].is_zero()) {
            continue;
        }
        // gcd-reduce the active entries of this row by column operations
        loop {
            let best = (col..cols)
                .filter(|&j| !h[row][j].is_zero())
                .min_by_key(|&j| h[row][j].abs());
            let Some(best) = best else { break };
            swap_cols(&mut h, col, best);
            swap_cols(&mut u, col, best);
            let mut clean = true;
            for j in col + 1..cols {
                if h[row][j].is_zero() {
                    continue;
                }
                let q = -(&h[row][j] / &h[row][col]);
                add_col_multiple(&mut h, j, col, &q);
                add_col_multiple(&mut u, j, col, &q);
                if !h[row][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[row][col].is_negative() {
            negate_col(&mut h, col);
            negate_col(&mut u, col);
        }
        // canonicalize: entries left of the pivot land in [0, pivot)
        for j in 0..col {
            let q = -h[row][j].div_floor(&h[row][col]);
            if !q.is_zero() {
                add_col_multiple(&mut h, j, col, &q);
                add_col_multiple(&mut u, j, col, &q);
            }
        }
        pivots.push((row, col));
        col += 1;
    }

    Hnf { h, u, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let rows = a.len();
        let inner = b.len();
        let cols = b[0].len();
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn det3(u: &[Vec<BigInt>]) -> BigInt {
        assert_eq!(u.len(), 3);
        let d = |a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt| a * e - b * c;
        &u[0][0] * d(&u[1][1], &u[1][2], &u[2][1], &u[2][2])
            - &u[0][1] * d(&u[1][0], &u[1][2], &u[2][0], &u[2][2])
            + &u[0][2] * d(&u[1][0], &u[1][1], &u[2][0], &u[2][1])
    }

    #[test]
    fn echelon_shape_and_transform_consistency() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(mat_mul(&a, &hnf.u), hnf.h);
        assert_eq!(det3(&hnf.u).abs(), BigInt::from(1));
        let mut last_row = None;
        for &(r, c) in &hnf.pivots {
            assert!(hnf.h[r][c].is_positive());
            if let Some(prev) = last_row {
                assert!(r > prev);
            }
            last_row = Some(r);
            for j in c + 1..hnf.h[0].len() {
                assert!(hnf.h[r][j].is_zero());
            }
        }
    }

    #[test]
    fn single_row_gcd() {
        let a = m(&[&[6, 10, 15]]);
        let hnf = hermite_normal_form(&a);
        assert_eq!(hnf.pivots, vec![(0, 0)]);
        assert_eq!(hnf.h[0][0], BigInt::from(1)); // gcd(6,10,15)=1
    }
}
