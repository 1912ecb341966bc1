//! Positive basis construction: given positive values spanning a rank-k
//! space over Q, produce k positive values such that every input is a
//! nonnegative rational (or, after rescaling, nonnegative integer)
//! combination of them.
//!
//! Candidate bases are proposed cheaply and verified exactly: candidate
//! independence, positivity of every basis value, and nonnegativity of every
//! exactly-solved coefficient. Only the exact checks decide anything.
//!
//! Proposal order: (1) rank-1 and full-rank shortcuts, (2) subsets of the
//! inputs themselves — when the input cone is simplicial its extreme rays
//! are inputs, and this keeps coefficients as small as the instance allows —
//! then (3) a regular simplex in the hyperplane of normalized inputs, built
//! with floating-point geometry, vertices rounded to nearby small rationals
//! and rescaled to primitive integer vectors. Failed rounds shrink the
//! rounding tolerance and regrow the simplex.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{IndeterminateSign, QNum, Rational, Sign};
use crate::qlinalg::{independent_subset, solve_exact, QMatrix};

#[derive(Clone, Debug)]
pub struct PosBasisParams {
    /// How much larger than needed the initial simplex inradius is (> 1).
    pub margin: Rational,
    /// Rounding tolerance for candidate vertices; halved on every retry.
    pub delta: Rational,
    /// Retry cap before giving up with `RefinementExhausted`.
    pub max_rounds: u32,
}

impl Default for PosBasisParams {
    fn default() -> Self {
        PosBasisParams {
            margin: Rational::from_integer(2.into()),
            delta: Rational::new(BigInt::one(), 1024.into()),
            max_rounds: 40,
        }
    }
}

impl PosBasisParams {
    fn validate(&self) {
        assert!(self.margin > Rational::one(), "margin must exceed 1");
        assert!(self.delta.is_positive(), "delta must be positive");
        assert!(self.max_rounds >= 1, "at least one round required");
    }
}

#[derive(Clone, Debug)]
pub struct PosBasisResult {
    /// k positive basis values.
    pub basis: Vec<QNum>,
    /// n×k nonnegative rational coefficients: `lengths[j] = Σ_i coeffs[j][i]·basis[i]`.
    pub coeffs: QMatrix,
    /// Present after integer rescaling: same identity with nonnegative integers.
    pub integer_coeffs: Option<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug, Error)]
pub enum PosBasisError {
    #[error(transparent)]
    Indeterminate(#[from] IndeterminateSign),
    #[error("input length at index {index} is not positive")]
    NonPositiveLength { index: usize },
    #[error("no verifiable candidate basis within {rounds} refinement rounds")]
    RefinementExhausted { rounds: u32 },
}

/// Express `target` in the Q-basis `basis` (rows must be independent and
/// `target` in their span).
fn coords_in_basis(basis: &[QNum], target: &QNum) -> Vec<Rational> {
    let dim = target.space().dim();
    let mut columns = QMatrix::zeros(dim, basis.len());
    for (i, b) in basis.iter().enumerate() {
        for (r, c) in b.coords().iter().enumerate() {
            *columns.at_mut(r, i) = c.clone();
        }
    }
    solve_exact(&columns, target.coords()).expect("target lies in the span of the basis")
}

fn is_nonneg(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(k)
}

/// gcd on nonnegative rationals: the largest rational dividing both into
/// integers. `gcd(0, q) = q`.
fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let den = a.denom().lcm(b.denom());
    let na = (a * Rational::from_integer(den.clone())).numer().clone();
    let nb = (b * Rational::from_integer(den.clone())).numer().clone();
    Rational::new(na.gcd(&nb), den)
}

/// Positive rational value as `Some(q)` when the QNum is rational.
fn rational_value(x: &QNum) -> Option<Rational> {
    x.as_rational().cloned()
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormal basis of the hyperplane orthogonal to `c` (k−1 vectors).
fn tangent_frame(c: &[f64]) -> Vec<Vec<f64>> {
    let k = c.len();
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(k - 1);
    for axis in 0..k {
        if frame.len() == k - 1 {
            break;
        }
        let mut v = vec![0.0; k];
        v[axis] = 1.0;
        let ca = dot(&v, c);
        for (vi, ci) in v.iter_mut().zip(c) {
            *vi -= ca * ci;
        }
        for t in &frame {
            let p = dot(&v, t);
            for (vi, ti) in v.iter_mut().zip(t) {
                *vi -= p * ti;
            }
        }
        let len = norm(&v);
        if len > 1e-9 {
            for vi in v.iter_mut() {
                *vi /= len;
            }
            frame.push(v);
        }
    }
    assert_eq!(frame.len(), k - 1, "degenerate direction vector");
    frame
}

/// Unit-circumradius regular simplex: k vertices in R^(k−1) centered at 0.
fn regular_simplex(k: usize) -> Vec<Vec<f64>> {
    // centered standard basis of R^k lives in the sum-zero hyperplane;
    // project onto an orthonormal basis of that hyperplane
    let centered: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { 1.0 - 1.0 / k as f64 } else { -1.0 / k as f64 })
                .collect()
        })
        .collect();
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(k - 1);
    for z in centered.iter().take(k - 1) {
        let mut v = z.clone();
        for t in &q {
            let p = dot(&v, t);
            for (vi, ti) in v.iter_mut().zip(t) {
                *vi -= p * ti;
            }
        }
        let len = norm(&v);
        assert!(len > 1e-9);
        for vi in v.iter_mut() {
            *vi /= len;
        }
        q.push(v);
    }
    centered
        .iter()
        .map(|z| {
            let s: Vec<f64> = q.iter().map(|t| dot(z, t)).collect();
            let len = norm(&s);
            s.iter().map(|x| x / len).collect()
        })
        .collect()
}

/// Smallest-denominator rational within `tol` of `x`, by walking the
/// continued-fraction convergents.
fn best_rational_within(x: f64, tol: &Rational) -> Rational {
    assert!(x.is_finite(), "candidate coordinate out of range");
    // exact value of the f64: x = mantissa * 2^exp
    let exact = {
        let (mantissa, exp) = {
            let bits = x.abs();
            let mut m = bits;
            let mut e = 0i32;
            while m != m.trunc() && e > -1100 {
                m *= 2.0;
                e -= 1;
            }
            (BigInt::from(m as i128), e)
        };
        let unsigned = if exp >= 0 {
            Rational::from_integer(mantissa << exp as usize)
        } else {
            Rational::new(mantissa, BigInt::one() << (-exp) as usize)
        };
        if x < 0.0 { -unsigned } else { unsigned }
    };
    let mut rest = exact.clone();
    let mut prev = (BigInt::one(), BigInt::zero()); // h_{-1}, k_{-1}
    let mut curr = (rest.floor().numer().clone(), BigInt::one());
    loop {
        let approx = Rational::new(curr.0.clone(), curr.1.clone());
        if (&approx - &exact).abs() <= *tol {
            return approx;
        }
        let frac = &rest - rest.floor();
        if frac.is_zero() {
            return approx;
        }
        rest = frac.recip();
        let a = rest.floor().numer().clone();
        let next = (&a * &curr.0 + &prev.0, &a * &curr.1 + &prev.1);
        prev = curr;
        curr = next;
    }
}

/// Scale a rational vector to the primitive integer vector on the same ray.
fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> =
        v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).numer().clone()).collect();
    let mut gcd = BigInt::zero();
    for z in &ints {
        gcd = gcd.gcd(z);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.iter().map(|z| Rational::from_integer(z / &gcd)).collect()
}

/// The Positive Basis algorithm over Q-rank k.
pub fn positive_basis(
    lengths: &[QNum],
    params: &PosBasisParams,
) -> Result<PosBasisResult, PosBasisError> {
    params.validate();
    assert!(!lengths.is_empty(), "need at least one length");
    let space = lengths[0].space().clone();
    for (index, l) in lengths.iter().enumerate() {
        if l.sign()? != Sign::Positive {
            return Err(PosBasisError::NonPositiveLength { index });
        }
    }

    let picked = independent_subset(lengths);
    let k = picked.len();
    let chosen: Vec<QNum> = picked.iter().map(|&i| lengths[i].clone()).collect();

    // rank 1: everything is a positive rational multiple of one generator;
    // dividing by the gcd of the multiples makes the coefficients coprime
    // positive integers (for rational inputs the generator is their gcd)
    if k == 1 {
        let gcoords = chosen[0].coords();
        let pivot = gcoords.iter().position(|c| !c.is_zero()).unwrap();
        let multiples: Vec<Rational> =
            lengths.iter().map(|l| &l.coords()[pivot] / &gcoords[pivot]).collect();
        let gcd = multiples
            .iter()
            .fold(Rational::zero(), |acc, q| rational_gcd(&acc, q));
        let gen = chosen[0].scale(&gcd);
        let mut coeff_rows = Vec::with_capacity(lengths.len());
        for (l, q) in lengths.iter().zip(&multiples) {
            let c = q / &gcd;
            debug_assert!(c.denom().is_one() && c.is_positive());
            debug_assert_eq!(&gen.scale(&c), l);
            coeff_rows.push(vec![c]);
        }
        let coeffs = QMatrix::from_rows(coeff_rows);
        return Ok(PosBasisResult { basis: vec![gen], coeffs, integer_coeffs: None });
    }

    // every input independent: the inputs are their own positive basis
    // (rational elements normalized to 1 so integer rescaling mirrors them)
    if k == lengths.len() {
        let mut basis = Vec::with_capacity(k);
        let mut rows = vec![vec![Rational::zero(); k]; k];
        for (i, l) in lengths.iter().enumerate() {
            match rational_value(l) {
                Some(q) => {
                    basis.push(QNum::one(&space));
                    rows[i][i] = q;
                }
                None => {
                    basis.push(l.clone());
                    rows[i][i] = Rational::one();
                }
            }
        }
        return Ok(PosBasisResult {
            basis,
            coeffs: QMatrix::from_rows(rows),
            integer_coeffs: None,
        });
    }

    let coords: Vec<Vec<Rational>> =
        lengths.iter().map(|l| coords_in_basis(&chosen, l)).collect();

    // inputs as their own basis: when the input cone is simplicial its
    // extreme rays are inputs, so some k-subset passes the exact checks and
    // keeps every coefficient as small as the instance allows
    for subset in k_subsets(lengths.len(), k) {
        let candidate: Vec<Vec<Rational>> = subset.iter().map(|&i| coords[i].clone()).collect();
        if let Some(result) = try_candidates(&chosen, lengths, &coords, &candidate)? {
            return Ok(result);
        }
    }

    // widen the cone of the chosen subset around its value-weighted center:
    // in chosen-basis coordinates u_i is the i-th unit vector, so the
    // candidates are explicit small rationals; doubling t grows the cone
    // until it covers every input (or we give up and go geometric)
    let weights: Vec<Rational> = chosen
        .iter()
        .map(|u| {
            let mid = u.eval_interval().midpoint_f64();
            best_rational_within(1.0 / mid, &Rational::new(BigInt::one(), 16.into()))
        })
        .collect();
    if weights.iter().all(|w| w.is_positive()) {
        let kk = Rational::from_integer(BigInt::from(k));
        let mut t = Rational::one();
        for _ in 0..9 {
            let candidates: Vec<Vec<Rational>> = (0..k)
                .map(|i| {
                    let stretch = (Rational::one() + &t) * &kk - &t;
                    let v: Vec<Rational> = (0..k)
                        .map(|j| if i == j { &weights[i] * &stretch } else { -(&t * &weights[j]) })
                        .collect();
                    primitive_integer_vector(&v)
                })
                .collect();
            if let Some(result) = try_candidates(&chosen, lengths, &coords, &candidates)? {
                return Ok(result);
            }
            t *= Rational::from_integer(2.into());
        }
    }

    // general case: simplex construction in the rank-k coordinate space
    let breal: Vec<f64> = chosen.iter().map(|b| b.eval_interval().midpoint_f64()).collect();
    let cnorm = norm(&breal);
    assert!(cnorm.is_finite() && cnorm > 0.0);
    let cunit: Vec<f64> = breal.iter().map(|x| x / cnorm).collect();

    // normalized inputs on the hyperplane <cunit, v> = 1
    let mut radius: f64 = 0.0;
    for v in &coords {
        let vf: Vec<f64> = v.iter().map(f64_of).collect();
        let denom = dot(&cunit, &vf);
        assert!(denom > 0.0, "positive value projects positively");
        let p: Vec<f64> = vf.iter().map(|x| x / denom).collect();
        let dist = p
            .iter()
            .zip(&cunit)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        radius = radius.max(dist);
    }
    radius = radius.max(1.0);

    let margin = f64_of(&params.margin);
    let rho0 = margin * radius * (k - 1) as f64;
    let frame = tangent_frame(&cunit);
    let simplex = regular_simplex(k);

    let mut delta = params.delta.clone();
    for round in 0..params.max_rounds {
        let rho = rho0 * (1.0 + round as f64 / 8.0);
        // candidate vertices in basis coordinates, rounded to nearby small
        // rationals and rescaled to primitive rays
        let candidates: Vec<Vec<Rational>> = simplex
            .iter()
            .map(|s| {
                let rounded: Vec<Rational> = (0..k)
                    .map(|t| {
                        let raw: f64 = cunit[t]
                            + rho * s.iter().zip(&frame).map(|(si, fr)| si * fr[t]).sum::<f64>();
                        best_rational_within(raw, &delta)
                    })
                    .collect();
                primitive_integer_vector(&rounded)
            })
            .collect();

        if let Some(result) = try_candidates(&chosen, lengths, &coords, &candidates)? {
            return Ok(result);
        }
        delta /= Rational::from_integer(2.into());
    }
    Err(PosBasisError::RefinementExhausted { rounds: params.max_rounds })
}

/// Exact verification of one candidate set; `Ok(None)` means retry.
fn try_candidates(
    chosen: &[QNum],
    lengths: &[QNum],
    coords: &[Vec<Rational>],
    candidates: &[Vec<Rational>],
) -> Result<Option<PosBasisResult>, PosBasisError> {
    let k = chosen.len();
    let cand_matrix = QMatrix::from_rows(candidates.to_vec());
    if cand_matrix.det().is_zero() {
        return Ok(None);
    }

    let mut basis = Vec::with_capacity(k);
    for cand in candidates {
        let mut e = QNum::zero(chosen[0].space());
        for (c, b) in cand.iter().zip(chosen) {
            e = &e + &b.scale(c);
        }
        if e.sign()? != Sign::Positive {
            return Ok(None);
        }
        basis.push(e);
    }

    // columns = candidate vectors; solve for each input's coefficients
    let mut columns = QMatrix::zeros(k, k);
    for (i, cand) in candidates.iter().enumerate() {
        for (r, c) in cand.iter().enumerate() {
            *columns.at_mut(r, i) = c.clone();
        }
    }
    let mut rows = Vec::with_capacity(lengths.len());
    for v in coords {
        let lambda = solve_exact(&columns, v).expect("nonsingular candidate matrix");
        if !is_nonneg(&lambda) {
            return Ok(None);
        }
        rows.push(lambda);
    }
    let coeffs = QMatrix::from_rows(rows);
    debug_assert!(reconstructs(lengths, &basis, &coeffs));
    Ok(Some(PosBasisResult { basis, coeffs, integer_coeffs: None }))
}

/// `lengths[j] == Σ_i coeffs[j][i]·basis[i]`, coordinatewise and exact.
pub fn reconstructs(lengths: &[QNum], basis: &[QNum], coeffs: &QMatrix) -> bool {
    lengths.iter().enumerate().all(|(j, l)| {
        let mut acc = QNum::zero(l.space());
        for (i, b) in basis.iter().enumerate() {
            acc = &acc + &b.scale(coeffs.at(j, i));
        }
        &acc == l
    })
}

/// `positive_basis`, then rescale each basis element by the lcm of the
/// denominators in its coefficient column so all coefficients become
/// nonnegative integers.
pub fn positive_integer_basis(
    lengths: &[QNum],
    params: &PosBasisParams,
) -> Result<PosBasisResult, PosBasisError> {
    let result = positive_basis(lengths, params)?;
    let n = lengths.len();
    let k = result.basis.len();
    let mut basis = Vec::with_capacity(k);
    let mut coeffs = result.coeffs.clone();
    let mut integer = vec![vec![BigInt::zero(); k]; n];
    for (i, e) in result.basis.iter().enumerate() {
        let mut lcm = BigInt::one();
        for j in 0..n {
            lcm = lcm.lcm(coeffs.at(j, i).denom());
        }
        let scale = Rational::from_integer(lcm.clone());
        basis.push(e.scale(&scale.recip()));
        for (j, int_row) in integer.iter_mut().enumerate() {
            let v = coeffs.at(j, i) * &scale;
            debug_assert!(v.denom().is_one() && !v.is_negative());
            int_row[i] = v.numer().clone();
            *coeffs.at_mut(j, i) = v;
        }
    }
    debug_assert!(reconstructs(lengths, &basis, &coeffs));
    Ok(PosBasisResult { basis, coeffs, integer_coeffs: Some(integer) })
}
