//! Good boxes relative to a finitely generated additive subgroup G: a box is
//! good when its sides in at least K directions are members of G. Any box
//! dissected into good boxes is good; for a bad box this module issues a
//! vertex-coset certificate whose signed sum is strictly positive, which
//! rules out every dissection into good pieces — including brick packings,
//! via the orientation sweep in [`prove_unpackable`].

use std::fmt;

use itertools::Itertools;
use num_traits::Signed;
use thiserror::Error;

use crate::certify::VertexForm;
use crate::exactnum::{IndeterminateSign, QInterval, QNum, Rational, Sign, SymPoly};
use crate::geometry::{
    verify_tiling, BoxSpec, Dissection, GeomError, PlacedBox, TilingViolation, VerifyOutcome,
};
use crate::qlinalg::lattice_membership;

/// A finitely generated additive subgroup of the reals.
#[derive(Clone, Debug)]
pub struct Subgroup {
    generators: Vec<QNum>,
}

impl Subgroup {
    pub fn new(generators: Vec<QNum>) -> Self {
        assert!(!generators.is_empty(), "a subgroup needs at least one generator");
        let space = generators[0].space();
        assert!(generators.iter().all(|g| g.space().same_space(space)), "mixed symbol spaces");
        Subgroup { generators }
    }

    pub fn generators(&self) -> &[QNum] {
        &self.generators
    }

    pub fn contains(&self, x: &QNum) -> bool {
        lattice_membership(x, &self.generators).is_some()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", gens.join(", "))
    }
}

#[derive(Debug, Error)]
pub enum GoodnessError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Indeterminate(#[from] IndeterminateSign),
    #[error("dissection fails tiling verification: {0:?}")]
    InvalidTiling(TilingViolation),
}

/// Axes whose side length is a member of G.
pub fn good_directions(spec: &BoxSpec, g: &Subgroup) -> Vec<usize> {
    spec.sides()
        .iter()
        .enumerate()
        .filter(|(_, s)| g.contains(s))
        .map(|(a, _)| a)
        .collect()
}

/// Good means at least `k_dirs` directions with sides in G.
pub fn is_good_box(b: &PlacedBox, g: &Subgroup, k_dirs: usize) -> (bool, Vec<usize>) {
    assert!(k_dirs >= 1 && k_dirs <= b.dim(), "k_dirs must be in 1..=dim");
    let dirs = good_directions(b.spec(), g);
    (dirs.len() >= k_dirs, dirs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodnessCheck {
    /// Every piece is good and so is the whole, as the theorem demands.
    Consistent { whole_good_dirs: Vec<usize> },
    /// The theorem says nothing: some piece is not good.
    PieceNotGood { piece: usize },
    /// Every piece good but the whole is not — impossible by the theorem,
    /// so this is a self-test tripwire for the verifier or the inputs.
    TheoremViolation { whole_good_dirs: Vec<usize> },
}

/// Check the dissection against the theorem: verified tiling + all pieces
/// good must imply the whole is good.
pub fn check_goodness_theorem(
    d: &Dissection,
    g: &Subgroup,
    k_dirs: usize,
) -> Result<GoodnessCheck, GoodnessError> {
    match verify_tiling(d)? {
        VerifyOutcome::Valid => {}
        VerifyOutcome::Violation(v) => return Err(GoodnessError::InvalidTiling(v)),
    }
    for (i, p) in d.pieces.iter().enumerate() {
        if !is_good_box(p, g, k_dirs).0 {
            return Ok(GoodnessCheck::PieceNotGood { piece: i });
        }
    }
    let (whole_good, dirs) = is_good_box(&d.whole, g, k_dirs);
    if whole_good {
        Ok(GoodnessCheck::Consistent { whole_good_dirs: dirs })
    } else {
        Ok(GoodnessCheck::TheoremViolation { whole_good_dirs: dirs })
    }
}

/// Impossibility witness for a bad box: the coset class of the all-lower
/// vertex meets the box in a sub-cube spanning exactly the good directions,
/// and the signed sum of `(shift + Σx)^(K−1)` over that sub-cube is an
/// iterated finite difference of order m ≤ K−1, strictly positive. No
/// dissection of the box into good boxes can exist.
#[derive(Clone, Debug)]
pub struct GoodnessCertificate {
    pub base_vertex: Vec<QNum>,
    pub good_directions: Vec<usize>,
    pub exponent: u32,
    pub signed_sum: SymPoly,
    pub sign_witness: QInterval,
    pub vertex_fn: VertexForm,
    pub subject: PlacedBox,
    pub narrative: String,
}

#[derive(Debug)]
pub enum GoodnessOutcome {
    BoxIsGood { good_dirs: Vec<usize> },
    Proof(Box<GoodnessCertificate>),
}

pub fn goodness_impossibility_certificate(
    b: &PlacedBox,
    g: &Subgroup,
    k_dirs: usize,
) -> Result<GoodnessOutcome, GoodnessError> {
    let (good, dirs) = is_good_box(b, g, k_dirs);
    if good {
        return Ok(GoodnessOutcome::BoxIsGood { good_dirs: dirs });
    }
    let space = b.spec().space();
    let exponent = (k_dirs - 1) as u32;
    let base: Vec<QNum> = b.offset().to_vec();

    // shift = 1 − Σ base so the finite difference is evaluated at 1 ≥ 0,
    // where the Lemma guarantees strict positivity for every m ≤ K−1
    let mut base_sum = QNum::zero(space);
    for c in &base {
        base_sum = &base_sum + c;
    }
    let shift = &QNum::one(space) - &base_sum;

    // Δ over the good-direction side lengths applied to x^(K−1), at x = 1:
    // inclusion–exclusion over subsets of the good directions
    let m = dirs.len();
    let mut signed_sum = SymPoly::zero(space);
    for mask in 0usize..(1 << m) {
        let mut point = QNum::one(space);
        for (bit, &axis) in dirs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                point = &point + b.spec().side(axis);
            }
        }
        let term = SymPoly::from_qnum(&point).pow(exponent);
        if (m - mask.count_ones() as usize).is_multiple_of(2) {
            signed_sum = signed_sum.add(&term);
        } else {
            signed_sum = signed_sum.sub(&term);
        }
    }

    let sign_witness = signed_sum.eval_interval();
    if sign_witness.determined_sign() != Some(Sign::Positive) {
        return Err(GoodnessError::Indeterminate(IndeterminateSign {
            lo: sign_witness.lo().clone(),
            hi: sign_witness.hi().clone(),
        }));
    }

    let vertex_fn = VertexForm {
        group: g.generators().to_vec(),
        base: base.clone(),
        exponent,
        shift,
    };
    let narrative = format!(
        "The box has only {m} good direction(s), fewer than the required {k_dirs}. \
         The signed vertex sum of the coset point function over the box is an \
         order-{m} finite difference of x^{exponent} at 1, hence strictly positive, \
         while it vanishes on every good box. No dissection into good boxes exists."
    );
    Ok(GoodnessOutcome::Proof(Box::new(GoodnessCertificate {
        base_vertex: base,
        good_directions: dirs,
        exponent,
        signed_sum,
        sign_witness,
        vertex_fn,
        subject: b.clone(),
        narrative,
    })))
}

impl fmt::Display for GoodnessCertificate {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "certificate kind=Goodness")?;
        for line in self.narrative.lines() {
            writeln!(out, "# {}", line.trim())?;
        }
        let sides: Vec<String> = self.subject.spec().sides().iter().map(|s| s.to_string()).collect();
        writeln!(out, "box = {}", sides.join(" x "))?;
        let at: Vec<String> = self.subject.offset().iter().map(|s| s.to_string()).collect();
        writeln!(out, "at = ({})", at.join(", "))?;
        let gens: Vec<String> = self.vertex_fn.group.iter().map(|g| g.to_string()).collect();
        writeln!(out, "group = {}", gens.join(", "))?;
        let base: Vec<String> = self.base_vertex.iter().map(|b| b.to_string()).collect();
        writeln!(out, "coset base = ({})", base.join(", "))?;
        let dirs: Vec<String> = self.good_directions.iter().map(usize::to_string).collect();
        writeln!(out, "good directions = {}", if dirs.is_empty() { "none".into() } else { dirs.join(",") })?;
        writeln!(out, "exponent = {}", self.exponent)?;
        writeln!(out, "shift = {}", self.vertex_fn.shift)?;
        writeln!(out, "value = {}", self.signed_sum)?;
        writeln!(out, "interval = {}", self.sign_witness)
    }
}

/// One brick orientation (axis permutation) and its good directions.
#[derive(Clone, Debug)]
pub struct OrientationReport {
    pub brick: usize,
    pub permutation: Vec<usize>,
    pub good_dirs: Vec<usize>,
}

#[derive(Debug)]
pub struct UnpackabilityProof {
    pub box_certificate: Box<GoodnessCertificate>,
    pub orientations: Vec<OrientationReport>,
    pub k_dirs: usize,
}

#[derive(Debug)]
pub enum UnpackOutcome {
    Proof(Box<UnpackabilityProof>),
    /// The method does not apply (box good, or some orientation bad) — not a
    /// feasibility claim.
    Inconclusive { reason: String },
}

/// Every axis permutation of every brick must be good and the box must not
/// be: then no packing exists, by the goodness theorem.
pub fn prove_unpackable(
    spec: &BoxSpec,
    bricks: &[BoxSpec],
    g: &Subgroup,
    k_dirs: usize,
) -> Result<UnpackOutcome, GoodnessError> {
    let n = spec.dim();
    assert!(bricks.iter().all(|b| b.dim() == n), "bricks must match the box dimension");
    let mut orientations = Vec::new();
    for (bi, brick) in bricks.iter().enumerate() {
        for perm in (0..n).permutations(n) {
            let sides: Vec<QNum> = perm.iter().map(|&a| brick.side(a).clone()).collect();
            let oriented = BoxSpec::new(sides)?;
            let dirs = good_directions(&oriented, g);
            if dirs.len() < k_dirs {
                return Ok(UnpackOutcome::Inconclusive {
                    reason: format!(
                        "brick {bi} in orientation {perm:?} has only {} good direction(s)",
                        dirs.len()
                    ),
                });
            }
            orientations.push(OrientationReport { brick: bi, permutation: perm, good_dirs: dirs });
        }
    }
    match goodness_impossibility_certificate(&PlacedBox::at_origin(spec.clone()), g, k_dirs)? {
        GoodnessOutcome::BoxIsGood { good_dirs } => Ok(UnpackOutcome::Inconclusive {
            reason: format!("the box itself is good (directions {good_dirs:?})"),
        }),
        GoodnessOutcome::Proof(cert) => Ok(UnpackOutcome::Proof(Box::new(UnpackabilityProof {
            box_certificate: cert,
            orientations,
            k_dirs,
        }))),
    }
}

impl fmt::Display for UnpackabilityProof {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "unpackability proof (min good directions = {})", self.k_dirs)?;
        writeln!(
            out,
            "# every brick orientation below is good; the box is not, so by the"
        )?;
        writeln!(out, "# goodness theorem no packing exists")?;
        for o in &self.orientations {
            let perm: Vec<String> = o.permutation.iter().map(usize::to_string).collect();
            let dirs: Vec<String> = o.good_dirs.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "brick {} orientation ({}) good directions {}",
                o.brick,
                perm.join(","),
                dirs.join(",")
            )?;
        }
        write!(out, "{}", self.box_certificate)
    }
}

/// Contract each box axis-wise: side `a` is divided by `factors[a]`.
pub fn scale_instance(boxes: &[BoxSpec], factors: &[Rational]) -> Result<Vec<BoxSpec>, GeomError> {
    assert!(factors.iter().all(|f| f.is_positive()), "scale factors must be positive");
    boxes
        .iter()
        .map(|b| {
            assert_eq!(b.dim(), factors.len(), "factor count must match dimension");
            let sides: Vec<QNum> = b
                .sides()
                .iter()
                .zip(factors)
                .map(|(s, f)| s.scale(&f.recip()))
                .collect();
            BoxSpec::new(sides)
        })
        .collect()
}
