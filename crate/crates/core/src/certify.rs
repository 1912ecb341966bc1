//! Additive functions over boxes and the impossibility certificates built
//! from them.
//!
//! An additive function splits as a sum under any axis-aligned cut. Three
//! families cover everything here: products of per-axis factors, products of
//! determinant blocks (polylinear in the sides), and signed vertex sums of a
//! point function. A certificate pairs such a function with the exact value
//! it takes on a subject box and an interval witness that the value is
//! nonzero; the function provably vanishes (or keeps one sign) on the
//! admissible piece family, so no dissection into such pieces can exist.
//!
//! Certificates are arranged so the whole value is a product of positive
//! sides and nonzero rationals — determinants are forced to the rational 1
//! through dual functionals — because a symbolically nonzero polynomial does
//! not certify a nonzero real. (A sign-based square certificate — a
//! functional positive on the width and negative on the height — would also
//! work for rectangles; the determinant form is the one emitted.)

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{IndeterminateSign, QInterval, QNum, Rational, Sign, SymPoly};
use crate::geometry::{BoxSpec, Dissection, GeomError, PlacedBox};
use crate::qlinalg::{
    dual_functionals, independent_subset, lattice_membership, rank_over_q, DependentInput,
    QFunctional, QMatrix,
};

#[derive(Clone, Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Indeterminate(#[from] IndeterminateSign),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Dependent(#[from] DependentInput),
    #[error("certificate value interval {0} does not exclude zero")]
    UnsignedValue(QInterval),
}

/// Per-axis factor of a product-form additive function.
#[derive(Clone, Debug)]
pub enum AxisFactor {
    /// The side length itself.
    Identity,
    /// A Q-linear functional applied to the side length.
    Functional(QFunctional),
}

/// `f(P) = φ_1(a_1)·φ_2(a_2)·…·φ_n(a_n)` — polylinear, hence additive.
#[derive(Clone, Debug)]
pub struct ProductForm {
    pub factors: Vec<AxisFactor>,
}

/// One determinant block over a set of designated axes: rows are an optional
/// identity row (the raw sides) followed by functionals applied to the sides.
#[derive(Clone, Debug)]
pub struct DetBlock {
    pub axes: Vec<usize>,
    pub identity_row: bool,
    pub functionals: Vec<QFunctional>,
}

impl DetBlock {
    fn rows(&self) -> usize {
        self.functionals.len() + usize::from(self.identity_row)
    }
}

/// Product of determinant blocks over pairwise-disjoint axis sets times the
/// raw sides of all remaining axes. Linear in every side, hence additive.
/// A single block with dual functionals is the k-bar certificate form; two
/// 2×2 identity-row blocks make the 4D x·x·x·y form.
#[derive(Clone, Debug)]
pub struct DeterminantForm {
    pub dim: usize,
    pub blocks: Vec<DetBlock>,
}

impl DeterminantForm {
    pub fn new(dim: usize, blocks: Vec<DetBlock>) -> Self {
        let mut seen = vec![false; dim];
        for b in &blocks {
            assert_eq!(b.rows(), b.axes.len(), "block must be square");
            for &a in &b.axes {
                assert!(a < dim, "axis out of range");
                assert!(!seen[a], "blocks must use disjoint axes");
                seen[a] = true;
            }
        }
        DeterminantForm { dim, blocks }
    }
}

/// Signed vertex sum of `F(x) = α(x)·(shift + x_1 + … + x_n)^exponent`,
/// where α is the indicator of the coset `base + G^n` for the subgroup G
/// generated by `group`. A vertex on an even number of lower faces counts
/// positively.
#[derive(Clone, Debug)]
pub struct VertexForm {
    pub group: Vec<QNum>,
    pub base: Vec<QNum>,
    pub exponent: u32,
    pub shift: QNum,
}

impl VertexForm {
    /// Indicator of the base coset: every coordinate difference lies in G.
    pub fn coset_contains(&self, point: &[QNum]) -> bool {
        point
            .iter()
            .zip(&self.base)
            .all(|(x, b)| lattice_membership(&(x - b), &self.group).is_some())
    }
}

#[derive(Clone, Debug)]
pub enum AdditiveFn {
    Product(ProductForm),
    Determinant(DeterminantForm),
    Vertex(VertexForm),
}

impl AdditiveFn {
    pub fn dim(&self) -> Option<usize> {
        match self {
            AdditiveFn::Product(p) => Some(p.factors.len()),
            AdditiveFn::Determinant(d) => Some(d.dim),
            AdditiveFn::Vertex(v) => Some(v.base.len()),
        }
    }

    /// Evaluate on a placed box. Product and determinant forms depend only on
    /// the side lengths; the vertex form reads actual vertex coordinates.
    pub fn eval(&self, b: &PlacedBox) -> SymPoly {
        let space = b.spec().space();
        match self {
            AdditiveFn::Product(p) => {
                assert_eq!(p.factors.len(), b.dim(), "dimension mismatch");
                let mut acc = SymPoly::one(space);
                for (factor, side) in p.factors.iter().zip(b.spec().sides()) {
                    let term = match factor {
                        AxisFactor::Identity => SymPoly::from_qnum(side),
                        AxisFactor::Functional(f) => SymPoly::constant(space, f.apply(side)),
                    };
                    acc = acc.mul(&term);
                }
                acc
            }
            AdditiveFn::Determinant(d) => {
                assert_eq!(d.dim, b.dim(), "dimension mismatch");
                let sides = b.spec().sides();
                let mut acc = SymPoly::one(space);
                let mut used = vec![false; d.dim];
                for block in &d.blocks {
                    for &a in &block.axes {
                        used[a] = true;
                    }
                    acc = acc.mul(&eval_block(block, sides, space));
                }
                for (axis, side) in sides.iter().enumerate() {
                    if !used[axis] {
                        acc = acc.mul(&SymPoly::from_qnum(side));
                    }
                }
                acc
            }
            AdditiveFn::Vertex(v) => {
                assert_eq!(v.base.len(), b.dim(), "dimension mismatch");
                let n = b.dim();
                let mut acc = SymPoly::zero(space);
                for mask in 0..(1usize << n) {
                    let vertex = b.vertex(mask);
                    if !v.coset_contains(&vertex) {
                        continue;
                    }
                    let mut sum = v.shift.clone();
                    for c in &vertex {
                        sum = &sum + c;
                    }
                    let term = SymPoly::from_qnum(&sum).pow(v.exponent);
                    let lower_faces = n - mask.count_ones() as usize;
                    acc = if lower_faces.is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }
}

fn eval_block(block: &DetBlock, sides: &[QNum], space: &crate::exactnum::SymbolSpace) -> SymPoly {
    let m = block.axes.len();
    let block_sides: Vec<&QNum> = block.axes.iter().map(|&a| &sides[a]).collect();
    let fn_matrix = |skip_col: Option<usize>| -> QMatrix {
        let cols: Vec<usize> = (0..m).filter(|c| Some(*c) != skip_col).collect();
        QMatrix::from_rows(
            block
                .functionals
                .iter()
                .map(|f| cols.iter().map(|&c| f.apply(block_sides[c])).collect())
                .collect(),
        )
    };
    if block.identity_row {
        // cofactor expansion along the identity row keeps sides symbolic
        let mut acc = SymPoly::zero(space);
        for (j, side) in block_sides.iter().enumerate() {
            let minor = fn_matrix(Some(j)).det();
            if minor.is_zero() {
                continue;
            }
            let signed = if j % 2 == 0 { minor } else { -minor };
            acc = acc.add(&SymPoly::from_qnum(side).scale(&signed));
        }
        acc
    } else {
        SymPoly::constant(space, fn_matrix(None).det())
    }
}

/// Exact additivity check: the value on the whole equals the sum over the
/// pieces. Callers verify the tiling first.
pub fn check_additivity(f: &AdditiveFn, d: &Dissection) -> bool {
    let whole = f.eval(&d.whole);
    let mut sum = SymPoly::zero(d.whole.spec().space());
    for p in &d.pieces {
        sum = sum.add(&f.eval(p));
    }
    sum == whole
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    DehnRect,
    Bar3D,
    KBarGeneral,
    T3,
    T4,
    Goodness,
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertKind::DehnRect => "DehnRect",
            CertKind::Bar3D => "Bar3D",
            CertKind::KBarGeneral => "KBarGeneral",
            CertKind::T3 => "T3",
            CertKind::T4 => "T4",
            CertKind::Goodness => "Goodness",
        };
        write!(f, "{s}")
    }
}

/// A machine-checkable impossibility witness: an additive function, the box
/// it is evaluated on, the exact value there, and an interval excluding 0.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub kind: CertKind,
    pub function: AdditiveFn,
    pub subject: BoxSpec,
    pub whole_value: SymPoly,
    pub sign_witness: QInterval,
    pub narrative: String,
}

impl Certificate {
    fn build(
        kind: CertKind,
        function: AdditiveFn,
        subject: BoxSpec,
        narrative: String,
    ) -> Result<Certificate, CertifyError> {
        let whole_value = function.eval(&PlacedBox::at_origin(subject.clone()));
        let sign_witness = whole_value.eval_interval();
        if sign_witness.determined_sign().is_none_or(|s| s == Sign::Zero) {
            return Err(CertifyError::UnsignedValue(sign_witness));
        }
        Ok(Certificate { kind, function, subject, whole_value, sign_witness, narrative })
    }

    /// Re-derive the value from the embedded function and confirm the
    /// interval excludes zero (what a third party would do with the file).
    pub fn recheck(&self) -> bool {
        let value = self.function.eval(&PlacedBox::at_origin(self.subject.clone()));
        value == self.whole_value
            && self
                .sign_witness
                .determined_sign()
                .is_some_and(|s| s != Sign::Zero)
    }
}

/// Outcome of a certificate request that can discover the box is fine.
#[derive(Clone, Debug)]
pub enum CertOutcome {
    /// rank 1 — the two lengths are commensurable, the dissection exists.
    Commensurable,
    Proof(Box<Certificate>),
}

/// Outcome of the k-bar impossibility test.
#[derive(Clone, Debug)]
pub enum BarOutcome {
    /// rank ≤ k — dissectable, no certificate to give.
    Dissectable,
    Proof(Box<Certificate>),
}

/// Square-dissection impossibility for a w×h rectangle: `F = w·f(h) − h·f(w)`
/// with `f(w)=0, f(h)=1`, zero on every square, equal to `w` on the subject.
pub fn dehn_rectangle_certificate(w: &QNum, h: &QNum) -> Result<CertOutcome, CertifyError> {
    let subject = BoxSpec::new(vec![w.clone(), h.clone()])?;
    if rank_over_q(&[w.clone(), h.clone()]) == 1 {
        return Ok(CertOutcome::Commensurable);
    }
    let duals = dual_functionals(&[w.clone(), h.clone()])?;
    let f = duals[1].clone();
    let function = AdditiveFn::Determinant(DeterminantForm::new(
        2,
        vec![DetBlock { axes: vec![0, 1], identity_row: true, functionals: vec![f] }],
    ));
    let narrative = format!(
        "No dissection of the {w} x {h} rectangle into squares exists: \
         F(P) = w*f(h) - h*f(w) is additive and zero on every square \
         (antisymmetry), but equals {w} on the whole rectangle."
    );
    Ok(CertOutcome::Proof(Box::new(Certificate::build(
        CertKind::DehnRect,
        function,
        subject,
        narrative,
    )?)))
}

/// k-bar impossibility: pick k+1 independent sides, take dual functionals
/// (their block determinant on the subject is exactly 1), multiply the
/// remaining sides. On any k-bar two designated columns coincide, so the
/// function vanishes there.
pub fn bar_impossibility_certificate(
    spec: &BoxSpec,
    k: usize,
) -> Result<BarOutcome, CertifyError> {
    assert!(k >= 1, "k must be at least 1");
    let sides = spec.sides();
    let n = sides.len();
    if rank_over_q(sides) <= k {
        return Ok(BarOutcome::Dissectable);
    }
    let picked = independent_subset(sides);
    let axes: Vec<usize> = picked[..k + 1].to_vec();
    let chosen: Vec<QNum> = axes.iter().map(|&i| sides[i].clone()).collect();
    let functionals = dual_functionals(&chosen)?;
    let function = AdditiveFn::Determinant(DeterminantForm::new(
        n,
        vec![DetBlock { axes: axes.clone(), identity_row: false, functionals }],
    ));
    let kind = match (n, k) {
        (2, 1) => CertKind::DehnRect,
        (3, 2) => CertKind::Bar3D,
        _ => CertKind::KBarGeneral,
    };
    let narrative = format!(
        "No dissection into {k}-bars exists: the designated sides (axes {axes:?}) \
         are Q-linearly independent, so F(P) = det(f_i(l_j)) * (product of the \
         other sides) is additive, vanishes on every {k}-bar (some two designated \
         columns are equal), and is a product of positive sides on the whole box."
    );
    Ok(BarOutcome::Proof(Box::new(Certificate::build(kind, function, spec.clone(), narrative)?)))
}

/// x·x·x·y impossibility inside an (a,a,b,b) box: product of two 2×2
/// identity-row determinants on axis pairs (0,2) and (1,3) with `f(a)=0,
/// f(b)=1`; the value on the subject is `a²`.
pub fn theorem3_certificate(a: &QNum, b: &QNum) -> Result<CertOutcome, CertifyError> {
    if a.sign()? != Sign::Positive || b.sign()? != Sign::Positive {
        return Err(CertifyError::Geom(GeomError::NonPositiveSide { axis: 0 }));
    }
    if rank_over_q(&[a.clone(), b.clone()]) == 1 {
        return Ok(CertOutcome::Commensurable);
    }
    let subject = BoxSpec::new(vec![a.clone(), a.clone(), b.clone(), b.clone()])?;
    let duals = dual_functionals(&[a.clone(), b.clone()])?;
    let f = duals[1].clone();
    let block = |axes: Vec<usize>| DetBlock { axes, identity_row: true, functionals: vec![f.clone()] };
    let function =
        AdditiveFn::Determinant(DeterminantForm::new(4, vec![block(vec![0, 2]), block(vec![1, 3])]));
    let narrative = format!(
        "The {a} x {a} x {b} x {b} box admits no dissection into boxes of type \
         x*x*x*y: F = |a c; f(a) f(c)| * |b d; f(b) f(d)| is additive and zero on \
         all four axis orders of x*x*x*y, but equals ({a})^2 on the whole box."
    );
    Ok(CertOutcome::Proof(Box::new(Certificate::build(CertKind::T3, function, subject, narrative)?)))
}

/// x·x·y·y impossibility inside an (a,a,a,b) box: `F = f(x)f(y)f(z)f(t)`
/// with `f(a)=−1, f(b)=1`; nonnegative (a rational square) on every
/// x·x·y·y-type box, −1 on the subject.
pub fn theorem4_certificate(a: &QNum, b: &QNum) -> Result<CertOutcome, CertifyError> {
    if a.sign()? != Sign::Positive || b.sign()? != Sign::Positive {
        return Err(CertifyError::Geom(GeomError::NonPositiveSide { axis: 0 }));
    }
    if rank_over_q(&[a.clone(), b.clone()]) == 1 {
        return Ok(CertOutcome::Commensurable);
    }
    let subject = BoxSpec::new(vec![a.clone(), a.clone(), a.clone(), b.clone()])?;
    let duals = dual_functionals(&[a.clone(), b.clone()])?;
    let minus_one = -Rational::from_integer(1.into());
    let one = Rational::from_integer(1.into());
    let f = duals[0].combine(&minus_one, &duals[1], &one); // f(a) = -1, f(b) = 1
    let function = AdditiveFn::Product(ProductForm {
        factors: (0..4).map(|_| AxisFactor::Functional(f.clone())).collect(),
    });
    let narrative = format!(
        "The {a} x {a} x {a} x {b} box admits no dissection into boxes of type \
         x*x*y*y: F = f(x)f(y)f(z)f(t) is additive and equals f(x)^2*f(y)^2 >= 0 \
         on every axis order of x*x*y*y, but equals -1 on the whole box."
    );
    Ok(CertOutcome::Proof(Box::new(Certificate::build(CertKind::T4, function, subject, narrative)?)))
}

impl fmt::Display for Certificate {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "certificate kind={}", self.kind)?;
        for line in self.narrative.lines() {
            writeln!(out, "# {}", line.trim())?;
        }
        let space = self.subject.space();
        let columns: Vec<String> =
            (0..space.dim()).map(|i| space.coord_name(i).to_string()).collect();
        writeln!(out, "# functional rows are covectors over: {}", columns.join(", "))?;
        let sides: Vec<String> = self.subject.sides().iter().map(|s| s.to_string()).collect();
        writeln!(out, "box = {}", sides.join(" x "))?;
        match &self.function {
            AdditiveFn::Determinant(d) => {
                let mut names = Vec::new();
                let mut idx = 1usize;
                for block in &d.blocks {
                    let mut row_names = Vec::new();
                    if block.identity_row {
                        row_names.push("identity".to_string());
                    }
                    for f in &block.functionals {
                        let name = format!("f{idx}");
                        idx += 1;
                        write_functional(out, &name, f)?;
                        row_names.push(name);
                    }
                    let axes: Vec<String> = block.axes.iter().map(usize::to_string).collect();
                    names.push(format!("det({} @ axes {})", row_names.join(", "), axes.join(",")));
                }
                writeln!(out, "form = {}", names.join(" * "))?;
            }
            AdditiveFn::Product(p) => {
                let mut idx = 1usize;
                let mut names = Vec::new();
                for factor in &p.factors {
                    match factor {
                        AxisFactor::Identity => names.push("identity".to_string()),
                        AxisFactor::Functional(f) => {
                            let name = format!("f{idx}");
                            idx += 1;
                            write_functional(out, &name, f)?;
                            names.push(name);
                        }
                    }
                }
                writeln!(out, "form = product({})", names.join(", "))?;
            }
            AdditiveFn::Vertex(v) => {
                let gens: Vec<String> = v.group.iter().map(|g| g.to_string()).collect();
                writeln!(out, "group = {}", gens.join(", "))?;
                let base: Vec<String> = v.base.iter().map(|b| b.to_string()).collect();
                writeln!(out, "coset base = ({})", base.join(", "))?;
                writeln!(out, "exponent = {}", v.exponent)?;
                writeln!(out, "shift = {}", v.shift)?;
                writeln!(out, "form = vertex-signed-sum")?;
            }
        }
        writeln!(out, "value = {}", self.whole_value)?;
        writeln!(out, "interval = {}", self.sign_witness)
    }
}

fn write_functional(out: &mut fmt::Formatter<'_>, name: &str, f: &QFunctional) -> fmt::Result {
    let row: Vec<String> = f.row().iter().map(Rational::to_string).collect();
    writeln!(out, "functional {name} = {}", row.join(","))
}
