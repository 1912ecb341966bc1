//! Command-line driver: ranks, dissections, tiling verification,
//! impossibility certificates, goodness proofs, packing search, and SVG
//! rendering over the instance file format.
//!
//! Exit codes: 0 success/feasible, 1 proven impossible (with certificate or
//! violation report), 2 input error, 3 precision or search budget exhausted.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use barkit::certify::{
    bar_impossibility_certificate, dehn_rectangle_certificate, theorem3_certificate,
    theorem4_certificate, BarOutcome, CertOutcome, CertifyError,
};
use barkit::dissector::{plan_k_bar_dissection, DissectError};
use barkit::exactnum::rational::parse_rational;
use barkit::exactnum::Rational;
use barkit::formats::{dissection_file, parse_expression, parse_instance, Instance};
use barkit::geometry::{verify_tiling, BoxSpec, Dissection, GeomError, VerifyOutcome};
use barkit::goodness::{
    goodness_impossibility_certificate, prove_unpackable, scale_instance, GoodnessError,
    GoodnessOutcome, Subgroup, UnpackOutcome,
};
use barkit::packer::{pack, BrickType, PackOutcome, PackProblem};
use barkit::posbasis::{PosBasisError, PosBasisParams};
use barkit::qlinalg::rank_over_q;
use barkit::svg::render_svg;

const EXIT_IMPOSSIBLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "barkit", version, about = "Exact box-dissection toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Q-rank of a box's side lengths.
    Rank {
        file: PathBuf,
        #[arg(long = "box")]
        box_name: String,
    },
    /// Dissect a box into k-bars, or emit the impossibility certificate.
    Dissect {
        file: PathBuf,
        #[arg(long = "box")]
        box_name: String,
        #[arg(long)]
        k: usize,
        /// Write the dissection file here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify the tiling block of an instance file.
    Verify { file: PathBuf },
    /// Emit an impossibility certificate without constructing anything.
    Certify {
        file: PathBuf,
        #[arg(long = "box")]
        box_name: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        /// Dehn square-dissection certificate for a 2D box.
        #[arg(long)]
        dehn: bool,
        /// x·x·x·y certificate for the (a,a,b,b) box: two expressions.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        t3: Option<Vec<String>>,
        /// x·x·y·y certificate for the (a,a,a,b) box: two expressions.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        t4: Option<Vec<String>>,
    },
    /// Test goodness of a box against a subgroup; certify when bad.
    Good {
        file: PathBuf,
        #[arg(long = "box")]
        box_name: String,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        min_dirs: usize,
    },
    /// Prove a box cannot be packed with the given bricks.
    Unpackable {
        file: PathBuf,
        #[arg(long = "box")]
        box_name: String,
        /// Comma-separated brick box names.
        #[arg(long, value_delimiter = ',')]
        bricks: Vec<String>,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        min_dirs: usize,
        /// Contract box and bricks axis-wise first: factors f1,f2,...
        #[arg(long)]
        scale: Option<String>,
    },
    /// Brute-force packing search on integer boxes.
    Pack {
        /// Box dimensions, e.g. 4,4,4
        #[arg(long)]
        dims: String,
        /// Brick dimensions, e.g. 1,2,4 (repeatable).
        #[arg(long = "brick", required = true)]
        bricks: Vec<String>,
        /// Do not try axis permutations of the bricks.
        #[arg(long)]
        fixed_orientation: bool,
        #[arg(long, default_value_t = 50_000_000)]
        node_limit: u64,
    },
    /// Render the tiling block of an instance as SVG (2D only).
    Svg {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

/// Failures that end the run, with their exit codes.
enum Fail {
    Input(String),
    Exhausted(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Input(_) => EXIT_INPUT,
            Fail::Exhausted(_) => EXIT_EXHAUSTED,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Input(m) | Fail::Exhausted(m) => m,
        }
    }
}

fn input_err(e: impl Display) -> Fail {
    Fail::Input(e.to_string())
}

fn geom_fail(e: GeomError) -> Fail {
    match e {
        GeomError::Indeterminate(_) | GeomError::GridTooLarge { .. } => {
            Fail::Exhausted(e.to_string())
        }
        other => Fail::Input(other.to_string()),
    }
}

fn certify_fail(e: CertifyError) -> Fail {
    match e {
        CertifyError::Indeterminate(_) | CertifyError::UnsignedValue(_) => {
            Fail::Exhausted(e.to_string())
        }
        CertifyError::Geom(g) => geom_fail(g),
        other => Fail::Input(other.to_string()),
    }
}

fn goodness_fail(e: GoodnessError) -> Fail {
    match e {
        GoodnessError::Indeterminate(_) => Fail::Exhausted(e.to_string()),
        GoodnessError::Geom(g) => geom_fail(g),
        GoodnessError::InvalidTiling(v) => Fail::Input(format!("invalid tiling: {v:?}")),
    }
}

fn load(path: &Path) -> Result<Instance, Fail> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(input_err)
}

fn find_box(instance: &Instance, name: &str) -> Result<BoxSpec, Fail> {
    instance
        .box_spec(name)
        .cloned()
        .ok_or_else(|| Fail::Input(format!("no box named `{name}` in the instance")))
}

fn find_group(instance: &Instance, name: &str) -> Result<Subgroup, Fail> {
    instance
        .group(name)
        .ok_or_else(|| Fail::Input(format!("no group named `{name}` in the instance")))
}

fn tiling_of(instance: &Instance) -> Result<Dissection, Fail> {
    match instance.tiling_dissection() {
        None => Err(Fail::Input("instance has no tiling block".into())),
        Some(Err(e)) => Err(geom_fail(e)),
        Some(Ok(d)) => Ok(d),
    }
}

fn parse_dims(text: &str) -> Result<Vec<u32>, Fail> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| Fail::Input(format!("bad dimension `{t}`: {e}"))))
        .collect()
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<(), Fail> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Fail::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, Fail> {
    match cmd {
        Cmd::Rank { file, box_name } => {
            let instance = load(&file)?;
            let spec = find_box(&instance, &box_name)?;
            println!("{}", rank_over_q(spec.sides()));
            Ok(0)
        }
        Cmd::Dissect { file, box_name, k, out } => {
            if k == 0 {
                return Err(Fail::Input("--k must be at least 1".into()));
            }
            let instance = load(&file)?;
            let spec = find_box(&instance, &box_name)?;
            match plan_k_bar_dissection(&spec, k, &PosBasisParams::default()) {
                Ok(plan) => {
                    let file_text = dissection_file(&box_name, &plan.dissection);
                    write_or_print(out.as_deref(), &file_text)?;
                    eprintln!(
                        "dissected `{box_name}` into {} pieces over a basis of {}",
                        plan.dissection.pieces.len(),
                        plan.basis.basis.len()
                    );
                    Ok(0)
                }
                Err(DissectError::NotDissectable { certificate, .. }) => {
                    print!("{certificate}");
                    Ok(EXIT_IMPOSSIBLE)
                }
                Err(DissectError::PosBasis(e @ PosBasisError::RefinementExhausted { .. }))
                | Err(DissectError::PosBasis(e @ PosBasisError::Indeterminate(_))) => {
                    Err(Fail::Exhausted(e.to_string()))
                }
                Err(DissectError::TooManyPieces { pieces, cap }) => Err(Fail::Exhausted(format!(
                    "construction needs {pieces} pieces, above the cap of {cap}"
                ))),
                Err(DissectError::Geom(g)) => Err(geom_fail(g)),
                Err(DissectError::Certify(c)) => Err(certify_fail(c)),
                Err(e) => Err(Fail::Input(e.to_string())),
            }
        }
        Cmd::Verify { file } => {
            let instance = load(&file)?;
            let d = tiling_of(&instance)?;
            match verify_tiling(&d).map_err(geom_fail)? {
                VerifyOutcome::Valid => {
                    println!("valid tiling: {} pieces", d.pieces.len());
                    Ok(0)
                }
                VerifyOutcome::Violation(v) => {
                    println!("violation: {v:?}");
                    Ok(EXIT_IMPOSSIBLE)
                }
            }
        }
        Cmd::Certify { file, box_name, k, dehn, t3, t4 } => {
            let instance = load(&file)?;
            if let Some(args) = t3 {
                let a = parse_expression(&instance, &args[0]).map_err(input_err)?;
                let b = parse_expression(&instance, &args[1]).map_err(input_err)?;
                return match theorem3_certificate(&a, &b).map_err(certify_fail)? {
                    CertOutcome::Commensurable => {
                        println!("commensurable: the (a,a,b,b) box dissects into x*x*x*y boxes");
                        Ok(0)
                    }
                    CertOutcome::Proof(c) => {
                        print!("{c}");
                        Ok(EXIT_IMPOSSIBLE)
                    }
                };
            }
            if let Some(args) = t4 {
                let a = parse_expression(&instance, &args[0]).map_err(input_err)?;
                let b = parse_expression(&instance, &args[1]).map_err(input_err)?;
                return match theorem4_certificate(&a, &b).map_err(certify_fail)? {
                    CertOutcome::Commensurable => {
                        println!("commensurable: the (a,a,a,b) box dissects into x*x*y*y boxes");
                        Ok(0)
                    }
                    CertOutcome::Proof(c) => {
                        print!("{c}");
                        Ok(EXIT_IMPOSSIBLE)
                    }
                };
            }
            let name = box_name
                .ok_or_else(|| Fail::Input("--box is required unless using --t3/--t4".into()))?;
            let spec = find_box(&instance, &name)?;
            if dehn {
                if spec.dim() != 2 {
                    return Err(Fail::Input("--dehn needs a 2D box".into()));
                }
                return match dehn_rectangle_certificate(spec.side(0), spec.side(1))
                    .map_err(certify_fail)?
                {
                    CertOutcome::Commensurable => {
                        println!("commensurable: the rectangle dissects into squares");
                        Ok(0)
                    }
                    CertOutcome::Proof(c) => {
                        print!("{c}");
                        Ok(EXIT_IMPOSSIBLE)
                    }
                };
            }
            let k = k.ok_or_else(|| Fail::Input("--k is required for the k-bar certificate".into()))?;
            if k == 0 {
                return Err(Fail::Input("--k must be at least 1".into()));
            }
            match bar_impossibility_certificate(&spec, k).map_err(certify_fail)? {
                BarOutcome::Dissectable => {
                    println!("dissectable: rank of the sides is at most {k}");
                    Ok(0)
                }
                BarOutcome::Proof(c) => {
                    print!("{c}");
                    Ok(EXIT_IMPOSSIBLE)
                }
            }
        }
        Cmd::Good { file, box_name, group, min_dirs } => {
            let instance = load(&file)?;
            let spec = find_box(&instance, &box_name)?;
            if min_dirs == 0 || min_dirs > spec.dim() {
                return Err(Fail::Input(format!(
                    "--min-dirs must be in 1..={} for this box",
                    spec.dim()
                )));
            }
            let g = find_group(&instance, &group)?;
            let placed = barkit::geometry::PlacedBox::at_origin(spec);
            match goodness_impossibility_certificate(&placed, &g, min_dirs)
                .map_err(goodness_fail)?
            {
                GoodnessOutcome::BoxIsGood { good_dirs } => {
                    println!("good: directions {good_dirs:?} lie in the group");
                    Ok(0)
                }
                GoodnessOutcome::Proof(c) => {
                    print!("{c}");
                    Ok(EXIT_IMPOSSIBLE)
                }
            }
        }
        Cmd::Unpackable { file, box_name, bricks, group, min_dirs, scale } => {
            let instance = load(&file)?;
            let mut boxes = vec![find_box(&instance, &box_name)?];
            for b in &bricks {
                boxes.push(find_box(&instance, b)?);
            }
            let g = find_group(&instance, &group)?;
            let dim = boxes[0].dim();
            if boxes.iter().any(|b| b.dim() != dim) {
                return Err(Fail::Input("box and bricks must share one dimension".into()));
            }
            if min_dirs == 0 || min_dirs > dim {
                return Err(Fail::Input(format!("--min-dirs must be in 1..={dim}")));
            }
            if let Some(spec_text) = scale {
                let factors: Vec<Rational> = spec_text
                    .split(',')
                    .map(|t| {
                        parse_rational(t)
                            .filter(|f| *f > Rational::from_integer(0.into()))
                            .ok_or_else(|| Fail::Input(format!("bad factor `{t}`")))
                    })
                    .collect::<Result<_, _>>()?;
                if factors.len() != dim {
                    return Err(Fail::Input(format!("--scale needs {dim} factors")));
                }
                boxes = scale_instance(&boxes, &factors).map_err(geom_fail)?;
            }
            let (target, brick_specs) = boxes.split_first().expect("box plus bricks");
            match prove_unpackable(target, brick_specs, &g, min_dirs).map_err(goodness_fail)? {
                UnpackOutcome::Proof(p) => {
                    print!("{p}");
                    Ok(EXIT_IMPOSSIBLE)
                }
                UnpackOutcome::Inconclusive { reason } => {
                    println!("inconclusive: {reason}");
                    Ok(0)
                }
            }
        }
        Cmd::Pack { dims, bricks, fixed_orientation, node_limit } => {
            let problem = PackProblem {
                dims: parse_dims(&dims)?,
                bricks: bricks
                    .iter()
                    .map(|b| Ok(BrickType { dims: parse_dims(b)?, count: None }))
                    .collect::<Result<_, Fail>>()?,
                allow_rotations: !fixed_orientation,
            };
            match pack(&problem, node_limit).map_err(input_err)? {
                PackOutcome::Packed(packing) => {
                    for p in &packing.placed {
                        println!(
                            "brick {} at {:?} extents {:?}",
                            p.brick, p.offset, p.extents
                        );
                    }
                    println!("feasible: {} bricks", packing.placed.len());
                    Ok(0)
                }
                PackOutcome::Infeasible { reason, nodes } => {
                    println!("infeasible ({reason:?}, {nodes} nodes)");
                    Ok(EXIT_IMPOSSIBLE)
                }
                PackOutcome::LimitExceeded { nodes } => Err(Fail::Exhausted(format!(
                    "search budget exhausted after {nodes} nodes"
                ))),
            }
        }
        Cmd::Svg { file, out } => {
            let instance = load(&file)?;
            let d = tiling_of(&instance)?;
            match verify_tiling(&d).map_err(geom_fail)? {
                VerifyOutcome::Valid => {}
                VerifyOutcome::Violation(v) => {
                    println!("violation: {v:?}");
                    return Ok(EXIT_IMPOSSIBLE);
                }
            }
            let svg = render_svg(&d).map_err(input_err)?;
            std::fs::write(&out, svg).map_err(|e| Fail::Input(format!("{}: {e}", out.display())))?;
            eprintln!("wrote {}", out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("error: {}", fail.message());
            ExitCode::from(fail.code())
        }
    }
}
