//! Instance and tiling text formats.
//!
//! Line-oriented grammar, one statement per line, `#` comments:
//!
//! ```text
//! symbol <name> ~ <decimal> [eps <decimal>]
//! length <name> = <term> ((+|-) <term>)*
//! box <name> = <expr> x <expr> x ...
//! group <name> = <expr> (, <expr>)*
//! tiling of <boxname>
//! piece at (<expr>, ...) size (<expr>, ...)
//! end
//! ```
//!
//! A term is `<rational>`, `<name>`, or `<rational>*<name>` where the name
//! is a declared symbol or length. Parse errors carry line numbers; emission
//! canonicalizes instances so emit∘parse is idempotent.

mod emit;

pub use emit::{dissection_file, emit_instance};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::exactnum::rational::{parse_decimal, parse_rational};
use crate::exactnum::{IndeterminateSign, QNum, Sign, SpaceError, Symbol, SymbolSpace};
use crate::geometry::{BoxSpec, Dissection, GeomError, PlacedBox};
use crate::goodness::Subgroup;

const RESERVED: &[&str] =
    &["symbol", "length", "box", "group", "tiling", "piece", "at", "size", "end", "eps", "of", "x"];

#[derive(Debug, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("reserved word `{0}` cannot be used as a name")]
    ReservedName(String),
    #[error("length `{0}` is not positive")]
    NonPositiveLength(String),
    #[error("group generator is zero")]
    ZeroGenerator,
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Indeterminate(#[from] IndeterminateSign),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    err(line, ParseErrorKind::Syntax(msg.into()))
}

/// A parsed instance: the declared symbol space plus named values.
#[derive(Debug)]
pub struct Instance {
    pub space: SymbolSpace,
    pub lengths: Vec<(String, QNum)>,
    pub boxes: Vec<(String, BoxSpec)>,
    pub groups: Vec<(String, Vec<QNum>)>,
    pub tiling: Option<TilingDecl>,
}

/// An explicit tiling block: piece offsets and sizes for one named box.
#[derive(Debug)]
pub struct TilingDecl {
    pub box_name: String,
    pub pieces: Vec<(Vec<QNum>, Vec<QNum>)>,
}

impl Instance {
    pub fn length(&self, name: &str) -> Option<&QNum> {
        self.lengths.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn box_spec(&self, name: &str) -> Option<&BoxSpec> {
        self.boxes.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn group(&self, name: &str) -> Option<Subgroup> {
        self.groups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, gens)| Subgroup::new(gens.clone()))
    }

    /// The declared tiling as a dissection of its box.
    pub fn tiling_dissection(&self) -> Option<Result<Dissection, GeomError>> {
        let decl = self.tiling.as_ref()?;
        let spec = self.box_spec(&decl.box_name)?;
        let build = || {
            let pieces = decl
                .pieces
                .iter()
                .map(|(at, size)| PlacedBox::new(at.clone(), BoxSpec::new(size.clone())?))
                .collect::<Result<Vec<_>, _>>()?;
            Dissection::new(PlacedBox::at_origin(spec.clone()), pieces)
        };
        Some(build())
    }
}

fn tokenize(line: &str) -> Vec<String> {
    line.replace('(', " ( ")
        .replace(')', " ) ")
        .replace(',', " , ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

struct Names {
    /// one namespace across symbols, lengths, boxes, and groups
    taken: HashMap<String, &'static str>,
}

impl Names {
    fn claim(&mut self, name: &str, what: &'static str, line: usize) -> Result<(), ParseError> {
        if RESERVED.contains(&name) {
            return Err(err(line, ParseErrorKind::ReservedName(name.to_string())));
        }
        if !crate::exactnum::is_identifier(name) {
            return Err(syntax(line, format!("`{name}` is not a valid identifier")));
        }
        if self.taken.insert(name.to_string(), what).is_some() {
            return Err(err(line, ParseErrorKind::DuplicateName(name.to_string())));
        }
        Ok(())
    }
}

struct ExprContext<'a> {
    space: &'a SymbolSpace,
    lengths: &'a [(String, QNum)],
}

impl ExprContext<'_> {
    fn resolve(&self, name: &str, line: usize) -> Result<QNum, ParseError> {
        if let Some(i) = self.space.symbol_index(name) {
            return Ok(QNum::symbol(self.space, i));
        }
        if let Some((_, v)) = self.lengths.iter().find(|(n, _)| n == name) {
            return Ok(v.clone());
        }
        Err(err(line, ParseErrorKind::UnknownName(name.to_string())))
    }

    /// `<term> ((+|-) <term>)*` with term = rational | name | rational*name.
    fn parse_expr(&self, tokens: &[String], line: usize) -> Result<QNum, ParseError> {
        if tokens.is_empty() {
            return Err(syntax(line, "empty expression"));
        }
        let mut acc = QNum::zero(self.space);
        let mut expect_term = true;
        let mut negate = false;
        for tok in tokens {
            if expect_term {
                let term = self.parse_term(tok, line)?;
                acc = if negate { &acc - &term } else { &acc + &term };
                expect_term = false;
                negate = false;
            } else {
                match tok.as_str() {
                    "+" => negate = false,
                    "-" => negate = true,
                    _ => return Err(syntax(line, format!("expected + or -, got `{tok}`"))),
                }
                expect_term = true;
            }
        }
        if expect_term {
            return Err(syntax(line, "expression ends with an operator"));
        }
        Ok(acc)
    }

    fn parse_term(&self, tok: &str, line: usize) -> Result<QNum, ParseError> {
        if let Some((coeff, name)) = tok.split_once('*') {
            let c = parse_rational(coeff)
                .ok_or_else(|| syntax(line, format!("bad rational `{coeff}`")))?;
            let base = self.resolve(name, line)?;
            return Ok(base.scale(&c));
        }
        if let Some(r) = parse_rational(tok) {
            return Ok(QNum::from_rational(self.space, r));
        }
        self.resolve(tok, line)
    }
}

/// Split on a separator token, requiring nonempty runs.
fn split_runs<'a>(
    tokens: &'a [String],
    sep: &str,
    line: usize,
) -> Result<Vec<&'a [String]>, ParseError> {
    let mut runs = Vec::new();
    let mut start = 0usize;
    for (i, t) in tokens.iter().enumerate() {
        if t == sep {
            if i == start {
                return Err(syntax(line, format!("empty item before `{sep}`")));
            }
            runs.push(&tokens[start..i]);
            start = i + 1;
        }
    }
    if start == tokens.len() {
        return Err(syntax(line, format!("trailing `{sep}`")));
    }
    runs.push(&tokens[start..]);
    Ok(runs)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    // first pass: the symbol space (symbols may appear anywhere, order kept)
    let mut names = Names { taken: HashMap::new() };
    let mut symbols = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let tokens = tokenize(stripped);
        if tokens[0] != "symbol" {
            continue;
        }
        match tokens.as_slice() {
            [_, name, tilde, approx, rest @ ..] if tilde == "~" => {
                names.claim(name, "symbol", line)?;
                let approx = parse_decimal(approx)
                    .ok_or_else(|| syntax(line, format!("bad decimal `{approx}`")))?;
                let eps = match rest {
                    [] => parse_decimal("1e-12").unwrap(),
                    [kw, eps] if kw == "eps" => parse_decimal(eps)
                        .ok_or_else(|| syntax(line, format!("bad decimal `{eps}`")))?,
                    _ => return Err(syntax(line, "expected `eps <decimal>` or end of line")),
                };
                symbols.push(Symbol::new(name.clone(), approx, eps));
            }
            _ => return Err(syntax(line, "expected `symbol <name> ~ <decimal> [eps <decimal>]`")),
        }
    }
    let space = SymbolSpace::new(symbols).map_err(|e| err(0, e.into()))?;

    // second pass: lengths, boxes, groups, tiling
    let mut instance = Instance {
        space: space.clone(),
        lengths: Vec::new(),
        boxes: Vec::new(),
        groups: Vec::new(),
        tiling: None,
    };
    let mut open_tiling: Option<(usize, TilingDecl)> = None;

    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let tokens = tokenize(stripped);
        let ctx = ExprContext { space: &space, lengths: &instance.lengths };
        match tokens[0].as_str() {
            "symbol" => {}
            "length" => {
                let (name, rhs) = match tokens.as_slice() {
                    [_, name, eq, rhs @ ..] if eq == "=" && !rhs.is_empty() => (name, rhs),
                    _ => return Err(syntax(line, "expected `length <name> = <expr>`")),
                };
                let value = ctx.parse_expr(rhs, line)?;
                if value.sign().map_err(|e| err(line, e.into()))? != Sign::Positive {
                    return Err(err(line, ParseErrorKind::NonPositiveLength(name.clone())));
                }
                names.claim(name, "length", line)?;
                instance.lengths.push((name.clone(), value));
            }
            "box" => {
                let (name, rhs) = match tokens.as_slice() {
                    [_, name, eq, rhs @ ..] if eq == "=" && !rhs.is_empty() => (name, rhs),
                    _ => return Err(syntax(line, "expected `box <name> = <expr> x <expr> ...`")),
                };
                let sides = split_runs(rhs, "x", line)?
                    .into_iter()
                    .map(|run| ctx.parse_expr(run, line))
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = BoxSpec::new(sides).map_err(|e| err(line, e.into()))?;
                names.claim(name, "box", line)?;
                instance.boxes.push((name.clone(), spec));
            }
            "group" => {
                let (name, rhs) = match tokens.as_slice() {
                    [_, name, eq, rhs @ ..] if eq == "=" && !rhs.is_empty() => (name, rhs),
                    _ => return Err(syntax(line, "expected `group <name> = <expr>, <expr>, ...`")),
                };
                let gens = split_runs(rhs, ",", line)?
                    .into_iter()
                    .map(|run| ctx.parse_expr(run, line))
                    .collect::<Result<Vec<_>, _>>()?;
                if gens.iter().any(QNum::is_zero) {
                    return Err(err(line, ParseErrorKind::ZeroGenerator));
                }
                names.claim(name, "group", line)?;
                instance.groups.push((name.clone(), gens));
            }
            "tiling" => {
                if instance.tiling.is_some() || open_tiling.is_some() {
                    return Err(syntax(line, "only one tiling block per instance"));
                }
                let box_name = match tokens.as_slice() {
                    [_, of, name] if of == "of" => name.clone(),
                    _ => return Err(syntax(line, "expected `tiling of <boxname>`")),
                };
                if instance.box_spec(&box_name).is_none() {
                    return Err(err(line, ParseErrorKind::UnknownName(box_name)));
                }
                open_tiling = Some((line, TilingDecl { box_name, pieces: Vec::new() }));
            }
            "piece" => {
                let Some((_, decl)) = open_tiling.as_mut() else {
                    return Err(syntax(line, "`piece` outside a tiling block"));
                };
                let (at, size) = parse_piece(&tokens, line, &ctx)?;
                decl.pieces.push((at, size));
            }
            "end" => match open_tiling.take() {
                Some((_, decl)) => {
                    if decl.pieces.is_empty() {
                        return Err(syntax(line, "tiling block has no pieces"));
                    }
                    instance.tiling = Some(decl);
                }
                None => return Err(syntax(line, "`end` without a tiling block")),
            },
            other => return Err(syntax(line, format!("unknown statement `{other}`"))),
        }
    }
    if let Some((line, _)) = open_tiling {
        return Err(syntax(line, "tiling block is never closed with `end`"));
    }
    Ok(instance)
}

/// Parse a standalone expression (`1/2 + 2*s`, a length name, …) against an
/// instance's declared names.
pub fn parse_expression(instance: &Instance, text: &str) -> Result<QNum, ParseError> {
    let tokens = tokenize(text);
    let ctx = ExprContext { space: &instance.space, lengths: &instance.lengths };
    ctx.parse_expr(&tokens, 0)
}

fn parse_piece(
    tokens: &[String],
    line: usize,
    ctx: &ExprContext<'_>,
) -> Result<(Vec<QNum>, Vec<QNum>), ParseError> {
    // piece at ( <expr> , ... ) size ( <expr> , ... )
    let mut rest = tokens;
    let expect = |rest: &mut &[String], what: &str| -> Result<(), ParseError> {
        match rest.first() {
            Some(t) if t == what => {
                *rest = &rest[1..];
                Ok(())
            }
            other => Err(syntax(line, format!("expected `{what}`, got {other:?}"))),
        }
    };
    expect(&mut rest, "piece")?;
    expect(&mut rest, "at")?;
    let at = parse_paren_list(&mut rest, line, ctx)?;
    expect(&mut rest, "size")?;
    let size = parse_paren_list(&mut rest, line, ctx)?;
    if !rest.is_empty() {
        return Err(syntax(line, "unexpected tokens after piece"));
    }
    if at.len() != size.len() {
        return Err(syntax(line, "offset and size have different dimensions"));
    }
    Ok((at, size))
}

fn parse_paren_list(
    rest: &mut &[String],
    line: usize,
    ctx: &ExprContext<'_>,
) -> Result<Vec<QNum>, ParseError> {
    match rest.first() {
        Some(t) if t == "(" => {}
        _ => return Err(syntax(line, "expected `(`")),
    }
    let close = rest
        .iter()
        .position(|t| t == ")")
        .ok_or_else(|| syntax(line, "missing `)`"))?;
    let inner = &rest[1..close];
    *rest = &rest[close + 1..];
    if inner.is_empty() {
        return Err(syntax(line, "empty coordinate list"));
    }
    split_runs(inner, ",", line)?
        .into_iter()
        .map(|run| ctx.parse_expr(run, line))
        .collect()
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", emit_instance(self))
    }
}
