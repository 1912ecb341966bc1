//! Canonical text emission for instances and dissection files. Output
//! re-parses to the same instance, so emit∘parse is idempotent.

use std::fmt::Write;

use crate::exactnum::rational::to_decimal_string;
use crate::exactnum::{QNum, SymbolSpace};
use crate::geometry::Dissection;

use super::Instance;

fn decimal_or_fraction(r: &crate::exactnum::Rational) -> String {
    to_decimal_string(r).unwrap_or_else(|| r.to_string())
}

fn symbol_lines(space: &SymbolSpace, out: &mut String) {
    for s in space.symbols() {
        let _ = writeln!(
            out,
            "symbol {} ~ {} eps {}",
            s.name(),
            decimal_or_fraction(s.approx()),
            decimal_or_fraction(s.eps())
        );
    }
}

fn coord_list(values: &[QNum]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    parts.join(", ")
}

/// Canonical instance text: symbols, lengths, boxes, groups, then the tiling.
pub fn emit_instance(instance: &Instance) -> String {
    let mut out = String::new();
    symbol_lines(&instance.space, &mut out);
    for (name, value) in &instance.lengths {
        let _ = writeln!(out, "length {name} = {value}");
    }
    for (name, spec) in &instance.boxes {
        let sides: Vec<String> = spec.sides().iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "box {name} = {}", sides.join(" x "));
    }
    for (name, gens) in &instance.groups {
        let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "group {name} = {}", gens.join(", "));
    }
    if let Some(decl) = &instance.tiling {
        let _ = writeln!(out, "tiling of {}", decl.box_name);
        for (at, size) in &decl.pieces {
            let _ = writeln!(out, "piece at ({}) size ({})", coord_list(at), coord_list(size));
        }
        let _ = writeln!(out, "end");
    }
    out
}

/// Self-contained dissection file: symbols, the whole box, and the tiling.
/// Accepted by `parse_instance` and hence by the verifier.
pub fn dissection_file(box_name: &str, d: &Dissection) -> String {
    let space = d.whole.spec().space();
    let mut out = String::new();
    symbol_lines(space, &mut out);
    let sides: Vec<String> = d.whole.spec().sides().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "box {box_name} = {}", sides.join(" x "));
    let _ = writeln!(out, "tiling of {box_name}");
    for p in &d.pieces {
        let _ = writeln!(
            out,
            "piece at ({}) size ({})",
            coord_list(p.offset()),
            coord_list(p.spec().sides())
        );
    }
    let _ = writeln!(out, "end");
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_instance;
    use super::*;
    use crate::dissector::dissect_into_k_bars;
    use crate::exactnum::rational::parse_rational;
    use crate::geometry::{verify_tiling, BoxSpec, VerifyOutcome};

    #[test]
    fn emission_is_idempotent() {
        let text = "# demo\n\
                    symbol s ~ 1.41421356237309 eps 1e-11\n\
                    length a = 1\n\
                    length c = -1 + 1*s\n\
                    box P = a x 1*s x c\n\
                    group g = 4, 1/2\n";
        let once = emit_instance(&parse_instance(text).unwrap());
        let twice = emit_instance(&parse_instance(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.contains("symbol s ~ 1.41421356237309 eps 0.00000000001"));
        assert!(once.contains("length c = -1 + 1*s"));
    }

    #[test]
    fn dissection_files_verify_after_reparse() {
        let space = crate::exactnum::SymbolSpace::rational_only();
        let q = |s: &str| crate::exactnum::QNum::from_rational(&space, parse_rational(s).unwrap());
        let spec = BoxSpec::new(vec![q("3"), q("2")]).unwrap();
        let d = dissect_into_k_bars(&spec, 1).unwrap();
        let file = dissection_file("P", &d);
        let inst = parse_instance(&file).unwrap();
        let reread = inst.tiling_dissection().unwrap().unwrap();
        assert_eq!(reread.pieces.len(), 6);
        assert_eq!(verify_tiling(&reread).unwrap(), VerifyOutcome::Valid);
    }
}
