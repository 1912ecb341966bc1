//! SVG rendering of 2D dissections. Display only: coordinates are decimal
//! approximations (12 significant digits); nothing downstream decides
//! anything based on them.

use std::fmt::Write;

use thiserror::Error;

use crate::geometry::Dissection;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SvgError {
    #[error("SVG rendering supports 2D only, got {0} axes")]
    DimensionUnsupported(usize),
}

fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = 12usize;
    let scale = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - scale).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Deterministic piece-index coloring on a hue wheel.
fn fill_for(index: usize) -> String {
    let hue = (index * 137) % 360;
    format!("hsl({hue}, 65%, 78%)")
}

/// One rect per piece; viewBox normalized to the whole box, y flipped so the
/// origin sits at the bottom-left. The dissection must be 2D and Valid
/// (callers verify first).
pub fn render_svg(d: &Dissection) -> Result<String, SvgError> {
    if d.dim() != 2 {
        return Err(SvgError::DimensionUnsupported(d.dim()));
    }
    let approx = |q: &crate::exactnum::QNum| q.eval_interval().midpoint_f64();
    let origin = (approx(d.whole.lower(0)), approx(d.whole.lower(1)));
    let width = approx(d.whole.spec().side(0));
    let height = approx(d.whole.spec().side(1));
    let stroke = (width.max(height)) / 200.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {} {}">"#,
        sig12(width),
        sig12(height)
    );
    for (i, p) in d.pieces.iter().enumerate() {
        let x = approx(p.lower(0)) - origin.0;
        let w = approx(p.spec().side(0));
        let h = approx(p.spec().side(1));
        let y = height - (approx(p.lower(1)) - origin.1) - h;
        let _ = writeln!(
            out,
            r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="{}" stroke="black" stroke-width="{}"/>"#,
            sig12(x),
            sig12(y),
            sig12(w),
            sig12(h),
            fill_for(i),
            sig12(stroke)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissector::dissect_into_k_bars;
    use crate::exactnum::rational::parse_rational;
    use crate::exactnum::{QNum, SymbolSpace};
    use crate::geometry::BoxSpec;

    fn rect_count(svg: &str) -> usize {
        svg.matches("<rect").count()
    }

    #[test]
    fn strip_split_renders_two_rects() {
        let space = SymbolSpace::rational_only();
        let q = |s: &str| QNum::from_rational(&space, parse_rational(s).unwrap());
        let spec = BoxSpec::new(vec![q("1"), q("1")]).unwrap();
        let d = crate::dissector::grid_dissection(
            &spec,
            &[vec![q("1")], vec![q("1/2"), q("1/2")]],
        )
        .unwrap();
        let svg = render_svg(&d).unwrap();
        assert_eq!(rect_count(&svg), 2);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn six_square_dissection_renders_six_rects() {
        let space = SymbolSpace::rational_only();
        let q = |s: &str| QNum::from_rational(&space, parse_rational(s).unwrap());
        let spec = BoxSpec::new(vec![q("3"), q("2")]).unwrap();
        let d = dissect_into_k_bars(&spec, 1).unwrap();
        assert_eq!(rect_count(&render_svg(&d).unwrap()), 6);
    }

    #[test]
    fn three_dimensions_are_rejected() {
        let space = SymbolSpace::rational_only();
        let q = |s: &str| QNum::from_rational(&space, parse_rational(s).unwrap());
        let spec = BoxSpec::new(vec![q("1"), q("1"), q("1")]).unwrap();
        let d = crate::dissector::grid_dissection(
            &spec,
            &[vec![q("1")], vec![q("1")], vec![q("1")]],
        )
        .unwrap();
        assert_eq!(render_svg(&d), Err(SvgError::DimensionUnsupported(3)));
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(1.2345678901234567), "1.23456789012");
    }
}
