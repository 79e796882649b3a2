//! SVG drawing of a chord diagram. Coordinates are those of the unit circle
//! centred at the origin; the view box maps it onto a 512×512 viewport.
//! Floating point is used here for display only.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::cyclic::CirclePoint;
use crate::diagram::ChordDiagram;

/// Decimal rendering with at most 12 significant digits; magnitudes below
/// `1e-12` print as `0`.
pub fn sig12(x: f64) -> String {
    if x.abs() < 1e-12 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn position(p: &CirclePoint) -> (f64, f64) {
    let t = p.value().to_f64().unwrap_or(0.0);
    let a = TAU * t;
    // screen y grows downwards; negate so the diagram reads counterclockwise
    (a.cos(), -a.sin())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(d: &ChordDiagram) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n",
    );
    s.push_str("  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.01\"/>\n");
    for (name, c) in d.iter() {
        let (x1, y1) = position(c.lo());
        let (x2, y2) = position(c.hi());
        let _ = writeln!(
            s,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"0.01\"/>",
            sig12(x1),
            sig12(y1),
            sig12(x2),
            sig12(y2)
        );
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"0.07\" text-anchor=\"middle\">{}</text>",
            sig12((x1 + x2) / 2.0),
            sig12((y1 + y2) / 2.0),
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}
