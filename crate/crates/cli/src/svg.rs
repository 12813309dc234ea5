//! Root scatter plots in the complex plane.
//!
//! Roots of unstable powers are drawn black, roots of stable powers gray,
//! with the unit circle for reference.

use std::fmt::Write as _;

use schur_hadamard::{StabilityStatus, SweepRecord};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const MARKER_RADIUS: f64 = 1.6;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn coord(x: f64) -> String {
    format!("{x:.3}")
}

pub fn root_plot(records: &[SweepRecord], title: &str) -> String {
    let extent = records
        .iter()
        .flat_map(|r| r.roots.iter())
        .map(|z| z.re.abs().max(z.im.abs()))
        .filter(|m| m.is_finite())
        .fold(1.0f64, f64::max)
        * 1.1;
    let centre = SIZE / 2.0;
    let scale = (SIZE / 2.0 - MARGIN) / extent;
    let px = |x: f64| centre + x * scale;
    let py = |y: f64| centre - y * scale;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    let _ = writeln!(
        s,
        "  <rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        s,
        "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>",
        coord(MARGIN),
        coord(centre),
        coord(SIZE - MARGIN),
        coord(centre)
    );
    let _ = writeln!(
        s,
        "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>",
        coord(centre),
        coord(MARGIN),
        coord(centre),
        coord(SIZE - MARGIN)
    );
    let _ = writeln!(
        s,
        "  <circle class=\"unit-circle\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#3366cc\" stroke-width=\"1\"/>",
        coord(centre),
        coord(centre),
        coord(scale)
    );
    for r in records {
        let fill = if r.status == StabilityStatus::Stable {
            "gray"
        } else {
            "black"
        };
        for z in &r.roots {
            let _ = writeln!(
                s,
                "  <circle class=\"root\" data-p=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{MARKER_RADIUS}\" fill=\"{fill}\"/>",
                crate::format::number(r.p),
                coord(px(z.re)),
                coord(py(z.im))
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
