//! SVG rendering of 2D frames.
//!
//! Geometry is drawn in world coordinates inside a group flipped on the y
//! axis, so the picture has the usual mathematical orientation. All frames of
//! one path share a view box, which keeps them aligned when flipped through.

use std::fmt::Write;

use hyperspace_core::{AxisBox, CompactSet, Primitive};

const WIDTH_PX: f64 = 800.0;

/// Fixed drawing area for a sequence of frames.
#[derive(Debug, Clone, PartialEq)]
pub struct View {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl View {
    /// The union of the bounding boxes; zero-size axes are widened so the
    /// view box stays valid.
    pub fn covering<'a>(boxes: impl IntoIterator<Item = &'a AxisBox>) -> Option<View> {
        let mut it = boxes.into_iter();
        let first = it.next()?.clone();
        let hull = it.fold(first, |acc, b| acc.hull(b).expect("frames share a dimension"));
        let (lo, hi) = (hull.lo().coords(), hull.hi().coords());
        let (mut x, mut y) = (lo[0], lo[1]);
        let (mut width, mut height) = (hi[0] - lo[0], hi[1] - lo[1]);
        let fallback = width.max(height).max(1.0) * 0.05;
        if width == 0.0 {
            x -= fallback;
            width = 2.0 * fallback;
        }
        if height == 0.0 {
            y -= fallback;
            height = 2.0 * fallback;
        }
        Some(View { x, y, width, height })
    }

    fn px(&self) -> f64 {
        self.width / WIDTH_PX
    }
}

fn num(v: f64) -> String {
    format!("{v}")
}

fn draw(out: &mut String, set: &CompactSet, view: &View) {
    let dot = 2.0 * view.px();
    for piece in set.primitives() {
        match piece {
            Primitive::Point(p) => {
                let c = p.coords();
                let _ = writeln!(out, r#"    <circle cx="{}" cy="{}" r="{}" class="dot"/>"#, num(c[0]), num(c[1]), num(dot));
            }
            Primitive::Segment(s) => {
                let (p, q) = (s.p().coords(), s.q().coords());
                let _ = writeln!(
                    out,
                    r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    num(p[0]),
                    num(p[1]),
                    num(q[0]),
                    num(q[1])
                );
            }
            Primitive::Box(b) => {
                let (lo, hi) = (b.lo().coords(), b.hi().coords());
                if b.is_point() {
                    let _ = writeln!(out, r#"    <circle cx="{}" cy="{}" r="{}" class="dot"/>"#, num(lo[0]), num(lo[1]), num(dot));
                } else if lo[0] == hi[0] || lo[1] == hi[1] {
                    let _ = writeln!(
                        out,
                        r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                        num(lo[0]),
                        num(lo[1]),
                        num(hi[0]),
                        num(hi[1])
                    );
                } else {
                    let _ = writeln!(
                        out,
                        r#"    <rect x="{}" y="{}" width="{}" height="{}"/>"#,
                        num(lo[0]),
                        num(lo[1]),
                        num(hi[0] - lo[0]),
                        num(hi[1] - lo[1])
                    );
                }
            }
        }
    }
}

/// One frame as a standalone SVG document.
pub fn render_frame(set: &CompactSet, t: f64, view: &View) -> String {
    let height_px = (WIDTH_PX * view.height / view.width).clamp(1.0, 4.0 * WIDTH_PX);
    let px = view.px();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(WIDTH_PX),
        num(height_px.round()),
        num(view.x),
        num(-(view.y + view.height)),
        num(view.width),
        num(view.height)
    );
    out.push_str(
        "  <style>rect, line { fill: none; stroke: black; stroke-width: 1px; vector-effect: non-scaling-stroke; } .dot { fill: black; stroke: none; }</style>\n",
    );
    out.push_str("  <g transform=\"scale(1,-1)\">\n");
    draw(&mut out, set, view);
    out.push_str("  </g>\n");
    let font = 14.0 * px;
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" font-family="monospace" font-size="{}">t = {t:.4}</text>"#,
        num(view.x + 4.0 * px),
        num(-(view.y + view.height) + font + 2.0 * px),
        num(font)
    );
    out.push_str("</svg>\n");
    out
}
