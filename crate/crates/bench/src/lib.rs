//! Fixtures shared by the criterion benchmarks.

use hyperspace_core::{AxisBox, CompactSet, Point, Segment};

pub fn pt(c: &[f64]) -> Point {
    Point::new(c.to_vec()).expect("finite fixture")
}

pub fn segment(p: &[f64], q: &[f64]) -> CompactSet {
    Segment::new(pt(p), pt(q)).expect("fixture").into()
}

pub fn boundary(lo: &[f64], hi: &[f64]) -> CompactSet {
    AxisBox::new(pt(lo), pt(hi)).and_then(|b| b.boundary()).expect("fixture")
}

pub fn filled(lo: &[f64], hi: &[f64]) -> CompactSet {
    AxisBox::new(pt(lo), pt(hi)).expect("fixture").into()
}
