//! Certified supremum of `a ↦ d(a,B)` over boxes and segments.
//!
//! Cells are sub-boxes or sub-segments of the pieces of `A`. Every cell gets
//! an upper bound on the supremum of `d(·,B)` over it and a lower bound that
//! is an actual function value at a point of the cell. A max-heap keyed on the
//! upper bound drives the search; cells whose upper bound cannot beat the best
//! lower bound are dropped. The search stops when the largest outstanding
//! upper bound is within `tol` of the best lower bound.
//!
//! Two upper bounds are combined per cell:
//!
//! * the Lipschitz bound `d(c,B) + r` (centre `c`, circumradius `r`);
//! * the convex-piece bound `min_j max_v d(v, B_j)` over the cell vertices
//!   `v`, valid because each `d(·,B_j)` is convex on a convex cell.
//!
//! The second one is exact on any cell that lies in the region where a
//! single piece of `B` is nearest, which keeps flat ridges of `d(·,B)` from
//! exploding the cell count. Parts of `B` that cannot be nearest anywhere in
//! a cell are dropped from its candidate list and from all its descendants.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::geometry::{box_vertices, dist, Primitive};

use super::dist_to_primitive;

/// Resource limits for the subdivision search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubdivisionLimits {
    /// Maximum number of cells evaluated before giving up.
    pub max_cells: usize,
}

impl Default for SubdivisionLimits {
    fn default() -> Self {
        SubdivisionLimits { max_cells: 4_000_000 }
    }
}

/// Enclosure `[lower, upper]` of the supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupBounds {
    pub lower: f64,
    pub upper: f64,
    pub cells: usize,
}

#[derive(Debug, Clone)]
enum Shape {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Seg { p: Vec<f64>, q: Vec<f64> },
}

impl Shape {
    fn vertices(&self) -> Vec<Vec<f64>> {
        match self {
            Shape::Box { lo, hi } => box_vertices(lo, hi),
            Shape::Seg { p, q } => vec![p.clone(), q.clone()],
        }
    }

    fn center(&self) -> Vec<f64> {
        let (a, b) = match self {
            Shape::Box { lo, hi } => (lo, hi),
            Shape::Seg { p, q } => (p, q),
        };
        a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
    }

    fn radius(&self) -> f64 {
        match self {
            Shape::Box { lo, hi } => 0.5 * dist(lo, hi),
            Shape::Seg { p, q } => 0.5 * dist(p, q),
        }
    }
}

#[derive(Debug)]
struct Cell {
    shape: Shape,
    upper: f64,
    lower: f64,
    candidates: Vec<u32>,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.upper.total_cmp(&other.upper) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper.total_cmp(&other.upper)
    }
}

/// Bounds `d(·, parts)` over `shape`. `cap` is an upper bound already known
/// for it, typically the parent's.
fn evaluate(shape: Shape, candidates: &[u32], parts: &[Primitive<'_>], cap: f64) -> Cell {
    let vertices = shape.vertices();
    let center = shape.center();
    let radius = shape.radius();

    let mut min_at_vertex = vec![f64::INFINITY; vertices.len()];
    let mut min_at_center = f64::INFINITY;
    let mut convex_bound = f64::INFINITY;
    let mut center_dists = Vec::with_capacity(candidates.len());
    for &j in candidates {
        let part = &parts[j as usize];
        let mut vmax = 0.0f64;
        for (k, v) in vertices.iter().enumerate() {
            let d = dist_to_primitive(v, part);
            vmax = vmax.max(d);
            min_at_vertex[k] = min_at_vertex[k].min(d);
        }
        convex_bound = convex_bound.min(vmax);
        let dc = dist_to_primitive(&center, part);
        min_at_center = min_at_center.min(dc);
        center_dists.push(dc);
    }

    let upper = convex_bound.min(min_at_center + radius).min(cap);
    let lower = min_at_vertex
        .iter()
        .copied()
        .fold(min_at_center, f64::max)
        .min(upper);
    let kept = candidates
        .iter()
        .zip(&center_dists)
        .filter(|(_, &dc)| dc - radius <= upper)
        .map(|(&j, _)| j)
        .collect();
    Cell {
        shape,
        upper,
        lower,
        candidates: kept,
    }
}

/// Splits a cell in two. For boxes every free axis is tried and the one
/// whose worse child has the smaller upper bound wins, then the one whose
/// better child does, then the longer axis. The second key matters on
/// ridges: cutting across a ridge often leaves the worse child's bound as
/// it was while still improving the other child, and cutting along it never
/// helps. Returns `None` when the cell is below floating-point resolution.
fn split(cell: &Cell, parts: &[Primitive<'_>]) -> Option<(Cell, Cell)> {
    match &cell.shape {
        Shape::Seg { p, q } => {
            let mid: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
            if &mid == p || &mid == q {
                return None;
            }
            let left = evaluate(
                Shape::Seg { p: p.clone(), q: mid.clone() },
                &cell.candidates,
                parts,
                cell.upper,
            );
            let right = evaluate(Shape::Seg { p: mid, q: q.clone() }, &cell.candidates, parts, cell.upper);
            Some((left, right))
        }
        Shape::Box { lo, hi } => {
            let mut best: Option<((f64, f64), Cell, Cell)> = None;
            for axis in 0..lo.len() {
                let mid = 0.5 * (lo[axis] + hi[axis]);
                if !(lo[axis] < mid && mid < hi[axis]) {
                    continue;
                }
                let mut left_hi = hi.clone();
                left_hi[axis] = mid;
                let mut right_lo = lo.clone();
                right_lo[axis] = mid;
                let left = evaluate(
                    Shape::Box { lo: lo.clone(), hi: left_hi },
                    &cell.candidates,
                    parts,
                    cell.upper,
                );
                let right = evaluate(
                    Shape::Box { lo: right_lo, hi: hi.clone() },
                    &cell.candidates,
                    parts,
                    cell.upper,
                );
                let key = (left.upper + right.upper, -(hi[axis] - lo[axis]));
                if best.as_ref().map_or(true, |(k, _, _)| key < *k) {
                    best = Some((key, left, right));
                }
            }
            best.map(|(_, l, r)| (l, r))
        }
    }
}

/// Certified supremum of `d(·, parts)` over the union of `sources`.
///
/// `sources` must only hold boxes and segments. `floor` is a known lower
/// bound of the supremum (e.g. from pieces handled in closed form).
pub fn certified_sup(
    sources: &[Primitive<'_>],
    parts: &[Primitive<'_>],
    tol: f64,
    floor: f64,
    limits: &SubdivisionLimits,
) -> Result<SupBounds> {
    let all: Vec<u32> = (0..parts.len() as u32).collect();
    let mut lower = floor;
    let mut heap = BinaryHeap::new();
    let mut cells = 0usize;
    // Upper bounds of cells too small to split any further.
    let mut settled = f64::NEG_INFINITY;

    for src in sources {
        let shape = match src {
            Primitive::Box(b) => Shape::Box {
                lo: b.lo().coords().to_vec(),
                hi: b.hi().coords().to_vec(),
            },
            Primitive::Segment(s) => Shape::Seg {
                p: s.p().coords().to_vec(),
                q: s.q().coords().to_vec(),
            },
            Primitive::Point(p) => Shape::Box {
                lo: p.coords().to_vec(),
                hi: p.coords().to_vec(),
            },
        };
        let cell = evaluate(shape, &all, parts, f64::INFINITY);
        cells += 1;
        lower = lower.max(cell.lower);
        heap.push(cell);
    }

    loop {
        let top_upper = match heap.peek() {
            Some(c) => c.upper,
            None => break,
        };
        if top_upper - lower <= tol {
            break;
        }
        let cell = heap.pop().expect("peeked");
        if cells >= limits.max_cells {
            return Err(Error::SubdivisionBudget {
                cells,
                lower,
                upper: top_upper.max(settled),
            });
        }
        match split(&cell, parts) {
            Some((left, right)) => {
                cells += 2;
                for child in [left, right] {
                    lower = lower.max(child.lower);
                    if child.upper > lower {
                        heap.push(child);
                    }
                }
            }
            None => settled = settled.max(cell.upper),
        }
    }

    let upper = heap
        .peek()
        .map_or(lower, |c| c.upper.max(lower))
        .max(settled);
    Ok(SupBounds { lower, upper, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{AxisBox, CompactSet, Point, Segment};

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    /// Dense sampling of a 1D sup, used as an independent reference.
    fn sampled_sup(f: impl Fn(f64) -> f64, n: usize) -> f64 {
        (0..=n).map(|i| f(i as f64 / n as f64)).fold(0.0, f64::max)
    }

    #[test]
    fn segment_against_two_points() {
        // d(x, {(-1,0),(3,0)}) along x ∈ [0,2], y = 1: max at x = 1, √(4+1)
        let seg = Segment::new(pt(&[0.0, 1.0]), pt(&[2.0, 1.0])).unwrap();
        let target = CompactSet::from_coords(&[&[-1.0, 0.0], &[3.0, 0.0]]).unwrap();
        let parts = target.primitives();
        let r = certified_sup(&[Primitive::Segment(&seg)], &parts, 1e-10, 0.0, &SubdivisionLimits::default()).unwrap();
        assert!(r.upper - r.lower <= 1e-10);
        assert!((r.lower - 5f64.sqrt()).abs() <= 1e-10);

        let reference = sampled_sup(
            |s| {
                let x = 2.0 * s;
                ((x + 1.0).powi(2) + 1.0).sqrt().min(((x - 3.0).powi(2) + 1.0).sqrt())
            },
            100_000,
        );
        assert!((reference - r.lower).abs() < 1e-6);
    }

    #[test]
    fn enclosure_contains_true_value() {
        let bx = AxisBox::new(pt(&[0.0, 0.0]), pt(&[1.0, 1.0])).unwrap();
        let target = CompactSet::from_coords(&[&[0.0, 0.0], &[1.0, 1.0], &[1.0, 0.0]]).unwrap();
        let parts = target.primitives();
        let r = certified_sup(&[Primitive::Box(&bx)], &parts, 1e-9, 0.0, &SubdivisionLimits::default()).unwrap();
        // farthest point from three corners of the unit square is the
        // fourth corner (0,1), at distance 1
        assert!(r.lower <= 1.0 + 1e-12 && 1.0 <= r.upper + 1e-12);
        assert!(r.upper - r.lower <= 1e-9);
    }

    #[test]
    fn budget_is_reported() {
        let bx = AxisBox::new(pt(&[0.0, 0.0]), pt(&[1.0, 1.0])).unwrap();
        let target = CompactSet::from_coords(&[&[0.0, 0.0], &[1.0, 1.0]]).unwrap();
        let parts = target.primitives();
        let err = certified_sup(&[Primitive::Box(&bx)], &parts, 1e-12, 0.0, &SubdivisionLimits { max_cells: 1 });
        assert!(matches!(err, Err(Error::SubdivisionBudget { .. })));
    }
}
