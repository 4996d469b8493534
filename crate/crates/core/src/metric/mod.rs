//! The Hausdorff metric on representable compact sets.
//!
//! Point-to-set distances are always closed form. The directed distance
//! `d̄(A,B) = sup_{a∈A} d(a,B)` is closed form whenever the supremum is known
//! to sit on a finite candidate set (points of `A`, or the vertices of a
//! convex piece of `A` when `B` is convex). Everything else goes through
//! [`certified`], a branch-and-bound over `A` that returns a value together
//! with a guaranteed error radius.

pub mod certified;
pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{check_dim, dist, AxisBox, CompactSet, Point, Primitive};

pub use certified::SubdivisionLimits;
pub use oracle::{brute_force_hausdorff, brute_force_hausdorff_with, OracleConfig};

/// Default tolerance for certified computations.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A distance together with a certified radius: the true value lies in
/// `[value - err, value + err]`. `err` is zero for closed-form results.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: f64,
    pub err: f64,
}

impl DistanceResult {
    pub fn exact(value: f64) -> Self {
        DistanceResult { value, err: 0.0 }
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.err).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.value + self.err
    }

    /// Enclosure of `max(self, other)`.
    pub fn max(self, other: DistanceResult) -> DistanceResult {
        DistanceResult {
            value: self.value.max(other.value),
            err: self.err.max(other.err),
        }
    }
}

#[inline]
pub(crate) fn dist_to_box(x: &[f64], lo: &[f64], hi: &[f64]) -> f64 {
    x.iter()
        .zip(lo.iter().zip(hi))
        .map(|(&c, (&l, &h))| {
            let r = (l - c).max(c - h).max(0.0);
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

#[inline]
pub(crate) fn dist_to_segment(x: &[f64], p: &[f64], q: &[f64]) -> f64 {
    let mut dd = 0.0;
    let mut dx = 0.0;
    for i in 0..x.len() {
        let d = q[i] - p[i];
        dd += d * d;
        dx += (x[i] - p[i]) * d;
    }
    if dd == 0.0 {
        return dist(x, p);
    }
    let s = (dx / dd).clamp(0.0, 1.0);
    x.iter()
        .zip(p.iter().zip(q))
        .map(|(&c, (&a, &b))| {
            let r = c - (a + s * (b - a));
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

#[inline]
pub(crate) fn dist_to_primitive(x: &[f64], part: &Primitive<'_>) -> f64 {
    match part {
        Primitive::Point(p) => dist(x, p.coords()),
        Primitive::Box(b) => dist_to_box(x, b.lo().coords(), b.hi().coords()),
        Primitive::Segment(s) => dist_to_segment(x, s.p().coords(), s.q().coords()),
    }
}

#[inline]
pub(crate) fn dist_to_parts(x: &[f64], parts: &[Primitive<'_>]) -> f64 {
    parts
        .iter()
        .map(|p| dist_to_primitive(x, p))
        .fold(f64::INFINITY, f64::min)
}

/// Distance from `x` to the nearest point of `set`. Exact.
pub fn point_to_set(x: &Point, set: &CompactSet) -> Result<f64> {
    check_dim(set.dim(), x.dim())?;
    Ok(dist_to_parts(x.coords(), &set.primitives()))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// `d̄(A,B)`, the largest distance from a point of `a` to the set `b`.
pub fn directed_distance(a: &CompactSet, b: &CompactSet, tol: f64) -> Result<DistanceResult> {
    directed_distance_with(a, b, tol, &SubdivisionLimits::default())
}

pub fn directed_distance_with(
    a: &CompactSet,
    b: &CompactSet,
    tol: f64,
    limits: &SubdivisionLimits,
) -> Result<DistanceResult> {
    check_dim(a.dim(), b.dim())?;
    check_tol(tol)?;
    if a == b {
        return Ok(DistanceResult::exact(0.0));
    }
    let parts = b.primitives();
    // A single point, box or segment: d(·,B) is convex, so its maximum over
    // a convex piece of A is reached at one of that piece's vertices.
    let convex_target = parts.len() == 1;

    let mut lower = 0.0f64;
    let mut pending = Vec::new();
    for piece in a.primitives() {
        match piece {
            Primitive::Point(p) => lower = lower.max(dist_to_parts(p.coords(), &parts)),
            Primitive::Box(bx) if bx.is_point() => {
                lower = lower.max(dist_to_parts(bx.lo().coords(), &parts))
            }
            Primitive::Segment(s) if s.p() == s.q() => {
                lower = lower.max(dist_to_parts(s.p().coords(), &parts))
            }
            Primitive::Box(bx) if convex_target => {
                for v in bx.vertices() {
                    lower = lower.max(dist_to_parts(&v, &parts));
                }
            }
            Primitive::Segment(s) if convex_target => {
                lower = lower
                    .max(dist_to_parts(s.p().coords(), &parts))
                    .max(dist_to_parts(s.q().coords(), &parts));
            }
            other => pending.push(other),
        }
    }
    if pending.is_empty() {
        return Ok(DistanceResult::exact(lower));
    }
    let bounds = certified::certified_sup(&pending, &parts, tol, lower, limits)?;
    Ok(DistanceResult {
        value: 0.5 * (bounds.lower + bounds.upper),
        err: 0.5 * (bounds.upper - bounds.lower),
    })
}

/// The Hausdorff distance `h(A,B) = max(d̄(A,B), d̄(B,A))`.
pub fn hausdorff(a: &CompactSet, b: &CompactSet, tol: f64) -> Result<DistanceResult> {
    Ok(directed_distance(a, b, tol)?.max(directed_distance(b, a, tol)?))
}

pub fn hausdorff_with(
    a: &CompactSet,
    b: &CompactSet,
    tol: f64,
    limits: &SubdivisionLimits,
) -> Result<DistanceResult> {
    Ok(directed_distance_with(a, b, tol, limits)?.max(directed_distance_with(b, a, tol, limits)?))
}

/// Like [`hausdorff_with`], except that a search running out of cells
/// yields the enclosure reached so far, with its wider error, instead of
/// failing.
pub fn hausdorff_enclosure(
    a: &CompactSet,
    b: &CompactSet,
    tol: f64,
    limits: &SubdivisionLimits,
) -> Result<DistanceResult> {
    let enclose = |r: Result<DistanceResult>| match r {
        Err(Error::SubdivisionBudget { lower, upper, .. }) => Ok(DistanceResult {
            value: 0.5 * (lower + upper),
            err: 0.5 * (upper - lower),
        }),
        other => other,
    };
    Ok(enclose(directed_distance_with(a, b, tol, limits))?.max(enclose(directed_distance_with(b, a, tol, limits))?))
}

/// Hausdorff distance between nested boxes `inner ⊆ outer`.
///
/// The farthest point of `outer` from `inner` is a vertex of `outer`, and on
/// each axis its offset from `inner` is the larger of the two face gaps.
pub fn nested_box_hausdorff(inner: &AxisBox, outer: &AxisBox) -> Result<f64> {
    check_dim(outer.dim(), inner.dim())?;
    if !outer.contains_box(inner) {
        return Err(Error::NotNested);
    }
    let (a, b) = (inner.lo().coords(), inner.hi().coords());
    let (c, d) = (outer.lo().coords(), outer.hi().coords());
    Ok((0..a.len())
        .map(|i| {
            let gap = (a[i] - c[i]).max(d[i] - b[i]);
            gap * gap
        })
        .sum::<f64>()
        .sqrt())
}
