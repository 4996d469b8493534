//! Points, axis-aligned boxes, segments and finite unions of them.
//!
//! Every value here is immutable once built. Constructors validate the
//! invariants (finite coordinates, matching dimensions, non-empty sets), so a
//! [`CompactSet`] in hand is always a non-empty compact subset of Rⁿ.

use crate::error::{Error, Result};

/// A location in Rⁿ. Also used as a translation vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Point(coords))
    }

    /// The origin of Rⁿ.
    pub fn zero(dim: usize) -> Result<Self> {
        Point::new(vec![0.0; dim])
    }

    /// Builds a point from values already known to be finite.
    pub(crate) fn from_finite(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Point) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(dist(&self.0, &other.0))
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point::from_finite(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point::from_finite(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, s: f64) -> Point {
        Point::from_finite(self.0.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Point {
        Point::from_finite(self.0.iter().map(|c| -c).collect())
    }
}

#[inline]
pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[inline]
pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Canonical axis-aligned box ∏[loⁱ, hiⁱ] with loⁱ ≤ hiⁱ.
///
/// Zero-width axes are allowed; a box with `lo == hi` is a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisBox {
    lo: Point,
    hi: Point,
}

/// Box spanned by two arbitrary corner points, with the minimum corner first.
///
/// Swapping `u` and `v` yields the same box.
pub fn canonical_box(u: &Point, v: &Point) -> Result<AxisBox> {
    check_dim(u.dim(), v.dim())?;
    let (lo, hi) = u
        .coords()
        .iter()
        .zip(v.coords())
        .map(|(&a, &b)| (a.min(b), a.max(b)))
        .unzip();
    Ok(AxisBox {
        lo: Point::from_finite(lo),
        hi: Point::from_finite(hi),
    })
}

impl AxisBox {
    /// Builds a box from corners that must already satisfy `lo ≤ hi`.
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        check_dim(lo.dim(), hi.dim())?;
        if lo.coords().iter().zip(hi.coords()).any(|(a, b)| a > b) {
            return Err(Error::NonCanonicalBox);
        }
        Ok(AxisBox { lo, hi })
    }

    pub(crate) fn from_bounds(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        debug_assert!(lo.iter().zip(&hi).all(|(a, b)| a <= b));
        AxisBox {
            lo: Point::from_finite(lo),
            hi: Point::from_finite(hi),
        }
    }

    /// The degenerate box `{p}`.
    pub fn point(p: Point) -> Self {
        AxisBox { lo: p.clone(), hi: p }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    #[inline]
    pub fn lo(&self) -> &Point {
        &self.lo
    }

    #[inline]
    pub fn hi(&self) -> &Point {
        &self.hi
    }

    pub fn center(&self) -> Point {
        Point::from_finite(
            self.lo
                .coords()
                .iter()
                .zip(self.hi.coords())
                .map(|(a, b)| 0.5 * (a + b))
                .collect(),
        )
    }

    /// Per-axis side lengths.
    pub fn extents(&self) -> Vec<f64> {
        self.lo
            .coords()
            .iter()
            .zip(self.hi.coords())
            .map(|(a, b)| b - a)
            .collect()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Length of the main diagonal.
    pub fn diameter(&self) -> f64 {
        dist(self.lo.coords(), self.hi.coords())
    }

    /// Closed containment test for a point.
    pub fn contains(&self, x: &[f64]) -> bool {
        self.lo
            .coords()
            .iter()
            .zip(self.hi.coords())
            .zip(x)
            .all(|((l, h), c)| l <= c && c <= h)
    }

    /// True when `other ⊆ self`.
    pub fn contains_box(&self, other: &AxisBox) -> bool {
        self.dim() == other.dim()
            && self.contains(other.lo.coords())
            && self.contains(other.hi.coords())
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &AxisBox) -> Result<AxisBox> {
        check_dim(self.dim(), other.dim())?;
        let lo = self
            .lo
            .coords()
            .iter()
            .zip(other.lo.coords())
            .map(|(a, b)| a.min(*b))
            .collect();
        let hi = self
            .hi
            .coords()
            .iter()
            .zip(other.hi.coords())
            .map(|(a, b)| a.max(*b))
            .collect();
        Ok(AxisBox::from_bounds(lo, hi))
    }

    pub fn translate(&self, v: &Point) -> Result<AxisBox> {
        Ok(AxisBox {
            lo: self.lo.add(v)?,
            hi: self.hi.add(v)?,
        })
    }

    /// All 2ⁿ corners, with duplicates removed along zero-width axes.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        box_vertices(self.lo.coords(), self.hi.coords())
    }

    /// The four edges of a 2D box as a union of segments.
    pub fn boundary(&self) -> Result<CompactSet> {
        if self.dim() != 2 {
            return Err(Error::BoundaryNeeds2d(self.dim()));
        }
        let (l, h) = (self.lo.coords(), self.hi.coords());
        let corner = |x: f64, y: f64| Point::from_finite(vec![x, y]);
        let c = [
            corner(l[0], l[1]),
            corner(h[0], l[1]),
            corner(h[0], h[1]),
            corner(l[0], h[1]),
        ];
        let edges = (0..4)
            .map(|i| CompactSet::Segment(Segment::from_valid(c[i].clone(), c[(i + 1) % 4].clone())))
            .collect();
        CompactSet::union(edges)
    }
}

pub(crate) fn box_vertices(lo: &[f64], hi: &[f64]) -> Vec<Vec<f64>> {
    let free: Vec<usize> = (0..lo.len()).filter(|&i| lo[i] < hi[i]).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0..(1usize << free.len()) {
        let mut v = lo.to_vec();
        for (bit, &axis) in free.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                v[axis] = hi[axis];
            }
        }
        out.push(v);
    }
    out
}

/// Closed straight segment from `p` to `q`. `p == q` is allowed and
/// behaves as a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    p: Point,
    q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Result<Self> {
        check_dim(p.dim(), q.dim())?;
        Ok(Segment { p, q })
    }

    pub(crate) fn from_valid(p: Point, q: Point) -> Self {
        debug_assert_eq!(p.dim(), q.dim());
        Segment { p, q }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    #[inline]
    pub fn p(&self) -> &Point {
        &self.p
    }

    #[inline]
    pub fn q(&self) -> &Point {
        &self.q
    }

    pub fn length(&self) -> f64 {
        dist(self.p.coords(), self.q.coords())
    }

    /// The point `p + s·(q − p)`.
    pub fn at(&self, s: f64) -> Point {
        Point::from_finite(lerp(self.p.coords(), self.q.coords(), s))
    }

    pub fn translate(&self, v: &Point) -> Result<Segment> {
        Ok(Segment {
            p: self.p.add(v)?,
            q: self.q.add(v)?,
        })
    }
}

pub(crate) fn lerp(p: &[f64], q: &[f64], s: f64) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a + s * (b - a)).collect()
}

/// Non-empty finite point set.
#[derive(Debug, Clone, PartialEq)]
pub struct Finite(Vec<Point>);

impl Finite {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?;
        let dim = first.dim();
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        Ok(Finite(points))
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }
}

/// Non-empty union of compact sets of a common dimension. Parts may overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct Union(Vec<CompactSet>);

impl Union {
    pub fn new(parts: Vec<CompactSet>) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptySet)?;
        let dim = first.dim();
        for p in &parts {
            check_dim(dim, p.dim())?;
        }
        Ok(Union(parts))
    }

    pub fn parts(&self) -> &[CompactSet] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }
}

/// A representable element of the hyperspace of Rⁿ.
#[derive(Debug, Clone, PartialEq)]
pub enum CompactSet {
    Finite(Finite),
    Box(AxisBox),
    Segment(Segment),
    Union(Union),
}

/// Borrowed view of one convex building block of a [`CompactSet`].
#[derive(Debug, Clone, Copy)]
pub enum Primitive<'a> {
    Point(&'a Point),
    Box(&'a AxisBox),
    Segment(&'a Segment),
}

impl CompactSet {
    pub fn points(points: Vec<Point>) -> Result<Self> {
        Finite::new(points).map(CompactSet::Finite)
    }

    pub fn point(p: Point) -> Self {
        CompactSet::Finite(Finite(vec![p]))
    }

    pub fn union(parts: Vec<CompactSet>) -> Result<Self> {
        Union::new(parts).map(CompactSet::Union)
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_coords(rows: &[&[f64]]) -> Result<Self> {
        let pts = rows
            .iter()
            .map(|r| Point::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        CompactSet::points(pts)
    }

    pub fn dim(&self) -> usize {
        match self {
            CompactSet::Finite(f) => f.dim(),
            CompactSet::Box(b) => b.dim(),
            CompactSet::Segment(s) => s.dim(),
            CompactSet::Union(u) => u.dim(),
        }
    }

    /// Flattens nested unions into the list of convex primitives.
    pub fn primitives(&self) -> Vec<Primitive<'_>> {
        let mut out = Vec::new();
        self.collect_primitives(&mut out);
        out
    }

    fn collect_primitives<'a>(&'a self, out: &mut Vec<Primitive<'a>>) {
        match self {
            CompactSet::Finite(f) => out.extend(f.points().iter().map(Primitive::Point)),
            CompactSet::Box(b) => out.push(Primitive::Box(b)),
            CompactSet::Segment(s) => out.push(Primitive::Segment(s)),
            CompactSet::Union(u) => u.parts().iter().for_each(|p| p.collect_primitives(out)),
        }
    }

    /// Translate every primitive by `v`. The result has the same structure.
    pub fn translate(&self, v: &Point) -> Result<CompactSet> {
        check_dim(self.dim(), v.dim())?;
        Ok(match self {
            CompactSet::Finite(f) => CompactSet::Finite(Finite(
                f.points().iter().map(|p| p.add(v)).collect::<Result<_>>()?,
            )),
            CompactSet::Box(b) => CompactSet::Box(b.translate(v)?),
            CompactSet::Segment(s) => CompactSet::Segment(s.translate(v)?),
            CompactSet::Union(u) => CompactSet::Union(Union(
                u.parts().iter().map(|p| p.translate(v)).collect::<Result<_>>()?,
            )),
        })
    }

    /// Smallest axis box containing the set.
    pub fn bounding_box(&self) -> AxisBox {
        match self {
            CompactSet::Finite(f) => {
                let mut lo = f.points()[0].coords().to_vec();
                let mut hi = lo.clone();
                for p in &f.points()[1..] {
                    for (i, &c) in p.coords().iter().enumerate() {
                        lo[i] = lo[i].min(c);
                        hi[i] = hi[i].max(c);
                    }
                }
                AxisBox::from_bounds(lo, hi)
            }
            CompactSet::Box(b) => b.clone(),
            CompactSet::Segment(s) => canonical_box(s.p(), s.q()).expect("segment endpoints share a dimension"),
            CompactSet::Union(u) => u.parts()[1..]
                .iter()
                .fold(u.parts()[0].bounding_box(), |acc, p| {
                    acc.hull(&p.bounding_box()).expect("union parts share a dimension")
                }),
        }
    }

    /// True iff the distance from `x` to the set is at most `tol`.
    pub fn contains_point(&self, x: &Point, tol: f64) -> Result<bool> {
        if !(tol >= 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
        Ok(crate::metric::point_to_set(x, self)? <= tol)
    }
}

impl From<AxisBox> for CompactSet {
    fn from(b: AxisBox) -> Self {
        CompactSet::Box(b)
    }
}

impl From<Segment> for CompactSet {
    fn from(s: Segment) -> Self {
        CompactSet::Segment(s)
    }
}

impl From<Point> for CompactSet {
    fn from(p: Point) -> Self {
        CompactSet::point(p)
    }
}
