//! Continuous paths in the hyperspace, each with a certified Lipschitz
//! constant.
//!
//! A [`HyperPath`] is a map `t ∈ [0,1] → CompactSet` evaluated in closed
//! form. The building blocks are translation, inflating a point into an
//! enclosing box, and inflating a whole set into an enclosing box. Reversal
//! and equal-time concatenation combine them, and [`connect`] joins any two
//! sets through a pair of translated enclosing boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{canonical_box, check_dim, AxisBox, CompactSet, Point, Segment, Union};
use crate::metric::{hausdorff, DEFAULT_TOL};

/// Largest Hausdorff gap tolerated where two legs of a concatenation meet.
pub const JUNCTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Translation,
    PointToBox,
    SetToBox,
    Reversed,
    Concatenation,
}

/// How segments are discretised when a set containing them is inflated
/// into a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    /// Preferred covering radius of the sample points along a segment.
    pub target_radius: f64,
    /// Upper bound on the number of sample intervals per segment.
    pub max_intervals: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            target_radius: 0.05,
            max_intervals: 32,
        }
    }
}

/// One evaluation of a path: the set, and a bound on its Hausdorff distance
/// to the exact value of the path at that parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub set: CompactSet,
    pub err: f64,
}

#[derive(Debug, Clone)]
enum Definition {
    Translation { set: CompactSet, v: Point },
    PointToBox { a: Point, target: AxisBox },
    SetToBox { set: CompactSet, target: AxisBox, sweep: SweepOptions },
    Reversed(Box<HyperPath>),
    Concat(Vec<HyperPath>),
}

#[derive(Debug, Clone)]
pub struct HyperPath {
    start: CompactSet,
    end: CompactSet,
    lipschitz: f64,
    kind: PathKind,
    def: Definition,
}

impl HyperPath {
    pub fn start(&self) -> &CompactSet {
        &self.start
    }

    pub fn end(&self) -> &CompactSet {
        &self.end
    }

    /// `L` with `h(f(t₁), f(t₂)) ≤ L·|t₁ − t₂|`.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.start.dim()
    }

    /// Legs of a concatenation, in order.
    pub fn legs(&self) -> Option<&[HyperPath]> {
        match &self.def {
            Definition::Concat(legs) => Some(legs),
            _ => None,
        }
    }

    /// The set at parameter `t`, clamped into `[0,1]`.
    pub fn eval(&self, t: f64) -> CompactSet {
        self.sample(t).set
    }

    /// The set at parameter `t` together with its evaluation error.
    pub fn sample(&self, t: f64) -> PathSample {
        assert!(!t.is_nan(), "path parameter is NaN");
        let t = t.clamp(0.0, 1.0);
        match &self.def {
            Definition::Translation { set, v } => PathSample {
                set: set.translate(&v.scale(t)).expect("dimension checked at construction"),
                err: 0.0,
            },
            Definition::PointToBox { a, target } => PathSample {
                set: CompactSet::Box(inflate_point(a.coords(), target, t)),
                err: 0.0,
            },
            Definition::SetToBox { set, target, sweep } => {
                let mut err = 0.0;
                let set = inflate_set(set, target, t, sweep, &mut err);
                PathSample { set, err }
            }
            Definition::Reversed(inner) => inner.sample(1.0 - t),
            Definition::Concat(legs) => {
                let k = legs.len();
                let scaled = k as f64 * t;
                let leg = (scaled.ceil() as usize).clamp(1, k);
                legs[leg - 1].sample(scaled - (leg - 1) as f64)
            }
        }
    }
}

/// `∏ [aⁱ + t(mⁱ − aⁱ), aⁱ + t(Mⁱ − aⁱ)]`, monotone in `t` in floating point.
fn inflate_point(a: &[f64], target: &AxisBox, t: f64) -> AxisBox {
    let (m, big_m) = (target.lo().coords(), target.hi().coords());
    let lo = a.iter().zip(m).map(|(&x, &l)| x + t * (l - x)).collect();
    let hi = a.iter().zip(big_m).map(|(&x, &h)| x + t * (h - x)).collect();
    AxisBox::from_bounds(lo, hi)
}

fn single_or_union(mut parts: Vec<CompactSet>) -> CompactSet {
    if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        CompactSet::Union(Union::new(parts).expect("parts share a dimension"))
    }
}

fn inflate_box(b: &AxisBox, target: &AxisBox, t: f64) -> AxisBox {
    let lo = inflate_point(b.lo().coords(), target, t);
    let hi = inflate_point(b.hi().coords(), target, t);
    AxisBox::from_bounds(lo.lo().coords().to_vec(), hi.hi().coords().to_vec())
}

fn is_axis_parallel(s: &Segment) -> bool {
    let (p, q) = (s.p().coords(), s.q().coords());
    p.iter().zip(q).filter(|(a, b)| a != b).count() <= 1
}

fn inflate_set(set: &CompactSet, target: &AxisBox, t: f64, sweep: &SweepOptions, err: &mut f64) -> CompactSet {
    match set {
        CompactSet::Finite(f) => single_or_union(
            f.points()
                .iter()
                .map(|p| CompactSet::Box(inflate_point(p.coords(), target, t)))
                .collect(),
        ),
        // The union of the per-point boxes over [p, q] is again a box: both
        // faces move affinely in the base point with slope 1 − t ≥ 0 and every
        // per-point interval contains its base point.
        CompactSet::Box(b) => CompactSet::Box(inflate_box(b, target, t)),
        // an axis-parallel segment is a box, so the same holds exactly
        CompactSet::Segment(s) if is_axis_parallel(s) => {
            CompactSet::Box(inflate_box(&canonical_box(s.p(), s.q()).expect("same dimension"), target, t))
        }
        CompactSet::Segment(s) => {
            let len = s.length();
            let intervals = ((len / (2.0 * sweep.target_radius)).ceil() as usize).clamp(1, sweep.max_intervals.max(1));
            let radius = len / (2 * intervals) as f64;
            // Every point of the exact sweep lies within (1 − t)·radius of
            // the sampled boxes; at t = 0 the swept segment makes it exact.
            if t > 0.0 {
                *err = err.max((1.0 - t) * radius);
            }
            let mut parts: Vec<CompactSet> = (0..=intervals)
                .map(|k| {
                    let base = s.at(k as f64 / intervals as f64);
                    CompactSet::Box(inflate_point(base.coords(), target, t))
                })
                .collect();
            let m = target.lo().coords();
            let shift = |x: &Point| {
                Point::new(x.coords().iter().zip(m).map(|(&c, &l)| c + t * (l - c)).collect())
                    .expect("finite")
            };
            parts.push(CompactSet::Segment(Segment::new(shift(s.p()), shift(s.q())).expect("same dimension")));
            single_or_union(parts)
        }
        CompactSet::Union(u) => {
            single_or_union(u.parts().iter().map(|p| inflate_set(p, target, t, sweep, err)).collect())
        }
    }
}

/// Largest offset from points of `bounds` to the faces of `target`, taken
/// over all axes: `max_i max(hiᵢ − mᵢ, Mᵢ − loᵢ)`.
fn spread(bounds: &AxisBox, target: &AxisBox) -> f64 {
    let (lo, hi) = (bounds.lo().coords(), bounds.hi().coords());
    let (m, big_m) = (target.lo().coords(), target.hi().coords());
    (0..lo.len())
        .map(|i| (hi[i] - m[i]).max(big_m[i] - lo[i]))
        .fold(0.0, f64::max)
}

/// `t ↦ A + t·v`, Lipschitz with constant `‖v‖`.
pub fn translation_path(set: &CompactSet, v: &Point) -> Result<HyperPath> {
    check_dim(set.dim(), v.dim())?;
    Ok(HyperPath {
        start: set.clone(),
        end: set.translate(v)?,
        lipschitz: v.norm(),
        kind: PathKind::Translation,
        def: Definition::Translation {
            set: set.clone(),
            v: v.clone(),
        },
    })
}

fn target_box(m: &Point, big_m: &Point) -> Result<AxisBox> {
    let target = canonical_box(m, big_m)?;
    if target.is_point() {
        return Err(Error::DegenerateTarget);
    }
    Ok(target)
}

/// Inflates `{a}` into the box spanned by `m` and `M`, which must contain `a`.
pub fn point_to_box_path(a: &Point, m: &Point, big_m: &Point) -> Result<HyperPath> {
    check_dim(a.dim(), m.dim())?;
    let target = target_box(m, big_m)?;
    if !target.contains(a.coords()) {
        return Err(Error::NotContained);
    }
    let s = spread(&AxisBox::point(a.clone()), &target);
    Ok(HyperPath {
        start: CompactSet::point(a.clone()),
        end: CompactSet::Box(target.clone()),
        lipschitz: (a.dim() as f64).sqrt() * s,
        kind: PathKind::PointToBox,
        def: Definition::PointToBox {
            a: a.clone(),
            target,
        },
    })
}

/// Inflates `A` into the enclosing box spanned by `m` and `M`: at time `t`
/// the path is the union over `a ∈ A` of the point-to-box paths at `t`.
pub fn set_to_box_path(set: &CompactSet, m: &Point, big_m: &Point) -> Result<HyperPath> {
    set_to_box_path_with(set, m, big_m, SweepOptions::default())
}

pub fn set_to_box_path_with(set: &CompactSet, m: &Point, big_m: &Point, sweep: SweepOptions) -> Result<HyperPath> {
    check_dim(set.dim(), m.dim())?;
    let target = target_box(m, big_m)?;
    let bounds = set.bounding_box();
    if !target.contains_box(&bounds) {
        return Err(Error::NotContained);
    }
    let s = spread(&bounds, &target);
    Ok(HyperPath {
        start: set.clone(),
        end: CompactSet::Box(target.clone()),
        lipschitz: (set.dim() as f64).sqrt() * s,
        kind: PathKind::SetToBox,
        def: Definition::SetToBox {
            set: set.clone(),
            target,
            sweep,
        },
    })
}

/// Runs `path` backwards.
pub fn reverse(path: &HyperPath) -> HyperPath {
    HyperPath {
        start: path.end.clone(),
        end: path.start.clone(),
        lipschitz: path.lipschitz,
        kind: PathKind::Reversed,
        def: Definition::Reversed(Box::new(path.clone())),
    }
}

/// Runs `k` paths one after another, each over an interval of length `1/k`.
pub fn concat(paths: Vec<HyperPath>) -> Result<HyperPath> {
    let first = paths.first().ok_or(Error::EmptyConcat)?;
    let dim = first.dim();
    for (j, pair) in paths.windows(2).enumerate() {
        check_dim(dim, pair[1].dim())?;
        let gap = hausdorff(&pair[0].end, &pair[1].start, DEFAULT_TOL)?.upper();
        if gap > JUNCTION_TOL {
            return Err(Error::EndpointMismatch { junction: j + 1, gap });
        }
    }
    let k = paths.len() as f64;
    let lipschitz = k * paths.iter().map(|p| p.lipschitz).fold(0.0, f64::max);
    Ok(HyperPath {
        start: first.start.clone(),
        end: paths.last().expect("non-empty").end.clone(),
        lipschitz,
        kind: PathKind::Concatenation,
        def: Definition::Concat(paths),
    })
}

/// The two enclosing boxes used by [`connect`]: `A_R ⊇ A`, `B_R ⊇ B`, and
/// `B_R = A_R + (c_B − c_A)` where `c` are bounding-box centres.
#[derive(Debug, Clone, PartialEq)]
pub struct EnclosingBoxes {
    pub around_a: AxisBox,
    pub around_b: AxisBox,
    pub shift: Point,
}

pub fn enclosing_boxes(a: &CompactSet, b: &CompactSet) -> Result<EnclosingBoxes> {
    check_dim(a.dim(), b.dim())?;
    let (bb_a, bb_b) = (a.bounding_box(), b.bounding_box());
    let (ca, cb) = (bb_a.center(), bb_b.center());
    let half: Vec<f64> = bb_a
        .extents()
        .iter()
        .zip(bb_b.extents())
        .map(|(x, y)| 0.5 * x.max(y))
        .collect();
    let reach = half.iter().copied().fold(0.0, f64::max);
    let scale = ca
        .coords()
        .iter()
        .chain(cb.coords())
        .map(|c| c.abs())
        .fold(reach, f64::max);
    let pad = 1e-6 * (1.0 + scale);
    let lo = ca.coords().iter().zip(&half).map(|(c, e)| c - e - pad).collect();
    let hi = ca.coords().iter().zip(&half).map(|(c, e)| c + e + pad).collect();
    let around_a = AxisBox::from_bounds(lo, hi);
    let shift = cb.sub(&ca)?;
    let around_b = around_a.translate(&shift)?;
    debug_assert!(around_a.contains_box(&bb_a) && around_b.contains_box(&bb_b));
    Ok(EnclosingBoxes {
        around_a,
        around_b,
        shift,
    })
}

/// A path from `a` to `b`: inflate `a` into `A_R`, translate `A_R` onto
/// `B_R`, then deflate `B_R` into `b`.
pub fn connect(a: &CompactSet, b: &CompactSet) -> Result<HyperPath> {
    connect_with(a, b, SweepOptions::default())
}

pub fn connect_with(a: &CompactSet, b: &CompactSet, sweep: SweepOptions) -> Result<HyperPath> {
    let boxes = enclosing_boxes(a, b)?;
    let inflate = set_to_box_path_with(a, boxes.around_a.lo(), boxes.around_a.hi(), sweep)?;
    let travel = translation_path(&CompactSet::Box(boxes.around_a.clone()), &boxes.shift)?;
    let deflate = reverse(&set_to_box_path_with(b, boxes.around_b.lo(), boxes.around_b.hi(), sweep)?);
    concat(vec![inflate, travel, deflate])
}

/// `h(f_a(t), f_{a'}(t))` for two point-to-box paths into the same box.
/// Never exceeds `(1 − t)·d(a, a')`.
pub fn contraction_gap(a: &Point, a2: &Point, m: &Point, big_m: &Point, t: f64) -> Result<f64> {
    check_dim(a.dim(), a2.dim())?;
    check_dim(a.dim(), m.dim())?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(t));
    }
    let target = canonical_box(m, big_m)?;
    if !target.contains(a.coords()) || !target.contains(a2.coords()) {
        return Err(Error::NotContained);
    }
    let first = CompactSet::Box(inflate_point(a.coords(), &target, t));
    let second = CompactSet::Box(inflate_point(a2.coords(), &target, t));
    Ok(hausdorff(&first, &second, DEFAULT_TOL)?.value)
}
