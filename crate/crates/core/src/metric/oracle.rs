//! Grid brute-force Hausdorff distance.
//!
//! Independent of the closed forms: every set is replaced by a point cloud
//! whose covering radius is at most `resolution`, and the directed distance
//! is the plain max-min over those clouds. Replacing `A` and `B` by samples
//! with covering radii `r_A, r_B` moves `d̄(A,B)` by at most `max(r_A, r_B)`,
//! so the result carries `err = resolution`.

use crate::error::{Error, Result};
use crate::geometry::{check_dim, CompactSet, Primitive};

use super::DistanceResult;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Largest number of sample points allowed per set.
    pub point_budget: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            point_budget: 4_000_000,
        }
    }
}

/// Sample cloud stored row-major, `dim` values per point.
#[derive(Debug, Clone)]
pub struct Samples {
    pub dim: usize,
    pub coords: Vec<f64>,
}

impl Samples {
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }
}

fn grid_counts(piece: &Primitive<'_>, resolution: f64) -> Vec<u64> {
    match piece {
        Primitive::Point(_) => vec![0],
        Primitive::Segment(s) => vec![(s.length() / (2.0 * resolution)).ceil() as u64],
        Primitive::Box(b) => {
            let ext = b.extents();
            let free = ext.iter().filter(|&&w| w > 0.0).count().max(1);
            // grid spacing s has covering radius s·√free / 2
            let spacing = 2.0 * resolution / (free as f64).sqrt();
            ext.iter().map(|&w| (w / spacing).ceil() as u64).collect()
        }
    }
}

/// Point cloud covering `set` to within `resolution`.
pub fn sample_set(set: &CompactSet, resolution: f64, config: &OracleConfig) -> Result<Samples> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::InvalidResolution(resolution));
    }
    let dim = set.dim();
    let pieces = set.primitives();
    let counts: Vec<Vec<u64>> = pieces.iter().map(|p| grid_counts(p, resolution)).collect();
    let needed: u128 = counts
        .iter()
        .map(|c| c.iter().map(|&k| k as u128 + 1).product::<u128>())
        .sum();
    if needed > config.point_budget {
        return Err(Error::PointBudget {
            needed,
            budget: config.point_budget,
        });
    }

    let mut coords = Vec::with_capacity(needed as usize * dim);
    for (piece, count) in pieces.iter().zip(&counts) {
        match piece {
            Primitive::Point(p) => coords.extend_from_slice(p.coords()),
            Primitive::Segment(s) => {
                let n = count[0];
                for k in 0..=n {
                    let f = if n == 0 { 0.0 } else { k as f64 / n as f64 };
                    let (p, q) = (s.p().coords(), s.q().coords());
                    coords.extend(p.iter().zip(q).map(|(a, b)| a + f * (b - a)));
                }
            }
            Primitive::Box(b) => {
                let (lo, hi) = (b.lo().coords(), b.hi().coords());
                let mut idx = vec![0u64; dim];
                loop {
                    coords.extend((0..dim).map(|i| {
                        if count[i] == 0 {
                            lo[i]
                        } else {
                            lo[i] + (hi[i] - lo[i]) * (idx[i] as f64 / count[i] as f64)
                        }
                    }));
                    // odometer increment
                    let mut axis = 0;
                    while axis < dim {
                        idx[axis] += 1;
                        if idx[axis] <= count[axis] {
                            break;
                        }
                        idx[axis] = 0;
                        axis += 1;
                    }
                    if axis == dim {
                        break;
                    }
                }
            }
        }
    }
    Ok(Samples { dim, coords })
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// max over `a` of min over `b`.
///
/// Two exact shortcuts, neither of which changes the result: once some `b`
/// is closer than the running maximum, `a` cannot raise it; and with `b`
/// sorted on the widest axis, the scan walks outward from `a` along that
/// axis and stops on each side once the axis gap alone exceeds the nearest
/// distance found.
pub fn max_min(a: &Samples, b: &Samples) -> f64 {
    let dim = b.dim;
    let spread = |axis: usize| {
        let (lo, hi) = b
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[axis]), hi.max(p[axis])));
        hi - lo
    };
    let axis = (0..dim)
        .max_by(|&i, &j| spread(i).total_cmp(&spread(j)))
        .unwrap_or(0);
    let mut bs: Vec<&[f64]> = b.iter().collect();
    bs.sort_by(|p, q| p[axis].total_cmp(&q[axis]));
    let keys: Vec<f64> = bs.iter().map(|p| p[axis]).collect();

    let mut best_sq = 0.0f64;
    let mut hint = 0usize;
    for x in a.iter() {
        let mut nearest = sq_dist(x, bs[hint]);
        if nearest <= best_sq {
            continue;
        }
        let start = keys.partition_point(|&k| k < x[axis]);
        let (mut up, mut down) = (start, start);
        let (mut up_open, mut down_open) = (true, true);
        while (up_open || down_open) && nearest > best_sq {
            if up_open {
                if up < bs.len() && (keys[up] - x[axis]).powi(2) < nearest {
                    let d = sq_dist(x, bs[up]);
                    if d < nearest {
                        nearest = d;
                        hint = up;
                    }
                    up += 1;
                } else {
                    up_open = false;
                }
            }
            if down_open {
                if down > 0 && (x[axis] - keys[down - 1]).powi(2) < nearest {
                    down -= 1;
                    let d = sq_dist(x, bs[down]);
                    if d < nearest {
                        nearest = d;
                        hint = down;
                    }
                } else {
                    down_open = false;
                }
            }
        }
        best_sq = best_sq.max(nearest);
    }
    best_sq.sqrt()
}

pub fn brute_force_directed(
    a: &CompactSet,
    b: &CompactSet,
    resolution: f64,
    config: &OracleConfig,
) -> Result<DistanceResult> {
    check_dim(a.dim(), b.dim())?;
    let sa = sample_set(a, resolution, config)?;
    let sb = sample_set(b, resolution, config)?;
    Ok(DistanceResult {
        value: max_min(&sa, &sb),
        err: resolution,
    })
}

/// Brute-force Hausdorff distance with the default point budget.
pub fn brute_force_hausdorff(a: &CompactSet, b: &CompactSet, resolution: f64) -> Result<DistanceResult> {
    brute_force_hausdorff_with(a, b, resolution, &OracleConfig::default())
}

pub fn brute_force_hausdorff_with(
    a: &CompactSet,
    b: &CompactSet,
    resolution: f64,
    config: &OracleConfig,
) -> Result<DistanceResult> {
    check_dim(a.dim(), b.dim())?;
    let sa = sample_set(a, resolution, config)?;
    let sb = sample_set(b, resolution, config)?;
    Ok(DistanceResult {
        value: max_min(&sa, &sb).max(max_min(&sb, &sa)),
        err: resolution,
    })
}
