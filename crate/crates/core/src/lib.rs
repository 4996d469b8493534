//! Non-empty compact subsets of Rⁿ under the Hausdorff metric.
//!
//! * [`geometry`]: points, axis boxes, segments and finite unions.
//! * [`metric`]: point-to-set distance, directed distance, the Hausdorff
//!   metric (closed form or certified by subdivision) and a grid oracle.
//! * [`paths`]: continuous paths between sets with certified Lipschitz
//!   constants, up to a path between any two representable sets.
//! * [`verify`]: randomised property suites over all of the above.
//! * [`document`]: the JSON formats shared with the command-line tool.

pub mod document;
pub mod error;
pub mod geometry;
pub mod metric;
pub mod paths;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{canonical_box, AxisBox, CompactSet, Finite, Point, Primitive, Segment, Union};
pub use metric::{
    brute_force_hausdorff, directed_distance, hausdorff, nested_box_hausdorff, point_to_set, DistanceResult,
    DEFAULT_TOL,
};
pub use paths::{
    concat, connect, contraction_gap, point_to_box_path, reverse, set_to_box_path, translation_path, HyperPath,
    PathKind, PathSample,
};
