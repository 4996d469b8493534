//! JSON documents: set descriptions, path descriptions and frame streams.
//!
//! A set document is `{"dim": n, "set": <node>}` where a node is one of
//!
//! ```text
//! {"type": "points",       "coords": [[...], ...]}
//! {"type": "box",          "lo": [...], "hi": [...]}
//! {"type": "segment",      "p": [...], "q": [...]}
//! {"type": "union",        "parts": [<node>, ...]}
//! {"type": "box_boundary", "lo": [...], "hi": [...]}   (2D only)
//! ```
//!
//! Floats are written in shortest round-trip form, so a parsed document
//! reproduces the original values bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{canonical_box, check_dim, CompactSet, Point, Segment};
use crate::paths::{self, HyperPath, PathKind, PathSample};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetNode {
    Points { coords: Vec<Vec<f64>> },
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Segment { p: Vec<f64>, q: Vec<f64> },
    Union { parts: Vec<SetNode> },
    BoxBoundary { lo: Vec<f64>, hi: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDocument {
    pub dim: usize,
    pub set: SetNode,
}

fn point(coords: &[f64], dim: usize) -> Result<Point> {
    let p = Point::new(coords.to_vec())?;
    check_dim(dim, p.dim())?;
    Ok(p)
}

impl SetNode {
    pub fn to_set(&self, dim: usize) -> Result<CompactSet> {
        match self {
            SetNode::Points { coords } => CompactSet::points(
                coords
                    .iter()
                    .map(|c| point(c, dim))
                    .collect::<Result<Vec<_>>>()?,
            ),
            SetNode::Box { lo, hi } => Ok(canonical_box(&point(lo, dim)?, &point(hi, dim)?)?.into()),
            SetNode::Segment { p, q } => Ok(Segment::new(point(p, dim)?, point(q, dim)?)?.into()),
            SetNode::Union { parts } => CompactSet::union(
                parts
                    .iter()
                    .map(|p| p.to_set(dim))
                    .collect::<Result<Vec<_>>>()?,
            ),
            SetNode::BoxBoundary { lo, hi } => canonical_box(&point(lo, dim)?, &point(hi, dim)?)?.boundary(),
        }
    }

    pub fn from_set(set: &CompactSet) -> SetNode {
        match set {
            CompactSet::Finite(f) => SetNode::Points {
                coords: f.points().iter().map(|p| p.coords().to_vec()).collect(),
            },
            CompactSet::Box(b) => SetNode::Box {
                lo: b.lo().coords().to_vec(),
                hi: b.hi().coords().to_vec(),
            },
            CompactSet::Segment(s) => SetNode::Segment {
                p: s.p().coords().to_vec(),
                q: s.q().coords().to_vec(),
            },
            CompactSet::Union(u) => SetNode::Union {
                parts: u.parts().iter().map(SetNode::from_set).collect(),
            },
        }
    }
}

impl SetDocument {
    pub fn from_set(set: &CompactSet) -> Self {
        SetDocument {
            dim: set.dim(),
            set: SetNode::from_set(set),
        }
    }

    pub fn to_set(&self) -> Result<CompactSet> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        self.set.to_set(self.dim)
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Document(e.to_string())
}

/// Parses a set document.
pub fn parse_set(text: &str) -> Result<CompactSet> {
    serde_json::from_str::<SetDocument>(text)
        .map_err(json_err)?
        .to_set()
}

pub fn set_to_json(set: &CompactSet) -> String {
    serde_json::to_string(&SetDocument::from_set(set)).expect("set documents always serialise")
}

/// A path description, mirroring the constructor arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PathSpec {
    Translation {
        dim: usize,
        set: SetNode,
        v: Vec<f64>,
    },
    PointToBox {
        a: Vec<f64>,
        m: Vec<f64>,
        #[serde(rename = "M")]
        big_m: Vec<f64>,
    },
    SetToBox {
        dim: usize,
        set: SetNode,
        m: Vec<f64>,
        #[serde(rename = "M")]
        big_m: Vec<f64>,
    },
    #[serde(alias = "reversed")]
    Reverse { path: Box<PathSpec> },
    #[serde(alias = "concatenation")]
    Concat { paths: Vec<PathSpec> },
    Connect {
        dim: usize,
        from: SetNode,
        to: SetNode,
    },
}

impl PathSpec {
    pub fn build(&self) -> Result<HyperPath> {
        match self {
            PathSpec::Translation { dim, set, v } => {
                paths::translation_path(&set.to_set(*dim)?, &point(v, *dim)?)
            }
            PathSpec::PointToBox { a, m, big_m } => {
                let a = Point::new(a.clone())?;
                let dim = a.dim();
                paths::point_to_box_path(&a, &point(m, dim)?, &point(big_m, dim)?)
            }
            PathSpec::SetToBox { dim, set, m, big_m } => {
                paths::set_to_box_path(&set.to_set(*dim)?, &point(m, *dim)?, &point(big_m, *dim)?)
            }
            PathSpec::Reverse { path } => Ok(paths::reverse(&path.build()?)),
            PathSpec::Concat { paths: legs } => {
                paths::concat(legs.iter().map(PathSpec::build).collect::<Result<Vec<_>>>()?)
            }
            PathSpec::Connect { dim, from, to } => paths::connect(&from.to_set(*dim)?, &to.to_set(*dim)?),
        }
    }
}

pub fn parse_path(text: &str) -> Result<HyperPath> {
    serde_json::from_str::<PathSpec>(text).map_err(json_err)?.build()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameHeader {
    pub dim: usize,
    pub kind: PathKind,
    pub lipschitz: f64,
    pub frames: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t: f64,
    pub err: f64,
    pub set: SetNode,
}

/// A path sampled at uniformly spaced parameters, `t = 0` and `t = 1`
/// included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameStream {
    pub header: FrameHeader,
    pub frames: Vec<Frame>,
}

/// `count` uniformly spaced parameters from 0 to 1 inclusive.
pub fn uniform_grid(count: usize) -> Vec<f64> {
    assert!(count >= 2, "a grid needs both endpoints");
    let last = (count - 1) as f64;
    (0..count).map(|i| i as f64 / last).collect()
}

impl FrameStream {
    pub fn sample(path: &HyperPath, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Document(format!("need at least 2 frames, got {count}")));
        }
        use rayon::prelude::*;
        let frames = uniform_grid(count)
            .into_par_iter()
            .map(|t| {
                let PathSample { set, err } = path.sample(t);
                Frame {
                    t,
                    err,
                    set: SetNode::from_set(&set),
                }
            })
            .collect();
        Ok(FrameStream {
            header: FrameHeader {
                dim: path.dim(),
                kind: path.kind(),
                lipschitz: path.lipschitz(),
                frames: count,
            },
            frames,
        })
    }

    /// Frames decoded back into sets.
    pub fn sets(&self) -> Result<Vec<CompactSet>> {
        self.frames.iter().map(|f| f.set.to_set(self.header.dim)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AxisBox;

    #[test]
    fn parses_every_node_type() {
        let text = r#"{"dim": 2, "set": {"type": "union", "parts": [
            {"type": "points", "coords": [[0, 0], [1.5, -2]]},
            {"type": "box", "lo": [0, 2], "hi": [4, 0]},
            {"type": "segment", "p": [0, 0], "q": [1, 1]},
            {"type": "box_boundary", "lo": [1, 1], "hi": [4, 3]}
        ]}}"#;
        let set = parse_set(text).unwrap();
        assert_eq!(set.primitives().len(), 2 + 1 + 1 + 4);
        match &set {
            CompactSet::Union(u) => assert_eq!(
                u.parts()[1],
                AxisBox::new(Point::new(vec![0.0, 0.0]).unwrap(), Point::new(vec![4.0, 2.0]).unwrap())
                    .unwrap()
                    .into()
            ),
            _ => unreachable!(),
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            r#"{"dim": 2, "set": {"type": "points", "coords": []}}"#,
            r#"{"dim": 2, "set": {"type": "points", "coords": [[0, 0, 0]]}}"#,
            r#"{"dim": 2, "set": {"type": "union", "parts": []}}"#,
            r#"{"dim": 3, "set": {"type": "box_boundary", "lo": [0,0,0], "hi": [1,1,1]}}"#,
            r#"{"dim": 1, "set": {"type": "points", "coords": [[NaN]]}}"#,
            r#"{"dim": 1, "set": {"type": "points", "coords": [[1e999]]}}"#,
            r#"{"dim": 1, "set": {"type": "points", "coords": [["1"]]}}"#,
            r#"{"dim": 1, "set": {"type": "sphere", "r": 1}}"#,
            r#"{"dim": 0, "set": {"type": "points", "coords": [[]]}}"#,
            r#"{"dim": 1, "set": {"type": "points", "coords": [[1]], "extra": 1}}"#,
        ];
        for text in cases {
            assert!(parse_set(text).is_err(), "accepted {text}");
        }
    }

    #[test]
    fn parses_path_specs() {
        let text = r#"{"kind": "point_to_box", "a": [0, 1], "m": [-5, -2], "M": [4, 3]}"#;
        let p = parse_path(text).unwrap();
        assert_eq!(p.kind(), PathKind::PointToBox);

        let text = r#"{"kind": "concat", "paths": [
            {"kind": "translation", "dim": 1, "set": {"type": "points", "coords": [[0]]}, "v": [1]},
            {"kind": "reverse", "path":
                {"kind": "translation", "dim": 1, "set": {"type": "points", "coords": [[0]]}, "v": [1]}}
        ]}"#;
        let p = parse_path(text).unwrap();
        assert_eq!(p.legs().unwrap().len(), 2);

        let text = r#"{"kind": "concat", "paths": [
            {"kind": "translation", "dim": 1, "set": {"type": "points", "coords": [[0]]}, "v": [1]},
            {"kind": "translation", "dim": 1, "set": {"type": "points", "coords": [[0]]}, "v": [1]}
        ]}"#;
        assert!(matches!(parse_path(text), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn frame_stream_grid() {
        let p = parse_path(r#"{"kind": "connect", "dim": 2,
            "from": {"type": "points", "coords": [[0, 0]]},
            "to": {"type": "points", "coords": [[10, 0]]}}"#)
        .unwrap();
        let stream = FrameStream::sample(&p, 4).unwrap();
        let ts: Vec<f64> = stream.frames.iter().map(|f| f.t).collect();
        assert_eq!(ts, vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]);
        assert_eq!(stream.header.kind, PathKind::Concatenation);
        let text = serde_json::to_string(&stream).unwrap();
        let back: FrameStream = serde_json::from_str(&text).unwrap();
        assert_eq!(back, stream);
    }
}
