//! Restricted-orientation kernels of simple polygons under rotation.
//!
//! The library computes, for a simple polygon `P`:
//!
//! * the `{0}`-kernel at a fixed rotation angle (the strip construction),
//! * all maximal angle intervals on which that kernel is nonempty,
//! * for orthogonal polygons, the rotated `{0, 90}`-kernel and the angle
//!   maximizing or minimizing its area or perimeter,
//!
//! together with independent brute-force oracles used by the test suite.

pub mod geom;
pub mod intervals;
pub mod oracle;
pub mod ortho;
pub mod steady;

pub use geom::{Angle, ConvexChain, Line, Point, SimplePolygon};

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("degenerate intersection: line parallel to the target axis")]
    DegenerateIntersection,
    #[error("convex hulls intersect; no internal tangents exist")]
    HullsIntersect,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("polygon is not orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("kernel clip produced {0} components; expected a connected kernel")]
    DisconnectedKernel(usize),
    #[error("tied extremities: two {0}-extremities share the extreme coordinate")]
    TiedExtremities(char),
    #[error("point lies outside the polygon")]
    PointOutside,
    #[error("polygon generation failed: {0}")]
    GenerationFailed(String),
}
