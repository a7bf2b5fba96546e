//! The `{0}`-kernel of a simple polygon at a fixed rotation angle:
//! reflex maxima/minima, the horizontal strip between them, and the
//! kernel as the strip intersected with the polygon, with its bounding
//! chains, area, and perimeter.

use crate::geom::{self, clip_halfplane, line_at_angle, Keep, Point, SimplePolygon, EPS_LEN};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    ReflexMax,
    ReflexMin,
}

/// A reflex maximum or minimum: a reflex vertex with both neighbors on
/// the same side, or a horizontal edge whose two endpoints are both
/// reflex with the outer neighbors on the same side.
#[derive(Debug, Clone)]
pub struct ReflexExtremum {
    pub kind: ExtremumKind,
    /// One index, or two edge-adjacent indices for a horizontal-edge
    /// extremum (sharing the same level).
    pub vertex_indices: Vec<usize>,
    /// The y-coordinate of the extremum in the working frame.
    pub level: f64,
}

/// Where a strip level comes from.
#[derive(Debug, Clone)]
pub enum StripSource {
    Extremum(ReflexExtremum),
    /// No reflex extremum of the needed kind exists; the level falls back
    /// to a hull vertex of the polygon (highest or lowest vertex).
    HullFallback {
        vertex_index: usize,
    },
}

impl StripSource {
    pub fn vertex_indices(&self) -> Vec<usize> {
        match self {
            StripSource::Extremum(e) => e.vertex_indices.clone(),
            StripSource::HullFallback { vertex_index } => vec![*vertex_index],
        }
    }
}

/// The horizontal strip between the lowest reflex minimum (north line)
/// and the highest reflex maximum (south line).
#[derive(Debug, Clone)]
pub struct Strip {
    pub north_level: f64,
    pub south_level: f64,
    pub north_source: StripSource,
    pub south_source: StripSource,
}

impl Strip {
    /// An inverted strip has its south line above its north line and
    /// yields an empty kernel.
    pub fn is_inverted(&self) -> bool {
        self.south_level > self.north_level + EPS_LEN
    }

    pub fn is_degenerate(&self) -> bool {
        (self.north_level - self.south_level).abs() <= EPS_LEN
    }
}

/// A monotone bounding chain of the kernel, with back-references into
/// the input polygon where a chain vertex coincides with one of its
/// vertices.
#[derive(Debug, Clone)]
pub struct KernelChain {
    pub points: Vec<Point>,
    /// For each chain point, the index of the matching polygon vertex,
    /// or `None` for the two clipped endpoints.
    pub source_vertices: Vec<Option<usize>>,
}

/// The `{0}`-kernel at a fixed angle.
#[derive(Debug, Clone)]
pub struct KernelRegion {
    /// The kernel polygon in the original (unrotated) frame; `None` when
    /// the kernel is empty or degenerate.
    pub polygon: Option<SimplePolygon>,
    /// Left and right bounding chains, in the rotated working frame,
    /// ordered south to north. Empty for an empty kernel.
    pub left_chain: Option<KernelChain>,
    pub right_chain: Option<KernelChain>,
    pub area: f64,
    pub perimeter: f64,
    /// Set when the strip collapses to a single line: the kernel is at
    /// most a segment and is reported as empty with zero area.
    pub degenerate: bool,
    pub strip: Strip,
}

impl KernelRegion {
    pub fn is_empty(&self) -> bool {
        self.polygon.is_none()
    }
}

/// All reflex maxima and minima of `p` with respect to the horizontal
/// orientation, including horizontal-edge extrema.
pub fn reflex_extrema(p: &SimplePolygon) -> Vec<ReflexExtremum> {
    let n = p.len();
    let vs = p.vertices();
    let is_reflex = |i: usize| geom::orientation(vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]) < 0;
    let same_level = |a: f64, b: f64| (a - b).abs() <= EPS_LEN;

    let mut out = Vec::new();
    for i in 0..n {
        let prev = vs[(i + n - 1) % n];
        let cur = vs[i];
        let next = vs[(i + 1) % n];
        if same_level(cur.y, next.y) {
            // Candidate horizontal-edge extremum (i, i+1); evaluated once
            // from its first endpoint.
            let j = (i + 1) % n;
            let after = vs[(j + 1) % n];
            if !is_reflex(i) || !is_reflex(j) {
                continue;
            }
            if prev.y < cur.y - EPS_LEN && after.y < cur.y - EPS_LEN {
                out.push(ReflexExtremum {
                    kind: ExtremumKind::ReflexMax,
                    vertex_indices: vec![i, j],
                    level: cur.y,
                });
            } else if prev.y > cur.y + EPS_LEN && after.y > cur.y + EPS_LEN {
                out.push(ReflexExtremum {
                    kind: ExtremumKind::ReflexMin,
                    vertex_indices: vec![i, j],
                    level: cur.y,
                });
            }
        } else if !same_level(prev.y, cur.y) {
            if !is_reflex(i) {
                continue;
            }
            if prev.y < cur.y && next.y < cur.y {
                out.push(ReflexExtremum {
                    kind: ExtremumKind::ReflexMax,
                    vertex_indices: vec![i],
                    level: cur.y,
                });
            } else if prev.y > cur.y && next.y > cur.y {
                out.push(ReflexExtremum {
                    kind: ExtremumKind::ReflexMin,
                    vertex_indices: vec![i],
                    level: cur.y,
                });
            }
        }
    }
    out
}

/// The strip of `p` in the horizontal frame: north line through the
/// lowest reflex minimum (or the highest vertex when none exists), south
/// line through the highest reflex maximum (or the lowest vertex).
pub fn strip(p: &SimplePolygon) -> Strip {
    let extrema = reflex_extrema(p);
    let lowest_min = extrema
        .iter()
        .filter(|e| e.kind == ExtremumKind::ReflexMin)
        .min_by(|a, b| a.level.partial_cmp(&b.level).unwrap());
    let highest_max = extrema
        .iter()
        .filter(|e| e.kind == ExtremumKind::ReflexMax)
        .max_by(|a, b| a.level.partial_cmp(&b.level).unwrap());

    let (north_level, north_source) = match lowest_min {
        Some(e) => (e.level, StripSource::Extremum(e.clone())),
        None => {
            let (i, v) = p
                .vertices()
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| (a.y, a.x).partial_cmp(&(b.y, b.x)).unwrap())
                .unwrap();
            (v.y, StripSource::HullFallback { vertex_index: i })
        }
    };
    let (south_level, south_source) = match highest_max {
        Some(e) => (e.level, StripSource::Extremum(e.clone())),
        None => {
            let (i, v) = p
                .vertices()
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (a.y, a.x).partial_cmp(&(b.y, b.x)).unwrap())
                .unwrap();
            (v.y, StripSource::HullFallback { vertex_index: i })
        }
    };
    Strip {
        north_level,
        south_level,
        north_source,
        south_source,
    }
}

/// The `{0}`-kernel of `p` at rotation angle `theta` in `[-pi/2, pi/2)`.
///
/// Rotates the polygon into the horizontal frame, intersects it with the
/// strip, and rotates back. A clip that splits into multiple components
/// signals a violated connectivity assumption and is surfaced as
/// [`Error::DisconnectedKernel`] rather than resolved silently.
pub fn kernel_at(p: &SimplePolygon, theta: f64) -> Result<KernelRegion, Error> {
    let rotated = p.rotated(-theta);
    let strip = self::strip(&rotated);
    if strip.is_inverted() || strip.is_degenerate() {
        return Ok(KernelRegion {
            polygon: None,
            left_chain: None,
            right_chain: None,
            area: 0.0,
            perimeter: 0.0,
            degenerate: strip.is_degenerate(),
            strip,
        });
    }

    let north = line_at_angle(Point::new(0.0, strip.north_level), 0.0);
    let south = line_at_angle(Point::new(0.0, strip.south_level), 0.0);
    // For a horizontal line, Keep::Positive is the region below it.
    let mut pieces = clip_halfplane(&rotated, &north, Keep::Positive);
    let mut kept: Vec<SimplePolygon> = Vec::new();
    for piece in pieces.drain(..) {
        kept.extend(clip_halfplane(&piece, &south, Keep::Negative));
    }
    match kept.len() {
        0 => Ok(KernelRegion {
            polygon: None,
            left_chain: None,
            right_chain: None,
            area: 0.0,
            perimeter: 0.0,
            degenerate: false,
            strip,
        }),
        1 => {
            let kernel_rot = kept.pop().unwrap();
            let (left, right) = split_chains(&kernel_rot, &rotated);
            let area = trapezoid_area(&left, &right);
            let perimeter = kernel_rot.perimeter();
            let polygon = kernel_rot.rotated(theta);
            Ok(KernelRegion {
                polygon: Some(polygon),
                left_chain: Some(left),
                right_chain: Some(right),
                area,
                perimeter,
                degenerate: false,
                strip,
            })
        }
        k => Err(Error::DisconnectedKernel(k)),
    }
}

/// Convenience over [`kernel_at`]: `(area, perimeter)`, both zero for an
/// empty kernel.
pub fn kernel_area_perimeter(p: &SimplePolygon, theta: f64) -> Result<(f64, f64), Error> {
    let k = kernel_at(p, theta)?;
    Ok((k.area, k.perimeter))
}

/// Split the kernel boundary (in the rotated frame) into its left and
/// right y-monotone chains, both ordered south to north.
fn split_chains(
    kernel: &SimplePolygon,
    rotated_input: &SimplePolygon,
) -> (KernelChain, KernelChain) {
    let vs = kernel.vertices();
    let n = vs.len();
    let y_min = vs.iter().map(|v| v.y).fold(f64::INFINITY, f64::min);
    let y_max = vs.iter().map(|v| v.y).fold(f64::NEG_INFINITY, f64::max);
    // The south (north) boundary may be a horizontal segment; the chains
    // run between its right and left endpoints.
    let at = |level: f64| (0..n).filter(move |&i| (vs[i].y - level).abs() <= EPS_LEN);
    let lo_right = at(y_min)
        .max_by(|&a, &b| vs[a].x.partial_cmp(&vs[b].x).unwrap())
        .unwrap();
    let lo_left = at(y_min)
        .min_by(|&a, &b| vs[a].x.partial_cmp(&vs[b].x).unwrap())
        .unwrap();
    let hi_right = at(y_max)
        .max_by(|&a, &b| vs[a].x.partial_cmp(&vs[b].x).unwrap())
        .unwrap();
    let hi_left = at(y_max)
        .min_by(|&a, &b| vs[a].x.partial_cmp(&vs[b].x).unwrap())
        .unwrap();
    // CCW from the south-east corner to the north-east corner walks the
    // right chain; CCW from north-west to south-west walks the left one.
    let mut right: Vec<Point> = Vec::new();
    let mut i = lo_right;
    loop {
        right.push(vs[i]);
        if i == hi_right {
            break;
        }
        i = (i + 1) % n;
    }
    let mut left: Vec<Point> = Vec::new();
    let mut i = hi_left;
    loop {
        left.push(vs[i]);
        if i == lo_left {
            break;
        }
        i = (i + 1) % n;
    }
    left.reverse(); // south to north

    let attach = |pts: Vec<Point>| -> KernelChain {
        let source_vertices = pts
            .iter()
            .map(|p| rotated_input.vertices().iter().position(|v| v.close_to(*p)))
            .collect();
        KernelChain {
            points: pts,
            source_vertices,
        }
    };
    (attach(left), attach(right))
}

/// Kernel area via the horizontal-strip (trapezoid) decomposition: the
/// strips between consecutive chain vertex levels are trapezoids, and
/// their total is the difference of the per-edge trapezoid sums
/// `sum 0.5 (x0 + x1) (y1 - y0)` of the right and the left chain.
fn trapezoid_area(left: &KernelChain, right: &KernelChain) -> f64 {
    let edge_sum = |chain: &KernelChain| -> f64 {
        chain
            .points
            .windows(2)
            .map(|w| 0.5 * (w[0].x + w[1].x) * (w[1].y - w[0].y))
            .sum()
    };
    edge_sum(right) - edge_sum(left)
}
