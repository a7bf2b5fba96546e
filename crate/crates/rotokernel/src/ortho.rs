//! Kernels of orthogonal polygons under the rotating orientation pair
//! `{theta, theta + 90}`.
//!
//! The pipeline classifies the boundary into compass-labelled edges,
//! decides membership in the swept family (polygons whose boundary splits
//! into four monotone chains linked by four staircases), builds one convex
//! hull arc per reflex-vertex class, intersects the two per-pair angle
//! windows in which opposing hulls are separated, and sweeps the window
//! event by event. Inside an event interval the kernel is an intersection
//! of at most sixteen halfplanes whose supporting vertices are fixed, so a
//! single evaluation costs constant time.

use std::f64::consts::FRAC_PI_2;

use crate::geom::{
    clip_halfplane, convex_chains_intersect, convex_hull, line_at_angle, orientation,
    orthogonal_pair_coeffs, ConvexChain, DoubleAngleCoeffs, Keep, Point, SimplePolygon, EPS_LEN,
};
use crate::intervals::hull_indices;
use crate::Error;

/// Angles closer than this to an interval endpoint are nudged inward
/// before evaluation.
const EPS_ANG: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Compass label of an axis-parallel boundary edge, named after the side
/// of the polygon the edge faces when the boundary is counterclockwise:
/// an east-pointing edge bounds the south side and is labelled `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    /// Westward edge (top side).
    N,
    /// Eastward edge (bottom side).
    S,
    /// Northward edge (right side).
    E,
    /// Southward edge (left side).
    W,
}

impl EdgeLabel {
    /// Stable slot order `N, S, E, W` used by per-label tables.
    pub fn slot(self) -> usize {
        match self {
            EdgeLabel::N => 0,
            EdgeLabel::S => 1,
            EdgeLabel::E => 2,
            EdgeLabel::W => 3,
        }
    }

    pub fn letter(self) -> char {
        match self {
            EdgeLabel::N => 'N',
            EdgeLabel::S => 'S',
            EdgeLabel::E => 'E',
            EdgeLabel::W => 'W',
        }
    }
}

/// Compass kind of a reflex vertex, from the labels of its incident edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflexKind {
    /// Incident to an `N` and an `E` edge; clipped by the perpendicular
    /// line, keeping its southwest side.
    NE,
    /// Incident to an `N` and a `W` edge; clipped by the `theta` line,
    /// keeping the side below it.
    NW,
    /// Incident to an `S` and a `W` edge; perpendicular line, northeast
    /// side kept.
    SW,
    /// Incident to an `S` and an `E` edge; `theta` line, side above kept.
    SE,
}

/// Boundary classification of an orthogonal polygon.
#[derive(Debug, Clone)]
pub struct OrthoClassification {
    /// Label of edge `i = (v_i, v_{i+1})`.
    pub edge_labels: Vec<EdgeLabel>,
    /// Edge indices whose endpoints are both reflex, per label slot.
    pub dents: [Vec<usize>; 4],
    /// Edge indices whose endpoints are both convex, per label slot.
    pub extremities: [Vec<usize>; 4],
    /// `(vertex index, kind)` for every reflex vertex.
    pub reflex_kinds: Vec<(usize, ReflexKind)>,
}

fn label_of(a: Point, b: Point) -> Option<EdgeLabel> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    if dy.abs() <= EPS_LEN && dx.abs() > EPS_LEN {
        Some(if dx > 0.0 { EdgeLabel::S } else { EdgeLabel::N })
    } else if dx.abs() <= EPS_LEN && dy.abs() > EPS_LEN {
        Some(if dy > 0.0 { EdgeLabel::E } else { EdgeLabel::W })
    } else {
        None
    }
}

/// Label every edge, find dents, extremities, and reflex-vertex kinds.
///
/// Fails with [`Error::NotOrthogonal`] when any edge is not axis-parallel.
pub fn classify(p: &SimplePolygon) -> Result<OrthoClassification, Error> {
    let vs = p.vertices();
    let n = vs.len();
    let mut edge_labels = Vec::with_capacity(n);
    for i in 0..n {
        let lab = label_of(vs[i], vs[(i + 1) % n])
            .ok_or_else(|| Error::NotOrthogonal(format!("edge {i} is not axis-parallel")))?;
        edge_labels.push(lab);
    }
    let side = |i: usize| orientation(vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]);
    let mut reflex_kinds = Vec::new();
    for i in 0..n {
        if side(i) >= 0 {
            continue;
        }
        let incoming = edge_labels[(i + n - 1) % n];
        let outgoing = edge_labels[i];
        let kind = match (incoming, outgoing) {
            (EdgeLabel::W, EdgeLabel::N) | (EdgeLabel::N, EdgeLabel::W) => ReflexKind::NW,
            (EdgeLabel::N, EdgeLabel::E) | (EdgeLabel::E, EdgeLabel::N) => ReflexKind::NE,
            (EdgeLabel::S, EdgeLabel::W) | (EdgeLabel::W, EdgeLabel::S) => ReflexKind::SW,
            (EdgeLabel::E, EdgeLabel::S) | (EdgeLabel::S, EdgeLabel::E) => ReflexKind::SE,
            other => {
                return Err(Error::NotOrthogonal(format!(
                    "reflex vertex {i} joins parallel edges {:?}",
                    other
                )))
            }
        };
        reflex_kinds.push((i, kind));
    }
    let mut dents: [Vec<usize>; 4] = Default::default();
    let mut extremities: [Vec<usize>; 4] = Default::default();
    for (i, lab) in edge_labels.iter().enumerate() {
        let j = (i + 1) % n;
        let slot = lab.slot();
        if side(i) < 0 && side(j) < 0 {
            dents[slot].push(i);
        } else if side(i) > 0 && side(j) > 0 {
            extremities[slot].push(i);
        }
    }
    Ok(OrthoClassification {
        edge_labels,
        dents,
        extremities,
        reflex_kinds,
    })
}

// ---------------------------------------------------------------------------
// Kernel result
// ---------------------------------------------------------------------------

/// Kernel of an orthogonal polygon for one orientation pair.
#[derive(Debug, Clone)]
pub struct OrthoKernel {
    /// The kernel region, or `None` when empty.
    pub polygon: Option<SimplePolygon>,
    pub area: f64,
    pub perimeter: f64,
}

impl OrthoKernel {
    pub fn is_empty(&self) -> bool {
        self.polygon.is_none()
    }

    fn empty() -> Self {
        OrthoKernel {
            polygon: None,
            area: 0.0,
            perimeter: 0.0,
        }
    }

    fn from_components(mut comps: Vec<SimplePolygon>) -> Result<Self, Error> {
        // Drop zero-area slivers produced by clips along a boundary edge.
        comps.retain(|c| c.signed_area() > EPS_LEN * EPS_LEN);
        match comps.len() {
            0 => Ok(OrthoKernel::empty()),
            1 => {
                let poly = comps.pop().unwrap();
                let area = poly.signed_area();
                let perimeter = poly.perimeter();
                Ok(OrthoKernel {
                    polygon: Some(poly),
                    area,
                    perimeter,
                })
            }
            k => Err(Error::DisconnectedKernel(k)),
        }
    }
}

fn clip_all(
    start: Vec<SimplePolygon>,
    constraints: &[(crate::geom::Line, Keep)],
) -> Vec<SimplePolygon> {
    let mut comps = start;
    for (line, keep) in constraints {
        comps = comps
            .iter()
            .flat_map(|c| clip_halfplane(c, line, *keep))
            .collect();
    }
    comps
}

/// Innermost dent level per label slot: lowest `N`, highest `S`,
/// leftmost `E`, rightmost `W` dent. `NaN` when the kind is absent.
fn dent_levels(p: &SimplePolygon, cls: &OrthoClassification) -> [f64; 4] {
    let vs = p.vertices();
    let mut levels = [f64::NAN; 4];
    for (slot, level) in levels.iter_mut().enumerate() {
        for &e in &cls.dents[slot] {
            let l = match slot {
                0 | 1 => vs[e].y,
                _ => vs[e].x,
            };
            let better = match slot {
                0 | 2 => level.is_nan() || l < *level,
                _ => level.is_nan() || l > *level,
            };
            if better {
                *level = l;
            }
        }
    }
    levels
}

/// Kernel for the axis-aligned orientation pair (`theta = 0`): the polygon
/// clipped about the innermost dent of each compass kind.
pub fn kernel_axis_aligned(p: &SimplePolygon) -> Result<OrthoKernel, Error> {
    let cls = classify(p)?;
    kernel_axis_aligned_cls(p, &cls)
}

fn kernel_axis_aligned_cls(
    p: &SimplePolygon,
    cls: &OrthoClassification,
) -> Result<OrthoKernel, Error> {
    let levels = dent_levels(p, cls);
    let mut constraints = Vec::new();
    if !levels[0].is_nan() {
        constraints.push((
            line_at_angle(Point::new(0.0, levels[0]), 0.0),
            Keep::Positive,
        ));
    }
    if !levels[1].is_nan() {
        constraints.push((
            line_at_angle(Point::new(0.0, levels[1]), 0.0),
            Keep::Negative,
        ));
    }
    if !levels[2].is_nan() {
        constraints.push((
            line_at_angle(Point::new(levels[2], 0.0), FRAC_PI_2),
            Keep::Negative,
        ));
    }
    if !levels[3].is_nan() {
        constraints.push((
            line_at_angle(Point::new(levels[3], 0.0), FRAC_PI_2),
            Keep::Positive,
        ));
    }
    OrthoKernel::from_components(clip_all(vec![p.clone()], &constraints))
}

// ---------------------------------------------------------------------------
// Family membership
// ---------------------------------------------------------------------------

/// Decision of the swept-family membership test.
#[derive(Debug, Clone)]
pub struct QDecision {
    pub member: bool,
    /// First boundary edge violating the eight-piece decomposition.
    pub witness: Option<usize>,
}

/// Decide whether the boundary decomposes into four monotone chains
/// (east, north, west, south) linked by four two-label staircases.
///
/// The anchors are the outermost extremities of each side; walking the
/// boundary counterclockwise from the lowermost east extremity must visit
/// them in order, and each piece in between may only use the labels of
/// its chain.
pub fn is_in_family_q(p: &SimplePolygon) -> Result<QDecision, Error> {
    let cls = classify(p)?;
    Ok(q_decision(p, &cls))
}

pub fn q_decision(p: &SimplePolygon, cls: &OrthoClassification) -> QDecision {
    let vs = p.vertices();
    let n = vs.len();
    if cls.extremities.iter().any(|v| v.is_empty()) {
        return QDecision {
            member: false,
            witness: None,
        };
    }
    let pick = |slot: usize, best: &dyn Fn(Point, Point) -> f64, max: bool| -> usize {
        let mut out = cls.extremities[slot][0];
        let mut val = best(vs[out], vs[(out + 1) % n]);
        for &e in &cls.extremities[slot][1..] {
            let v = best(vs[e], vs[(e + 1) % n]);
            if (max && v > val) || (!max && v < val) {
                val = v;
                out = e;
            }
        }
        out
    };
    let min_x = |a: Point, b: Point| a.x.min(b.x);
    let max_x = |a: Point, b: Point| a.x.max(b.x);
    let min_y = |a: Point, b: Point| a.y.min(b.y);
    let max_y = |a: Point, b: Point| a.y.max(b.y);
    // Anchor sequence in counterclockwise order.
    let anchors = [
        pick(2, &min_y, false), // lowermost E
        pick(2, &max_y, true),  // topmost E
        pick(0, &max_x, true),  // rightmost N
        pick(0, &min_x, false), // leftmost N
        pick(3, &max_y, true),  // topmost W
        pick(3, &min_y, false), // lowermost W
        pick(1, &min_x, false), // leftmost S
        pick(1, &max_x, true),  // rightmost S
    ];
    // Allowed labels of the piece after each anchor, in slot order N,S,E,W.
    const ALLOWED: [[bool; 4]; 8] = [
        [true, true, true, false],  // east chain: no W
        [true, false, true, false], // NE staircase
        [true, false, true, true],  // north chain: no S
        [true, false, false, true], // NW staircase
        [true, true, false, true],  // west chain: no E
        [false, true, false, true], // SW staircase
        [false, true, true, true],  // south chain: no N
        [false, true, true, false], // SE staircase
    ];
    let mut stage = 0usize;
    for k in 0..n {
        let e = (anchors[0] + k) % n;
        let mut matched = false;
        while stage < 8 && anchors[stage] == e {
            stage += 1;
            matched = true;
        }
        if matched {
            continue;
        }
        if stage == 0 {
            return QDecision {
                member: false,
                witness: Some(e),
            };
        }
        let piece = (stage - 1).min(7);
        if !ALLOWED[piece][cls.edge_labels[e].slot()] {
            return QDecision {
                member: false,
                witness: Some(e),
            };
        }
    }
    if stage < 8 {
        // Some anchor was visited out of order.
        return QDecision {
            member: false,
            witness: Some(anchors[stage]),
        };
    }
    QDecision {
        member: true,
        witness: None,
    }
}

// ---------------------------------------------------------------------------
// Emptiness witness pairs
// ---------------------------------------------------------------------------

/// A pair of reflex vertices whose clipping halfplanes are disjoint for
/// every `theta` in `(0, pi/2)`: an `NE` vertex `u` with an `SW` vertex
/// `v` to its upper right, or an `NW` vertex `u` with an `SE` vertex `v`
/// to its upper left. Returns vertex indices `(u, v)`.
pub fn lemma6_empty(p: &SimplePolygon, cls: &OrthoClassification) -> Option<(usize, usize)> {
    let vs = p.vertices();
    let class = |kind: ReflexKind| -> Vec<usize> {
        cls.reflex_kinds
            .iter()
            .filter(|(_, k)| *k == kind)
            .map(|(i, _)| *i)
            .collect()
    };
    // NE u dominated by SW v: v.x >= u.x and v.y >= u.y.
    let mut ne = class(ReflexKind::NE);
    ne.sort_by(|&a, &b| vs[a].x.partial_cmp(&vs[b].x).unwrap());
    let mut sw = class(ReflexKind::SW);
    sw.sort_by(|&a, &b| vs[a].x.partial_cmp(&vs[b].x).unwrap());
    let mut best: Option<usize> = None; // NE with smallest y among x <= v.x
    let mut it = ne.iter().peekable();
    for &v in &sw {
        while let Some(&&u) = it.peek() {
            if vs[u].x <= vs[v].x + EPS_LEN {
                if best.is_none() || vs[u].y < vs[best.unwrap()].y {
                    best = Some(u);
                }
                it.next();
            } else {
                break;
            }
        }
        if let Some(u) = best {
            if vs[u].y <= vs[v].y + EPS_LEN {
                return Some((u, v));
            }
        }
    }
    // NW u dominated to the upper left by SE v: v.x <= u.x and v.y >= u.y.
    let mut nw = class(ReflexKind::NW);
    nw.sort_by(|&a, &b| vs[b].x.partial_cmp(&vs[a].x).unwrap());
    let mut se = class(ReflexKind::SE);
    se.sort_by(|&a, &b| vs[b].x.partial_cmp(&vs[a].x).unwrap());
    let mut best: Option<usize> = None; // NW with smallest y among x >= v.x
    let mut it = nw.iter().peekable();
    for &v in &se {
        while let Some(&&u) = it.peek() {
            if vs[u].x + EPS_LEN >= vs[v].x {
                if best.is_none() || vs[u].y < vs[best.unwrap()].y {
                    best = Some(u);
                }
                it.next();
            } else {
                break;
            }
        }
        if let Some(u) = best {
            if vs[u].y <= vs[v].y + EPS_LEN {
                return Some((u, v));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Reflex hull arcs
// ---------------------------------------------------------------------------

/// The useful arc of the convex hull of one reflex-vertex class: exactly
/// the hull vertices that support the rotating clipping line for some
/// `theta` in `(0, pi/2)`, ordered by increasing angle of support.
#[derive(Debug, Clone)]
pub struct HullArc {
    pub points: Vec<Point>,
    /// Polygon vertex indices matching `points`.
    pub vertex_indices: Vec<usize>,
    /// Full convex hull of the class, counterclockwise.
    pub hull: ConvexChain,
}

impl HullArc {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// One arc per reflex class.
#[derive(Debug, Clone)]
pub struct HullArcs {
    pub nw: HullArc,
    pub ne: HullArc,
    pub sw: HullArc,
    pub se: HullArc,
}

/// Position in `ring` of the vertex maximizing `d`, ties broken by `tie`.
fn ring_support(pts: &[Point], ring: &[usize], d: Point, tie: Point) -> usize {
    let mut out = 0usize;
    for k in 1..ring.len() {
        let s = pts[ring[k]].dot(d);
        let b = pts[ring[out]].dot(d);
        if s > b + EPS_LEN || (s > b - EPS_LEN && pts[ring[k]].dot(tie) > pts[ring[out]].dot(tie)) {
            out = k;
        }
    }
    out
}

fn arc_of(
    pts: Vec<Point>,
    idx: Vec<usize>,
    start_d: Point,
    start_tie: Point,
    end_d: Point,
    end_tie: Point,
) -> HullArc {
    if pts.is_empty() {
        return HullArc {
            points: Vec::new(),
            vertex_indices: Vec::new(),
            hull: ConvexChain {
                vertices: Vec::new(),
                ccw: true,
            },
        };
    }
    let hull = convex_hull(&pts);
    if pts.len() == 1 {
        return HullArc {
            points: pts,
            vertex_indices: idx,
            hull,
        };
    }
    let ring = hull_indices(&pts);
    let si = ring_support(&pts, &ring, start_d, start_tie);
    let ei = ring_support(&pts, &ring, end_d, end_tie);
    let mut points = Vec::new();
    let mut vertex_indices = Vec::new();
    let mut k = si;
    loop {
        points.push(pts[ring[k]]);
        vertex_indices.push(idx[ring[k]]);
        if k == ei {
            break;
        }
        k = (k + 1) % ring.len();
    }
    HullArc {
        points,
        vertex_indices,
        hull,
    }
}

/// Build the four useful hull arcs of the reflex-vertex classes.
pub fn reflex_hulls(p: &SimplePolygon, cls: &OrthoClassification) -> HullArcs {
    let vs = p.vertices();
    let pick = |kind: ReflexKind| -> (Vec<Point>, Vec<usize>) {
        let mut pts = Vec::new();
        let mut idx = Vec::new();
        for &(i, k) in &cls.reflex_kinds {
            if k == kind {
                pts.push(vs[i]);
                idx.push(i);
            }
        }
        (pts, idx)
    };
    // Arcs run from the support at theta -> 0+ to the support at
    // theta -> pi/2-; the support of a counterclockwise-rotating
    // direction moves counterclockwise along the hull.
    let (pts, idx) = pick(ReflexKind::NW);
    let nw = arc_of(
        pts,
        idx,
        Point::new(0.0, -1.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, -1.0),
    );
    let (pts, idx) = pick(ReflexKind::SE);
    let se = arc_of(
        pts,
        idx,
        Point::new(0.0, 1.0),
        Point::new(-1.0, 0.0),
        Point::new(-1.0, 0.0),
        Point::new(0.0, 1.0),
    );
    let (pts, idx) = pick(ReflexKind::NE);
    let ne = arc_of(
        pts,
        idx,
        Point::new(-1.0, 0.0),
        Point::new(0.0, -1.0),
        Point::new(0.0, -1.0),
        Point::new(-1.0, 0.0),
    );
    let (pts, idx) = pick(ReflexKind::SW);
    let sw = arc_of(
        pts,
        idx,
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        Point::new(0.0, 1.0),
        Point::new(1.0, 0.0),
    );
    HullArcs { nw, ne, sw, se }
}

// ---------------------------------------------------------------------------
// Feasible angle window
// ---------------------------------------------------------------------------

/// Angles at which the two opposing-pair separation constraints can hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeasibleRange {
    /// No `theta` in `(0, pi/2)` admits a nonempty kernel.
    EmptyAllTheta,
    /// Closed subwindow of `[0, pi/2]` outside of which the kernel is
    /// empty.
    Window(f64, f64),
}

/// Margin of the pair separation at `theta`: nonnegative iff the lower
/// envelope of the `keep-below` class clears the upper envelope of the
/// `keep-above` class along the direction `dir(theta)`.
fn pair_margin(
    below: &ConvexChain,
    above: &ConvexChain,
    dir: impl Fn(f64) -> Point,
    theta: f64,
) -> f64 {
    let d = dir(theta);
    let lo = below
        .vertices
        .iter()
        .map(|v| v.dot(d))
        .fold(f64::INFINITY, f64::min);
    let hi = above
        .vertices
        .iter()
        .map(|v| v.dot(d))
        .fold(f64::NEG_INFINITY, f64::max);
    lo - hi
}

/// Window of a single pair, assuming the margin is quasiconcave on
/// `[0, pi/2]` (each vertex term is a sinusoid with a half-period span).
fn pair_window(
    below: &ConvexChain,
    above: &ConvexChain,
    dir: &dyn Fn(f64) -> Point,
) -> FeasibleRange {
    if below.is_empty() || above.is_empty() {
        return FeasibleRange::Window(0.0, FRAC_PI_2);
    }
    if convex_chains_intersect(below, above) {
        return FeasibleRange::EmptyAllTheta;
    }
    let h = |t: f64| pair_margin(below, above, dir, t);
    let f0 = h(0.0);
    let f1 = h(FRAC_PI_2);
    // Locate a feasible angle, via ternary search when both ends fail.
    let anchor = if f0 >= 0.0 {
        0.0
    } else if f1 >= 0.0 {
        FRAC_PI_2
    } else {
        let (mut a, mut b) = (0.0, FRAC_PI_2);
        for _ in 0..200 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if h(m1) < h(m2) {
                a = m1;
            } else {
                b = m2;
            }
        }
        let best = 0.5 * (a + b);
        if h(best) < 0.0 {
            return FeasibleRange::EmptyAllTheta;
        }
        best
    };
    let bisect = |mut good: f64, mut bad: f64| -> f64 {
        for _ in 0..100 {
            let m = 0.5 * (good + bad);
            if h(m) >= 0.0 {
                good = m;
            } else {
                bad = m;
            }
        }
        good
    };
    let lo = if f0 >= 0.0 { 0.0 } else { bisect(anchor, 0.0) };
    let hi = if f1 >= 0.0 {
        FRAC_PI_2
    } else {
        bisect(anchor, FRAC_PI_2)
    };
    FeasibleRange::Window(lo, hi)
}

/// Intersect the windows of the `NW`/`SE` pair (separated along the
/// normal of the `theta` line) and the `NE`/`SW` pair (normal of the
/// perpendicular line).
pub fn feasible_range(arcs: &HullArcs) -> FeasibleRange {
    let m = |t: f64| Point::new(-t.sin(), t.cos());
    let n = |t: f64| Point::new(t.cos(), t.sin());
    let w1 = pair_window(&arcs.nw.hull, &arcs.se.hull, &m);
    let w2 = pair_window(&arcs.ne.hull, &arcs.sw.hull, &n);
    match (w1, w2) {
        (FeasibleRange::Window(a1, b1), FeasibleRange::Window(a2, b2)) => {
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo <= hi {
                FeasibleRange::Window(lo, hi)
            } else {
                FeasibleRange::EmptyAllTheta
            }
        }
        _ => FeasibleRange::EmptyAllTheta,
    }
}

// ---------------------------------------------------------------------------
// Sweep events
// ---------------------------------------------------------------------------

/// An angle at which the supporting vertex of one hull arc changes.
#[derive(Debug, Clone, Copy)]
pub struct SweepEvent {
    pub theta: f64,
    pub kind: ReflexKind,
    /// Index of the arc edge becoming parallel to its clipping line.
    pub arc_edge: usize,
}

/// Event schedule over a feasible window.
#[derive(Debug, Clone)]
pub struct SweepState {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub events: Vec<SweepEvent>,
    /// `theta_lo`, the event angles, `theta_hi`; strictly increasing.
    pub boundaries: Vec<f64>,
}

/// Collect the support-change angles of all four arcs inside
/// `(theta_lo, theta_hi)`.
pub fn event_angles(arcs: &HullArcs, theta_lo: f64, theta_hi: f64) -> SweepState {
    let mut events = Vec::new();
    let mut push_arc = |arc: &HullArc, kind: ReflexKind, perp: bool| {
        for e in 0..arc.points.len().saturating_sub(1) {
            let d = arc.points[e + 1] - arc.points[e];
            let mut ang = d.y.atan2(d.x);
            if perp {
                ang += FRAC_PI_2;
            }
            while ang < 0.0 {
                ang += std::f64::consts::PI;
            }
            while ang >= std::f64::consts::PI {
                ang -= std::f64::consts::PI;
            }
            if ang > theta_lo + EPS_ANG && ang < theta_hi - EPS_ANG {
                events.push(SweepEvent {
                    theta: ang,
                    kind,
                    arc_edge: e,
                });
            }
        }
    };
    push_arc(&arcs.nw, ReflexKind::NW, false);
    push_arc(&arcs.se, ReflexKind::SE, false);
    push_arc(&arcs.ne, ReflexKind::NE, true);
    push_arc(&arcs.sw, ReflexKind::SW, true);
    events.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
    let mut boundaries = vec![theta_lo];
    for ev in &events {
        if ev.theta > *boundaries.last().unwrap() + EPS_ANG {
            boundaries.push(ev.theta);
        }
    }
    if theta_hi > *boundaries.last().unwrap() + EPS_ANG {
        boundaries.push(theta_hi);
    }
    SweepState {
        theta_lo,
        theta_hi,
        events,
        boundaries,
    }
}

// ---------------------------------------------------------------------------
// Extremity choice
// ---------------------------------------------------------------------------

/// Chosen (innermost) extremity per label slot: lowermost `N`, topmost
/// `S`, leftmost `E`, rightmost `W`. Values are `(edge index, level)`.
fn chosen_extremities(
    p: &SimplePolygon,
    cls: &OrthoClassification,
) -> Result<[(usize, f64); 4], Error> {
    let vs = p.vertices();
    let n = vs.len();
    let mut out = [(usize::MAX, f64::NAN); 4];
    for slot in 0..4 {
        let letter = ['N', 'S', 'E', 'W'][slot];
        for &e in &cls.extremities[slot] {
            let level = match slot {
                0 | 1 => vs[e].y,
                _ => vs[e].x,
            };
            let better = out[slot].0 == usize::MAX
                || match slot {
                    0 | 2 => level < out[slot].1,
                    _ => level > out[slot].1,
                };
            if better {
                out[slot] = (e, level);
            }
        }
        if out[slot].0 == usize::MAX {
            return Err(Error::NotOrthogonal(format!(
                "no {letter}-extremity on the boundary"
            )));
        }
        // Only a tie at the chosen (innermost) level empties the kernel.
        let tied = cls.extremities[slot]
            .iter()
            .filter(|&&e| {
                let level = match slot {
                    0 | 1 => vs[e].y,
                    _ => vs[e].x,
                };
                (level - out[slot].1).abs() <= EPS_LEN
            })
            .count();
        if tied > 1 {
            return Err(Error::TiedExtremities(letter));
        }
        let _ = n;
    }
    Ok(out)
}

/// Wedge line anchors of one chosen extremity edge: for horizontal edges
/// `(left endpoint, right endpoint)`, for vertical `(bottom, top)`.
fn extremity_endpoints(p: &SimplePolygon, edge: usize, horizontal: bool) -> (Point, Point) {
    let vs = p.vertices();
    let n = vs.len();
    let (a, b) = (vs[edge], vs[(edge + 1) % n]);
    if horizontal {
        if a.x < b.x {
            (a, b)
        } else {
            (b, a)
        }
    } else if a.y < b.y {
        (a, b)
    } else {
        (b, a)
    }
}

// ---------------------------------------------------------------------------
// Kernel at one angle
// ---------------------------------------------------------------------------

/// Supporting vertex of one class at `theta`, by direct scan of the arc.
fn arc_support(arc: &HullArc, score: impl Fn(Point) -> f64) -> Option<Point> {
    arc.points
        .iter()
        .copied()
        .max_by(|a, b| score(*a).partial_cmp(&score(*b)).unwrap())
}

/// Kernel of `p` under the orientation pair `{theta, theta + 90}` for
/// `theta` in `[0, pi/2)`, by clipping `p` against the four supporting
/// reflex lines and the wedge lines of the four chosen extremities.
pub fn kernel_at_theta(p: &SimplePolygon, theta: f64) -> Result<OrthoKernel, Error> {
    assert!(
        (0.0..FRAC_PI_2).contains(&theta),
        "kernel_at_theta expects theta in [0, pi/2)"
    );
    let cls = classify(p)?;
    if theta <= EPS_ANG {
        return kernel_axis_aligned_cls(p, &cls);
    }
    let ext = chosen_extremities(p, &cls)?;
    let arcs = reflex_hulls(p, &cls);
    let t90 = theta + FRAC_PI_2;
    let m = Point::new(-theta.sin(), theta.cos());
    let nv = Point::new(theta.cos(), theta.sin());
    let mut constraints = Vec::new();
    if let Some(w) = arc_support(&arcs.nw, |v| -v.dot(m)) {
        constraints.push((line_at_angle(w, theta), Keep::Positive));
    }
    if let Some(v) = arc_support(&arcs.se, |v| v.dot(m)) {
        constraints.push((line_at_angle(v, theta), Keep::Negative));
    }
    if let Some(u) = arc_support(&arcs.ne, |v| -v.dot(nv)) {
        constraints.push((line_at_angle(u, t90), Keep::Negative));
    }
    if let Some(v) = arc_support(&arcs.sw, |v| v.dot(nv)) {
        constraints.push((line_at_angle(v, t90), Keep::Positive));
    }
    let (ul, vr) = extremity_endpoints(p, ext[0].0, true);
    constraints.push((line_at_angle(ul, theta), Keep::Positive));
    constraints.push((line_at_angle(vr, t90), Keep::Negative));
    let (ul, vr) = extremity_endpoints(p, ext[1].0, true);
    constraints.push((line_at_angle(vr, theta), Keep::Negative));
    constraints.push((line_at_angle(ul, t90), Keep::Positive));
    let (ub, vt) = extremity_endpoints(p, ext[2].0, false);
    constraints.push((line_at_angle(vt, t90), Keep::Negative));
    constraints.push((line_at_angle(ub, theta), Keep::Negative));
    let (ub, vt) = extremity_endpoints(p, ext[3].0, false);
    constraints.push((line_at_angle(ub, t90), Keep::Positive));
    constraints.push((line_at_angle(vt, theta), Keep::Positive));
    OrthoKernel::from_components(clip_all(vec![p.clone()], &constraints))
}

// ---------------------------------------------------------------------------
// Closed-form kernel vertices
// ---------------------------------------------------------------------------

/// One clipping line of the rotating kernel, by provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstraintLine {
    /// Line of direction `theta` through the anchor.
    RotTheta(Point),
    /// Line of direction `theta + 90` through the anchor.
    RotPerp(Point),
    Horizontal(f64),
    Vertical(f64),
}

#[derive(Debug, Clone, Copy)]
enum VertexForm {
    Fixed(Point),
    /// Two rotating lines: double-angle coefficient triples for x and y.
    DoubleAngle(DoubleAngleCoeffs, DoubleAngleCoeffs),
    /// `theta` line through `u` meeting `y = level`.
    ThetaHorizontal(Point, f64),
    /// `theta` line through `u` meeting `x = level`.
    ThetaVertical(Point, f64),
    /// Perpendicular line through `w` meeting `y = level`.
    PerpHorizontal(Point, f64),
    /// Perpendicular line through `w` meeting `x = level`.
    PerpVertical(Point, f64),
}

/// A kernel vertex as a closed-form function of `theta`, valid while the
/// same two constraint lines stay active.
#[derive(Debug, Clone, Copy)]
pub struct ParamVertex {
    pub lines: (ConstraintLine, ConstraintLine),
    form: VertexForm,
}

impl ParamVertex {
    /// Closed form of the intersection of two constraint lines; `None`
    /// when the lines are parallel for every `theta`.
    pub fn new(a: ConstraintLine, b: ConstraintLine) -> Option<ParamVertex> {
        use ConstraintLine::*;
        let form = match (a, b) {
            (RotTheta(u), RotPerp(w)) => {
                let (cx, cy) = orthogonal_pair_coeffs(u, w);
                VertexForm::DoubleAngle(cx, cy)
            }
            (RotPerp(w), RotTheta(u)) => {
                let (cx, cy) = orthogonal_pair_coeffs(u, w);
                VertexForm::DoubleAngle(cx, cy)
            }
            (RotTheta(u), Horizontal(y)) | (Horizontal(y), RotTheta(u)) => {
                VertexForm::ThetaHorizontal(u, y)
            }
            (RotTheta(u), Vertical(x)) | (Vertical(x), RotTheta(u)) => {
                VertexForm::ThetaVertical(u, x)
            }
            (RotPerp(w), Horizontal(y)) | (Horizontal(y), RotPerp(w)) => {
                VertexForm::PerpHorizontal(w, y)
            }
            (RotPerp(w), Vertical(x)) | (Vertical(x), RotPerp(w)) => VertexForm::PerpVertical(w, x),
            (Horizontal(y), Vertical(x)) | (Vertical(x), Horizontal(y)) => {
                VertexForm::Fixed(Point::new(x, y))
            }
            _ => return None,
        };
        Some(ParamVertex {
            lines: (a, b),
            form,
        })
    }

    pub fn eval(&self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        match self.form {
            VertexForm::Fixed(p) => p,
            VertexForm::DoubleAngle(cx, cy) => Point::new(
                crate::geom::eval_double_angle(cx, theta),
                crate::geom::eval_double_angle(cy, theta),
            ),
            VertexForm::ThetaHorizontal(u, y) => Point::new(u.x + (y - u.y) * c / s, y),
            VertexForm::ThetaVertical(u, x) => Point::new(x, u.y + (x - u.x) * s / c),
            VertexForm::PerpHorizontal(w, y) => Point::new(w.x - (y - w.y) * s / c, y),
            VertexForm::PerpVertical(w, x) => Point::new(x, w.y + (w.x - x) * c / s),
        }
    }
}

// ---------------------------------------------------------------------------
// Optimization over theta
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Area,
    Perimeter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Best angle found inside one event interval.
#[derive(Debug, Clone, Copy)]
pub struct IntervalRecord {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub best_theta: f64,
    pub best_value: f64,
}

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub objective: Objective,
    pub sense: Sense,
    /// Optimizing angle; ties resolve toward smaller `theta`.
    pub theta_star: f64,
    pub value: f64,
    /// Objective of the axis-aligned (`theta = 0`) kernel.
    pub value_at_zero: f64,
    pub records: Vec<IntervalRecord>,
    /// The kernel is empty for every `theta` in `[0, pi/2)`.
    pub empty_for_all_theta: bool,
    /// Under `Min`, the infimum angle of the first range of empty
    /// kernels, when one exists; the reported value is then 0.
    pub min_over_empty: Option<f64>,
}

/// Halfplane `nx*x + ny*y >= c` applied to a convex loop.
fn clip_dir(pts: &[Point], nx: f64, ny: f64, c: f64) -> Vec<Point> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 2);
    if n == 0 {
        return out;
    }
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let da = nx * a.x + ny * a.y - c;
        let db = nx * b.x + ny * b.y - c;
        if da >= -EPS_LEN {
            out.push(a);
        }
        if (da > EPS_LEN && db < -EPS_LEN) || (da < -EPS_LEN && db > EPS_LEN) {
            let t = da / (da - db);
            out.push(Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
        }
    }
    out
}

/// Constant-time kernel evaluator for one event interval: the supporting
/// vertices and extremity wedges are fixed, so the kernel is the axis
/// rectangle of the four extremity levels cut by at most twelve rotating
/// halfplanes.
struct IntervalEval {
    /// Rectangle corners, counterclockwise.
    rect: [Point; 4],
    /// `(anchor, perpendicular, keep_positive)` rotating constraints.
    lines: Vec<(Point, bool, bool)>,
}

impl IntervalEval {
    fn eval(&self, theta: f64, objective: Objective) -> (f64, bool) {
        let (s, c) = theta.sin_cos();
        let mut loop_pts: Vec<Point> = self.rect.to_vec();
        for &(anchor, perp, keep_positive) in &self.lines {
            // Signed evaluation matching geom::Line: for the theta line,
            // eval(p) = s*(px-ax) - c*(py-ay); the perpendicular swaps in
            // (c, s).
            let (nx, ny) = if perp { (c, s) } else { (s, -c) };
            let (nx, ny) = if keep_positive { (nx, ny) } else { (-nx, -ny) };
            let cc = nx * anchor.x + ny * anchor.y;
            loop_pts = clip_dir(&loop_pts, nx, ny, cc);
            if loop_pts.is_empty() {
                return (0.0, true);
            }
        }
        let n = loop_pts.len();
        match objective {
            Objective::Area => {
                let mut a = 0.0;
                for i in 0..n {
                    let p = loop_pts[i];
                    let q = loop_pts[(i + 1) % n];
                    a += p.x * q.y - q.x * p.y;
                }
                let a = 0.5 * a;
                (a.max(0.0), a <= EPS_LEN * EPS_LEN)
            }
            Objective::Perimeter => {
                let mut l = 0.0;
                for i in 0..n {
                    l += loop_pts[i].dist(loop_pts[(i + 1) % n]);
                }
                // A collapsed loop has no interior.
                let mut a = 0.0;
                for i in 0..n {
                    let p = loop_pts[i];
                    let q = loop_pts[(i + 1) % n];
                    a += p.x * q.y - q.x * p.y;
                }
                if 0.5 * a <= EPS_LEN * EPS_LEN {
                    (0.0, true)
                } else {
                    (l, false)
                }
            }
        }
    }
}

/// Golden-section refinement of `f` on `[a, b]`.
fn golden(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, maximize: bool, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        let keep_left = if maximize { f1 > f2 } else { f1 < f2 };
        if keep_left {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let m = 0.5 * (a + b);
    (m, f(m))
}

/// Find the angle of the objective optimum of the rotating kernel over
/// `theta` in `[0, pi/2)`.
///
/// The axis-aligned kernel at `theta = 0` is evaluated by the dent rule
/// and competes with the sweep; ties resolve toward smaller `theta`.
/// Under `Min`, an empty range of angles makes the minimum 0; the result
/// then reports the infimum angle of the first such range in
/// `min_over_empty`.
pub fn optimize(
    p: &SimplePolygon,
    objective: Objective,
    sense: Sense,
) -> Result<OptimizationResult, Error> {
    let cls = classify(p)?;
    let k0 = kernel_axis_aligned_cls(p, &cls)?;
    let value_at_zero = match objective {
        Objective::Area => k0.area,
        Objective::Perimeter => k0.perimeter,
    };
    let q = q_decision(p, &cls);
    let ext = chosen_extremities(p, &cls);
    let arcs = reflex_hulls(p, &cls);
    let mut window = None;
    if q.member && ext.is_ok() && lemma6_empty(p, &cls).is_none() {
        if let FeasibleRange::Window(a, b) = feasible_range(&arcs) {
            if b > EPS_ANG && b - a > EPS_ANG {
                window = Some((a.max(0.0), b.min(FRAC_PI_2)));
            }
        }
    }

    let mut records: Vec<IntervalRecord> = Vec::new();
    // (theta, value) candidates in increasing theta; (first_empty, known).
    let mut first_empty: Option<f64> = None;
    if let Some((wlo, whi)) = window {
        if wlo > EPS_ANG {
            // Kernels are empty on (0, wlo).
            first_empty = Some(0.0);
        }
        let ext = ext.as_ref().unwrap();
        let sweep = event_angles(&arcs, wlo, whi);
        let rect = {
            let (ln, ls, le, lw) = (ext[0].1, ext[1].1, ext[2].1, ext[3].1);
            if le - lw <= EPS_LEN || ln - ls <= EPS_LEN {
                None
            } else {
                Some([
                    Point::new(lw, ls),
                    Point::new(le, ls),
                    Point::new(le, ln),
                    Point::new(lw, ln),
                ])
            }
        };
        match rect {
            None => {
                if first_empty.is_none() {
                    first_empty = Some(wlo);
                }
            }
            Some(rect) => {
                // Walking cursors: each support advances monotonically
                // with theta along its arc.
                let mut cur = [0usize; 4];
                let wedges = {
                    let (ul, vr) = extremity_endpoints(p, ext[0].0, true);
                    let (ul2, vr2) = extremity_endpoints(p, ext[1].0, true);
                    let (ub, vt) = extremity_endpoints(p, ext[2].0, false);
                    let (ub2, vt2) = extremity_endpoints(p, ext[3].0, false);
                    vec![
                        (ul, false, true),
                        (vr, true, false),
                        (vr2, false, false),
                        (ul2, true, true),
                        (vt, true, false),
                        (ub, false, false),
                        (ub2, true, true),
                        (vt2, false, true),
                    ]
                };
                let many = sweep.boundaries.len() > 256;
                let scan_points = if many { 8 } else { 64 };
                for win in sweep.boundaries.windows(2) {
                    let (t0, t1) = (win[0], win[1]);
                    if t1 - t0 <= EPS_ANG {
                        continue;
                    }
                    let tm = 0.5 * (t0 + t1);
                    let (sm, cm) = tm.sin_cos();
                    let mv = Point::new(-sm, cm);
                    let nv = Point::new(cm, sm);
                    let advance = |arc: &HullArc, pos: &mut usize, score: &dyn Fn(Point) -> f64| {
                        while *pos + 1 < arc.points.len()
                            && score(arc.points[*pos + 1]) > score(arc.points[*pos])
                        {
                            *pos += 1;
                        }
                    };
                    advance(&arcs.nw, &mut cur[0], &|v| -v.dot(mv));
                    advance(&arcs.se, &mut cur[1], &|v| v.dot(mv));
                    advance(&arcs.ne, &mut cur[2], &|v| -v.dot(nv));
                    advance(&arcs.sw, &mut cur[3], &|v| v.dot(nv));
                    let mut lines = wedges.clone();
                    if !arcs.nw.is_empty() {
                        lines.push((arcs.nw.points[cur[0]], false, true));
                    }
                    if !arcs.se.is_empty() {
                        lines.push((arcs.se.points[cur[1]], false, false));
                    }
                    if !arcs.ne.is_empty() {
                        lines.push((arcs.ne.points[cur[2]], true, false));
                    }
                    if !arcs.sw.is_empty() {
                        lines.push((arcs.sw.points[cur[3]], true, true));
                    }
                    let ev = IntervalEval { rect, lines };
                    let inset = ((t1 - t0) * 1e-6).min(1e-9);
                    let (a, b) = (t0 + inset, t1 - inset);
                    let f = |t: f64| ev.eval(t, objective).0;
                    let mut best_k = 0usize;
                    let mut best_v = f64::NAN;
                    let mut prev_nonempty: Option<f64> = None;
                    for k in 0..=scan_points {
                        let t = a + (b - a) * k as f64 / scan_points as f64;
                        let (v, empty) = ev.eval(t, objective);
                        if empty && first_empty.is_none() {
                            first_empty = Some(match prev_nonempty {
                                None => t0,
                                Some(tp) => {
                                    // Bisect the emptiness boundary.
                                    let (mut g, mut e) = (tp, t);
                                    for _ in 0..80 {
                                        let mid = 0.5 * (g + e);
                                        if ev.eval(mid, objective).1 {
                                            e = mid;
                                        } else {
                                            g = mid;
                                        }
                                    }
                                    e
                                }
                            });
                        }
                        if !empty {
                            prev_nonempty = Some(t);
                        }
                        let better = best_v.is_nan()
                            || match sense {
                                Sense::Max => v > best_v,
                                Sense::Min => v < best_v,
                            };
                        if better {
                            best_k = k;
                            best_v = v;
                        }
                    }
                    let span = (b - a) / scan_points as f64;
                    let ga = (a + span * best_k.saturating_sub(1) as f64).max(a);
                    let gb = (a + span * (best_k + 1) as f64).min(b);
                    let (bt, bv) = golden(&f, ga, gb, sense == Sense::Max, 1e-10);
                    let (best_theta, best_value) = match sense {
                        Sense::Max if bv >= best_v => (bt, bv),
                        Sense::Min if bv <= best_v => (bt, bv),
                        _ => (a + span * best_k as f64, best_v),
                    };
                    records.push(IntervalRecord {
                        theta_lo: t0,
                        theta_hi: t1,
                        best_theta,
                        best_value,
                    });
                }
            }
        }
        if first_empty.is_none() && whi < FRAC_PI_2 - EPS_ANG {
            // Kernels are empty on (whi, pi/2).
            first_empty = Some(whi);
        }
    } else {
        // The kernel is empty for every positive theta.
        first_empty = Some(0.0);
    }

    let empty_for_all_theta = window.is_none() && k0.is_empty();

    // Assemble candidates in increasing theta; strict improvement only,
    // so ties keep the smaller angle.
    let mut theta_star = 0.0;
    let mut value = value_at_zero;
    let mut min_over_empty = None;
    match sense {
        Sense::Max => {
            for r in &records {
                if r.best_value > value + EPS_LEN * EPS_LEN {
                    theta_star = r.best_theta;
                    value = r.best_value;
                }
            }
        }
        Sense::Min => {
            if value_at_zero <= EPS_LEN * EPS_LEN {
                theta_star = 0.0;
                value = 0.0;
            } else if let Some(t) = first_empty {
                theta_star = t;
                value = 0.0;
                min_over_empty = Some(t);
            } else {
                for r in &records {
                    if r.best_value < value - EPS_LEN * EPS_LEN {
                        theta_star = r.best_theta;
                        value = r.best_value;
                    }
                }
            }
        }
    }

    Ok(OptimizationResult {
        objective,
        sense,
        theta_star,
        value,
        value_at_zero,
        records,
        empty_for_all_theta,
        min_over_empty,
    })
}
