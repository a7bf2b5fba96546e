//! Independent brute-force reference implementations used for
//! calibration and property tests: full halfplane-clip kernels, dense
//! angle scans, a grid-based staircase-visibility check, and the seeded
//! test-polygon generators.
//!
//! Nothing here shares kernel-construction code with the main modules;
//! only the `geom` primitives are common.

use crate::geom::{clip_halfplane, line_at_angle, Keep, Line, Point, SimplePolygon, EPS_LEN};
use crate::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

/// Which orientation set a scan or clip works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationSet {
    /// `{0}` rotated by theta; theta in `[-pi/2, pi/2)`.
    Single,
    /// `{0, 90}` rotated by theta; theta in `[0, pi/2)`; orthogonal input.
    Double,
}

/// A kernel computed the slow way; possibly several components (the main
/// modules treat that as an error, the oracle just reports it).
#[derive(Debug, Clone)]
pub struct OracleKernel {
    pub components: Vec<SimplePolygon>,
}

impl OracleKernel {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.components.iter().map(|c| c.signed_area()).sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.components.iter().map(|c| c.perimeter()).sum()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.components.iter().any(|c| c.contains(p))
    }
}

fn clip_all(start: Vec<SimplePolygon>, constraints: &[(Line, Keep)]) -> Vec<SimplePolygon> {
    let mut pieces = start;
    for (line, keep) in constraints {
        let mut next = Vec::new();
        for p in &pieces {
            next.extend(clip_halfplane(p, line, *keep));
        }
        pieces = next;
        if pieces.is_empty() {
            break;
        }
    }
    pieces
}

/// Brute-force kernel: for the single orientation, the rotated strip
/// clip; for `{0,90}`, the clip of `P` by the lines of *all* reflex
/// vertices of each kind plus the constraints of the four extreme
/// extremities.
pub fn kernel_full_clip(p: &SimplePolygon, theta: f64, set: OrientationSet) -> OracleKernel {
    match set {
        OrientationSet::Single => single_clip(p, theta),
        OrientationSet::Double => double_clip(p, theta),
    }
}

fn single_clip(p: &SimplePolygon, theta: f64) -> OracleKernel {
    let rot = p.rotated(-theta);
    let vs = rot.vertices();
    let n = vs.len();
    // Independent reflex extrema scan: group runs of equal-level vertices
    // and compare the run's outer neighbors.
    let mut north = f64::INFINITY; // lowest reflex minimum
    let mut south = f64::NEG_INFINITY; // highest reflex maximum
    let reflex =
        |i: usize| crate::geom::orientation(vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]) < 0;
    for i in 0..n {
        let level = vs[i].y;
        let prev = vs[(i + n - 1) % n];
        if (prev.y - level).abs() <= EPS_LEN {
            continue; // handled from the run's first vertex
        }
        let mut j = i;
        while (vs[(j + 1) % n].y - level).abs() <= EPS_LEN {
            j = (j + 1) % n;
        }
        let run_reflex = {
            let mut k = i;
            let mut all = true;
            loop {
                all &= reflex(k);
                if k == j {
                    break;
                }
                k = (k + 1) % n;
            }
            all
        };
        if !run_reflex {
            continue;
        }
        let after = vs[(j + 1) % n];
        if prev.y < level && after.y < level {
            south = south.max(level);
        } else if prev.y > level && after.y > level {
            north = north.min(level);
        }
    }
    if !north.is_finite() {
        north = vs.iter().map(|v| v.y).fold(f64::NEG_INFINITY, f64::max);
    }
    if south == f64::NEG_INFINITY {
        south = vs.iter().map(|v| v.y).fold(f64::INFINITY, f64::min);
    }
    if south >= north - EPS_LEN {
        return OracleKernel {
            components: Vec::new(),
        };
    }
    let constraints = [
        (line_at_angle(Point::new(0.0, north), 0.0), Keep::Positive),
        (line_at_angle(Point::new(0.0, south), 0.0), Keep::Negative),
    ];
    let pieces = clip_all(vec![rot], &constraints);
    OracleKernel {
        components: pieces.into_iter().map(|q| q.rotated(theta)).collect(),
    }
}

/// Oracle-local compass label of an orthogonal edge.
fn edge_label(a: Point, b: Point) -> Option<char> {
    let d = b - a;
    if d.y.abs() <= EPS_LEN && d.x.abs() > EPS_LEN {
        Some(if d.x > 0.0 { 'S' } else { 'N' })
    } else if d.x.abs() <= EPS_LEN && d.y.abs() > EPS_LEN {
        Some(if d.y > 0.0 { 'E' } else { 'W' })
    } else {
        None
    }
}

fn double_clip(p: &SimplePolygon, theta: f64) -> OracleKernel {
    let vs = p.vertices();
    let n = vs.len();
    let labels: Vec<char> = (0..n)
        .map(|i| edge_label(vs[i], vs[(i + 1) % n]).expect("orthogonal polygon"))
        .collect();
    let reflex =
        |i: usize| crate::geom::orientation(vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]) < 0;
    let convex =
        |i: usize| crate::geom::orientation(vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]) > 0;

    if theta.abs() <= 1e-12 {
        // Dent rule: clip about the innermost dent of each compass kind.
        let mut constraints: Vec<(Line, Keep)> = Vec::new();
        let mut dent_levels = [f64::NAN; 4]; // N, S, E, W
        for i in 0..n {
            let j = (i + 1) % n;
            if !(reflex(i) && reflex(j)) {
                continue;
            }
            match labels[i] {
                'N' => {
                    let l = vs[i].y;
                    if dent_levels[0].is_nan() || l < dent_levels[0] {
                        dent_levels[0] = l;
                    }
                }
                'S' => {
                    let l = vs[i].y;
                    if dent_levels[1].is_nan() || l > dent_levels[1] {
                        dent_levels[1] = l;
                    }
                }
                'E' => {
                    let l = vs[i].x;
                    if dent_levels[2].is_nan() || l < dent_levels[2] {
                        dent_levels[2] = l;
                    }
                }
                'W' => {
                    let l = vs[i].x;
                    if dent_levels[3].is_nan() || l > dent_levels[3] {
                        dent_levels[3] = l;
                    }
                }
                _ => unreachable!(),
            }
        }
        let h = std::f64::consts::FRAC_PI_2;
        if !dent_levels[0].is_nan() {
            constraints.push((
                line_at_angle(Point::new(0.0, dent_levels[0]), 0.0),
                Keep::Positive,
            ));
        }
        if !dent_levels[1].is_nan() {
            constraints.push((
                line_at_angle(Point::new(0.0, dent_levels[1]), 0.0),
                Keep::Negative,
            ));
        }
        if !dent_levels[2].is_nan() {
            constraints.push((
                line_at_angle(Point::new(dent_levels[2], 0.0), h),
                Keep::Negative,
            ));
        }
        if !dent_levels[3].is_nan() {
            constraints.push((
                line_at_angle(Point::new(dent_levels[3], 0.0), h),
                Keep::Positive,
            ));
        }
        return OracleKernel {
            components: clip_all(vec![p.clone()], &constraints),
        };
    }

    let t90 = theta + std::f64::consts::FRAC_PI_2;
    let mut constraints: Vec<(Line, Keep)> = Vec::new();

    // Every reflex vertex contributes a clipping line.
    for i in 0..n {
        if !reflex(i) {
            continue;
        }
        let incoming = labels[(i + n - 1) % n];
        let outgoing = labels[i];
        let kind = match (incoming, outgoing) {
            ('W', 'N') | ('N', 'W') => 'b', // NW-reflex
            ('N', 'E') | ('E', 'N') => 'a', // NE-reflex
            ('S', 'W') | ('W', 'S') => 'c', // SW-reflex
            ('E', 'S') | ('S', 'E') => 'd', // SE-reflex
            other => panic!("impossible reflex edge pair {other:?}"),
        };
        let v = vs[i];
        match kind {
            'b' => constraints.push((line_at_angle(v, theta), Keep::Positive)),
            'd' => constraints.push((line_at_angle(v, theta), Keep::Negative)),
            'a' => constraints.push((line_at_angle(v, t90), Keep::Negative)),
            'c' => constraints.push((line_at_angle(v, t90), Keep::Positive)),
            _ => unreachable!(),
        }
    }

    // The extreme extremity of each kind contributes a pair of lines
    // through its endpoints. Ties at the extreme coordinate empty the
    // kernel for every theta in (0, pi/2).
    let mut chosen: [Option<(usize, f64)>; 4] = [None; 4]; // N,S,E,W
    let mut tie = false;
    for i in 0..n {
        let j = (i + 1) % n;
        if !(convex(i) && convex(j)) {
            continue;
        }
        let slot = match labels[i] {
            'N' => 0,
            'S' => 1,
            'E' => 2,
            _ => 3,
        };
        let level = match labels[i] {
            'N' | 'S' => vs[i].y,
            _ => vs[i].x,
        };
        // Innermost: lowermost N, topmost S, leftmost E, rightmost W.
        let better = |new: f64, old: f64| match slot {
            0 => new < old,
            1 => new > old,
            2 => new < old,
            _ => new > old,
        };
        match chosen[slot] {
            None => chosen[slot] = Some((i, level)),
            Some((_, old)) => {
                if (level - old).abs() <= EPS_LEN {
                    tie = true;
                } else if better(level, old) {
                    chosen[slot] = Some((i, level));
                }
            }
        }
    }
    if tie {
        return OracleKernel {
            components: Vec::new(),
        };
    }
    for (slot, ch) in chosen.iter().enumerate() {
        let Some((i, _)) = *ch else { continue };
        let (a, b) = (vs[i], vs[(i + 1) % n]);
        match slot {
            0 => {
                // N-extremity: edge runs east-to-west in ccw order.
                let (ul, vr) = if a.x < b.x { (a, b) } else { (b, a) };
                constraints.push((line_at_angle(ul, theta), Keep::Positive));
                constraints.push((line_at_angle(vr, t90), Keep::Negative));
            }
            1 => {
                let (ul, vr) = if a.x < b.x { (a, b) } else { (b, a) };
                constraints.push((line_at_angle(vr, theta), Keep::Negative));
                constraints.push((line_at_angle(ul, t90), Keep::Positive));
            }
            2 => {
                let (ub, vt) = if a.y < b.y { (a, b) } else { (b, a) };
                constraints.push((line_at_angle(vt, t90), Keep::Negative));
                constraints.push((line_at_angle(ub, theta), Keep::Negative));
            }
            _ => {
                let (ub, vt) = if a.y < b.y { (a, b) } else { (b, a) };
                constraints.push((line_at_angle(ub, t90), Keep::Positive));
                constraints.push((line_at_angle(vt, theta), Keep::Positive));
            }
        }
    }

    OracleKernel {
        components: clip_all(vec![p.clone()], &constraints),
    }
}

/// One row of a dense angle scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanSample {
    pub theta: f64,
    pub empty: bool,
    pub area: f64,
    pub perimeter: f64,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub samples: Vec<ScanSample>,
}

/// Evaluate [`kernel_full_clip`] on a uniform grid over `[lo, hi)`,
/// inclusive of `lo`.
pub fn dense_scan(
    p: &SimplePolygon,
    lo: f64,
    hi: f64,
    samples: usize,
    set: OrientationSet,
) -> ScanResult {
    assert!(samples >= 2, "dense_scan needs at least two samples");
    let step = (hi - lo) / samples as f64;
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let theta = lo + k as f64 * step;
        let kern = kernel_full_clip(p, theta, set);
        out.push(ScanSample {
            theta,
            empty: kern.is_empty(),
            area: kern.area(),
            perimeter: kern.perimeter(),
        });
    }
    ScanResult { samples: out }
}

/// Discretized staircase-visibility oracle: an occupancy grid over the
/// polygon plus a monotone BFS. One-sided approximate (false negatives
/// possible near the resolution); used only for sanity-level assertions.
pub struct VisibilityGrid {
    origin: Point,
    h: f64,
    nx: usize,
    ny: usize,
    inside: Vec<bool>,
}

impl VisibilityGrid {
    pub fn build(p: &SimplePolygon, h: f64) -> Self {
        let (lo, hi) = p.bounding_box();
        let nx = ((hi.x - lo.x) / h).ceil() as usize + 1;
        let ny = ((hi.y - lo.y) / h).ceil() as usize + 1;
        let mut inside = vec![false; nx * ny];
        for iy in 0..ny {
            for ix in 0..nx {
                let c = Point::new(lo.x + (ix as f64 + 0.5) * h, lo.y + (iy as f64 + 0.5) * h);
                inside[iy * nx + ix] = p.contains(c);
            }
        }
        VisibilityGrid {
            origin: lo,
            h,
            nx,
            ny,
            inside,
        }
    }

    fn cell_of(&self, p: Point) -> Option<usize> {
        let ix = ((p.x - self.origin.x) / self.h).floor();
        let iy = ((p.y - self.origin.y) / self.h).floor();
        if ix < 0.0 || iy < 0.0 {
            return None;
        }
        let (ix, iy) = (ix as usize, iy as usize);
        if ix >= self.nx || iy >= self.ny {
            return None;
        }
        Some(iy * self.nx + ix)
    }

    /// Monotone-path reachability between the cells containing `p` and
    /// `q`. For the single orientation set, paths must be monotone along
    /// the rotated y direction; for the double set, along both rotated
    /// axes. All sign combinations are tried.
    pub fn visible(
        &self,
        p: Point,
        q: Point,
        theta: f64,
        set: OrientationSet,
    ) -> Result<bool, Error> {
        let (start, goal) = match (self.cell_of(p), self.cell_of(q)) {
            (Some(a), Some(b)) if self.inside[a] && self.inside[b] => (a, b),
            _ => return Err(Error::PointOutside),
        };
        if start == goal {
            return Ok(true);
        }
        let e1 = Point::new(theta.cos(), theta.sin());
        let e2 = Point::new(-theta.sin(), theta.cos());
        let axes: Vec<Point> = match set {
            OrientationSet::Single => vec![e2],
            OrientationSet::Double => vec![e1, e2],
        };
        let sign_sets: Vec<Vec<f64>> = match set {
            OrientationSet::Single => vec![vec![1.0], vec![-1.0]],
            OrientationSet::Double => {
                vec![
                    vec![1.0, 1.0],
                    vec![1.0, -1.0],
                    vec![-1.0, 1.0],
                    vec![-1.0, -1.0],
                ]
            }
        };
        const STEPS: [(i64, i64); 8] = [
            (1, 0),
            (-1, 0),
            (0, 1),
            (0, -1),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        ];
        for signs in &sign_sets {
            let allowed: Vec<(i64, i64)> = STEPS
                .iter()
                .copied()
                .filter(|&(dx, dy)| {
                    let d = Point::new(dx as f64, dy as f64);
                    axes.iter()
                        .zip(signs.iter())
                        .all(|(axis, s)| d.dot(*axis) * s >= -1e-12)
                })
                .collect();
            if self.bfs(start, goal, &allowed) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn bfs(&self, start: usize, goal: usize, steps: &[(i64, i64)]) -> bool {
        let mut seen = vec![false; self.inside.len()];
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            if c == goal {
                return true;
            }
            let (ix, iy) = ((c % self.nx) as i64, (c / self.nx) as i64);
            for &(dx, dy) in steps {
                let (jx, jy) = (ix + dx, iy + dy);
                if jx < 0 || jy < 0 || jx >= self.nx as i64 || jy >= self.ny as i64 {
                    continue;
                }
                let j = jy as usize * self.nx + jx as usize;
                if !seen[j] && self.inside[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        false
    }
}

/// Convenience wrapper over [`VisibilityGrid`] for one-off queries.
pub fn staircase_visible(
    p: &SimplePolygon,
    a: Point,
    b: Point,
    theta: f64,
    h: f64,
    set: OrientationSet,
) -> Result<bool, Error> {
    VisibilityGrid::build(p, h).visible(a, b, theta, set)
}

/// Test-polygon families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonKind {
    RandomSimple,
    FamilyQ,
    Staircase,
    WithLemma6Pair,
}

/// Deterministic seeded polygon generator. Identical `(kind, n, seed)`
/// yields an identical vertex list.
pub fn generate(kind: PolygonKind, n: usize, seed: u64) -> Result<SimplePolygon, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15));
    match kind {
        PolygonKind::RandomSimple => random_simple(n, &mut rng),
        PolygonKind::Staircase => staircase(n, &mut rng),
        PolygonKind::FamilyQ => family_q(n, &mut rng),
        PolygonKind::WithLemma6Pair => lemma6_pair(n, &mut rng),
    }
}

fn random_simple(n: usize, rng: &mut ChaCha8Rng) -> Result<SimplePolygon, Error> {
    if n < 3 {
        return Err(Error::GenerationFailed("need n >= 3".into()));
    }
    for _attempt in 0..32 {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        while pts.len() < n {
            let c = Point::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            if pts.iter().all(|q| q.dist(c) > 0.15) {
                pts.push(c);
            }
        }
        // Angular sort around the centroid, then 2-opt untangling.
        let centroid = pts.iter().fold(Point::default(), |s, p| s + *p) * (1.0 / n as f64);
        pts.sort_by(|a, b| {
            let aa = (a.y - centroid.y).atan2(a.x - centroid.x);
            let bb = (b.y - centroid.y).atan2(b.x - centroid.x);
            aa.partial_cmp(&bb).unwrap()
        });
        let mut swaps = 0usize;
        'repair: loop {
            let m = pts.len();
            for i in 0..m {
                for j in i + 1..m {
                    if j == i || (j + 1) % m == i || (i + 1) % m == j {
                        continue;
                    }
                    let (a1, a2) = (pts[i], pts[(i + 1) % m]);
                    let (b1, b2) = (pts[j], pts[(j + 1) % m]);
                    if segs_cross(a1, a2, b1, b2) {
                        pts[i + 1..=j].reverse();
                        swaps += 1;
                        if swaps > 10_000 {
                            break 'repair;
                        }
                        continue 'repair;
                    }
                }
            }
            // No crossings left.
            if let Ok((poly, _)) = SimplePolygon::new_auto(pts.clone()) {
                if poly.len() >= 3 && poly.is_simple() {
                    return Ok(poly);
                }
            }
            break;
        }
    }
    Err(Error::GenerationFailed("2-opt repair cap exceeded".into()))
}

fn segs_cross(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    let o = crate::geom::orientation;
    let d1 = o(b1, b2, a1);
    let d2 = o(b1, b2, a2);
    let d3 = o(a1, a2, b1);
    let d4 = o(a1, a2, b2);
    d1 != d2 && d3 != d4 && (d1 != 0 || d2 != 0) && (d3 != 0 || d4 != 0)
}

/// A staircase band: an ascending staircase of `k` steps thickened
/// upward. Always in the family Q, with the SE- and NW-reflex vertices
/// in convex position so the hull arcs carry many sweep events.
fn staircase(n: usize, rng: &mut ChaCha8Rng) -> Result<SimplePolygon, Error> {
    if n < 4 {
        return Err(Error::GenerationFailed("need n >= 4".into()));
    }
    // A k-step band has 4k + 2 vertices.
    let k = ((n.saturating_sub(2)) / 4).max(2);
    // Step corner coordinates on a concave increasing arc (circle
    // quadrant), with a little seeded jitter along the arc.
    let r = 100.0;
    let mut angles: Vec<f64> = (0..=k)
        .map(|i| {
            let t = i as f64 / k as f64;
            let jitter = if i == 0 || i == k {
                0.0
            } else {
                rng.gen_range(-0.2..0.2) / k as f64
            };
            (t + jitter).clamp(0.0, 1.0) * std::f64::consts::FRAC_PI_2 * 0.8
        })
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // The outer step corners (x_i, y_{i-1}) sit exactly on the circle,
    // so the shifted copies on the north chain are in convex position
    // and the rotating sweep sees one event per step.
    let qx: Vec<f64> = angles.iter().map(|a| r * a.sin()).collect();
    let qy: Vec<f64> = angles.iter().map(|a| r * (1.0 - a.cos())).collect();
    let mut xs = vec![qx[0] - (qx[1] - qx[0])];
    xs.extend_from_slice(&qx[..k]);
    let mut ys = qy[..k].to_vec();
    ys.push(qy[k - 1] + (qy[k - 1] - qy[k - 2]).max(1e-3));
    let max_step = ys.windows(2).map(|w| w[1] - w[0]).fold(0.0f64, f64::max);
    // The band must be thicker than the largest chord-to-arc sag of the
    // corner circle (about 0.19 r for this span), or the upper and lower
    // corner hulls overlap and the rotating kernel is empty everywhere.
    let thickness = 1.5 * max_step + 0.25 * r;

    let mut pts: Vec<Point> = Vec::with_capacity(4 * k + 2);
    // South chain (ascending staircase, west to east).
    pts.push(Point::new(xs[0], ys[0]));
    for i in 1..=k {
        pts.push(Point::new(xs[i], ys[i - 1]));
        if i < k {
            pts.push(Point::new(xs[i], ys[i]));
        }
    }
    // East cap.
    pts.push(Point::new(xs[k], ys[k - 1] + thickness));
    // North chain (the south chain shifted up, east to west).
    for i in (1..k).rev() {
        pts.push(Point::new(xs[i], ys[i] + thickness));
        pts.push(Point::new(xs[i], ys[i - 1] + thickness));
    }
    pts.push(Point::new(xs[0], ys[0] + thickness));
    SimplePolygon::new(pts)
}

/// A random member of the family Q: two rectilinear profiles (a south
/// and a north one), each a strict staircase at both ends with an
/// arbitrary monotone-x wiggle in the middle, joined by vertical west
/// and east extremity edges.
fn family_q(n: usize, rng: &mut ChaCha8Rng) -> Result<SimplePolygon, Error> {
    if n < 4 {
        return Err(Error::GenerationFailed("need n >= 4".into()));
    }
    for _attempt in 0..64 {
        let cols = (n / 4).clamp(2, 64);
        let width = 16.0 * cols as f64;
        // Column boundaries with jitter.
        let mut xs: Vec<f64> = vec![0.0];
        for i in 1..cols {
            xs.push(i as f64 / cols as f64 * width + rng.gen_range(-4.0..4.0));
        }
        xs.push(width);
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());

        // A profile: per column a level; ends ascend/descend strictly.
        let tail = (cols / 3).max(1);
        let profile = |rng: &mut ChaCha8Rng, lo: f64, hi: f64, north: bool| -> Vec<f64> {
            let mut levels = vec![0.0f64; cols];
            let span = hi - lo;
            for level in levels.iter_mut() {
                *level = lo + rng.gen_range(0.3..0.7) * span;
            }
            // For the north profile: strictly ascending over the west
            // tail and strictly descending over the east tail (local
            // staircases); mirrored for the south profile.
            for t in 0..tail.min(cols) {
                let frac = (t + 1) as f64 / (tail + 1) as f64;
                // Independent jitter keeps the two tails from producing
                // exactly tied extremity levels.
                if north {
                    levels[t] = lo + span * (0.2 + 0.75 * frac) + rng.gen_range(0.0..0.04 * span);
                    levels[cols - 1 - t] =
                        lo + span * (0.2 + 0.75 * frac) + rng.gen_range(0.0..0.04 * span);
                } else {
                    levels[t] = hi - span * (0.2 + 0.75 * frac) - rng.gen_range(0.0..0.04 * span);
                    levels[cols - 1 - t] =
                        hi - span * (0.2 + 0.75 * frac) - rng.gen_range(0.0..0.04 * span);
                }
            }
            levels
        };
        let h = 32.0 * (cols as f64).sqrt();
        let south = profile(rng, 0.0, 0.45 * h, false);
        let north = profile(rng, 0.55 * h, h, true);

        // Distinct consecutive levels.
        let distinct = |v: &[f64]| v.windows(2).all(|w| (w[1] - w[0]).abs() > 1e-6);
        if !distinct(&south) || !distinct(&north) {
            continue;
        }

        let mut pts: Vec<Point> = Vec::new();
        // South boundary, west to east.
        pts.push(Point::new(xs[0], south[0]));
        for c in 1..cols {
            pts.push(Point::new(xs[c], south[c - 1]));
            pts.push(Point::new(xs[c], south[c]));
        }
        pts.push(Point::new(xs[cols], south[cols - 1]));
        // East edge up, then north boundary east to west.
        pts.push(Point::new(xs[cols], north[cols - 1]));
        for c in (1..cols).rev() {
            pts.push(Point::new(xs[c], north[c]));
            pts.push(Point::new(xs[c], north[c - 1]));
        }
        pts.push(Point::new(xs[0], north[0]));

        if let Ok(poly) = SimplePolygon::new(pts) {
            if poly.is_simple() {
                return Ok(poly);
            }
        }
    }
    Err(Error::GenerationFailed(
        "family Q construction kept degenerating".into(),
    ))
}

/// A randomized double-notch: one dent from the top and one from the
/// bottom guaranteeing a NE-reflex vertex below-left of a SW-reflex
/// vertex (the emptiness witness pair).
fn lemma6_pair(_n: usize, rng: &mut ChaCha8Rng) -> Result<SimplePolygon, Error> {
    // Template (the double-notch polygon), scaled and jittered.
    let sx: f64 = rng.gen_range(0.8..2.5);
    let sy: f64 = rng.gen_range(0.8..2.5);
    let j = |rng: &mut ChaCha8Rng| rng.gen_range(-0.08..0.08);
    // x-level indices: top notch spans levels 1..2, bottom notch 3..4.
    let base: [(usize, usize); 12] = [
        (0, 0),
        (3, 0),
        (3, 2),
        (4, 2),
        (4, 0),
        (5, 0),
        (5, 3),
        (2, 3),
        (2, 1),
        (1, 1),
        (1, 3),
        (0, 3),
    ];
    // Jitter the distinct coordinate levels, not the vertices, to keep
    // the polygon orthogonal.
    let mut xlev = [0.0, 1.0, 1.9, 2.1, 3.0, 4.0];
    let mut ylev = [0.0, 1.0, 2.0, 3.0];
    for l in xlev.iter_mut().skip(1) {
        *l += j(rng);
    }
    for l in ylev.iter_mut().skip(1) {
        *l += j(rng);
    }
    let pts = base
        .iter()
        .map(|&(x, y)| Point::new(sx * xlev[x], sy * ylev[y]))
        .collect();
    SimplePolygon::new(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn nt() -> SimplePolygon {
        SimplePolygon::new(vec![pt(0.0, 0.0), pt(2.0, 1.0), pt(4.0, 0.0), pt(2.0, 3.0)]).unwrap()
    }

    fn square() -> SimplePolygon {
        SimplePolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]).unwrap()
    }

    fn lp() -> SimplePolygon {
        SimplePolygon::new(vec![
            pt(0.0, 0.0),
            pt(2.0, 0.0),
            pt(2.0, 2.0),
            pt(1.0, 2.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
        ])
        .unwrap()
    }

    fn dn() -> SimplePolygon {
        SimplePolygon::new(vec![
            pt(0.0, 0.0),
            pt(2.0, 0.0),
            pt(2.0, 2.0),
            pt(3.0, 2.0),
            pt(3.0, 0.0),
            pt(4.0, 0.0),
            pt(4.0, 3.0),
            pt(2.0, 3.0),
            pt(2.0, 1.0),
            pt(1.0, 1.0),
            pt(1.0, 3.0),
            pt(0.0, 3.0),
        ])
        .unwrap()
    }

    fn plus() -> SimplePolygon {
        SimplePolygon::new(vec![
            pt(1.0, 0.0),
            pt(2.0, 0.0),
            pt(2.0, 1.0),
            pt(3.0, 1.0),
            pt(3.0, 2.0),
            pt(2.0, 2.0),
            pt(2.0, 3.0),
            pt(1.0, 3.0),
            pt(1.0, 2.0),
            pt(0.0, 2.0),
            pt(0.0, 1.0),
            pt(1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn single_clip_matches_known_kernels() {
        let k = kernel_full_clip(&nt(), 0.0, OrientationSet::Single);
        assert!((k.area() - 8.0 / 3.0).abs() < 1e-9);
        let k = kernel_full_clip(&dn(), 0.0, OrientationSet::Single);
        assert!(k.is_empty());
        let k = kernel_full_clip(&square(), 0.7, OrientationSet::Single);
        assert!((k.area() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn double_clip_examples() {
        // Convex: the kernel is the whole polygon for every theta.
        for k in 1..10 {
            let theta = k as f64 / 10.0 * FRAC_PI_2;
            let kern = kernel_full_clip(&square(), theta, OrientationSet::Double);
            assert!((kern.area() - 1.0).abs() < 1e-9, "theta {theta}");
        }
        // DN has no axis-aligned kernel and an emptiness witness pair.
        let kern = kernel_full_clip(&dn(), 0.0, OrientationSet::Double);
        assert!(kern.is_empty());
        let kern = kernel_full_clip(&dn(), FRAC_PI_4, OrientationSet::Double);
        assert!(kern.is_empty());
        // PLUS at pi/4: the diamond on (1,1),(2,1),(2,2),(1,2).
        let kern = kernel_full_clip(&plus(), FRAC_PI_4, OrientationSet::Double);
        assert!(!kern.is_empty());
        assert!(kern.contains(pt(1.5, 1.5)));
        // LP at pi/4: below y=x, excludes (0.5,0.9), contains (1.5,0.5).
        let kern = kernel_full_clip(&lp(), FRAC_PI_4, OrientationSet::Double);
        assert!(!kern.is_empty());
        assert!(kern.contains(pt(1.5, 0.5)));
        assert!(!kern.contains(pt(0.5, 0.9)));
    }

    #[test]
    fn dense_scan_rows() {
        let r = dense_scan(&square(), 0.0, FRAC_PI_2, 10, OrientationSet::Double);
        assert_eq!(r.samples.len(), 10);
        assert!(r.samples.iter().all(|s| (s.area - 1.0).abs() < 1e-9));
    }

    #[test]
    fn visibility_examples() {
        let sq = square();
        let ok = staircase_visible(
            &sq,
            pt(0.2, 0.2),
            pt(0.8, 0.8),
            0.0,
            1.0 / 128.0,
            OrientationSet::Single,
        )
        .unwrap();
        assert!(ok);
        // U-shaped polygon: opposite arms are not 0-visible.
        let u = SimplePolygon::new(vec![
            pt(0.0, 0.0),
            pt(3.0, 0.0),
            pt(3.0, 2.0),
            pt(2.0, 2.0),
            pt(2.0, 1.0),
            pt(1.0, 1.0),
            pt(1.0, 2.0),
            pt(0.0, 2.0),
        ])
        .unwrap();
        let ok = staircase_visible(
            &u,
            pt(0.5, 1.7),
            pt(2.5, 1.7),
            0.0,
            1.0 / 128.0 * 3.0,
            OrientationSet::Single,
        )
        .unwrap();
        assert!(
            !ok,
            "opposite arms should not see each other via a y-monotone path"
        );
        let ok = staircase_visible(
            &lp(),
            pt(1.5, 0.5),
            pt(0.5, 0.5),
            FRAC_PI_4,
            2.0 / 512.0,
            OrientationSet::Double,
        )
        .unwrap();
        assert!(ok);
        assert!(staircase_visible(
            &sq,
            pt(2.0, 2.0),
            pt(0.5, 0.5),
            0.0,
            0.01,
            OrientationSet::Single
        )
        .is_err());
    }

    #[test]
    fn generators_reproducible_and_valid() {
        for kind in [
            PolygonKind::RandomSimple,
            PolygonKind::Staircase,
            PolygonKind::FamilyQ,
            PolygonKind::WithLemma6Pair,
        ] {
            let a = generate(kind, 16, 7).unwrap();
            let b = generate(kind, 16, 7).unwrap();
            assert_eq!(a.vertices(), b.vertices(), "{kind:?} not reproducible");
            assert!(a.is_simple(), "{kind:?} not simple");
        }
        let tri = generate(PolygonKind::RandomSimple, 3, 42).unwrap();
        assert_eq!(tri.len(), 3);
    }

    #[test]
    fn random_simple_many_seeds() {
        for seed in 0..50 {
            let p = generate(PolygonKind::RandomSimple, 4 + (seed as usize % 30), seed).unwrap();
            assert!(p.is_simple());
            assert!(p.signed_area() > 0.0);
        }
    }
}
