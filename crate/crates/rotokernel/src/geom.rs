//! Planar primitives shared by every other module: points, angles, lines
//! at an angle through a point, polygon predicates, convex hulls,
//! halfplane clipping and the closed-form line intersections.
//!
//! Coordinates are plain `f64` with a documented input domain of
//! `|x|, |y| <= 1e6`, which justifies the fixed absolute tolerances below.

use crate::Error;

/// Point-coincidence tolerance.
pub const EPS_LEN: f64 = 1e-9;
/// Direction-coincidence tolerance (radians).
pub const EPS_ANGLE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Rotation by `theta` radians counterclockwise about the origin.
    pub fn rotated(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn close_to(self, o: Point) -> bool {
        self.dist(o) <= EPS_LEN
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// A rotation angle in radians. Different modules use different half-open
/// domains; the normalizers below are idempotent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(pub f64);

impl Angle {
    /// Normalize into `[-pi/2, pi/2)` (the single-orientation domain).
    pub fn normalized_symmetric(self) -> Angle {
        Angle(normalize_half_open(
            self.0,
            -std::f64::consts::FRAC_PI_2,
            std::f64::consts::PI,
        ))
    }

    /// Normalize into `[0, pi/2)` (the two-orientation domain).
    pub fn normalized_quarter(self) -> Angle {
        Angle(normalize_half_open(
            self.0,
            0.0,
            std::f64::consts::FRAC_PI_2,
        ))
    }

    /// Normalize into `[0, pi)` (a line direction).
    pub fn normalized_direction(self) -> Angle {
        Angle(normalize_half_open(self.0, 0.0, std::f64::consts::PI))
    }
}

fn normalize_half_open(v: f64, lo: f64, period: f64) -> f64 {
    let mut r = (v - lo) % period;
    if r < 0.0 {
        r += period;
    }
    // Values within EPS_ANGLE of the period wrap to lo.
    if (r - period).abs() <= EPS_ANGLE {
        r = 0.0;
    }
    lo + r
}

/// Sign of the cross product `(q - p) x (r - p)`, with an area tolerance
/// scaled to the squared coordinate magnitude.
pub fn orientation(p: Point, q: Point, r: Point) -> i32 {
    let cross = (q - p).cross(r - p);
    let m =
        p.x.abs()
            .max(p.y.abs())
            .max(q.x.abs())
            .max(q.y.abs())
            .max(r.x.abs())
            .max(r.y.abs());
    let eps_area = 1e-9 * (m * m).max(1.0);
    if cross > eps_area {
        1
    } else if cross < -eps_area {
        -1
    } else {
        0
    }
}

/// An oriented line given in point-angle form. `dir` is the direction of
/// the line in `[0, pi)`. The implicit form is
/// `(x - anchor.x) sin(dir) - (y - anchor.y) cos(dir) = 0`.
#[derive(Debug, Clone, Copy)]
pub struct Line {
    pub anchor: Point,
    pub dir: f64,
}

impl Line {
    pub fn new(anchor: Point, dir: f64) -> Self {
        Line {
            anchor,
            dir: Angle(dir).normalized_direction().0,
        }
    }

    pub fn through(a: Point, b: Point) -> Self {
        Line::new(a, (b.y - a.y).atan2(b.x - a.x))
    }

    /// Unit direction vector.
    pub fn direction(&self) -> Point {
        Point::new(self.dir.cos(), self.dir.sin())
    }

    /// Evaluate the implicit form at `p`. Positive on one side, negative
    /// on the other, zero on the line. For a horizontal line (`dir = 0`)
    /// the positive side is below the line.
    pub fn eval(&self, p: Point) -> f64 {
        let (s, c) = self.dir.sin_cos();
        (p.x - self.anchor.x) * s - (p.y - self.anchor.y) * c
    }

    /// Canonical signed offset `x sin(dir) - y cos(dir)` of the line.
    pub fn offset(&self) -> f64 {
        let (s, c) = self.dir.sin_cos();
        self.anchor.x * s - self.anchor.y * c
    }

    /// Intersection with another line; `None` when parallel within
    /// `EPS_ANGLE`.
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let d1 = self.direction();
        let d2 = other.direction();
        let denom = d1.cross(d2);
        if denom.abs() <= EPS_ANGLE {
            return None;
        }
        let t = (other.anchor - self.anchor).cross(d2) / denom;
        Some(self.anchor + d1 * t)
    }
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        let dd = (self.dir - other.dir).abs();
        let same_dir = dd <= EPS_ANGLE || (dd - std::f64::consts::PI).abs() <= EPS_ANGLE;
        same_dir && (self.offset() - other.offset()).abs() <= EPS_LEN
    }
}

/// The line through `u` forming angle `theta` with the positive x-axis.
pub fn line_at_angle(u: Point, theta: f64) -> Line {
    Line::new(u, theta)
}

/// Intersection of the line through `u` at angle `theta` with the
/// horizontal line `y = y0`.
pub fn intersect_with_horizontal(u: Point, theta: f64, y0: f64) -> Result<Point, Error> {
    let t = Angle(theta).normalized_direction().0;
    if t.abs() <= EPS_ANGLE || (t - std::f64::consts::PI).abs() <= EPS_ANGLE {
        return Err(Error::DegenerateIntersection);
    }
    let cot = t.cos() / t.sin();
    Ok(Point::new(u.x + (y0 - u.y) * cot, y0))
}

/// Intersection of the line through `u` at angle `theta` with the
/// vertical line `x = x0`.
pub fn intersect_with_vertical(u: Point, theta: f64, x0: f64) -> Result<Point, Error> {
    let t = Angle(theta).normalized_direction().0;
    if (t - std::f64::consts::FRAC_PI_2).abs() <= EPS_ANGLE {
        return Err(Error::DegenerateIntersection);
    }
    Ok(Point::new(x0, u.y + (x0 - u.x) * t.tan()))
}

/// Intersection of the `theta`-line through `u` with the perpendicular
/// `(theta + 90 deg)`-line through `w`. The two lines always intersect.
///
/// For `theta` at the axis-aligned orientations the closed form is
/// replaced by the exact axis-aligned intersection.
pub fn intersect_orthogonal_pair(u: Point, w: Point, theta: f64) -> Point {
    let t = Angle(theta).normalized_direction().0;
    if t.abs() <= EPS_ANGLE || (t - std::f64::consts::PI).abs() <= EPS_ANGLE {
        // Horizontal line through u, vertical through w.
        return Point::new(w.x, u.y);
    }
    if (t - std::f64::consts::FRAC_PI_2).abs() <= EPS_ANGLE {
        return Point::new(u.x, w.y);
    }
    let (s, c) = t.sin_cos();
    let x = u.x * s * s + w.x * c * c + (w.y - u.y) * s * c;
    let y = u.y * c * c + w.y * s * s + (w.x - u.x) * s * c;
    Point::new(x, y)
}

/// Coefficient triple `(c0, c_cos, c_sin)` representing the value
/// `(c0 + c_cos * cos(2 theta) + c_sin * sin(2 theta)) / 2`.
pub type DoubleAngleCoeffs = (f64, f64, f64);

/// The double-angle form of [`intersect_orthogonal_pair`]: returns the
/// coefficient triples of the x and the y coordinate of the intersection
/// as functions of `2 theta`.
pub fn orthogonal_pair_coeffs(u: Point, w: Point) -> (DoubleAngleCoeffs, DoubleAngleCoeffs) {
    let cx = (u.x + w.x, -(u.x - w.x), w.y - u.y);
    let cy = (u.y + w.y, u.y - w.y, w.x - u.x);
    (cx, cy)
}

/// Evaluate a double-angle coefficient triple at `theta`.
pub fn eval_double_angle(c: DoubleAngleCoeffs, theta: f64) -> f64 {
    let (s2, c2) = (2.0 * theta).sin_cos();
    0.5 * (c.0 + c.1 * c2 + c.2 * s2)
}

/// A convex polyline: consecutive triples turn with a single sign.
#[derive(Debug, Clone)]
pub struct ConvexChain {
    pub vertices: Vec<Point>,
    /// Turn orientation of the chain (`true` for counterclockwise).
    pub ccw: bool,
}

impl ConvexChain {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex maximizing the dot product with `d` (support point).
    pub fn support(&self, d: Point) -> Point {
        *self
            .vertices
            .iter()
            .max_by(|a, b| a.dot(d).partial_cmp(&b.dot(d)).unwrap())
            .expect("support of empty chain")
    }
}

/// Counterclockwise convex hull with collinear interior points removed
/// (Andrew's monotone chain). Degenerate inputs (one point, two points,
/// or an all-collinear set) yield the degenerate chain of extremes.
pub fn convex_hull(points: &[Point]) -> ConvexChain {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.close_to(*b));
    if pts.len() <= 2 {
        return ConvexChain {
            vertices: pts,
            ccw: true,
        };
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All points collinear: keep the two extremes.
        let ends = vec![pts[0], *pts.last().unwrap()];
        return ConvexChain {
            vertices: ends,
            ccw: true,
        };
    }
    ConvexChain {
        vertices: lower,
        ccw: true,
    }
}

/// A simple polygon as a counterclockwise vertex cycle; the first vertex
/// is not repeated. Construction merges coincident and collinear
/// consecutive vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    verts: Vec<Point>,
}

impl SimplePolygon {
    /// Build from a counterclockwise vertex loop. Rejects loops that are
    /// clockwise or collapse below three vertices after normalization.
    /// Self-intersection is not checked here (see [`Self::is_simple`]).
    pub fn new(vertices: Vec<Point>) -> Result<Self, Error> {
        let verts = normalize_loop(vertices)?;
        let p = SimplePolygon { verts };
        if p.signed_area() <= 0.0 {
            return Err(Error::InvalidPolygon(
                "vertex loop is not counterclockwise".into(),
            ));
        }
        Ok(p)
    }

    /// As [`Self::new`] but reverses a clockwise loop instead of failing.
    /// Returns whether the loop was reversed.
    pub fn new_auto(vertices: Vec<Point>) -> Result<(Self, bool), Error> {
        let verts = normalize_loop(vertices)?;
        let p = SimplePolygon { verts };
        if p.signed_area() > 0.0 {
            Ok((p, false))
        } else {
            let mut rev = p.verts;
            rev.reverse();
            let q = SimplePolygon { verts: rev };
            if q.signed_area() <= 0.0 {
                return Err(Error::InvalidPolygon(
                    "degenerate (zero-area) vertex loop".into(),
                ));
            }
            Ok((q, true))
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    // A polygon always has at least three vertices, so no is_empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.verts[i % self.verts.len()]
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| (self.verts[i], self.verts[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.verts.len();
        let mut s = 0.0;
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            s += a.cross(b);
        }
        s * 0.5
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.verts {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Rotate every vertex by `theta` about the origin.
    pub fn rotated(&self, theta: f64) -> SimplePolygon {
        SimplePolygon {
            verts: self.verts.iter().map(|v| v.rotated(theta)).collect(),
        }
    }

    /// Quadratic-time boundary self-intersection test, intended for
    /// validating inputs and generator outputs at desk scale.
    pub fn is_simple(&self) -> bool {
        let n = self.verts.len();
        for i in 0..n {
            let (a1, a2) = (self.verts[i], self.verts[(i + 1) % n]);
            for j in i + 1..n {
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (b1, b2) = (self.verts[j], self.verts[(j + 1) % n]);
                if segments_intersect(a1, a2, b1, b2) {
                    return false;
                }
            }
        }
        true
    }

    /// Closed-region point containment with `EPS_LEN` boundary tolerance.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.verts.len();
        for i in 0..n {
            let (a, b) = (self.verts[i], self.verts[(i + 1) % n]);
            if point_segment_dist(p, a, b) <= EPS_LEN {
                return true;
            }
        }
        // Ray cast towards +x.
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.verts[i], self.verts[(i + 1) % n]);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x > p.x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Index of a vertex strictly inside all others is meaningless; this
    /// returns the index of the lowest-then-leftmost vertex.
    pub fn lowest_vertex(&self) -> usize {
        let mut best = 0;
        for i in 1..self.verts.len() {
            let (v, b) = (self.verts[i], self.verts[best]);
            if v.y < b.y - EPS_LEN || ((v.y - b.y).abs() <= EPS_LEN && v.x < b.x) {
                best = i;
            }
        }
        best
    }
}

fn normalize_loop(mut vertices: Vec<Point>) -> Result<Vec<Point>, Error> {
    // Merge coincident and collinear consecutive vertices until stable.
    loop {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(
                "fewer than three vertices after normalization".into(),
            ));
        }
        let mut out: Vec<Point> = Vec::with_capacity(n);
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            if cur.close_to(next) {
                continue;
            }
            if !prev.close_to(cur) && orientation(prev, cur, next) == 0 {
                // Only merge a true pass-through vertex, not a spike.
                let d1 = cur - prev;
                let d2 = next - cur;
                if d1.dot(d2) > 0.0 {
                    continue;
                }
            }
            out.push(cur);
        }
        if out.len() == vertices.len() {
            for v in &out {
                if !v.x.is_finite() || !v.y.is_finite() {
                    return Err(Error::InvalidPolygon("non-finite coordinate".into()));
                }
            }
            return Ok(out);
        }
        vertices = out;
    }
}

/// Proper or touching intersection of open segment interiors (shared
/// endpoints between adjacent edges are excluded by the caller).
fn segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    let d1 = orientation(b1, b2, a1);
    let d2 = orientation(b1, b2, a2);
    let d3 = orientation(a1, a2, b1);
    let d4 = orientation(a1, a2, b2);
    if d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        orientation(p, q, r) == 0
            && r.x >= p.x.min(q.x) - EPS_LEN
            && r.x <= p.x.max(q.x) + EPS_LEN
            && r.y >= p.y.min(q.y) - EPS_LEN
            && r.y <= p.y.max(q.y) + EPS_LEN
    };
    (d1 == 0 && on(b1, b2, a1))
        || (d2 == 0 && on(b1, b2, a2))
        || (d3 == 0 && on(a1, a2, b1))
        || (d4 == 0 && on(a1, a2, b2))
}

pub fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Positive area of a simple polygon (shoelace).
pub fn area(p: &SimplePolygon) -> f64 {
    p.signed_area()
}

/// Perimeter of a simple polygon.
pub fn perimeter(p: &SimplePolygon) -> f64 {
    p.perimeter()
}

/// Which side of a [`Line`] to keep when clipping. `Positive` keeps the
/// points with `line.eval(p) >= 0`; for a horizontal line that is the
/// region below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    Positive,
    Negative,
}

/// Clip a simple polygon against a closed halfplane. The result is zero
/// or more simple polygons; vertices on the clipping line are retained.
pub fn clip_halfplane(p: &SimplePolygon, line: &Line, keep: Keep) -> Vec<SimplePolygon> {
    // Work with a signed distance that is positive on the kept side.
    let sign = if keep == Keep::Positive { 1.0 } else { -1.0 };
    let n = p.len();
    let vs = p.vertices();
    let scale = {
        let (lo, hi) = p.bounding_box();
        lo.x.abs()
            .max(lo.y.abs())
            .max(hi.x.abs())
            .max(hi.y.abs())
            .max(1.0)
    };
    let eps = EPS_LEN * scale;
    let s: Vec<f64> = vs
        .iter()
        .map(|&v| {
            let d = sign * line.eval(v);
            if d.abs() <= eps {
                0.0
            } else {
                d
            }
        })
        .collect();

    if s.iter().all(|&d| d >= 0.0) {
        return vec![p.clone()];
    }
    if !s.iter().any(|&d| d > 0.0) {
        return Vec::new();
    }

    // Direction along the line such that the kept side lies to its left;
    // clipped boundary segments on the line then run in +t order.
    let normal_kept = {
        let (si, co) = line.dir.sin_cos();
        Point::new(si * sign, -co * sign)
    };
    let walk_dir = Point::new(normal_kept.y, -normal_kept.x);
    let t_of = |q: Point| (q - line.anchor).dot(walk_dir);

    // Collect kept boundary chains. Each chain starts and ends on the
    // clipping line (entry/exit crossing points).
    struct Chain {
        pts: Vec<Point>,
        t_in: f64,
        t_out: f64,
    }
    let start = (0..n).find(|&i| s[i] < 0.0).unwrap();
    let mut chains: Vec<Chain> = Vec::new();
    let mut cur: Option<Vec<Point>> = None;
    for k in 0..n {
        let i = (start + k) % n;
        let j = (i + 1) % n;
        let (u, v) = (vs[i], vs[j]);
        let (su, sv) = (s[i], s[j]);
        let crossing = |su: f64, sv: f64| -> Point {
            let t = su / (su - sv);
            u + (v - u) * t
        };
        if su < 0.0 {
            if sv > 0.0 {
                let c = crossing(su, sv);
                cur = Some(vec![c, v]);
            } else if sv == 0.0 {
                cur = Some(vec![v]);
            }
        } else {
            // su >= 0: a chain is open (or u was exactly on the line at a
            // touch point).
            if sv >= 0.0 {
                if let Some(ch) = cur.as_mut() {
                    ch.push(v);
                } else {
                    cur = Some(vec![u, v]);
                }
            } else {
                // Exit.
                let mut ch = cur.take().unwrap_or_else(|| vec![u]);
                if su > 0.0 {
                    ch.push(crossing(su, sv));
                }
                let t_in = t_of(ch[0]);
                let t_out = t_of(*ch.last().unwrap());
                chains.push(Chain {
                    pts: ch,
                    t_in,
                    t_out,
                });
                cur = None;
            }
        }
    }
    if let Some(ch) = cur.take() {
        // Walk started strictly outside, so any still-open chain must have
        // been closed above; a leftover can only be a degenerate touch.
        if ch.len() >= 2 {
            let t_in = t_of(ch[0]);
            let t_out = t_of(*ch.last().unwrap());
            chains.push(Chain {
                pts: ch,
                t_in,
                t_out,
            });
        }
    }

    // Stitch: sort crossing points along the line; each on-line gap of the
    // kept region connects a chain exit to the next chain entry in +t.
    let m = chains.len();
    if m == 0 {
        return Vec::new();
    }
    let mut entries: Vec<(f64, usize)> = chains
        .iter()
        .enumerate()
        .map(|(i, c)| (c.t_in, i))
        .collect();
    entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut next: Vec<Option<usize>> = vec![None; m];
    for (i, c) in chains.iter().enumerate() {
        // First entry at t >= t_out - eps that is not this chain's own
        // entry at the same location closing a touch.
        let mut best: Option<(f64, usize)> = None;
        for &(t, j) in &entries {
            if t >= c.t_out - eps {
                if j == i && (t - c.t_out).abs() <= eps && chains[i].pts.len() <= 1 {
                    continue;
                }
                best = Some((t, j));
                break;
            }
        }
        next[i] = best.map(|(_, j)| j);
    }

    let mut visited = vec![false; m];
    let mut out: Vec<SimplePolygon> = Vec::new();
    for i0 in 0..m {
        if visited[i0] {
            continue;
        }
        let mut loop_pts: Vec<Point> = Vec::new();
        let mut i = i0;
        loop {
            if visited[i] {
                break;
            }
            visited[i] = true;
            loop_pts.extend_from_slice(&chains[i].pts);
            match next[i] {
                Some(j) => {
                    if j == i0 {
                        break;
                    }
                    i = j;
                }
                None => break,
            }
        }
        if loop_pts.len() >= 3 {
            if let Ok(poly) = SimplePolygon::new(loop_pts) {
                if poly.signed_area() > eps * eps {
                    out.push(poly);
                }
            }
        }
    }
    out
}

/// Clip a convex polygon (as a vertex loop) against a halfplane; plain
/// Sutherland-Hodgman, valid because the result stays convex.
pub fn clip_convex_loop(loop_pts: &[Point], line: &Line, keep: Keep) -> Vec<Point> {
    let sign = if keep == Keep::Positive { 1.0 } else { -1.0 };
    let n = loop_pts.len();
    let mut out: Vec<Point> = Vec::with_capacity(n + 2);
    if n == 0 {
        return out;
    }
    let eps = EPS_LEN;
    for i in 0..n {
        let u = loop_pts[i];
        let v = loop_pts[(i + 1) % n];
        let su = sign * line.eval(u);
        let sv = sign * line.eval(v);
        if su >= -eps {
            out.push(u);
        }
        if (su > eps && sv < -eps) || (su < -eps && sv > eps) {
            let t = su / (su - sv);
            out.push(u + (v - u) * t);
        }
    }
    out
}

/// A common internal tangent of two disjoint convex chains, annotated
/// with its tangency points.
#[derive(Debug, Clone)]
pub struct Tangent {
    pub line: Line,
    pub touch_a: Point,
    pub touch_b: Point,
}

/// Separating-axis intersection test for two convex chains (treated as
/// convex polygons, possibly degenerate).
pub fn convex_chains_intersect(a: &ConvexChain, b: &ConvexChain) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let axes = |c: &ConvexChain| -> Vec<Point> {
        let v = &c.vertices;
        let n = v.len();
        if n == 1 {
            return Vec::new();
        }
        (0..n)
            .filter(|&i| n > 2 || i == 0)
            .map(|i| {
                let d = v[(i + 1) % n] - v[i];
                Point::new(-d.y, d.x)
            })
            .collect()
    };
    let mut all_axes = axes(a);
    all_axes.extend(axes(b));
    if all_axes.is_empty() {
        // Two points.
        return a.vertices[0].close_to(b.vertices[0]);
    }
    for ax in all_axes {
        if ax.norm() <= EPS_LEN {
            continue;
        }
        let range = |c: &ConvexChain| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &p in &c.vertices {
                let d = p.dot(ax);
                lo = lo.min(d);
                hi = hi.max(d);
            }
            (lo, hi)
        };
        let (alo, ahi) = range(a);
        let (blo, bhi) = range(b);
        if ahi < blo - EPS_LEN || bhi < alo - EPS_LEN {
            return false;
        }
    }
    true
}

/// The two common internal tangents of two disjoint convex chains: the
/// lines that separate the chains while touching both. For single-point
/// chains both tangents coincide with the line through the two points.
pub fn common_internal_tangents(a: &ConvexChain, b: &ConvexChain) -> Result<[Tangent; 2], Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidPolygon("tangents of an empty chain".into()));
    }
    if convex_chains_intersect(a, b) {
        return Err(Error::HullsIntersect);
    }
    // Separation margin as a function of the unit normal direction psi:
    // positive exactly on the (open) arc of separating normals; the arc
    // boundaries are the internal tangent normals.
    let margin = |psi: f64| -> f64 {
        let d = Point::new(psi.cos(), psi.sin());
        let min_a = a
            .vertices
            .iter()
            .map(|p| p.dot(d))
            .fold(f64::INFINITY, f64::min);
        let max_b = b
            .vertices
            .iter()
            .map(|p| p.dot(d))
            .fold(f64::NEG_INFINITY, f64::max);
        min_a - max_b
    };
    // Locate a direction inside the separating arc by scanning, refining
    // around the best sample when the arc is narrow.
    const SCAN: usize = 512;
    let tau = std::f64::consts::TAU;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..SCAN {
        let psi = k as f64 / SCAN as f64 * tau;
        let v = margin(psi);
        if v > best.0 {
            best = (v, psi);
        }
    }
    let mut inside = best.1;
    if best.0 <= 0.0 {
        // Golden-section refine around the best sample.
        let (mut lo, mut hi) = (best.1 - tau / SCAN as f64, best.1 + tau / SCAN as f64);
        for _ in 0..200 {
            let m1 = lo + (hi - lo) * 0.382;
            let m2 = lo + (hi - lo) * 0.618;
            if margin(m1) >= margin(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        inside = 0.5 * (lo + hi);
        if margin(inside) <= 0.0 {
            return Err(Error::HullsIntersect);
        }
    }
    // Bisect to both boundaries of the separating arc.
    let boundary = |mut good: f64, mut bad: f64| -> f64 {
        for _ in 0..100 {
            let mid = 0.5 * (good + bad);
            if margin(mid) > 0.0 {
                good = mid;
            } else {
                bad = mid;
            }
        }
        0.5 * (good + bad)
    };
    let psi_lo = boundary(inside, inside - std::f64::consts::PI);
    let psi_hi = boundary(inside, inside + std::f64::consts::PI);
    let make = |psi: f64| -> Tangent {
        let d = Point::new(psi.cos(), psi.sin());
        let touch_a = *a
            .vertices
            .iter()
            .min_by(|p, q| p.dot(d).partial_cmp(&q.dot(d)).unwrap())
            .unwrap();
        let touch_b = *b
            .vertices
            .iter()
            .max_by(|p, q| p.dot(d).partial_cmp(&q.dot(d)).unwrap())
            .unwrap();
        let line = if touch_a.close_to(touch_b) {
            Line::new(touch_a, psi + std::f64::consts::FRAC_PI_2)
        } else {
            Line::through(touch_a, touch_b)
        };
        Tangent {
            line,
            touch_a,
            touch_b,
        }
    };
    Ok([make(psi_lo), make(psi_hi)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    pub(crate) fn unit_square() -> SimplePolygon {
        SimplePolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation(pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)), 1);
        assert_eq!(orientation(pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)), 0);
        assert_eq!(orientation(pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0)), -1);
    }

    #[test]
    fn line_at_angle_examples() {
        let l = line_at_angle(pt(1.0, 2.0), 0.0);
        assert!(l.eval(pt(5.0, 2.0)).abs() < 1e-12);
        assert!(l.eval(pt(1.0, 2.0)).abs() < 1e-12);
        let v = line_at_angle(pt(1.0, 2.0), FRAC_PI_2);
        assert!(v.eval(pt(1.0, 7.0)).abs() < 1e-12);
        let d = line_at_angle(pt(0.0, 0.0), FRAC_PI_4);
        assert!(d.eval(pt(3.0, 3.0)).abs() < 1e-9);
    }

    #[test]
    fn horizontal_vertical_intersections() {
        let p = intersect_with_horizontal(pt(0.0, 0.0), FRAC_PI_4, 1.0).unwrap();
        assert!(p.close_to(pt(1.0, 1.0)));
        let p = intersect_with_horizontal(pt(2.0, 3.0), FRAC_PI_2, 0.0).unwrap();
        assert!(p.close_to(pt(2.0, 0.0)));
        let p = intersect_with_horizontal(pt(0.0, 0.0), FRAC_PI_4, 0.0).unwrap();
        assert!(p.close_to(pt(0.0, 0.0)));
        assert!(matches!(
            intersect_with_horizontal(pt(0.0, 0.0), 0.0, 1.0),
            Err(Error::DegenerateIntersection)
        ));

        let p = intersect_with_vertical(pt(0.0, 0.0), FRAC_PI_4, 2.0).unwrap();
        assert!(p.close_to(pt(2.0, 2.0)));
        let p = intersect_with_vertical(pt(1.0, 5.0), 0.0, 3.0).unwrap();
        assert!(p.close_to(pt(3.0, 5.0)));
        assert!(matches!(
            intersect_with_vertical(pt(0.0, 0.0), FRAC_PI_2, 1.0),
            Err(Error::DegenerateIntersection)
        ));
    }

    #[test]
    fn orthogonal_pair_examples() {
        let p = intersect_orthogonal_pair(pt(3.0, 4.0), pt(3.0, 4.0), 0.7);
        assert!(p.close_to(pt(3.0, 4.0)));
        let p = intersect_orthogonal_pair(pt(0.0, 0.0), pt(1.0, 0.0), FRAC_PI_4);
        assert!(p.close_to(pt(0.5, 0.5)));
        let p = intersect_orthogonal_pair(pt(0.0, 0.0), pt(1.0, 0.0), 1e-9);
        assert!(p.dist(pt(1.0, 0.0)) < 1e-6);
    }

    #[test]
    fn orthogonal_pair_on_both_lines() {
        // The intersection lies on both implicit forms.
        let mut seed = 123456789u64;
        let mut rnd = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 * 200.0 - 100.0
        };
        for _ in 0..1000 {
            let u = pt(rnd(), rnd());
            let w = pt(rnd(), rnd());
            let theta = (rnd() + 100.0) / 200.0 * PI;
            let p = intersect_orthogonal_pair(u, w, theta);
            let (s, c) = theta.sin_cos();
            let r1 = (p.x - u.x) * s - (p.y - u.y) * c;
            let r2 = (p.x - w.x) * c + (p.y - w.y) * s;
            assert!(r1.abs() <= 1e-9 && r2.abs() <= 1e-9, "residuals {r1} {r2}");
        }
    }

    #[test]
    fn double_angle_matches_direct() {
        let u = pt(2.0, -3.0);
        let w = pt(-1.0, 5.0);
        let (cx, cy) = orthogonal_pair_coeffs(u, w);
        for k in 1..100 {
            let theta = k as f64 / 100.0 * FRAC_PI_2;
            let p = intersect_orthogonal_pair(u, w, theta);
            assert!((eval_double_angle(cx, theta) - p.x).abs() < 1e-12);
            assert!((eval_double_angle(cy, theta) - p.y).abs() < 1e-12);
        }
    }

    #[test]
    fn hull_basic() {
        let h = convex_hull(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0), pt(0.2, 0.2)]);
        assert_eq!(h.len(), 3);
        let h = convex_hull(&[pt(0.0, 0.0)]);
        assert_eq!(h.len(), 1);
        let h = convex_hull(&[pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 0.0)]);
        assert_eq!(h.len(), 2);
    }

    /// Quadratic gift-wrapping oracle.
    pub(crate) fn gift_wrap(points: &[Point]) -> Vec<Point> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        pts.dedup_by(|a, b| a.close_to(*b));
        if pts.len() <= 2 {
            return pts;
        }
        let start = pts
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.y, a.x).partial_cmp(&(b.y, b.x)).unwrap())
            .unwrap()
            .0;
        let mut hull = vec![pts[start]];
        let mut cur = pts[start];
        loop {
            let mut cand = pts[0];
            if cand.close_to(cur) && pts.len() > 1 {
                cand = pts[1];
            }
            for &p in &pts {
                if p.close_to(cur) {
                    continue;
                }
                let o = orientation(cur, cand, p);
                if o < 0 || (o == 0 && cur.dist(p) > cur.dist(cand)) {
                    cand = p;
                }
            }
            if cand.close_to(hull[0]) {
                break;
            }
            hull.push(cand);
            cur = cand;
            if hull.len() > pts.len() {
                break;
            }
        }
        hull
    }

    #[test]
    fn hull_matches_gift_wrapping_on_circle() {
        let pts: Vec<Point> = (0..100)
            .map(|k| {
                let a = k as f64 / 100.0 * std::f64::consts::TAU;
                pt(a.cos(), a.sin())
            })
            .collect();
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 100);
        let gw = gift_wrap(&pts);
        assert_eq!(gw.len(), 100);
    }

    #[test]
    fn clip_square_below() {
        let sq = unit_square();
        let cut = clip_halfplane(&sq, &line_at_angle(pt(0.0, 0.5), 0.0), Keep::Positive);
        assert_eq!(cut.len(), 1);
        assert!((cut[0].signed_area() - 0.5).abs() < 1e-12);
        // No-op clip.
        let cut = clip_halfplane(&sq, &line_at_angle(pt(0.0, 2.0), 0.0), Keep::Positive);
        assert_eq!(cut.len(), 1);
        assert!((cut[0].signed_area() - 1.0).abs() < 1e-12);
        // Everything clipped away.
        let cut = clip_halfplane(&sq, &line_at_angle(pt(0.0, -1.0), 0.0), Keep::Positive);
        assert!(cut.is_empty());
    }

    pub(crate) fn u_shape() -> SimplePolygon {
        // [0,3]x[0,2] minus the open notch [1,2]x(1,2].
        SimplePolygon::new(vec![
            pt(0.0, 0.0),
            pt(3.0, 0.0),
            pt(3.0, 2.0),
            pt(2.0, 2.0),
            pt(2.0, 1.0),
            pt(1.0, 1.0),
            pt(1.0, 2.0),
            pt(0.0, 2.0),
        ])
        .unwrap()
    }

    #[test]
    fn clip_u_shape_components() {
        let u = u_shape();
        let below = clip_halfplane(&u, &line_at_angle(pt(0.0, 1.5), 0.0), Keep::Positive);
        assert_eq!(below.len(), 1);
        let above = clip_halfplane(&u, &line_at_angle(pt(0.0, 1.5), 0.0), Keep::Negative);
        assert_eq!(above.len(), 2);
        let total: f64 = below
            .iter()
            .chain(above.iter())
            .map(|p| p.signed_area())
            .sum();
        assert!((total - u.signed_area()).abs() < 1e-9);
    }

    #[test]
    fn area_perimeter_examples() {
        assert!((area(&unit_square()) - 1.0).abs() < 1e-12);
        assert!((perimeter(&unit_square()) - 4.0).abs() < 1e-12);
        let tri = SimplePolygon::new(vec![pt(0.0, 0.0), pt(4.0, 0.0), pt(2.0, 3.0)]).unwrap();
        assert!((area(&tri) - 6.0).abs() < 1e-12);
        let lp = SimplePolygon::new(vec![
            pt(0.0, 0.0),
            pt(2.0, 0.0),
            pt(2.0, 2.0),
            pt(1.0, 2.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
        ])
        .unwrap();
        assert!((area(&lp) - 3.0).abs() < 1e-12);
        assert!((perimeter(&lp) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn tangents_of_point_hulls() {
        let a = convex_hull(&[pt(0.0, 0.0)]);
        let b = convex_hull(&[pt(2.0, 2.0)]);
        let ts = common_internal_tangents(&a, &b).unwrap();
        for t in &ts {
            assert!(t.line.eval(pt(0.0, 0.0)).abs() < 1e-9);
            assert!(t.line.eval(pt(2.0, 2.0)).abs() < 1e-9);
            let d = (t.line.dir - FRAC_PI_4).abs();
            assert!(d < 1e-6 || (d - PI).abs() < 1e-6);
        }
    }

    #[test]
    fn tangents_of_squares() {
        let a = convex_hull(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]);
        let b = convex_hull(&[pt(3.0, 0.0), pt(4.0, 0.0), pt(4.0, 1.0), pt(3.0, 1.0)]);
        let ts = common_internal_tangents(&a, &b).unwrap();
        // Each tangent separates: all of a on one side, all of b on the other.
        for t in &ts {
            let sa: Vec<f64> = a.vertices.iter().map(|&p| t.line.eval(p)).collect();
            let sb: Vec<f64> = b.vertices.iter().map(|&p| t.line.eval(p)).collect();
            let amax = sa.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let amin = sa.iter().cloned().fold(f64::INFINITY, f64::min);
            let bmax = sb.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let bmin = sb.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(amax <= 1e-6 && bmin >= -1e-6 || bmax <= 1e-6 && amin >= -1e-6);
        }
        // Tangency at opposite corners.
        let touches: Vec<Point> = ts.iter().flat_map(|t| [t.touch_a, t.touch_b]).collect();
        assert!(touches
            .iter()
            .any(|p| p.dist(pt(1.0, 0.0)) < 1e-6 || p.dist(pt(1.0, 1.0)) < 1e-6));
    }

    #[test]
    fn tangents_of_overlapping_hulls_fail() {
        let a = convex_hull(&[pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 2.0), pt(0.0, 2.0)]);
        let b = convex_hull(&[pt(1.0, 1.0), pt(3.0, 1.0), pt(3.0, 3.0), pt(1.0, 3.0)]);
        assert!(matches!(
            common_internal_tangents(&a, &b),
            Err(Error::HullsIntersect)
        ));
    }

    #[test]
    fn polygon_normalization() {
        // Collinear consecutive vertices merge.
        let p = SimplePolygon::new(vec![
            pt(0.0, 0.0),
            pt(0.5, 0.0),
            pt(1.0, 0.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
        // Clockwise rejected by `new`, fixed by `new_auto`.
        let cw = vec![pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0), pt(1.0, 0.0)];
        assert!(SimplePolygon::new(cw.clone()).is_err());
        let (p, reversed) = SimplePolygon::new_auto(cw).unwrap();
        assert!(reversed);
        assert!(p.signed_area() > 0.0);
    }

    #[test]
    fn containment() {
        let u = u_shape();
        assert!(u.contains(pt(0.5, 0.5)));
        assert!(u.contains(pt(1.5, 0.5)));
        assert!(!u.contains(pt(1.5, 1.5)));
        assert!(u.contains(pt(0.0, 0.0))); // boundary is inside
        assert!(u.is_simple());
    }
}
