//! Rotation sweep for the single-orientation kernel: for every theta in
//! `[-pi/2, pi/2)` decide whether the theta-rotated strip kernel is
//! nonempty, reported as maximal angular intervals.
//!
//! Pipeline: per-reflex-vertex angular candidate intervals, dualization
//! of vertices to lines (slope space), upper/lower envelopes of the
//! resulting segments, an overlay into event intervals with constant
//! supporting vertices, and a closed-form emptiness test per interval.
//!
//! Slopes are kept bounded by splitting the angle domain into two
//! charts: chart A covers `[-s, s]` in the standard frame, chart B the
//! rest in a quarter-turn-rotated frame, with `s = pi/4` by default.

use crate::geom::{orientation, Point, SimplePolygon};
use crate::steady;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

const EPS_X: f64 = 1e-12;
const EPS_ANG: f64 = 1e-12;

/// Candidate role of a reflex vertex on an angular interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Both neighbors strictly below the theta-line through the vertex.
    CandidateMax,
    /// Both neighbors strictly above.
    CandidateMin,
}

/// The set of orientations on which one reflex vertex plays one role.
#[derive(Debug, Clone)]
pub struct ReflexAngularInterval {
    pub vertex_index: usize,
    pub role: Role,
    /// Open theta pieces within `[-pi/2, pi/2)`; at most two (two occur
    /// when the candidate arc straddles the vertical orientation).
    pub theta: Vec<(f64, f64)>,
    /// Matching slope ranges `tan(theta)`; `+-inf` at the vertical.
    pub slopes: Vec<(f64, f64)>,
}

/// Arcs of `{theta in [-pi/2, pi/2) : (q-p) . (-sin t, cos t) < 0}`,
/// i.e. where the neighbor offset `d` lies strictly below the line.
fn below_arcs(d: Point) -> Vec<(f64, f64)> {
    // d . (-sin t, cos t) = R cos(t + psi), psi = atan2(dx, dy); negative
    // on (pi/2 - psi, 3pi/2 - psi) modulo 2pi.
    let psi = d.x.atan2(d.y);
    let (lo, hi) = (FRAC_PI_2 - psi, 3.0 * FRAC_PI_2 - psi);
    let mut out = Vec::new();
    for k in -2..=2 {
        let a = (lo + 2.0 * PI * k as f64).max(-FRAC_PI_2);
        let b = (hi + 2.0 * PI * k as f64).min(FRAC_PI_2);
        if b - a > EPS_ANG {
            out.push((a, b));
        }
    }
    out
}

fn above_arcs(d: Point) -> Vec<(f64, f64)> {
    below_arcs(Point::new(-d.x, -d.y))
}

fn intersect_arc_lists(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if hi - lo > EPS_ANG {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    out
}

fn slope_of(theta: f64) -> f64 {
    if theta <= -FRAC_PI_2 + EPS_ANG {
        f64::NEG_INFINITY
    } else if theta >= FRAC_PI_2 - EPS_ANG {
        f64::INFINITY
    } else {
        theta.tan()
    }
}

/// Per reflex vertex, the orientations on which it is a candidate
/// maximum or minimum, in closed form from the incident edge directions.
pub fn reflex_intervals(p: &SimplePolygon) -> Vec<ReflexAngularInterval> {
    let vs = p.vertices();
    let n = vs.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (prev, v, next) = (vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]);
        if orientation(prev, v, next) >= 0 {
            continue;
        }
        let (d1, d2) = (prev - v, next - v);
        for role in [Role::CandidateMax, Role::CandidateMin] {
            let (a1, a2) = match role {
                Role::CandidateMax => (below_arcs(d1), below_arcs(d2)),
                Role::CandidateMin => (above_arcs(d1), above_arcs(d2)),
            };
            let theta = intersect_arc_lists(&a1, &a2);
            if theta.is_empty() {
                continue;
            }
            let slopes = theta
                .iter()
                .map(|&(a, b)| (slope_of(a), slope_of(b)))
                .collect();
            out.push(ReflexAngularInterval {
                vertex_index: i,
                role,
                theta,
                slopes,
            });
        }
    }
    out
}

/// Chart tag: A is the standard frame over `[-s, s]`, B the
/// quarter-turn frame covering the rest of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentRole {
    CandidateMax,
    CandidateMin,
    HullFallback,
}

/// A piece of a dual line `y = a x - b` (`(a, b)` are the owner vertex
/// coordinates in the chart frame, `x` the chart-local slope).
#[derive(Debug, Clone, Copy)]
pub struct DualSegment {
    pub owner: usize,
    /// Chart-local role (the min/max roles swap where the chart-B frame
    /// is a half-turn away from the standard frame).
    pub role: SegmentRole,
    pub chart: Chart,
    pub x0: f64,
    pub x1: f64,
    pub a: f64,
    pub b: f64,
}

impl DualSegment {
    pub fn value(&self, x: f64) -> f64 {
        self.a * x - self.b
    }
}

pub const DEFAULT_SPLIT: f64 = FRAC_PI_4;

/// Quarter-turn used for chart B.
fn to_chart_b(p: Point) -> Point {
    Point::new(p.y, -p.x)
}

/// Indices of hull vertices of a vertex loop, in ccw hull order.
pub(crate) fn hull_indices(vs: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..vs.len()).collect();
    idx.sort_by(|&i, &j| (vs[i].x, vs[i].y).partial_cmp(&(vs[j].x, vs[j].y)).unwrap());
    let build = |order: &[usize]| -> Vec<usize> {
        let mut h: Vec<usize> = Vec::new();
        for &i in order {
            while h.len() >= 2 && orientation(vs[h[h.len() - 2]], vs[h[h.len() - 1]], vs[i]) <= 0 {
                h.pop();
            }
            h.push(i);
        }
        h
    };
    let lower = build(&idx);
    let rev: Vec<usize> = idx.iter().rev().copied().collect();
    let upper = build(&rev);
    let mut hull = lower;
    hull.pop();
    hull.extend(upper.into_iter().take_while(|_| true));
    hull.pop();
    hull
}

fn chart_window(chart: Chart, split: f64) -> (f64, f64) {
    match chart {
        Chart::A => (-split.tan(), split.tan()),
        Chart::B => (-(FRAC_PI_2 - split).tan(), (FRAC_PI_2 - split).tan()),
    }
}

/// Map a theta piece into chart-local slope pieces with chart-local
/// roles. Returns `(chart, x0, x1, role)` tuples.
fn theta_piece_to_chart(
    t0: f64,
    t1: f64,
    role: SegmentRole,
    split: f64,
) -> Vec<(Chart, f64, f64, SegmentRole)> {
    let swap = |r: SegmentRole| match r {
        SegmentRole::CandidateMax => SegmentRole::CandidateMin,
        SegmentRole::CandidateMin => SegmentRole::CandidateMax,
        SegmentRole::HullFallback => SegmentRole::HullFallback,
    };
    let mut out = Vec::new();
    // Chart A part.
    let (a0, a1) = (t0.max(-split), t1.min(split));
    if a1 - a0 > EPS_ANG {
        out.push((Chart::A, a0.tan(), a1.tan(), role));
    }
    // Chart B, positive branch: theta in [split, pi/2), phi = theta - pi/2.
    let (b0, b1) = (t0.max(split), t1.min(FRAC_PI_2));
    if b1 - b0 > EPS_ANG {
        out.push((
            Chart::B,
            (b0 - FRAC_PI_2).tan(),
            (b1 - FRAC_PI_2).tan(),
            role,
        ));
    }
    // Chart B, negative branch: theta in [-pi/2, -split), phi = theta + pi/2.
    // The chart frame is a half-turn from the theta frame here: roles swap.
    let (c0, c1) = (t0.max(-FRAC_PI_2), t1.min(-split));
    if c1 - c0 > EPS_ANG {
        out.push((
            Chart::B,
            (c0 + FRAC_PI_2).tan(),
            (c1 + FRAC_PI_2).tan(),
            swap(role),
        ));
    }
    out
}

pub(crate) fn dualize_with_split(
    intervals: &[ReflexAngularInterval],
    p: &SimplePolygon,
    split: f64,
) -> Vec<DualSegment> {
    let vs = p.vertices();
    let mut out = Vec::new();
    for ri in intervals {
        let role = match ri.role {
            Role::CandidateMax => SegmentRole::CandidateMax,
            Role::CandidateMin => SegmentRole::CandidateMin,
        };
        for &(t0, t1) in &ri.theta {
            for (chart, x0, x1, r) in theta_piece_to_chart(t0, t1, role, split) {
                if x1 - x0 <= EPS_X {
                    continue;
                }
                let q = match chart {
                    Chart::A => vs[ri.vertex_index],
                    Chart::B => to_chart_b(vs[ri.vertex_index]),
                };
                out.push(DualSegment {
                    owner: ri.vertex_index,
                    role: r,
                    chart,
                    x0,
                    x1,
                    a: q.x,
                    b: q.y,
                });
            }
        }
    }
    // Hull fallback vertices span each full chart window.
    for chart in [Chart::A, Chart::B] {
        let (w0, w1) = chart_window(chart, split);
        for &i in &hull_indices(vs) {
            let q = match chart {
                Chart::A => vs[i],
                Chart::B => to_chart_b(vs[i]),
            };
            out.push(DualSegment {
                owner: i,
                role: SegmentRole::HullFallback,
                chart,
                x0: w0,
                x1: w1,
                a: q.x,
                b: q.y,
            });
        }
    }
    out
}

/// Dual segments of candidate intervals plus hull fallbacks, with the
/// default chart split at `pi/4`.
pub fn dualize(intervals: &[ReflexAngularInterval], p: &SimplePolygon) -> Vec<DualSegment> {
    dualize_with_split(intervals, p, DEFAULT_SPLIT)
}

/// One maximal x-range of an envelope attributed to one input segment
/// (`None` where no input segment is defined).
#[derive(Debug, Clone, Copy)]
pub struct EnvelopePiece {
    pub x0: f64,
    pub x1: f64,
    pub seg: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub pieces: Vec<EnvelopePiece>,
    pub upper: bool,
}

impl Envelope {
    pub fn piece_at(&self, x: f64) -> Option<&EnvelopePiece> {
        self.pieces
            .iter()
            .find(|pc| x >= pc.x0 - EPS_X && x <= pc.x1 + EPS_X)
    }
}

fn env_base(seg: usize, segs: &[DualSegment], w: (f64, f64)) -> Vec<EnvelopePiece> {
    let s = &segs[seg];
    let (x0, x1) = (s.x0.max(w.0), s.x1.min(w.1));
    let mut out = Vec::new();
    if x0 > w.0 + EPS_X {
        out.push(EnvelopePiece {
            x0: w.0,
            x1: x0,
            seg: None,
        });
    }
    if x1 > x0 {
        out.push(EnvelopePiece {
            x0,
            x1,
            seg: Some(seg),
        });
    }
    if x1 < w.1 - EPS_X {
        out.push(EnvelopePiece {
            x0: x1.max(w.0),
            x1: w.1,
            seg: None,
        });
    }
    if out.is_empty() {
        out.push(EnvelopePiece {
            x0: w.0,
            x1: w.1,
            seg: None,
        });
    }
    out
}

fn env_merge(
    a: Vec<EnvelopePiece>,
    b: Vec<EnvelopePiece>,
    segs: &[DualSegment],
    upper: bool,
) -> Vec<EnvelopePiece> {
    let mut xs: Vec<f64> = Vec::new();
    for pc in a.iter().chain(b.iter()) {
        xs.push(pc.x0);
        xs.push(pc.x1);
    }
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    xs.dedup_by(|p, q| (*p - *q).abs() <= EPS_X);
    let mut out: Vec<EnvelopePiece> = Vec::new();
    let mut push = |x0: f64, x1: f64, seg: Option<usize>| {
        if x1 - x0 <= 0.0 {
            return;
        }
        if let Some(last) = out.last_mut() {
            if last.seg == seg && (last.x1 - x0).abs() <= EPS_X {
                last.x1 = x1;
                return;
            }
        }
        out.push(EnvelopePiece { x0, x1, seg });
    };
    let find = |list: &[EnvelopePiece], x: f64| -> Option<usize> {
        list.iter()
            .find(|pc| x >= pc.x0 - EPS_X && x <= pc.x1 + EPS_X)
            .and_then(|pc| pc.seg)
    };
    for w in xs.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v - u <= EPS_X {
            continue;
        }
        let mid = 0.5 * (u + v);
        let sa = find(&a, mid);
        let sb = find(&b, mid);
        match (sa, sb) {
            (None, None) => push(u, v, None),
            (Some(i), None) => push(u, v, Some(i)),
            (None, Some(j)) => push(u, v, Some(j)),
            (Some(i), Some(j)) => {
                let (si, sj) = (&segs[i], &segs[j]);
                let du = si.value(u) - sj.value(u);
                let dv = si.value(v) - sj.value(v);
                let pick = |d: f64| if (d > 0.0) == upper { Some(i) } else { Some(j) };
                if du * dv >= 0.0 {
                    let d = if du.abs() > dv.abs() { du } else { dv };
                    push(u, v, pick(d));
                } else {
                    let xc = ((si.b - sj.b) / (si.a - sj.a)).clamp(u, v);
                    push(u, xc, pick(du));
                    push(xc, v, pick(dv));
                }
            }
        }
    }
    out
}

fn env_rec(ids: &[usize], segs: &[DualSegment], upper: bool, w: (f64, f64)) -> Vec<EnvelopePiece> {
    match ids.len() {
        0 => vec![EnvelopePiece {
            x0: w.0,
            x1: w.1,
            seg: None,
        }],
        1 => env_base(ids[0], segs, w),
        _ => {
            let (l, r) = ids.split_at(ids.len() / 2);
            env_merge(
                env_rec(l, segs, upper, w),
                env_rec(r, segs, upper, w),
                segs,
                upper,
            )
        }
    }
}

pub(crate) fn envelope_in_window(
    segs: &[DualSegment],
    upper: bool,
    window: (f64, f64),
) -> Envelope {
    let ids: Vec<usize> = (0..segs.len()).collect();
    Envelope {
        pieces: env_rec(&ids, segs, upper, window),
        upper,
    }
}

/// Pointwise extremum over a set of dual segments as a piecewise-linear
/// structure; divide-and-conquer merge.
pub fn envelope(segments: &[DualSegment], upper: bool) -> Envelope {
    if segments.is_empty() {
        return Envelope {
            pieces: Vec::new(),
            upper,
        };
    }
    let w0 = segments.iter().map(|s| s.x0).fold(f64::INFINITY, f64::min);
    let w1 = segments
        .iter()
        .map(|s| s.x1)
        .fold(f64::NEG_INFINITY, f64::max);
    envelope_in_window(segments, upper, (w0, w1))
}

/// A strip support: the vertex index plus whether it is a convex-hull
/// fallback (no candidate reflex vertex defined there).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Support {
    pub vertex: usize,
    pub fallback: bool,
}

/// First and last polygon vertices appearing on the kernel's left and
/// right chains, sampled at the interval midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ChainEndpoints {
    pub left_first: Option<usize>,
    pub left_last: Option<usize>,
    pub right_first: Option<usize>,
    pub right_last: Option<usize>,
}

/// A maximal angular range on which the strip is supported by one fixed
/// pair of vertices (fallback ranges with no candidates are merged).
#[derive(Debug, Clone)]
pub struct EventInterval {
    pub theta_lo: f64,
    pub theta_hi: f64,
    /// Lowest reflex minimum in the theta frame (north boundary).
    pub support_min: Support,
    /// Highest reflex maximum (south boundary).
    pub support_max: Support,
    pub chain_endpoints: Option<ChainEndpoints>,
}

struct RawEvent {
    lo: f64,
    hi: f64,
    smin: Support,
    smax: Support,
}

fn chart_events(chart: Chart, split: f64, segs: &[DualSegment]) -> Vec<RawEvent> {
    let window = chart_window(chart, split);
    let pick = |role: SegmentRole| -> Vec<DualSegment> {
        segs.iter()
            .filter(|s| s.chart == chart && s.role == role)
            .copied()
            .collect()
    };
    let mins = pick(SegmentRole::CandidateMin);
    let maxs = pick(SegmentRole::CandidateMax);
    let hull = pick(SegmentRole::HullFallback);
    // Chart-local north: lowest candidate minimum. Levels at slope x are
    // proportional to b - a x = -value, so the lowest level is the upper
    // envelope. Fallback (no candidate): the highest polygon vertex,
    // i.e. the lower envelope of the hull lines; mirrored for south.
    let env_n = envelope_in_window(&mins, true, window);
    let env_s = envelope_in_window(&maxs, false, window);
    let env_nf = envelope_in_window(&hull, false, window);
    let env_sf = envelope_in_window(&hull, true, window);

    let mut xs: Vec<f64> = Vec::new();
    for env in [&env_n, &env_s, &env_nf, &env_sf] {
        for pc in &env.pieces {
            xs.push(pc.x0);
            xs.push(pc.x1);
        }
    }
    if chart == Chart::B {
        xs.push(0.0); // branch boundary (theta = -pi/2 wrap)
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).abs() <= EPS_X);

    let support_of = |env: &Envelope, fb: &Envelope, x: f64| -> Support {
        match env.piece_at(x).and_then(|pc| pc.seg) {
            Some(i) => Support {
                vertex: env_owner(env, &mins, &maxs, i),
                fallback: false,
            },
            None => {
                let i = fb
                    .piece_at(x)
                    .and_then(|pc| pc.seg)
                    .expect("hull envelope total");
                Support {
                    vertex: hull[i].owner,
                    fallback: true,
                }
            }
        }
    };
    fn env_owner(env: &Envelope, mins: &[DualSegment], maxs: &[DualSegment], i: usize) -> usize {
        if env.upper {
            mins[i].owner
        } else {
            maxs[i].owner
        }
    }

    let mut out = Vec::new();
    for w in xs.windows(2) {
        let (u, v) = (w[0], w[1]);
        if v - u <= EPS_X {
            continue;
        }
        let mid = 0.5 * (u + v);
        let north = support_of(&env_n, &env_nf, mid);
        let south = support_of(&env_s, &env_sf, mid);
        // Map the slope range back to theta.
        let (phi0, phi1) = (u.atan(), v.atan());
        match chart {
            Chart::A => out.push(RawEvent {
                lo: phi0,
                hi: phi1,
                smin: north,
                smax: south,
            }),
            Chart::B => {
                if mid < 0.0 {
                    // phi < 0: theta = phi + pi/2, frame-consistent.
                    out.push(RawEvent {
                        lo: phi0 + FRAC_PI_2,
                        hi: phi1 + FRAC_PI_2,
                        smin: north,
                        smax: south,
                    });
                } else {
                    // phi >= 0: theta = phi - pi/2, frame flipped: the
                    // chart-local north is the theta-frame south.
                    out.push(RawEvent {
                        lo: phi0 - FRAC_PI_2,
                        hi: phi1 - FRAC_PI_2,
                        smin: south,
                        smax: north,
                    });
                }
            }
        }
    }
    out
}

pub(crate) fn event_intervals_with_split(p: &SimplePolygon, split: f64) -> Vec<EventInterval> {
    let ri = reflex_intervals(p);
    let segs = dualize_with_split(&ri, p, split);
    let mut raw: Vec<RawEvent> = Vec::new();
    raw.extend(chart_events(Chart::A, split, &segs));
    raw.extend(chart_events(Chart::B, split, &segs));
    raw.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());

    // Merge adjacent intervals with identical support pairs; ranges
    // where both supports are hull fallbacks are merged regardless of
    // which hull vertex supplies them (the kernel there is all of P).
    let mut merged: Vec<RawEvent> = Vec::new();
    for ev in raw {
        if let Some(last) = merged.last_mut() {
            let contiguous = (ev.lo - last.hi).abs() <= 1e-9;
            let same = ev.smin == last.smin && ev.smax == last.smax;
            let both_fb =
                ev.smin.fallback && ev.smax.fallback && last.smin.fallback && last.smax.fallback;
            if contiguous && (same || both_fb) {
                last.hi = ev.hi;
                continue;
            }
        }
        merged.push(ev);
    }

    merged
        .into_iter()
        .map(|ev| {
            let mid = 0.5 * (ev.lo + ev.hi);
            let chain_endpoints = steady::kernel_at(p, mid).ok().and_then(|k| {
                let first_last = |c: &steady::KernelChain| {
                    let mut it = c.source_vertices.iter().flatten();
                    let first = it.next().copied();
                    let last = c.source_vertices.iter().rev().flatten().next().copied();
                    (first, last)
                };
                match (&k.left_chain, &k.right_chain) {
                    (Some(l), Some(r)) => {
                        let (lf, ll) = first_last(l);
                        let (rf, rl) = first_last(r);
                        Some(ChainEndpoints {
                            left_first: lf,
                            left_last: ll,
                            right_first: rf,
                            right_last: rl,
                        })
                    }
                    _ => None,
                }
            });
            EventInterval {
                theta_lo: ev.lo,
                theta_hi: ev.hi,
                support_min: ev.smin,
                support_max: ev.smax,
                chain_endpoints,
            }
        })
        .collect()
}

/// The event-interval decomposition of `[-pi/2, pi/2)`: on each interval
/// the strip is supported by a fixed pair of vertices.
pub fn event_intervals(p: &SimplePolygon) -> Vec<EventInterval> {
    event_intervals_with_split(p, DEFAULT_SPLIT)
}

/// A maximal angular interval with nonempty kernel. Endpoints where the
/// kernel degenerates to a segment (zero area) are flagged; consumers
/// may treat them as open.
#[derive(Debug, Clone, Copy)]
pub struct AngularInterval {
    pub lo: f64,
    pub hi: f64,
    pub degenerate_lo: bool,
    pub degenerate_hi: bool,
}

pub(crate) fn nonempty_intervals_with_split(p: &SimplePolygon, split: f64) -> Vec<AngularInterval> {
    let vs = p.vertices();
    let events = event_intervals_with_split(p, split);
    let mut pieces: Vec<AngularInterval> = Vec::new();
    for ev in &events {
        if ev.support_min.fallback && ev.support_max.fallback {
            // No candidate reflex vertex on either side: the strip spans
            // the whole polygon and the kernel is P itself.
            pieces.push(AngularInterval {
                lo: ev.theta_lo,
                hi: ev.theta_hi,
                degenerate_lo: false,
                degenerate_hi: false,
            });
            continue;
        }
        let d = vs[ev.support_min.vertex] - vs[ev.support_max.vertex];
        let f = |t: f64| -d.x * t.sin() + d.y * t.cos();
        let (a, b) = (ev.theta_lo, ev.theta_hi);
        if d.norm() <= 1e-12 {
            pieces.push(AngularInterval {
                lo: a,
                hi: b,
                degenerate_lo: true,
                degenerate_hi: true,
            });
            continue;
        }
        // f(t) = R cos(t + psi): at most one root inside an interval
        // shorter than pi.
        let psi = d.x.atan2(d.y);
        let mut roots: Vec<f64> = Vec::new();
        for k in -3..=3 {
            let r = FRAC_PI_2 - psi + k as f64 * PI;
            if r > a + EPS_ANG && r < b - EPS_ANG {
                roots.push(r);
            }
        }
        roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut marks = vec![a];
        marks.extend(roots.iter().copied());
        marks.push(b);
        for w in marks.windows(2) {
            let (u, v) = (w[0], w[1]);
            if f(0.5 * (u + v)) >= 0.0 {
                pieces.push(AngularInterval {
                    lo: u,
                    hi: v,
                    degenerate_lo: f(u).abs() <= 1e-9,
                    degenerate_hi: f(v).abs() <= 1e-9,
                });
            }
        }
    }
    // The domain endpoint -pi/2 needs a direct check: the open candidate
    // intervals all exclude it, so the event structure can misreport the
    // isolated vertical orientation (where the kernel may flip).
    let at_wrap = steady::kernel_at(p, -FRAC_PI_2);
    if let Ok(k) = &at_wrap {
        let covered = pieces.iter().any(|pc| pc.lo <= -FRAC_PI_2 + EPS_ANG);
        if !k.is_empty() && !covered {
            pieces.push(AngularInterval {
                lo: -FRAC_PI_2,
                hi: -FRAC_PI_2,
                degenerate_lo: k.degenerate,
                degenerate_hi: k.degenerate,
            });
        }
    }
    pieces.sort_by(|x, y| x.lo.partial_cmp(&y.lo).unwrap());
    let mut out: Vec<AngularInterval> = Vec::new();
    for pc in pieces {
        if let Some(last) = out.last_mut() {
            if pc.lo - last.hi <= 1e-9 {
                last.hi = pc.hi;
                last.degenerate_hi = pc.degenerate_hi;
                continue;
            }
        }
        out.push(pc);
    }
    out
}

/// All maximal intervals of theta in `[-pi/2, pi/2)` on which the
/// rotated strip kernel is nonempty; sorted and pairwise disjoint.
pub fn nonempty_intervals(p: &SimplePolygon) -> Vec<AngularInterval> {
    nonempty_intervals_with_split(p, DEFAULT_SPLIT)
}
