//! Acceptance gate. One test per criterion; each prints a single
//! `[PASS] criterion N` line on success and fails loudly otherwise.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rotokernel::geom::{
    clip_halfplane, intersect_orthogonal_pair, intersect_with_horizontal, intersect_with_vertical,
    line_at_angle, Keep,
};
use rotokernel::{intervals, oracle, ortho, steady, Point, SimplePolygon};

fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn nt() -> SimplePolygon {
    SimplePolygon::new(vec![pt(0.0, 0.0), pt(2.0, 1.0), pt(4.0, 0.0), pt(2.0, 3.0)]).unwrap()
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

/// Inward rectangular spiral; orthogonal but outside the swept family.
fn spiral() -> SimplePolygon {
    SimplePolygon::new(vec![
        pt(0.0, 0.0),
        pt(5.0, 0.0),
        pt(5.0, 5.0),
        pt(1.0, 5.0),
        pt(1.0, 2.0),
        pt(2.0, 2.0),
        pt(2.0, 4.0),
        pt(4.0, 4.0),
        pt(4.0, 1.0),
        pt(0.0, 1.0),
    ])
    .unwrap()
}

/// Collect `count` generated polygons, skipping seeds the generator
/// rejects.
fn generate_many(kind: oracle::PolygonKind, count: usize, max_n: usize) -> Vec<SimplePolygon> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let n = 6 + (seed as usize * 7) % (max_n - 5);
        if let Ok(p) = oracle::generate(kind, n, seed) {
            out.push(p);
        }
        seed += 1;
        assert!(
            seed < 20 * count as u64,
            "generator rejected too many seeds"
        );
    }
    out
}

/// Solve the 2x2 linear system of two point-angle lines directly, with
/// one step of iterative refinement (fma residuals) so the reference is
/// accurate to a few ulps.
fn solve_two_lines(u: Point, a: f64, w: Point, b: f64) -> Point {
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    // Line through u at angle a: x sin a - y cos a = u.x sin a - u.y cos a.
    let det = sa * (-cb) - (-ca) * sb;
    let c1 = u.x * sa - u.y * ca;
    let c2 = w.x * sb - w.y * cb;
    let mut x = (c1 * (-cb) + ca * c2) / det;
    let mut y = (sa * c2 - c1 * sb) / det;
    let r1 = sa.mul_add(x, (-ca).mul_add(y, -c1));
    let r2 = sb.mul_add(x, (-cb).mul_add(y, -c2));
    x -= (r1 * (-cb) + ca * r2) / det;
    y -= (sa * r2 - r1 * sb) / det;
    Point::new(x, y)
}

#[test]
fn criterion_01_intersection_formulas() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let mut max_err: f64 = 0.0;
    for _ in 0..100_000 {
        let u = pt(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        let w = pt(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        // Keep the angle away from the degenerate axes so the bound on
        // the absolute error is not dominated by cot/tan amplification.
        let theta = rng.gen_range(0.2..FRAC_PI_2 - 0.2);
        let y0 = rng.gen_range(-100.0..100.0);
        let x0 = rng.gen_range(-100.0..100.0);

        let got = intersect_with_horizontal(u, theta, y0).unwrap();
        let want = solve_two_lines(u, theta, pt(0.0, y0), 0.0);
        max_err = max_err
            .max((got.x - want.x).abs())
            .max((got.y - want.y).abs());

        let got = intersect_with_vertical(u, theta, x0).unwrap();
        let want = solve_two_lines(u, theta, pt(x0, 0.0), FRAC_PI_2);
        max_err = max_err
            .max((got.x - want.x).abs())
            .max((got.y - want.y).abs());

        let got = intersect_orthogonal_pair(u, w, theta);
        let want = solve_two_lines(u, theta, w, theta + FRAC_PI_2);
        max_err = max_err
            .max((got.x - want.x).abs())
            .max((got.y - want.y).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(
        max_err <= 1e-12,
        "max intersection error {max_err:.3e} > 1e-12"
    );
    assert!(secs < 5.0, "intersection suite took {secs:.2} s >= 5 s");
    println!(
        "[PASS] criterion 1: 1e5 random intersections, max abs err {max_err:.2e} <= 1e-12, {secs:.2} s < 5 s"
    );
}

#[test]
fn criterion_02_strip_kernel_equals_full_clip() {
    let polys = generate_many(oracle::PolygonKind::RandomSimple, 1000, 40);
    let mut max_rel: f64 = 0.0;
    for p in &polys {
        let fast = steady::kernel_at(p, 0.0).unwrap();
        let full = oracle::kernel_full_clip(p, 0.0, oracle::OrientationSet::Single);
        let rel = (fast.area - full.area()).abs() / full.area().max(1.0);
        max_rel = max_rel.max(rel);
        assert!(rel <= 1e-9, "strip vs full-clip area mismatch {rel:.3e}");
    }
    let nt_area = steady::kernel_at(&nt(), 0.0).unwrap().area;
    assert!(
        (nt_area - 8.0 / 3.0).abs() <= 1e-9,
        "notched triangle area {nt_area}"
    );
    println!(
        "[PASS] criterion 2: 1000 polygons, strip kernel vs full clip rel err {max_rel:.2e} <= 1e-9; notched-triangle area 8/3"
    );
}

#[test]
fn criterion_03_interval_scan_agreement() {
    let start = Instant::now();
    let polys = generate_many(oracle::PolygonKind::RandomSimple, 200, 40);
    let dt = PI / 2000.0;
    let mut checked = 0usize;
    for p in &polys {
        let pieces = intervals::nonempty_intervals(p);
        let scan = oracle::dense_scan(
            p,
            -FRAC_PI_2,
            FRAC_PI_2,
            2000,
            oracle::OrientationSet::Single,
        );
        for s in &scan.samples {
            let predicted = pieces.iter().any(|iv| iv.lo <= s.theta && s.theta < iv.hi);
            if predicted == !s.empty {
                checked += 1;
                continue;
            }
            let near_endpoint = pieces
                .iter()
                .flat_map(|iv| [iv.lo, iv.hi])
                .chain([-FRAC_PI_2, FRAC_PI_2])
                .any(|e| (s.theta - e).abs() <= 2.0 * dt);
            assert!(
                near_endpoint,
                "unexplained disagreement at theta {} (predicted {predicted}, scan empty {})",
                s.theta, s.empty
            );
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(
        secs < 300.0,
        "interval scan agreement took {secs:.1} s >= 300 s"
    );
    println!(
        "[PASS] criterion 3: 200 polygons x 2000 samples, {checked} exact agreements, 0 unexplained disagreements, {secs:.1} s < 300 s"
    );
}

#[test]
fn criterion_04_interval_count_bound() {
    let polys = generate_many(oracle::PolygonKind::RandomSimple, 200, 40);
    let mut worst = 0.0f64;
    for p in &polys {
        let count = intervals::event_intervals(p).len();
        let bound = 8 * p.len();
        worst = worst.max(count as f64 / p.len() as f64);
        assert!(
            count <= bound,
            "{count} event intervals exceeds 8n = {bound}"
        );
    }
    println!(
        "[PASS] criterion 4: event interval count <= 8n on 200 polygons (worst {worst:.2} per vertex)"
    );
}

#[test]
fn criterion_05_double_kernel_edge_bound() {
    let polys = generate_many(oracle::PolygonKind::FamilyQ, 100, 28);
    let mut nonempty = 0usize;
    for p in &polys {
        for k in 0..50 {
            let theta = (k as f64 + 0.5) * FRAC_PI_2 / 50.0;
            let Ok(kern) = ortho::kernel_at_theta(p, theta) else {
                continue;
            };
            if let Some(q) = &kern.polygon {
                nonempty += 1;
                assert!(
                    q.len() <= 8,
                    "double kernel has {} edges at theta {theta}",
                    q.len()
                );
            }
        }
    }
    println!(
        "[PASS] criterion 5: {nonempty} nonempty double kernels over 100 polygons x 50 angles, all <= 8 edges"
    );
}

#[test]
fn criterion_06_emptiness_cases() {
    let crossing = generate_many(oracle::PolygonKind::WithLemma6Pair, 60, 32);
    let mut non_q: Vec<SimplePolygon> = vec![spiral()];
    // Shifted and scaled copies keep the boundary structure outside Q.
    for k in 1..5 {
        let f = 1.0 + k as f64 * 0.7;
        let vs = spiral()
            .vertices()
            .iter()
            .map(|v| pt(v.x * f + k as f64, v.y * f))
            .collect();
        non_q.push(SimplePolygon::new(vs).unwrap());
    }
    for p in non_q.iter() {
        let d = ortho::is_in_family_q(p).unwrap();
        assert!(!d.member, "expected a polygon outside the swept family");
    }
    let mut checked = 0usize;
    for p in crossing.iter().chain(non_q.iter()) {
        // The library reports emptiness over (0, pi/2) through its gate:
        // non-membership or a detected crossing reflex pair. The kernel
        // at exactly theta = 0 may still be nonempty.
        let cls = ortho::classify(p).unwrap();
        let gate = !ortho::q_decision(p, &cls).member || ortho::lemma6_empty(p, &cls).is_some();
        assert!(gate, "library missed an always-empty rotated kernel");
        let r = ortho::optimize(p, ortho::Objective::Area, ortho::Sense::Max).unwrap();
        assert!(
            r.records.is_empty(),
            "optimizer swept an always-empty window"
        );
        for k in 0..50 {
            let theta = (k as f64 + 0.5) * FRAC_PI_2 / 50.0;
            let kern = oracle::kernel_full_clip(p, theta, oracle::OrientationSet::Double);
            assert!(kern.is_empty(), "oracle kernel nonempty at theta {theta}");
            checked += 1;
        }
    }
    println!(
        "[PASS] criterion 6: 60 crossing-pair + 5 non-family polygons empty at all {checked} sampled angles"
    );
}

#[test]
fn criterion_07_optimizer_matches_dense_grid() {
    let polys = generate_many(oracle::PolygonKind::FamilyQ, 100, 20);
    let mut worst_area: f64 = 0.0;
    let mut worst_perim: f64 = 0.0;
    for p in &polys {
        let scan = oracle::dense_scan(p, 0.0, FRAC_PI_2, 10_000, oracle::OrientationSet::Double);
        let grid_area = scan.samples.iter().map(|s| s.area).fold(0.0, f64::max);
        let grid_perim = scan.samples.iter().map(|s| s.perimeter).fold(0.0, f64::max);

        let ra = ortho::optimize(p, ortho::Objective::Area, ortho::Sense::Max).unwrap();
        let tol_a = 1e-6 * p.signed_area().max(1.0);
        let err_a = (ra.value - grid_area).abs();
        worst_area = worst_area.max(err_a / tol_a);
        assert!(
            err_a <= tol_a,
            "area optimum off by {err_a:.3e} (tol {tol_a:.3e})"
        );

        let rp = ortho::optimize(p, ortho::Objective::Perimeter, ortho::Sense::Max).unwrap();
        let tol_p = 1e-5 * p.perimeter();
        let err_p = (rp.value - grid_perim).abs();
        worst_perim = worst_perim.max(err_p / tol_p);
        assert!(
            err_p <= tol_p,
            "perimeter optimum off by {err_p:.3e} (tol {tol_p:.3e})"
        );
    }
    // Mirror symmetry of the L shape across y = x.
    let l = lp();
    for k in 0..512 {
        let theta = (k as f64 + 0.5) * FRAC_PI_2 / 512.0;
        let a = ortho::kernel_at_theta(&l, theta).unwrap().area;
        let b = ortho::kernel_at_theta(&l, FRAC_PI_2 - theta).unwrap().area;
        assert!(
            (a - b).abs() <= 1e-9,
            "L-shape asymmetry {:.3e} at theta {theta}",
            a - b
        );
    }
    println!(
        "[PASS] criterion 7: 100 polygons, optimizer within dense-grid tolerance (worst area {:.2}x tol, perimeter {:.2}x tol); L-shape symmetric on 512-point grid",
        worst_area, worst_perim
    );
}

#[test]
fn criterion_08_optimizer_scales_linearly() {
    let sizes = [100usize, 1000, 10_000, 100_000];
    let mut times = Vec::new();
    for &n in &sizes {
        let p = oracle::generate(oracle::PolygonKind::Staircase, n, 5).unwrap();
        // Warm-up run, then the timed run.
        ortho::optimize(&p, ortho::Objective::Area, ortho::Sense::Max).unwrap();
        let start = Instant::now();
        let r = ortho::optimize(&p, ortho::Objective::Area, ortho::Sense::Max).unwrap();
        let secs = start.elapsed().as_secs_f64();
        assert!(
            !r.empty_for_all_theta,
            "staircase kernel unexpectedly empty at n = {n}"
        );
        times.push(secs);
    }
    // 2.5x per doubling over a 10x step allows 2.5^log2(10).
    let per_step = 2.5f64.powf(10.0f64.log2());
    for w in times.windows(2) {
        let ratio = w[1].max(1e-4) / w[0].max(1e-4);
        assert!(
            ratio <= per_step,
            "time ratio {ratio:.1} exceeds {per_step:.1} per 10x size step"
        );
    }
    let last = *times.last().unwrap();
    assert!(last < 2.0, "n = 1e5 sweep took {last:.2} s >= 2 s");
    println!(
        "[PASS] criterion 8: sweep times {:?} s over n = 100..100000, growth within 2.5x per doubling, n = 1e5 in {last:.3} s < 2 s",
        times.iter().map(|t| (t * 1e3).round() / 1e3).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_09_double_kernel_inside_single_kernels() {
    let polys = generate_many(oracle::PolygonKind::FamilyQ, 20, 24);
    let mut checked = 0usize;
    for p in &polys {
        for k in 0..20 {
            let theta = (k as f64 + 0.5) * FRAC_PI_2 / 20.0;
            let Ok(kern) = ortho::kernel_at_theta(p, theta) else {
                continue;
            };
            let Some(a) = &kern.polygon else { continue };
            for dir in [theta, theta - FRAC_PI_2] {
                let single = steady::kernel_at(p, dir).unwrap();
                let strip = &single.strip;
                // Intersect the double kernel with the single kernel's
                // strip; containment means the area is unchanged. The
                // keep side of each strip line is the side holding the
                // opposite line's anchor.
                let na = pt(0.0, strip.north_level).rotated(dir);
                let sa = pt(0.0, strip.south_level).rotated(dir);
                let north = line_at_angle(na, dir);
                let south = line_at_angle(sa, dir);
                let kn = if north.eval(sa) >= 0.0 {
                    Keep::Positive
                } else {
                    Keep::Negative
                };
                let ks = if south.eval(na) >= 0.0 {
                    Keep::Positive
                } else {
                    Keep::Negative
                };
                let mut pieces = clip_halfplane(a, &north, kn);
                let mut area = 0.0;
                for piece in pieces.drain(..) {
                    for kept in clip_halfplane(&piece, &south, ks) {
                        area += kept.signed_area();
                    }
                }
                assert!(
                    (area - kern.area).abs() <= 1e-9,
                    "double kernel leaks outside the single kernel at theta {theta} (area {area} vs {})",
                    kern.area
                );
                checked += 1;
            }
        }
    }
    println!(
        "[PASS] criterion 9: double kernel contained in both single kernels in {checked} checks, area drop <= 1e-9"
    );
}
