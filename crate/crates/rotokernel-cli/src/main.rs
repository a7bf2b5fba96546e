//! Command-line front end: polygon I/O, kernel and interval analysis,
//! angle optimization, dense oracle scans, and deterministic SVG figures.
//!
//! Every command prints a run report to stdout:
//! `{"command", "input_sha256", "payload", "wall_time_ms"}`. The payload
//! is byte-identical across runs of the same invocation; only the wall
//! time field varies. Exit codes: 0 for a nonempty result, 3 for a
//! legitimately empty result, 2 for invalid input.

use std::fs;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use rotokernel::geom::{Point, SimplePolygon};
use rotokernel::{intervals, oracle, ortho, steady, Error};

#[derive(Parser)]
#[command(
    name = "rotokernel",
    version,
    about = "Restricted-orientation polygon kernels under rotation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetArg {
    Single,
    Double,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Area,
    Perimeter,
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Max,
    Min,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShowArg {
    Kernel,
    Intervals,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    FamilyQ,
    Staircase,
    Lemma6,
}

#[derive(Subcommand)]
enum Cmd {
    /// Kernel at one angle, for the single or the orthogonal-pair
    /// orientation set.
    Kernel {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_enum, default_value = "single")]
        set: SetArg,
    },
    /// Angular intervals on which the single-orientation kernel is
    /// nonempty.
    Intervals { file: String },
    /// Angle maximizing or minimizing the orthogonal-pair kernel
    /// objective.
    Optimize {
        file: String,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, value_enum)]
        sense: SenseArg,
    },
    /// Deterministic SVG figure of the polygon with its kernel or its
    /// nonempty-angle intervals.
    Render {
        file: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        theta: f64,
        #[arg(long)]
        out: String,
        #[arg(long, value_enum, default_value = "kernel")]
        show: ShowArg,
        #[arg(long, value_enum, default_value = "single")]
        set: SetArg,
    },
    /// Reference-oracle utilities used for fixture generation.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Dense angle scan of the full-clip kernel; CSV rows
    /// `theta,empty,area,perimeter`.
    Scan {
        file: String,
        #[arg(long)]
        samples: usize,
        #[arg(long, value_enum, default_value = "single")]
        set: SetArg,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Seeded test-polygon generator; ROTOKERNEL_SEED overrides --seed.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "generated")]
        name: String,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let (echo, hash, result) = dispatch(&cli.cmd);
    match result {
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Ok((payload, code)) => {
            let report = json!({
                "command": echo,
                "input_sha256": hash,
                "payload": payload,
                "wall_time_ms": start.elapsed().as_secs_f64() * 1e3,
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            std::process::exit(code);
        }
    }
}

type CmdResult = Result<(Value, i32), String>;

fn dispatch(cmd: &Cmd) -> (String, String, CmdResult) {
    match cmd {
        Cmd::Kernel { file, theta, set } => {
            let echo = format!("kernel --theta {theta} --set {} {file}", set_name(*set));
            let (hash, poly) = match load(file) {
                Ok(v) => v,
                Err(e) => return (echo, String::new(), Err(e)),
            };
            (echo, hash, cmd_kernel(&poly, *theta, *set))
        }
        Cmd::Intervals { file } => {
            let echo = format!("intervals {file}");
            let (hash, poly) = match load(file) {
                Ok(v) => v,
                Err(e) => return (echo, String::new(), Err(e)),
            };
            (echo, hash, cmd_intervals(&poly))
        }
        Cmd::Optimize {
            file,
            objective,
            sense,
        } => {
            let echo = format!(
                "optimize --objective {} --sense {} {file}",
                objective_name(*objective),
                sense_name(*sense)
            );
            let (hash, poly) = match load(file) {
                Ok(v) => v,
                Err(e) => return (echo, String::new(), Err(e)),
            };
            (echo, hash, cmd_optimize(&poly, *objective, *sense))
        }
        Cmd::Render {
            file,
            theta,
            out,
            show,
            set,
        } => {
            let echo = format!(
                "render --theta {theta} --set {} --show {} --out {out} {file}",
                set_name(*set),
                show_name(*show)
            );
            let (hash, poly) = match load(file) {
                Ok(v) => v,
                Err(e) => return (echo, String::new(), Err(e)),
            };
            (echo, hash, cmd_render(&poly, *theta, out, *show, *set))
        }
        Cmd::Oracle {
            cmd:
                OracleCmd::Scan {
                    file,
                    samples,
                    set,
                    lo,
                    hi,
                    out,
                },
        } => {
            let echo = format!(
                "oracle scan --samples {samples} --set {} {file}",
                set_name(*set)
            );
            let (hash, poly) = match load(file) {
                Ok(v) => v,
                Err(e) => return (echo, String::new(), Err(e)),
            };
            (
                echo,
                hash,
                cmd_scan(&poly, *samples, *set, *lo, *hi, out.as_deref()),
            )
        }
        Cmd::Oracle {
            cmd:
                OracleCmd::Gen {
                    kind,
                    n,
                    seed,
                    name,
                    out,
                },
        } => {
            let seed = std::env::var("ROTOKERNEL_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(*seed);
            let echo = format!(
                "oracle gen --kind {} --n {n} --seed {seed}",
                kind_name(*kind)
            );
            let hash = hex(Sha256::digest(echo.as_bytes()).as_slice());
            (echo, hash, cmd_gen(*kind, *n, seed, name, out.as_deref()))
        }
    }
}

fn set_name(s: SetArg) -> &'static str {
    match s {
        SetArg::Single => "single",
        SetArg::Double => "double",
    }
}

fn objective_name(o: ObjectiveArg) -> &'static str {
    match o {
        ObjectiveArg::Area => "area",
        ObjectiveArg::Perimeter => "perimeter",
    }
}

fn sense_name(s: SenseArg) -> &'static str {
    match s {
        SenseArg::Max => "max",
        SenseArg::Min => "min",
    }
}

fn show_name(s: ShowArg) -> &'static str {
    match s {
        ShowArg::Kernel => "kernel",
        ShowArg::Intervals => "intervals",
    }
}

fn kind_name(k: KindArg) -> &'static str {
    match k {
        KindArg::Random => "random",
        KindArg::FamilyQ => "family-q",
        KindArg::Staircase => "staircase",
        KindArg::Lemma6 => "lemma6",
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Round to 12 significant digits for canonical angle output.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap()
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn angle(x: f64) -> Value {
    num(sig12(x))
}

fn points_json(pts: &[Point]) -> Value {
    Value::Array(pts.iter().map(|p| json!([p.x, p.y])).collect())
}

/// Read a polygon document: `{"name": str, "vertices": [[x,y],...]}`.
/// Clockwise input is reversed with a warning on stderr.
fn load(path: &str) -> Result<(String, SimplePolygon), String> {
    let bytes = fs::read(path).map_err(|e| format!("{path}: {e}"))?;
    let hash = hex(Sha256::digest(&bytes).as_slice());
    let doc: Value =
        serde_json::from_slice(&bytes).map_err(|e| format!("{path}: invalid JSON: {e}"))?;
    let verts = doc
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| format!("{path}: missing \"vertices\" array"))?;
    let mut pts = Vec::with_capacity(verts.len());
    for (i, v) in verts.iter().enumerate() {
        let pair = v.as_array().filter(|a| a.len() == 2);
        let pair = pair.ok_or_else(|| format!("{path}: vertex {i} is not an [x, y] pair"))?;
        let x = pair[0]
            .as_f64()
            .ok_or_else(|| format!("{path}: vertex {i}: bad x"))?;
        let y = pair[1]
            .as_f64()
            .ok_or_else(|| format!("{path}: vertex {i}: bad y"))?;
        pts.push(Point::new(x, y));
    }
    let (poly, reversed) = SimplePolygon::new_auto(pts).map_err(|e| format!("{path}: {e}"))?;
    if reversed {
        eprintln!("warning: {path}: clockwise vertex order, reversed to counterclockwise");
    }
    Ok((hash, poly))
}

fn strip_source_json(src: &steady::StripSource) -> Value {
    json!({
        "vertices": src.vertex_indices(),
        "fallback": matches!(src, steady::StripSource::HullFallback { .. }),
    })
}

fn cmd_kernel(p: &SimplePolygon, theta: f64, set: SetArg) -> CmdResult {
    match set {
        SetArg::Single => {
            let k = steady::kernel_at(p, theta).map_err(|e| e.to_string())?;
            let empty = k.polygon.is_none();
            let payload = json!({
                "set": "single",
                "theta": angle(theta),
                "empty": empty,
                "degenerate": k.degenerate,
                "area": num(k.area),
                "perimeter": num(k.perimeter),
                "vertices": k.polygon.as_ref().map(|q| points_json(q.vertices())).unwrap_or(json!([])),
                "supports": {
                    "north": strip_source_json(&k.strip.north_source),
                    "south": strip_source_json(&k.strip.south_source),
                },
            });
            Ok((payload, if empty { 3 } else { 0 }))
        }
        SetArg::Double => {
            if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
                return Err("double-set theta must lie in [0, pi/2)".into());
            }
            match ortho::kernel_at_theta(p, theta) {
                Ok(k) => {
                    let empty = k.polygon.is_none();
                    let payload = json!({
                        "set": "double",
                        "theta": angle(theta),
                        "empty": empty,
                        "area": num(k.area),
                        "perimeter": num(k.perimeter),
                        "vertices": k.polygon.as_ref().map(|q| points_json(q.vertices())).unwrap_or(json!([])),
                        "supports": double_supports(p, theta),
                    });
                    Ok((payload, if empty { 3 } else { 0 }))
                }
                Err(Error::TiedExtremities(c)) => {
                    // Tied innermost extremities force an empty kernel.
                    let payload = json!({
                        "set": "double",
                        "theta": angle(theta),
                        "empty": true,
                        "tied_extremities": c.to_string(),
                        "area": 0.0,
                        "perimeter": 0.0,
                        "vertices": [],
                    });
                    Ok((payload, 3))
                }
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

/// Innermost extremity edge per compass slot, or `None` on ties.
fn innermost_extremities(
    p: &SimplePolygon,
    cls: &ortho::OrthoClassification,
) -> [Option<usize>; 4] {
    let vs = p.vertices();
    let mut out = [None; 4];
    for (slot, o) in out.iter_mut().enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for &e in &cls.extremities[slot] {
            let level = if slot < 2 { vs[e].y } else { vs[e].x };
            let better = match best {
                None => true,
                Some((_, b)) => match slot {
                    0 | 2 => level < b,
                    _ => level > b,
                },
            };
            if better {
                best = Some((e, level));
            }
        }
        *o = best.map(|(e, _)| e);
    }
    out
}

/// Supporting constraints of the orthogonal-pair kernel at `theta`.
fn double_supports(p: &SimplePolygon, theta: f64) -> Value {
    let Ok(cls) = ortho::classify(p) else {
        return Value::Null;
    };
    let arcs = ortho::reflex_hulls(p, &cls);
    let (s, c) = theta.sin_cos();
    let m = Point::new(-s, c);
    let n = Point::new(c, s);
    let pick = |arc: &ortho::HullArc, score: &dyn Fn(Point) -> f64| -> Value {
        let mut best: Option<usize> = None;
        for (k, q) in arc.points.iter().enumerate() {
            if best.is_none() || score(*q) > score(arc.points[best.unwrap()]) {
                best = Some(k);
            }
        }
        match best {
            None => Value::Null,
            Some(k) => json!({
                "vertex": arc.vertex_indices[k],
                "point": [arc.points[k].x, arc.points[k].y],
            }),
        }
    };
    let ext = innermost_extremities(p, &cls);
    json!({
        "nw": pick(&arcs.nw, &|v| -v.dot(m)),
        "se": pick(&arcs.se, &|v| v.dot(m)),
        "ne": pick(&arcs.ne, &|v| -v.dot(n)),
        "sw": pick(&arcs.sw, &|v| v.dot(n)),
        "extremity_edges": {
            "n": ext[0], "s": ext[1], "e": ext[2], "w": ext[3],
        },
    })
}

fn cmd_intervals(p: &SimplePolygon) -> CmdResult {
    let pieces = intervals::nonempty_intervals(p);
    let mut rows = Vec::new();
    for piece in &pieces {
        let mid = 0.5 * (piece.lo + piece.hi);
        let strip = steady::strip(&p.rotated(-mid));
        rows.push(json!({
            "theta": [angle(piece.lo), angle(piece.hi)],
            "degenerate": [piece.degenerate_lo, piece.degenerate_hi],
            "supports": {
                "north": strip_source_json(&strip.north_source),
                "south": strip_source_json(&strip.south_source),
            },
        }));
    }
    let empty = rows.is_empty();
    let payload = json!({ "count": rows.len(), "intervals": rows });
    Ok((payload, if empty { 3 } else { 0 }))
}

fn cmd_optimize(p: &SimplePolygon, objective: ObjectiveArg, sense: SenseArg) -> CmdResult {
    let obj = match objective {
        ObjectiveArg::Area => ortho::Objective::Area,
        ObjectiveArg::Perimeter => ortho::Objective::Perimeter,
    };
    let sns = match sense {
        SenseArg::Max => ortho::Sense::Max,
        SenseArg::Min => ortho::Sense::Min,
    };
    let r = ortho::optimize(p, obj, sns).map_err(|e| e.to_string())?;
    let records: Vec<Value> = r
        .records
        .iter()
        .map(|rec| {
            json!({
                "theta": [angle(rec.theta_lo), angle(rec.theta_hi)],
                "best_theta": angle(rec.best_theta),
                "best_value": num(rec.best_value),
            })
        })
        .collect();
    let payload = json!({
        "objective": objective_name(objective),
        "sense": sense_name(sense),
        "theta_star": angle(r.theta_star),
        "value": num(r.value),
        "value_at_zero": num(r.value_at_zero),
        "empty_for_all_theta": r.empty_for_all_theta,
        "min_over_empty": r.min_over_empty.map(sig12),
        "intervals": records,
    });
    Ok((payload, if r.empty_for_all_theta { 3 } else { 0 }))
}

fn cmd_scan(
    p: &SimplePolygon,
    samples: usize,
    set: SetArg,
    lo: Option<f64>,
    hi: Option<f64>,
    out: Option<&str>,
) -> CmdResult {
    if samples < 2 {
        return Err("scan needs at least two samples".into());
    }
    let oset = match set {
        SetArg::Single => oracle::OrientationSet::Single,
        SetArg::Double => oracle::OrientationSet::Double,
    };
    let (dlo, dhi) = match set {
        SetArg::Single => (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
        SetArg::Double => (0.0, std::f64::consts::FRAC_PI_2),
    };
    let (lo, hi) = (lo.unwrap_or(dlo), hi.unwrap_or(dhi));
    if hi <= lo {
        return Err("scan range is empty".into());
    }
    let scan = oracle::dense_scan(p, lo, hi, samples, oset);
    let mut csv = String::from("theta,empty,area,perimeter\n");
    for row in &scan.samples {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            sig12(row.theta),
            row.empty,
            sig12(row.area),
            sig12(row.perimeter)
        ));
    }
    if let Some(path) = out {
        fs::write(path, &csv).map_err(|e| format!("{path}: {e}"))?;
    }
    let payload = json!({
        "set": set_name(set),
        "rows": scan.samples.len(),
        "csv": csv,
    });
    Ok((payload, 0))
}

fn cmd_gen(kind: KindArg, n: usize, seed: u64, name: &str, out: Option<&str>) -> CmdResult {
    let k = match kind {
        KindArg::Random => oracle::PolygonKind::RandomSimple,
        KindArg::FamilyQ => oracle::PolygonKind::FamilyQ,
        KindArg::Staircase => oracle::PolygonKind::Staircase,
        KindArg::Lemma6 => oracle::PolygonKind::WithLemma6Pair,
    };
    let p = oracle::generate(k, n, seed).map_err(|e| e.to_string())?;
    let doc = json!({ "name": name, "vertices": points_json(p.vertices()) });
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&doc).unwrap())
            .map_err(|e| format!("{path}: {e}"))?;
    }
    let payload = json!({
        "kind": kind_name(kind),
        "n": p.len(),
        "seed": seed,
        "document": doc,
    });
    Ok((payload, 0))
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

struct Scene {
    min: Point,
    max: Point,
    body: String,
}

impl Scene {
    fn new(p: &SimplePolygon, extra_bottom: f64) -> Scene {
        let (lo, hi) = p.bounding_box();
        let w = (hi.x - lo.x).max(1e-9);
        let h = (hi.y - lo.y).max(1e-9);
        let min = Point::new(lo.x - 0.05 * w, lo.y - 0.05 * h - extra_bottom * h);
        let max = Point::new(hi.x + 0.05 * w, hi.y + 0.05 * h);
        Scene {
            min,
            max,
            body: String::new(),
        }
    }

    fn path(pts: &[Point], close: bool) -> String {
        let mut d = String::new();
        for (i, q) in pts.iter().enumerate() {
            let c = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{c}{:.6},{:.6} ", q.x, q.y));
        }
        if close {
            d.push('Z');
        }
        d.trim_end().to_string()
    }

    fn stroke_width(&self) -> f64 {
        0.004 * (self.max.x - self.min.x).max(self.max.y - self.min.y)
    }

    fn polygon(&mut self, p: &SimplePolygon) {
        let d = Scene::path(p.vertices(), true);
        self.body.push_str(&format!(
            "  <path d=\"{d}\" fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"{:.6}\"/>\n",
            self.stroke_width()
        ));
    }

    fn kernel(&mut self, p: &SimplePolygon) {
        let d = Scene::path(p.vertices(), true);
        self.body.push_str(&format!(
            "  <path d=\"{d}\" fill=\"#4a90d9\" fill-opacity=\"0.55\" stroke=\"none\"/>\n"
        ));
    }

    fn dashed_line(&mut self, anchor: Point, dir: f64) {
        let len = (self.max.x - self.min.x) + (self.max.y - self.min.y);
        let (s, c) = dir.sin_cos();
        let a = Point::new(anchor.x - len * c, anchor.y - len * s);
        let b = Point::new(anchor.x + len * c, anchor.y + len * s);
        let w = self.stroke_width();
        self.body.push_str(&format!(
            "  <line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"#c0392b\" stroke-width=\"{:.6}\" stroke-dasharray=\"{:.6} {:.6}\"/>\n",
            a.x, a.y, b.x, b.y, w, 3.0 * w, 3.0 * w
        ));
    }

    /// Bar under the drawing marking nonempty angle intervals over
    /// `[-pi/2, pi/2]`.
    fn interval_bar(&mut self, pieces: &[intervals::AngularInterval], top: f64, height: f64) {
        use std::f64::consts::PI;
        let x0 = self.min.x;
        let width = self.max.x - self.min.x;
        let w = self.stroke_width();
        self.body.push_str(&format!(
            "  <rect x=\"{:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{:.6}\" fill=\"#f2f2f2\" stroke=\"#1a1a1a\" stroke-width=\"{:.6}\"/>\n",
            x0, top - height, width, height, w
        ));
        for piece in pieces {
            let a = x0 + (piece.lo / PI + 0.5) * width;
            let b = x0 + (piece.hi / PI + 0.5) * width;
            self.body.push_str(&format!(
                "  <rect x=\"{:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{:.6}\" fill=\"#4a90d9\"/>\n",
                a, top - height, (b - a).max(w), height
            ));
        }
    }

    fn finish(&self) -> String {
        let (w, h) = (self.max.x - self.min.x, self.max.y - self.min.y);
        // The transform flips y so the figure uses mathematical axes.
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n<g transform=\"matrix(1 0 0 -1 0 {:.6})\">\n{}</g>\n</svg>\n",
            self.min.x,
            self.min.y,
            w,
            h,
            self.min.y + self.max.y,
            self.body
        )
    }
}

fn cmd_render(p: &SimplePolygon, theta: f64, out: &str, show: ShowArg, set: SetArg) -> CmdResult {
    let mut empty = false;
    let mut area = 0.0;
    let svg = match show {
        ShowArg::Intervals => {
            let pieces = intervals::nonempty_intervals(p);
            empty = pieces.is_empty();
            let mut scene = Scene::new(p, 0.18);
            let (lo, _) = p.bounding_box();
            scene.polygon(p);
            let h = 0.1 * (scene.max.y - scene.min.y);
            scene.interval_bar(&pieces, lo.y - 0.05 * h, h);
            scene.finish()
        }
        ShowArg::Kernel => {
            let mut scene = Scene::new(p, 0.0);
            scene.polygon(p);
            match set {
                SetArg::Single => {
                    let k = steady::kernel_at(p, theta).map_err(|e| e.to_string())?;
                    // Strip lines are computed in the rotated frame; map
                    // their anchors back before drawing.
                    for level in [k.strip.north_level, k.strip.south_level] {
                        if level.is_finite() {
                            let anchor = Point::new(0.0, level).rotated(theta);
                            scene.dashed_line(anchor, theta);
                        }
                    }
                    if let Some(q) = &k.polygon {
                        scene.kernel(q);
                        area = k.area;
                    } else {
                        empty = true;
                    }
                }
                SetArg::Double => match ortho::kernel_at_theta(p, theta) {
                    Err(Error::TiedExtremities(_)) => empty = true,
                    Err(e) => return Err(e.to_string()),
                    Ok(k) => {
                        render_double_lines(&mut scene, p, theta);
                        if let Some(q) = &k.polygon {
                            scene.kernel(q);
                            area = k.area;
                        } else {
                            empty = true;
                        }
                    }
                },
            }
            scene.finish()
        }
    };
    fs::write(out, &svg).map_err(|e| format!("{out}: {e}"))?;
    let payload = json!({
        "out": out,
        "theta": angle(theta),
        "set": set_name(set),
        "show": show_name(show),
        "empty": empty,
        "area": num(area),
        "svg_sha256": hex(Sha256::digest(svg.as_bytes()).as_slice()),
    });
    Ok((payload, if empty { 3 } else { 0 }))
}

/// Dashed clipping lines of the orthogonal-pair kernel.
fn render_double_lines(scene: &mut Scene, p: &SimplePolygon, theta: f64) {
    use std::f64::consts::FRAC_PI_2;
    let Ok(cls) = ortho::classify(p) else { return };
    if theta <= 1e-12 {
        // Dent rule: one axis line per innermost dent kind.
        let vs = p.vertices();
        for slot in 0..4 {
            let mut level: Option<f64> = None;
            for &e in &cls.dents[slot] {
                let l = if slot < 2 { vs[e].y } else { vs[e].x };
                let better = match (slot, level) {
                    (_, None) => true,
                    (0 | 2, Some(b)) => l < b,
                    (_, Some(b)) => l > b,
                };
                if better {
                    level = Some(l);
                }
            }
            if let Some(l) = level {
                if slot < 2 {
                    scene.dashed_line(Point::new(0.0, l), 0.0);
                } else {
                    scene.dashed_line(Point::new(l, 0.0), FRAC_PI_2);
                }
            }
        }
        return;
    }
    let supports = double_supports(p, theta);
    for (key, dir) in [
        ("nw", theta),
        ("se", theta),
        ("ne", theta + FRAC_PI_2),
        ("sw", theta + FRAC_PI_2),
    ] {
        if let Some(pt) = supports
            .get(key)
            .and_then(|v| v.get("point"))
            .and_then(Value::as_array)
        {
            let anchor = Point::new(pt[0].as_f64().unwrap(), pt[1].as_f64().unwrap());
            scene.dashed_line(anchor, dir);
        }
    }
}
