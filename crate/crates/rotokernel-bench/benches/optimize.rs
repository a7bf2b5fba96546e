//! Throughput of the rotating-kernel machinery on staircase polygons of
//! growing size: the full angle optimization, a single fixed-angle
//! kernel, and the nonempty-interval computation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use rotokernel::{oracle, ortho, steady};

fn staircase(n: usize) -> rotokernel::SimplePolygon {
    oracle::generate(oracle::PolygonKind::Staircase, n, 5).unwrap()
}

fn bench_optimize(c: &mut Criterion) {
    let mut g = c.benchmark_group("optimize_area_max");
    for n in [100usize, 1_000, 10_000, 100_000] {
        let p = staircase(n);
        g.throughput(Throughput::Elements(p.len() as u64));
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| ortho::optimize(p, ortho::Objective::Area, ortho::Sense::Max).unwrap())
        });
    }
    g.finish();
}

fn bench_kernel_at(c: &mut Criterion) {
    let mut g = c.benchmark_group("double_kernel_at_theta");
    for n in [100usize, 1_000, 10_000] {
        let p = staircase(n);
        g.throughput(Throughput::Elements(p.len() as u64));
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| ortho::kernel_at_theta(p, 0.6).unwrap())
        });
    }
    g.finish();
}

fn bench_intervals(c: &mut Criterion) {
    let mut g = c.benchmark_group("single_kernel_and_intervals");
    for n in [100usize, 1_000, 10_000] {
        let p = staircase(n);
        g.bench_with_input(BenchmarkId::new("kernel_at_zero", n), &p, |b, p| {
            b.iter(|| steady::kernel_at(p, 0.0).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("nonempty_intervals", n), &p, |b, p| {
            b.iter(|| rotokernel::intervals::nonempty_intervals(p))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_optimize, bench_kernel_at, bench_intervals);
criterion_main!(benches);
