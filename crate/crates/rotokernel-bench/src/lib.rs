//! Benchmark-only crate; see `benches/optimize.rs`.
