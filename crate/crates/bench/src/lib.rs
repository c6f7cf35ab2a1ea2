//! Criterion benchmarks for `jordan-grid`; see `benches/grid_bench.rs`.
