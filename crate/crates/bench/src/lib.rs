//! Criterion benchmarks for qdt-core; see `benches/`.
