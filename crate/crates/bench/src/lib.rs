//! Criterion benchmarks for motkit; see `benches/`.
