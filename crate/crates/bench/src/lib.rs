//! Criterion benchmarks for the realization pipeline; see `benches/`.
