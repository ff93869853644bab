//! Criterion benchmarks for `fmzv-core`; see `benches/`.
