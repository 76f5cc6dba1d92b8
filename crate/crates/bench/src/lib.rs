//! Criterion benchmarks for `derint-core`; see `benches/`.
