//! Criterion benchmarks for the ietwords pipeline live in `benches/`.
