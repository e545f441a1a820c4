//! Benchmarks for mobility-core live in `benches/`.
