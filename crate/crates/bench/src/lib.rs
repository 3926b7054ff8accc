//! Criterion benchmarks for the lieext engine live under `benches/`.
