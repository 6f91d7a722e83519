//! Criterion benchmarks for the solver live under `benches/`; run them
//! with `cargo bench -p bdmmn-bench`.
