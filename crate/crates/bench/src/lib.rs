//! Criterion benchmarks for `casimir-core`; see `benches/`.
//!
//! Run with `cargo bench -p casimir-bench`.
