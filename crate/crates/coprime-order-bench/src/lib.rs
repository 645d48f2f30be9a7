//! Benchmark-only crate; the measurements live in benches/series.rs.
//! Run with `cargo bench -p coprime-order-bench`.
