//! Benchmarks for `horoflow`; see `benches/dynamics.rs`.
