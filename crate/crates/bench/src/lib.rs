//! Benchmarks for `tablealg`; see `benches/`.
