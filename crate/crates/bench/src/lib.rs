//! Criterion benchmarks for `belldecomp`; see `benches/`.
