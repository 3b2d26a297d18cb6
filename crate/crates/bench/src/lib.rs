//! Criterion benchmarks for `quadcurve`; see `benches/`.
