//! Fixed workloads shared by the benchmarks.

use graphprod::{Graph, NatSeries, Product, RegistryId, Result, Series};

/// `C_a □ C_b`: a connected graph with a two-letter factorization.
pub fn torus(a: usize, b: usize) -> Result<Graph> {
    Product::Cartesian.apply(&Graph::cycle(a), &Graph::cycle(b))
}

/// `P_a ⊠ K_2 ⊠ P_b`.
pub fn strong_grid(a: usize, b: usize) -> Result<Graph> {
    let left = Product::Strong.apply(&Graph::path(a), &Graph::complete(2))?;
    Product::Strong.apply(&left, &Graph::path(b))
}

/// A dense natural series over two commuting and two noncommuting letters.
pub fn dense_series(bound: Option<usize>) -> NatSeries {
    Series::parse(
        "1 + 2*y0 + y1 + x0 + 3*x1 + y0x0 + x1y1 + x0x1",
        RegistryId::FREE,
        bound,
    )
    .expect("fixed series parses")
}
