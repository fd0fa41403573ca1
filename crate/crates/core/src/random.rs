//! Seeded generators for random Fibonacci grids.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::basis::OrthoBasis;
use crate::engine::FibParams;
use crate::error::Result;
use crate::grid::SignatureGrid;
use crate::{fib3, fib4, Complex, Tolerance};

/// Size limits for [`random_fib_grid`].
#[derive(Debug, Clone, Copy)]
pub struct GridShape {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_arity: usize,
}

impl Default for GridShape {
    fn default() -> Self {
        Self {
            min_vertices: 2,
            max_vertices: 6,
            max_edges: 8,
            max_arity: 4,
        }
    }
}

/// Parameters shared by every gate generated from `basis`.
pub fn params_for_basis(basis: &OrthoBasis, tol: Tolerance) -> Result<FibParams> {
    match basis.domain() {
        3 => fib3::params_from_basis(basis, tol).map(FibParams::D3),
        _ => fib4::params_from_basis(basis, tol).map(FibParams::D4),
    }
}

fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex> {
    (0..n)
        .map(|_| Complex::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect()
}

/// Grid over `edges` where each vertex carries a gate spanned by `basis`
/// with its own random weights and arity equal to its degree.
pub fn fib_grid_on_edges<R: Rng + ?Sized>(
    rng: &mut R,
    basis: &OrthoBasis,
    vertices: usize,
    edges: Vec<(usize, usize)>,
) -> Result<SignatureGrid> {
    let mut degree = vec![0; vertices];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let sigs = degree
        .iter()
        .map(|&deg| {
            let weights = random_weights(rng, basis.domain());
            basis.with_weights(weights).map(|b| b.generate(deg))
        })
        .collect::<Result<Vec<_>>>()?;
    SignatureGrid::from_vertex_signatures(basis.domain(), sigs, edges)
}

/// Random multigraph (self-loops and parallel edges allowed) with every
/// vertex degree in `1..=max_arity`, decorated with gates from `basis`.
pub fn random_fib_grid<R: Rng + ?Sized>(rng: &mut R, basis: &OrthoBasis, shape: GridShape) -> Result<SignatureGrid> {
    loop {
        let n = rng.gen_range(shape.min_vertices..=shape.max_vertices);
        let min_edges = n.div_ceil(2);
        if min_edges > shape.max_edges {
            continue;
        }
        let m = rng.gen_range(min_edges..=shape.max_edges);
        let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let mut degree = vec![0; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        if degree.iter().all(|&d| (1..=shape.max_arity).contains(&d)) {
            return fib_grid_on_edges(rng, basis, n, edges);
        }
    }
}

/// Random `k`-regular multigraph on `n` vertices by uniform stub pairing.
pub fn random_regular_edges<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<(usize, usize)> {
    assert!((n * k).is_multiple_of(2), "n * k must be even");
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    stubs.shuffle(rng);
    stubs.chunks(2).map(|p| (p[0], p[1])).collect()
}

/// Uniformly shuffled copy of `items`.
pub fn shuffled<T: Clone, R: Rng + ?Sized>(rng: &mut R, items: &[T]) -> Vec<T> {
    let mut out = items.to_vec();
    out.shuffle(rng);
    out
}
