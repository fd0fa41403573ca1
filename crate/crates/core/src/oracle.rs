//! Exhaustive Holant evaluation over every edge coloring.
//!
//! No structure of the signatures is assumed; this is the reference the
//! engine is tested against.

use crate::error::{Error, Result};
use crate::grid::SignatureGrid;
use crate::signature::rank_of_count;
use crate::Complex;

pub const DEFAULT_TERM_CAP: u64 = 10_000_000;

fn term_count(grid: &SignatureGrid, cap: u64) -> Result<u64> {
    let d = grid.domain() as u64;
    let m = grid.edges().len() as u32;
    match d.checked_pow(m) {
        Some(t) if t <= cap => Ok(t),
        _ => Err(Error::EnumerationCap {
            terms: (d as f64).powi(m as i32),
            cap,
        }),
    }
}

fn check_structure(grid: &SignatureGrid) -> Result<()> {
    let issues = grid.structural_issues();
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidGrid(
            issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "),
        ))
    }
}

/// Sums assignments `start..end` of the mixed-radix counter over edges
/// (edge 0 is the least significant digit).
fn partial_sum(grid: &SignatureGrid, start: u64, end: u64) -> Complex {
    let d = grid.domain();
    let n = grid.vertex_count();
    let edges = grid.edges();
    let mut colors = vec![0usize; edges.len()];
    let mut code = start;
    for c in colors.iter_mut() {
        *c = (code % d as u64) as usize;
        code /= d as u64;
    }
    let mut hist = vec![vec![0usize; d]; n];
    for (&(u, v), &c) in edges.iter().zip(&colors) {
        hist[u][c] += 1;
        hist[v][c] += 1;
    }
    let sigs: Vec<&[Complex]> = (0..n).map(|v| grid.vertex_signature(v).values()).collect();

    let mut total = Complex::new(0.0, 0.0);
    for _ in start..end {
        let mut term = Complex::new(1.0, 0.0);
        for v in 0..n {
            term *= sigs[v][rank_of_count(&hist[v])];
        }
        total += term;
        // Advance the counter, keeping the per-vertex histograms current.
        for (k, &(u, v)) in edges.iter().enumerate() {
            let old = colors[k];
            hist[u][old] -= 1;
            hist[v][old] -= 1;
            let new = (old + 1) % d;
            colors[k] = new;
            hist[u][new] += 1;
            hist[v][new] += 1;
            if new != 0 {
                break;
            }
        }
    }
    total
}

/// `sum over sigma: E -> [d] of prod_v f_v(sigma restricted to E(v))`.
pub fn holant_bruteforce(grid: &SignatureGrid) -> Result<Complex> {
    holant_bruteforce_capped(grid, DEFAULT_TERM_CAP)
}

pub fn holant_bruteforce_capped(grid: &SignatureGrid, cap: u64) -> Result<Complex> {
    check_structure(grid)?;
    let terms = term_count(grid, cap)?;
    Ok(partial_sum(grid, 0, terms))
}

/// Same sum split into `chunks` contiguous ranges evaluated on scoped threads.
pub fn holant_bruteforce_parallel(grid: &SignatureGrid, cap: u64, chunks: usize) -> Result<Complex> {
    check_structure(grid)?;
    let terms = term_count(grid, cap)?;
    let chunks = (chunks.max(1) as u64).min(terms.max(1));
    let bounds: Vec<(u64, u64)> = (0..chunks)
        .map(|k| (terms * k / chunks, terms * (k + 1) / chunks))
        .collect();
    let parts: Vec<Complex> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(s, e)| scope.spawn(move || partial_sum(grid, s, e)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("oracle worker panicked")).collect()
    });
    Ok(parts.into_iter().sum())
}
