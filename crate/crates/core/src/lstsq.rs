//! Complex linear least squares with an explicit numerical rank.

use nalgebra::{DMatrix, DVector};

use crate::Complex;

pub(crate) struct LstsqSolution {
    pub x: Vec<Complex>,
    pub rank: usize,
}

/// Minimum-norm least-squares solution of `A x = b` via SVD.
///
/// Singular values below `rank_tol * sigma_max` are treated as zero.
pub(crate) fn solve(rows: &[Vec<Complex>], rhs: &[Complex], unknowns: usize, rank_tol: f64) -> LstsqSolution {
    if rows.is_empty() {
        return LstsqSolution {
            x: vec![Complex::new(0.0, 0.0); unknowns],
            rank: 0,
        };
    }
    let a = DMatrix::from_fn(rows.len(), unknowns, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(rhs);
    let svd = a.svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return LstsqSolution {
            x: vec![Complex::new(0.0, 0.0); unknowns],
            rank: 0,
        };
    }
    let cutoff = rank_tol * sigma_max;
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let x = svd
        .solve(&b, cutoff)
        .expect("svd computed with both singular vector sets");
    LstsqSolution {
        x: x.iter().cloned().collect(),
        rank,
    }
}
