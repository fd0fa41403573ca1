//! Roots of monic cubics over the complex numbers.

use crate::Complex;

/// Roots of `t^3 + c2 t^2 + c1 t + c0`, polished by Newton steps.
///
/// Roots closer than `merge_tol` (relative to the root scale) are replaced by
/// their mean, so an exact double root is reported twice with the same value.
pub fn monic_cubic_roots(c2: Complex, c1: Complex, c0: Complex, merge_tol: f64) -> [Complex; 3] {
    let third = 1.0 / 3.0;
    // Depressed form u^3 + p u + q with t = u - c2/3.
    let shift = -c2 * third;
    let p = c1 - c2 * c2 * third;
    let q = c2 * c2 * c2 * (2.0 / 27.0) - c2 * c1 * third + c0;

    let disc = (q * 0.5) * (q * 0.5) + (p * third) * (p * third) * (p * third);
    let sq = disc.sqrt();
    let cand1 = -q * 0.5 + sq;
    let cand2 = -q * 0.5 - sq;
    let big = if cand1.norm() >= cand2.norm() { cand1 } else { cand2 };

    let omega = Complex::new(-0.5, 3f64.sqrt() * 0.5);
    let mut roots = if big.norm() == 0.0 {
        [shift; 3]
    } else {
        let cb = big.powf(third);
        let mut out = [Complex::new(0.0, 0.0); 3];
        let mut w = Complex::new(1.0, 0.0);
        for slot in out.iter_mut() {
            let u = cb * w;
            *slot = u - p / (u * 3.0) + shift;
            w *= omega;
        }
        out
    };

    let poly = |t: Complex| ((t + c2) * t + c1) * t + c0;
    let deriv = |t: Complex| (t * 3.0 + c2 * 2.0) * t + c1;
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let dv = deriv(*r);
            if dv.norm() == 0.0 {
                break;
            }
            let step = poly(*r) / dv;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let next = *r - step;
            if poly(next).norm() > poly(*r).norm() {
                break;
            }
            *r = next;
        }
    }

    merge_close(&mut roots, merge_tol);
    roots
}

fn merge_close(roots: &mut [Complex; 3], tol: f64) {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let near = |a: Complex, b: Complex| (a - b).norm() <= tol * scale;
    let [a, b, c] = *roots;
    if near(a, b) && near(b, c) && near(a, c) {
        let m = (a + b + c) / 3.0;
        *roots = [m, m, m];
        return;
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if near(roots[i], roots[j]) {
            let m = (roots[i] + roots[j]) * 0.5;
            roots[i] = m;
            roots[j] = m;
            return;
        }
    }
}

/// Smallest achievable max-error over all pairings of two 3-element multisets.
pub fn multiset_distance(a: &[Complex; 3], b: &[Complex; 3]) -> f64 {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS
        .iter()
        .map(|perm| {
            (0..3)
                .map(|k| (a[k] - b[perm[k]]).norm())
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}
