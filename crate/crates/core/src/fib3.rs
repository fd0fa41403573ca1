//! Generalized Fibonacci gates on a domain of size 3.
//!
//! A gate with parameters `(s, x, y, t)` satisfies, for every apex `(i, j, k)`
//! with `i >= 2`:
//!
//! ```text
//! g[i-2, j+2, k  ] = g[i, j, k] + s g[i-1, j+1, k] + x g[i-1, j, k+1]
//! g[i-2, j+1, k+1] =              x g[i-1, j+1, k] + y g[i-1, j, k+1]
//! g[i-2, j,   k+2] = g[i, j, k] + y g[i-1, j+1, k] + t g[i-1, j, k+1]
//! ```
//!
//! with the constraint `s y + x t + 1 = x^2 + y^2`.

use serde::{Deserialize, Serialize};

use crate::basis::OrthoBasis;
use crate::cubic::monic_cubic_roots;
use crate::error::{Error, Result};
use crate::recurrence::{Equation, Scheme, Violation};
use crate::signature::SymmetricSignature;
use crate::{Complex, Tolerance};

const PARAMS: usize = 4;

pub(crate) static SCHEME: Scheme = Scheme {
    domain: 3,
    unknowns: PARAMS,
    equations: &[
        Equation { pair: (1, 1), params: &[0, 1] },
        Equation { pair: (1, 2), params: &[1, 2] },
        Equation { pair: (2, 2), params: &[2, 3] },
    ],
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FibParamsD3 {
    pub s: Complex,
    pub x: Complex,
    pub y: Complex,
    pub t: Complex,
}

impl FibParamsD3 {
    pub fn new(s: Complex, x: Complex, y: Complex, t: Complex) -> Self {
        Self { s, x, y, t }
    }

    pub fn from_reals(s: f64, x: f64, y: f64, t: f64) -> Self {
        let c = |v| Complex::new(v, 0.0);
        Self::new(c(s), c(x), c(y), c(t))
    }

    pub fn as_array(&self) -> [Complex; PARAMS] {
        [self.s, self.x, self.y, self.t]
    }

    fn from_slice(v: &[Complex]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn is_close(&self, other: &Self, tol: Tolerance) -> bool {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .all(|(a, b)| tol.within(*a, b, a.norm().max(b.norm()).max(1.0)))
    }
}

/// `s y + x t + 1 == x^2 + y^2` within tolerance.
pub fn check_params(p: &FibParamsD3, tol: Tolerance) -> bool {
    let one = Complex::new(1.0, 0.0);
    let terms = [p.s * p.y, p.x * p.t, one, p.x * p.x, p.y * p.y];
    let scale = terms.iter().map(|v| v.norm()).fold(0.0, f64::max);
    tol.within(terms[0] + terms[1] + terms[2], terms[3] + terms[4], scale)
}

fn expect_d3(basis: &OrthoBasis) -> Result<()> {
    if basis.domain() != 3 {
        return Err(Error::DomainMismatch {
            expected: 3,
            got: basis.domain(),
        });
    }
    Ok(())
}

/// Closed-form parameters of the gate spanned by an orthogonal triple.
pub fn params_from_basis(basis: &OrthoBasis, tol: Tolerance) -> Result<FibParamsD3> {
    expect_d3(basis)?;
    basis.check(tol)?;
    let t = basis.tails();
    let (a, b) = (t[0][0], t[0][1]);
    let (c, d) = (t[1][0], t[1][1]);
    let (e, f) = (t[2][0], t[2][1]);
    let ace = a * c * e;
    let bdf = b * d * f;
    Ok(FibParamsD3 {
        x: -bdf,
        y: -ace,
        s: ace + a + c + e,
        t: bdf + b + d + f,
    })
}

/// Arity-`n` signature generated by an orthogonal triple.
pub fn generate(basis: &OrthoBasis, n: usize) -> Result<SymmetricSignature> {
    expect_d3(basis)?;
    if n == 0 {
        return Err(Error::ArityTooSmall { min: 1, got: 0 });
    }
    Ok(basis.generate(n))
}

/// First failing recurrence instance, if any.
pub fn find_violation(g: &SymmetricSignature, p: &FibParamsD3, tol: Tolerance) -> Result<Option<Violation>> {
    SCHEME.first_violation(g, &p.as_array(), tol)
}

/// Whether `g` is a generalized Fibonacci gate with parameters `p`.
///
/// Signatures of arity at most 1 satisfy every recurrence vacuously; the
/// parameters themselves must still pass [`check_params`].
pub fn verify_gate(g: &SymmetricSignature, p: &FibParamsD3, tol: Tolerance) -> Result<bool> {
    let violation = find_violation(g, p, tol)?;
    Ok(check_params(p, tol) && violation.is_none())
}

/// Parameters shared by all of `gs`, by least squares over every recurrence instance.
pub fn fit_params(gs: &[SymmetricSignature], tol: Tolerance) -> Result<FibParamsD3> {
    let p = FibParamsD3::from_slice(&SCHEME.fit(gs, tol)?);
    if !check_params(&p, tol) {
        return Err(Error::NotFibonacci(
            "fitted parameters violate s y + x t + 1 = x^2 + y^2".into(),
        ));
    }
    Ok(p)
}

/// The unique gate of arity `n` with the given `g[n,0,0], g[n-1,1,0], g[n-1,0,1]`.
pub fn complete_from_top(top: [Complex; 3], p: &FibParamsD3, n: usize, tol: Tolerance) -> Result<SymmetricSignature> {
    if !check_params(p, tol) {
        return Err(Error::InvalidParams);
    }
    SCHEME.complete_from_top(&top, &p.as_array(), n)
}

/// Why the second basis coordinates could not be recovered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Degeneracy {
    /// Products `(bd, bf, df)` implied by the roots; at least one vanishes.
    pub products: [Complex; 3],
    pub message: String,
}

/// Outcome of basis recovery: the roots `{a, c, e}` always, the full
/// vectors `(1, a, b), (1, c, d), (1, e, f)` when they are determined.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredBasis {
    pub roots: [Complex; 3],
    pub vectors: Option<[[Complex; 3]; 3]>,
    pub degeneracy: Option<Degeneracy>,
}

/// Recovers the basis matrix from the parameters via the cubic whose roots are `a, c, e`.
pub fn recover_basis(p: &FibParamsD3, tol: Tolerance) -> Result<RecoveredBasis> {
    if !check_params(p, tol) {
        return Err(Error::InvalidParams);
    }
    let one = Complex::new(1.0, 0.0);
    // Roots of t^3 - Y t^2 + Z t - X with X = ace, Y = a + c + e, Z = ac + ae + ce.
    let big_x = -p.y;
    let big_y = p.s + p.y;
    let big_z = -p.x * p.x - p.y * p.y + (p.s + p.y) * p.y - one;
    let roots = monic_cubic_roots(-big_y, big_z, -big_x, 1e-6);
    let [a, c, e] = roots;

    let bd = -one - a * c;
    let bf = -one - a * e;
    let df = -one - c * e;
    let products = [bd, bf, df];
    let scale = |r: Complex, q: Complex| (r * q).norm().max(1.0);
    let degenerate = [(a, c), (a, e), (c, e)]
        .iter()
        .zip(&products)
        .any(|(&(r, q), prod)| prod.norm() <= 1e-7 * scale(r, q));
    if degenerate {
        return Ok(RecoveredBasis {
            roots,
            vectors: None,
            degeneracy: Some(Degeneracy {
                products,
                message: "a product among bd, bf, df vanishes; b, d, f are not determined".into(),
            }),
        });
    }
    // b^2 = (bd)(bf)/(df); the sign of b fixes the signs of d and f through
    // the products, and bdf = -x selects it.
    let b0 = (bd * bf / df).sqrt();
    let candidate = |b: Complex| (b, bd / b, bf / b);
    let (b1, d1, f1) = candidate(b0);
    let (b2, d2, f2) = candidate(-b0);
    let err1 = (b1 * d1 * f1 + p.x).norm();
    let err2 = (b2 * d2 * f2 + p.x).norm();
    let (b, d, f) = if err1 <= err2 { (b1, d1, f1) } else { (b2, d2, f2) };
    Ok(RecoveredBasis {
        roots,
        vectors: Some([[one, a, b], [one, c, d], [one, e, f]]),
        degeneracy: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::multiset_distance;

    fn r(v: f64) -> Complex {
        Complex::new(v, 0.0)
    }

    fn basis(vectors: [[f64; 2]; 3]) -> OrthoBasis {
        OrthoBasis::new(
            vec![r(1.0); 3],
            vectors.iter().map(|v| vec![r(v[0]), r(v[1])]).collect(),
            Tolerance::default(),
        )
        .unwrap()
    }

    fn b3() -> OrthoBasis {
        basis([[1.0, -2.0], [-1.0, 0.0], [1.0, 1.0]])
    }

    fn b3_prime() -> OrthoBasis {
        basis([[-2.0, 1.0], [0.0, -1.0], [1.0, 1.0]])
    }

    fn reals(sig: &SymmetricSignature) -> Vec<f64> {
        sig.values().iter().map(|v| v.re).collect()
    }

    fn all_distinct() -> SymmetricSignature {
        SymmetricSignature::from_fn(3, 3, |m| r(if m == [1, 1, 1] { 1.0 } else { 0.0 }))
    }

    const TOL: Tolerance = Tolerance::new(1e-9, 1e-12);

    #[test]
    fn check_params_examples() {
        assert!(check_params(&FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0), TOL));
        assert!(check_params(&FibParamsD3::from_reals(-1.0, 1.0, 0.0, 0.0), TOL));
        assert!(!check_params(&FibParamsD3::from_reals(0.0, 1.0, 1.0, 0.0), TOL));
    }

    #[test]
    fn closed_form_params() {
        let p = params_from_basis(&b3(), TOL).unwrap();
        assert_eq!(p, FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0));
        let p = params_from_basis(&b3_prime(), TOL).unwrap();
        assert_eq!(p, FibParamsD3::from_reals(-1.0, 1.0, 0.0, 0.0));
        let bad = OrthoBasis::new_unchecked(
            vec![r(1.0); 3],
            vec![vec![r(1.0), r(0.0)], vec![r(1.0), r(1.0)], vec![r(0.0), r(1.0)]],
        )
        .unwrap();
        assert!(matches!(params_from_basis(&bad, TOL), Err(Error::NotOrthogonal(..))));
    }

    #[test]
    fn generate_fixtures() {
        assert_eq!(reals(&generate(&b3(), 3).unwrap()), [3., 1., -1., 3., -1., 5., 1., -1., 5., -7.]);
        assert_eq!(reals(&generate(&b3(), 1).unwrap()), [3., 1., -1.]);
        assert_eq!(reals(&generate(&b3(), 2).unwrap()), [3., 1., -1., 3., -1., 5.]);
    }

    #[test]
    fn verify_examples() {
        let p = FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0);
        assert!(verify_gate(&generate(&b3(), 3).unwrap(), &p, TOL).unwrap());
        let unary = SymmetricSignature::from_reals(3, 1, &[5.0, -2.0, 0.25]).unwrap();
        assert!(verify_gate(&unary, &p, TOL).unwrap());
        assert!(!verify_gate(&all_distinct(), &p, TOL).unwrap());
        let d4 = SymmetricSignature::from_reals(4, 1, &[1.0; 4]).unwrap();
        assert!(matches!(verify_gate(&d4, &p, TOL), Err(Error::DomainMismatch { .. })));
        // A valid gate paired with invalid parameters is rejected.
        let bad = FibParamsD3::from_reals(0.0, 1.0, 1.0, 0.0);
        assert!(!verify_gate(&unary, &bad, TOL).unwrap());
    }

    #[test]
    fn fit_examples() {
        let p = fit_params(&[generate(&b3(), 3).unwrap()], TOL).unwrap();
        assert!(p.is_close(&FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0), TOL));
        let p = fit_params(&[generate(&b3_prime(), 3).unwrap()], TOL).unwrap();
        assert!(p.is_close(&FibParamsD3::from_reals(-1.0, 1.0, 0.0, 0.0), TOL));
        assert!(matches!(fit_params(&[all_distinct()], TOL), Err(Error::NotFibonacci(_))));
        assert!(matches!(
            fit_params(&[generate(&b3(), 2).unwrap()], TOL),
            Err(Error::Underdetermined { unknowns: 4, .. })
        ));
        assert!(matches!(fit_params(&[], TOL), Err(Error::Underdetermined { rank: 0, .. })));
    }

    #[test]
    fn complete_examples() {
        let p = FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0);
        let g = complete_from_top([r(3.0), r(1.0), r(-1.0)], &p, 3, TOL).unwrap();
        assert_eq!(reals(&g), [3., 1., -1., 3., -1., 5., 1., -1., 5., -7.]);
        let g = complete_from_top([r(1.0), r(0.0), r(0.0)], &p, 2, TOL).unwrap();
        assert_eq!(reals(&g), [1., 0., 0., 1., 0., 1.]);
        let top = [r(0.5), Complex::new(1.0, 2.0), r(-3.0)];
        assert_eq!(complete_from_top(top, &p, 1, TOL).unwrap().values(), &top);
        assert!(matches!(complete_from_top(top, &p, 0, TOL), Err(Error::ArityTooSmall { .. })));
    }

    #[test]
    fn recover_examples() {
        let rep = recover_basis(&FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0), TOL).unwrap();
        assert!(multiset_distance(&rep.roots, &[r(1.0), r(1.0), r(-1.0)]) < 1e-9);
        assert!(rep.vectors.is_none());
        assert!(rep.degeneracy.is_some());

        let rep = recover_basis(&FibParamsD3::from_reals(-1.0, 1.0, 0.0, 0.0), TOL).unwrap();
        assert!(multiset_distance(&rep.roots, &[r(0.0), r(-2.0), r(1.0)]) < 1e-12);
        let vectors = rep.vectors.expect("non-degenerate");
        let recovered = OrthoBasis::from_full_vectors(vec![r(1.0); 3], &vectors.map(|v| v.to_vec()), TOL).unwrap();
        assert!(params_from_basis(&recovered, TOL)
            .unwrap()
            .is_close(&FibParamsD3::from_reals(-1.0, 1.0, 0.0, 0.0), TOL));
        let mut cols: Vec<[i64; 3]> = vectors
            .iter()
            .map(|v| [v[0].re.round() as i64, v[1].re.round() as i64, v[2].re.round() as i64])
            .collect();
        cols.sort();
        assert_eq!(cols, vec![[1, -2, 1], [1, 0, -1], [1, 1, 1]]);

        assert!(matches!(
            recover_basis(&FibParamsD3::from_reals(0.0, 1.0, 1.0, 0.0), TOL),
            Err(Error::InvalidParams)
        ));
    }
}
