//! Generalized Fibonacci gates on a domain of size 4.
//!
//! Ten parameters `a, b, c, d, e, f, h, i, j, p` govern six recurrences per
//! depth-2 tetrahedron with apex `(w, x, y, z)`, `w >= 2`. Writing `G`, `B`,
//! `W` for the second-row entries `g[w-1,x+1,y,z]`, `g[w-1,x,y+1,z]`,
//! `g[w-1,x,y,z+1]`:
//!
//! ```text
//! g[w-2,x+2,y,z]   = g[w,x,y,z] + a G + b B + c W
//! g[w-2,x,y+2,z]   = g[w,x,y,z] + d G + e B + f W
//! g[w-2,x,y,z+2]   = g[w,x,y,z] + h G + i B + j W
//! g[w-2,x+1,y+1,z] =              b G + d B + p W
//! g[w-2,x+1,y,z+1] =              c G + p B + h W
//! g[w-2,x,y+1,z+1] =              p G + f B + i W
//! ```

use serde::{Deserialize, Serialize};

use crate::basis::OrthoBasis;
use crate::error::{Error, Result};
use crate::recurrence::{Equation, Scheme, Violation};
use crate::signature::SymmetricSignature;
use crate::{Complex, Tolerance};

const PARAMS: usize = 10;
const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const E: usize = 4;
const F: usize = 5;
const H: usize = 6;
const I: usize = 7;
const J: usize = 8;
const P: usize = 9;

pub(crate) static SCHEME: Scheme = Scheme {
    domain: 4,
    unknowns: PARAMS,
    equations: &[
        Equation { pair: (1, 1), params: &[A, B, C] },
        Equation { pair: (2, 2), params: &[D, E, F] },
        Equation { pair: (3, 3), params: &[H, I, J] },
        Equation { pair: (1, 2), params: &[B, D, P] },
        Equation { pair: (1, 3), params: &[C, P, H] },
        Equation { pair: (2, 3), params: &[P, F, I] },
    ],
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FibParamsD4 {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
    pub e: Complex,
    pub f: Complex,
    pub h: Complex,
    pub i: Complex,
    pub j: Complex,
    pub p: Complex,
}

impl FibParamsD4 {
    pub const NAMES: [&'static str; PARAMS] = ["a", "b", "c", "d", "e", "f", "h", "i", "j", "p"];

    pub fn from_array(v: [Complex; PARAMS]) -> Self {
        Self {
            a: v[A],
            b: v[B],
            c: v[C],
            d: v[D],
            e: v[E],
            f: v[F],
            h: v[H],
            i: v[I],
            j: v[J],
            p: v[P],
        }
    }

    pub fn from_reals(v: [f64; PARAMS]) -> Self {
        Self::from_array(v.map(|x| Complex::new(x, 0.0)))
    }

    pub fn as_array(&self) -> [Complex; PARAMS] {
        [
            self.a, self.b, self.c, self.d, self.e, self.f, self.h, self.i, self.j, self.p,
        ]
    }

    pub fn is_close(&self, other: &Self, tol: Tolerance) -> bool {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .all(|(a, b)| tol.within(*a, b, a.norm().max(b.norm()).max(1.0)))
    }
}

/// `sum(lhs) == sum(rhs)` with the tolerance scaled by the largest term.
fn balanced(lhs: &[Complex], rhs: &[Complex], tol: Tolerance) -> bool {
    let scale = lhs.iter().chain(rhs).map(|v| v.norm()).fold(0.0, f64::max);
    tol.within(lhs.iter().sum(), rhs.iter().sum(), scale)
}

/// Residual-style view of the four defining constraints, in order.
pub fn param_constraints(q: &FibParamsD4, tol: Tolerance) -> [bool; 4] {
    let one = Complex::new(1.0, 0.0);
    let FibParamsD4 { a, b, c, d, e, f, h, i, j, p } = *q;
    [
        balanced(&[a * d, b * e, c * f, one], &[b * b, d * d, p * p], tol),
        balanced(&[d * h, e * i, f * j, one], &[f * f, i * i, p * p], tol),
        balanced(&[h * a, i * b, j * c, one], &[h * h, c * c, p * p], tol),
        balanced(
            &[p * p * p, -(b * i * p), -(c * f * p), -(d * h * p), -p, b * f * h, c * d * i],
            &[],
            tol,
        ),
    ]
}

/// All four defining constraints (three quadratic, one cubic in `p`).
pub fn check_params(q: &FibParamsD4, tol: Tolerance) -> bool {
    param_constraints(q, tol).iter().all(|&ok| ok)
}

/// The three additional quadratic relations, checked independently.
pub fn check_side_relations(q: &FibParamsD4, tol: Tolerance) -> bool {
    let FibParamsD4 { a, b, c, d, e, f, h, i, j, p } = *q;
    balanced(&[a * p, b * f, c * i], &[b * c, d * p, p * h], tol)
        && balanced(&[b * h, d * i, p * j], &[c * p, p * f, h * i], tol)
        && balanced(&[c * d, p * e, h * f], &[b * p, d * f, p * i], tol)
}

/// Arity-`n` signature generated by an orthogonal quadruple.
pub fn generate(basis: &OrthoBasis, n: usize, tol: Tolerance) -> Result<SymmetricSignature> {
    if basis.domain() != 4 {
        return Err(Error::DomainMismatch {
            expected: 4,
            got: basis.domain(),
        });
    }
    if n == 0 {
        return Err(Error::ArityTooSmall { min: 1, got: 0 });
    }
    basis.check(tol)?;
    Ok(basis.generate(n))
}

pub fn find_violation(g: &SymmetricSignature, q: &FibParamsD4, tol: Tolerance) -> Result<Option<Violation>> {
    SCHEME.first_violation(g, &q.as_array(), tol)
}

/// Whether `g` is a generalized Fibonacci gate with parameters `q`.
pub fn verify_gate(g: &SymmetricSignature, q: &FibParamsD4, tol: Tolerance) -> Result<bool> {
    let violation = find_violation(g, q, tol)?;
    Ok(check_params(q, tol) && violation.is_none())
}

pub fn fit_params(gs: &[SymmetricSignature], tol: Tolerance) -> Result<FibParamsD4> {
    let v = SCHEME.fit(gs, tol)?;
    let q = FibParamsD4::from_array(v.try_into().expect("ten unknowns"));
    if !check_params(&q, tol) {
        return Err(Error::NotFibonacci(
            "fitted parameters violate the defining constraints".into(),
        ));
    }
    Ok(q)
}

/// Parameters of the gate spanned by an orthogonal quadruple, fitted from its
/// arity-3 signature (weights do not influence the result).
pub fn params_from_basis(basis: &OrthoBasis, tol: Tolerance) -> Result<FibParamsD4> {
    let unit = basis.with_weights(vec![Complex::new(1.0, 0.0); 4])?;
    fit_params(&[generate(&unit, 3, tol)?], tol)
}

/// The unique gate of arity `n` with the given first four canonical entries.
pub fn complete_from_top(top: [Complex; 4], q: &FibParamsD4, n: usize, tol: Tolerance) -> Result<SymmetricSignature> {
    if !check_params(q, tol) {
        return Err(Error::InvalidParams);
    }
    SCHEME.complete_from_top(&top, &q.as_array(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::counts_in_order;

    fn r(v: f64) -> Complex {
        Complex::new(v, 0.0)
    }

    const TOL: Tolerance = Tolerance::new(1e-9, 1e-12);

    pub(crate) fn h4() -> OrthoBasis {
        let v = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
        OrthoBasis::new(
            vec![r(1.0); 4],
            v.iter().map(|t| t.iter().map(|&x| r(x)).collect()).collect(),
            TOL,
        )
        .unwrap()
    }

    fn hadamard_params() -> FibParamsD4 {
        let mut v = [0.0; 10];
        v[P] = 1.0;
        FibParamsD4::from_reals(v)
    }

    fn h4_arity3_expected(m: &[usize]) -> f64 {
        let nonzero = [[3, 0, 0, 0], [1, 2, 0, 0], [1, 0, 2, 0], [1, 0, 0, 2], [0, 1, 1, 1]];
        if nonzero.iter().any(|z| z == m) {
            4.0
        } else {
            0.0
        }
    }

    #[test]
    fn check_params_examples() {
        assert!(check_params(&hadamard_params(), TOL));
        assert!(!check_params(&FibParamsD4::from_reals([0.0; 10]), TOL));
        let mut perturbed = hadamard_params();
        perturbed.p += 0.5;
        let flags = param_constraints(&perturbed, TOL);
        assert!(!flags[3]);
        assert!(!check_params(&perturbed, TOL));
    }

    #[test]
    fn side_relation_examples() {
        assert!(check_side_relations(&hadamard_params(), TOL));
        let mut v = [0.0; 10];
        v[A] = 1.0;
        v[P] = 1.0;
        assert!(!check_side_relations(&FibParamsD4::from_reals(v), TOL));
    }

    #[test]
    fn generate_hadamard() {
        let g = generate(&h4(), 3, TOL).unwrap();
        for (m, v) in counts_in_order(4, 3).zip(g.values()) {
            assert_eq!(v.re, h4_arity3_expected(&m), "{m:?}");
        }
        let g1 = generate(&h4(), 1, TOL).unwrap();
        assert_eq!(g1.values(), &[r(4.0), r(0.0), r(0.0), r(0.0)]);
        let g2 = generate(&h4(), 2, TOL).unwrap();
        for (m, v) in counts_in_order(4, 2).zip(g2.values()) {
            let diag = m.contains(&2);
            assert_eq!(v.re, if diag { 4.0 } else { 0.0 }, "{m:?}");
        }
    }

    #[test]
    fn verify_examples() {
        let q = hadamard_params();
        let g = generate(&h4(), 3, TOL).unwrap();
        assert!(verify_gate(&g, &q, TOL).unwrap());
        let unary = SymmetricSignature::from_reals(4, 1, &[4.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(verify_gate(&unary, &q, TOL).unwrap());
        let mut vals = g.values().to_vec();
        vals[crate::signature::rank_of_count(&[0, 1, 1, 1])] = r(5.0);
        let bad = SymmetricSignature::new(4, 3, vals).unwrap();
        assert!(!verify_gate(&bad, &q, TOL).unwrap());
    }

    #[test]
    fn fit_examples() {
        let q = fit_params(&[generate(&h4(), 3, TOL).unwrap()], TOL).unwrap();
        assert!(q.is_close(&hadamard_params(), TOL));
        assert!(matches!(
            fit_params(&[generate(&h4(), 2, TOL).unwrap()], TOL),
            Err(Error::Underdetermined { unknowns: 10, .. })
        ));
    }

    #[test]
    fn complete_examples() {
        let q = hadamard_params();
        let g = complete_from_top([r(4.0), r(0.0), r(0.0), r(0.0)], &q, 3, TOL).unwrap();
        assert_eq!(g, generate(&h4(), 3, TOL).unwrap());
        let top = [r(1.0), r(2.0), Complex::new(0.0, 1.0), r(-4.0)];
        assert_eq!(complete_from_top(top, &q, 1, TOL).unwrap().values(), &top);
        let g = complete_from_top([r(1.0), r(0.0), r(0.0), r(0.0)], &q, 2, TOL).unwrap();
        for (m, v) in counts_in_order(4, 2).zip(g.values()) {
            let diag = m.contains(&2);
            assert_eq!(v.re, if diag { 1.0 } else { 0.0 }, "{m:?}");
        }
    }
}
