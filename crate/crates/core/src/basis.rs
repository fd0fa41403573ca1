//! Weighted orthogonal bases with unit first coordinate and the signatures
//! they generate.

use rand::Rng;

use crate::error::{Error, Result};
use crate::signature::SymmetricSignature;
use crate::{Complex, Tolerance};

/// `sum_k weights[k] * (1, tails[k]...)^{tensor n}`, with the vectors
/// pairwise orthogonal under the bilinear (non-Hermitian) dot product.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoBasis {
    weights: Vec<Complex>,
    tails: Vec<Vec<Complex>>,
}

/// Bilinear dot product of `(1, u)` and `(1, v)`.
fn unit_dot(u: &[Complex], v: &[Complex]) -> (Complex, f64) {
    let mut acc = Complex::new(1.0, 0.0);
    let mut scale: f64 = 1.0;
    for (a, b) in u.iter().zip(v) {
        let t = a * b;
        scale = scale.max(t.norm());
        acc += t;
    }
    (acc, scale)
}

impl OrthoBasis {
    /// Validated basis: `domain` vectors of length `domain` (given without the
    /// leading 1), pairwise orthogonal, all weights nonzero.
    pub fn new(weights: Vec<Complex>, tails: Vec<Vec<Complex>>, tol: Tolerance) -> Result<Self> {
        let basis = Self::new_unchecked(weights, tails)?;
        basis.check(tol)?;
        Ok(basis)
    }

    /// Shape-checked only; orthogonality is not verified.
    pub fn new_unchecked(weights: Vec<Complex>, tails: Vec<Vec<Complex>>) -> Result<Self> {
        let domain = tails.len();
        if domain < 2 || weights.len() != domain {
            return Err(Error::BasisShape(weights.len().min(domain)));
        }
        for (k, t) in tails.iter().enumerate() {
            if t.len() + 1 != domain {
                return Err(Error::BasisShape(k));
            }
        }
        Ok(Self { weights, tails })
    }

    /// Builds from full vectors, which must all start with exactly 1.
    pub fn from_full_vectors(weights: Vec<Complex>, vectors: &[Vec<Complex>], tol: Tolerance) -> Result<Self> {
        let mut tails = Vec::with_capacity(vectors.len());
        for (k, v) in vectors.iter().enumerate() {
            match v.split_first() {
                Some((head, rest)) if tol.close(*head, Complex::new(1.0, 0.0)) => tails.push(rest.to_vec()),
                _ => return Err(Error::BasisShape(k)),
            }
        }
        Self::new(weights, tails, tol)
    }

    pub fn check(&self, tol: Tolerance) -> Result<()> {
        if let Some(k) = self.weights.iter().position(|w| w.norm() == 0.0) {
            return Err(Error::ZeroWeight(k));
        }
        for i in 0..self.tails.len() {
            for j in i + 1..self.tails.len() {
                let (dot, scale) = unit_dot(&self.tails[i], &self.tails[j]);
                if !tol.is_zero(dot, scale) {
                    return Err(Error::NotOrthogonal(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> usize {
        self.tails.len()
    }

    pub fn weights(&self) -> &[Complex] {
        &self.weights
    }

    /// Vector coordinates after the leading 1.
    pub fn tails(&self) -> &[Vec<Complex>] {
        &self.tails
    }

    /// Full vector `k`, leading 1 included.
    pub fn vector(&self, k: usize) -> Vec<Complex> {
        std::iter::once(Complex::new(1.0, 0.0))
            .chain(self.tails[k].iter().cloned())
            .collect()
    }

    /// Self dot product `<v_k, v_k>`.
    pub fn norm_sq(&self, k: usize) -> Complex {
        unit_dot(&self.tails[k], &self.tails[k]).0
    }

    pub fn with_weights(&self, weights: Vec<Complex>) -> Result<Self> {
        Self::new_unchecked(weights, self.tails.clone())
    }

    /// Arity-`n` signature: entry `m` is `sum_k w_k prod_{c>=1} tails[k][c-1]^{m[c]}`.
    pub fn generate(&self, n: usize) -> SymmetricSignature {
        SymmetricSignature::from_fn(self.domain(), n, |m| {
            self.weights
                .iter()
                .zip(&self.tails)
                .map(|(w, tail)| {
                    tail.iter()
                        .zip(&m[1..])
                        .fold(*w, |acc, (t, &e)| acc * t.powu(e as u32))
                })
                .sum()
        })
    }

    /// Random basis by bilinear Gram-Schmidt on random complex vectors, each
    /// rescaled to unit first coordinate. Poorly conditioned draws are retried.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, domain: usize, complex: bool) -> Self {
        let draw = |rng: &mut R| {
            let im = if complex { rng.gen_range(-1.0..1.0) } else { 0.0 };
            Complex::new(rng.gen_range(-1.0..1.0), im)
        };
        'retry: loop {
            let mut ortho: Vec<Vec<Complex>> = Vec::with_capacity(domain);
            for _ in 0..domain {
                let mut v: Vec<Complex> = (0..domain).map(|_| draw(rng)).collect();
                for u in &ortho {
                    let uu: Complex = u.iter().map(|a| a * a).sum();
                    let vu: Complex = v.iter().zip(u).map(|(a, b)| a * b).sum();
                    let coef = vu / uu;
                    for (a, b) in v.iter_mut().zip(u) {
                        *a -= coef * b;
                    }
                }
                let vv: Complex = v.iter().map(|a| a * a).sum();
                let len: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if vv.norm() < 0.2 * len * len || v[0].norm() < 0.3 * len {
                    continue 'retry;
                }
                ortho.push(v);
            }
            let tails: Vec<Vec<Complex>> = ortho
                .iter()
                .map(|v| v[1..].iter().map(|a| a / v[0]).collect())
                .collect();
            if tails.iter().flatten().any(|a| a.norm() > 2.5) {
                continue;
            }
            let weights = (0..domain)
                .map(|_| {
                    let r = rng.gen_range(0.5..1.5);
                    let th = if complex {
                        rng.gen_range(0.0..std::f64::consts::TAU)
                    } else if rng.gen_bool(0.5) {
                        0.0
                    } else {
                        std::f64::consts::PI
                    };
                    Complex::from_polar(r, th)
                })
                .collect();
            return Self { weights, tails };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_bases_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [2, 3, 4] {
            for complex in [false, true] {
                for _ in 0..50 {
                    let b = OrthoBasis::random(&mut rng, d, complex);
                    b.check(Tolerance::default()).unwrap();
                }
            }
        }
    }

    #[test]
    fn rejects_non_orthogonal() {
        let r = |v: f64| Complex::new(v, 0.0);
        let err = OrthoBasis::new(
            vec![r(1.0); 3],
            vec![vec![r(1.0), r(0.0)], vec![r(1.0), r(1.0)], vec![r(0.0), r(1.0)]],
            Tolerance::default(),
        );
        assert!(matches!(err, Err(Error::NotOrthogonal(0, 1))));
    }

    #[test]
    fn rejects_zero_first_coordinate() {
        let r = |v: f64| Complex::new(v, 0.0);
        let err = OrthoBasis::from_full_vectors(
            vec![r(1.0); 3],
            &[vec![r(0.0), r(1.0), r(0.0)], vec![r(1.0), r(0.0), r(1.0)], vec![r(1.0), r(0.0), r(-1.0)]],
            Tolerance::default(),
        );
        assert!(matches!(err, Err(Error::BasisShape(0))));
    }
}
