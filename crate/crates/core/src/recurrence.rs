//! Depth-2 linear recurrences shared by the domain-3 and domain-4 gates.
//!
//! A recurrence scheme lists, for every unordered pair of non-first colors
//! `(i, j)`, which parameter multiplies each "second row" entry. For an apex
//! `m` with `m[0] >= 2` the equation reads
//!
//! ```text
//! g[m - 2e0 + ei + ej] = [i == j] g[m] + sum_c param[idx_c] * g[m - e0 + ec]
//! ```
//!
//! where `c` ranges over colors `1..d`.

use crate::error::{Error, Result};
use crate::lstsq;
use crate::signature::{counts_in_order, rank_of_count, SymmetricSignature};
use crate::{Complex, Tolerance};

pub(crate) struct Equation {
    pub pair: (usize, usize),
    /// Parameter index for the row-2 entry of color `c + 1`.
    pub params: &'static [usize],
}

pub(crate) struct Scheme {
    pub domain: usize,
    pub unknowns: usize,
    pub equations: &'static [Equation],
}

/// Location of a recurrence failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub apex: Vec<usize>,
    pub pair: (usize, usize),
    pub lhs: Complex,
    pub rhs: Complex,
}

fn shifted(base: &[usize], minus0: usize, plus: &[usize]) -> Vec<usize> {
    let mut v = base.to_vec();
    v[0] -= minus0;
    for &c in plus {
        v[c] += 1;
    }
    v
}

impl Scheme {
    fn apexes(&self, arity: usize) -> impl Iterator<Item = Vec<usize>> {
        counts_in_order(self.domain, arity).take_while(|m| m[0] >= 2)
    }

    /// Visits every equation instance: `(apex, eq, bottom, top, row2)`.
    fn for_each_instance(
        &self,
        g: &SymmetricSignature,
        mut f: impl FnMut(&[usize], &Equation, Complex, Complex, &[Complex]),
    ) {
        let vals = g.values();
        let mut row2 = vec![Complex::new(0.0, 0.0); self.domain - 1];
        for apex in self.apexes(g.arity()) {
            let top = vals[rank_of_count(&apex)];
            for (k, slot) in row2.iter_mut().enumerate() {
                *slot = vals[rank_of_count(&shifted(&apex, 1, &[k + 1]))];
            }
            for eq in self.equations {
                let bottom = vals[rank_of_count(&shifted(&apex, 2, &[eq.pair.0, eq.pair.1]))];
                f(&apex, eq, bottom, top, &row2);
            }
        }
    }

    fn rhs(eq: &Equation, top: Complex, row2: &[Complex], params: &[Complex]) -> (Complex, f64) {
        let mut acc = if eq.pair.0 == eq.pair.1 {
            top
        } else {
            Complex::new(0.0, 0.0)
        };
        let mut scale = acc.norm();
        for (r, &p) in row2.iter().zip(eq.params) {
            let term = params[p] * r;
            scale = scale.max(term.norm());
            acc += term;
        }
        (acc, scale)
    }

    /// First recurrence instance that fails under `params`, if any.
    pub fn first_violation(
        &self,
        g: &SymmetricSignature,
        params: &[Complex],
        tol: Tolerance,
    ) -> Result<Option<Violation>> {
        if g.domain() != self.domain {
            return Err(Error::DomainMismatch {
                expected: self.domain,
                got: g.domain(),
            });
        }
        let mut found = None;
        self.for_each_instance(g, |apex, eq, bottom, top, row2| {
            if found.is_some() {
                return;
            }
            let (rhs, scale) = Self::rhs(eq, top, row2, params);
            if !tol.within(bottom, rhs, scale.max(bottom.norm())) {
                found = Some(Violation {
                    apex: apex.to_vec(),
                    pair: eq.pair,
                    lhs: bottom,
                    rhs,
                });
            }
        });
        Ok(found)
    }

    /// Least-squares parameters from every recurrence instance of `gs`.
    pub fn fit(&self, gs: &[SymmetricSignature], tol: Tolerance) -> Result<Vec<Complex>> {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for g in gs {
            if g.domain() != self.domain {
                return Err(Error::DomainMismatch {
                    expected: self.domain,
                    got: g.domain(),
                });
            }
            self.for_each_instance(g, |_, eq, bottom, top, row2| {
                let mut row = vec![Complex::new(0.0, 0.0); self.unknowns];
                for (r, &p) in row2.iter().zip(eq.params) {
                    row[p] += r;
                }
                rows.push(row);
                rhs.push(if eq.pair.0 == eq.pair.1 { bottom - top } else { bottom });
            });
        }
        let sol = lstsq::solve(&rows, &rhs, self.unknowns, 1e-10);
        for g in gs {
            if let Some(v) = self.first_violation(g, &sol.x, tol)? {
                return Err(Error::NotFibonacci(format!(
                    "no parameters satisfy the recurrence at apex {:?}, pair {:?}",
                    v.apex, v.pair
                )));
            }
        }
        if sol.rank < self.unknowns {
            return Err(Error::Underdetermined {
                rank: sol.rank,
                unknowns: self.unknowns,
            });
        }
        Ok(sol.x)
    }

    /// Fills an arity-`n` signature from its first `domain` entries.
    pub fn complete_from_top(&self, top: &[Complex], params: &[Complex], n: usize) -> Result<SymmetricSignature> {
        if n == 0 {
            return Err(Error::ArityTooSmall { min: 1, got: 0 });
        }
        if top.len() != self.domain {
            return Err(Error::ValueCount {
                expected: self.domain,
                got: top.len(),
            });
        }
        let counts: Vec<Vec<usize>> = counts_in_order(self.domain, n).collect();
        let mut values = vec![Complex::new(0.0, 0.0); counts.len()];
        values[..self.domain].copy_from_slice(top);
        // Canonical order visits first-color counts in decreasing order, so the
        // apex and second-row entries of each equation are already known.
        for (pos, m) in counts.iter().enumerate().skip(self.domain) {
            let i = (1..self.domain).find(|&c| m[c] > 0).expect("m[0] <= n - 2");
            let j = if m[i] >= 2 {
                i
            } else {
                (i + 1..self.domain).find(|&c| m[c] > 0).expect("two non-first colors")
            };
            let eq = self
                .equations
                .iter()
                .find(|e| e.pair == (i, j))
                .expect("scheme covers every pair");
            let mut apex = m.clone();
            apex[0] += 2;
            apex[i] -= 1;
            apex[j] -= 1;
            let topv = values[rank_of_count(&apex)];
            let row2: Vec<Complex> = (1..self.domain)
                .map(|c| values[rank_of_count(&shifted(&apex, 1, &[c]))])
                .collect();
            values[pos] = Self::rhs(eq, topv, &row2, params).0;
        }
        SymmetricSignature::new(self.domain, n, values)
    }
}
