//! Dense symmetric signatures indexed by color histograms.
//!
//! Entries are stored in lexicographically decreasing order of their count
//! vectors, so for domain 3 and arity 3 the layout is the familiar triangle
//! read row by row: `(3,0,0), (2,1,0), (2,0,1), (1,2,0), ..., (0,0,3)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

/// Binomial coefficient with saturation; callers only use small arguments.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

/// Number of entries of a symmetric signature over `domain` colors and `arity` inputs.
pub fn entry_count(domain: usize, arity: usize) -> usize {
    assert!(domain >= 1, "domain size must be positive");
    binomial(arity + domain - 1, domain - 1)
}

/// Color-multiplicity multi-index: `counts[c]` inputs carry color `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CountVector(pub Vec<usize>);

impl CountVector {
    /// Builds a count vector from possibly-signed input, rejecting negative entries.
    pub fn from_signed(counts: &[i64]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::MalformedCount {
                counts: counts.to_vec(),
                reason: "empty".into(),
            });
        }
        counts
            .iter()
            .map(|&c| usize::try_from(c))
            .collect::<Result<Vec<_>, _>>()
            .map(CountVector)
            .map_err(|_| Error::MalformedCount {
                counts: counts.to_vec(),
                reason: "negative entry".into(),
            })
    }

    /// Histogram of a color assignment.
    pub fn histogram(domain: usize, assignment: &[usize]) -> Result<Self> {
        let mut counts = vec![0; domain];
        for &color in assignment {
            if color >= domain {
                return Err(Error::ColorOutOfDomain { color, domain });
            }
            counts[color] += 1;
        }
        Ok(CountVector(counts))
    }

    pub fn domain(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Position of `counts` in canonical (lexicographically decreasing) order.
pub fn rank_of_count(counts: &[usize]) -> usize {
    let domain = counts.len();
    let mut remaining: usize = counts.iter().sum();
    let mut rank = 0;
    for (k, &c) in counts.iter().enumerate() {
        let tail = domain - k - 1;
        if tail == 0 {
            break;
        }
        // Vectors sharing the prefix but with a larger value at position k come first.
        for larger in (c + 1)..=remaining {
            rank += entry_count(tail, remaining - larger);
        }
        remaining -= c;
    }
    rank
}

/// Inverse of [`rank_of_count`].
pub fn count_of_rank(domain: usize, arity: usize, rank: usize) -> Result<CountVector> {
    let count = entry_count(domain, arity);
    if rank >= count {
        return Err(Error::RankOutOfRange {
            domain,
            arity,
            rank,
            count,
        });
    }
    let mut counts = vec![0; domain];
    let mut remaining = arity;
    let mut rank = rank;
    for (k, slot) in counts.iter_mut().enumerate() {
        let tail = domain - k - 1;
        if tail == 0 {
            *slot = remaining;
            break;
        }
        let mut value = remaining;
        loop {
            let block = entry_count(tail, remaining - value);
            if rank < block {
                break;
            }
            rank -= block;
            value -= 1;
        }
        *slot = value;
        remaining -= value;
    }
    Ok(CountVector(counts))
}

/// Iterator over all count vectors of `(domain, arity)` in canonical order.
pub fn counts_in_order(domain: usize, arity: usize) -> CountIter {
    let mut first = vec![0; domain];
    first[0] = arity;
    CountIter { next: Some(first) }
}

pub struct CountIter {
    next: Option<Vec<usize>>,
}

impl Iterator for CountIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let d = current.len();
        // Lexicographic predecessor: find the rightmost non-last position with a
        // positive entry, decrement it and push everything after it to the front.
        let mut succ = current.clone();
        if let Some(k) = (0..d.saturating_sub(1)).rev().find(|&k| succ[k] > 0) {
            let tail: usize = succ[k + 1..].iter().sum::<usize>() + 1;
            succ[k] -= 1;
            for slot in succ[k + 1..].iter_mut() {
                *slot = 0;
            }
            succ[k + 1] = tail;
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Symmetric function over `domain` colors with `arity` inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSignature {
    domain: usize,
    arity: usize,
    values: Vec<Complex>,
}

impl SymmetricSignature {
    pub fn new(domain: usize, arity: usize, values: Vec<Complex>) -> Result<Self> {
        if domain < 1 {
            return Err(Error::DomainMismatch {
                expected: 2,
                got: domain,
            });
        }
        let expected = entry_count(domain, arity);
        if values.len() != expected {
            return Err(Error::ValueCount {
                expected,
                got: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self {
            domain,
            arity,
            values,
        })
    }

    /// Real-valued convenience constructor.
    pub fn from_reals(domain: usize, arity: usize, values: &[f64]) -> Result<Self> {
        Self::new(
            domain,
            arity,
            values.iter().map(|&v| Complex::new(v, 0.0)).collect(),
        )
    }

    /// Fills every entry from its count vector.
    pub fn from_fn(domain: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Complex) -> Self {
        let values = counts_in_order(domain, arity).map(|c| f(&c)).collect();
        Self {
            domain,
            arity,
            values,
        }
    }

    pub(crate) fn from_values_unchecked(domain: usize, arity: usize, values: Vec<Complex>) -> Self {
        debug_assert_eq!(values.len(), entry_count(domain, arity));
        Self {
            domain,
            arity,
            values,
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    /// Value at a count vector; panics if the vector does not belong to this signature.
    pub fn at(&self, counts: &[usize]) -> Complex {
        debug_assert_eq!(counts.len(), self.domain);
        debug_assert_eq!(counts.iter().sum::<usize>(), self.arity);
        self.values[rank_of_count(counts)]
    }

    pub fn get(&self, counts: &[usize]) -> Option<Complex> {
        if counts.len() != self.domain || counts.iter().sum::<usize>() != self.arity {
            return None;
        }
        Some(self.at(counts))
    }

    /// Value on an explicit color assignment of the inputs.
    pub fn evaluate(&self, assignment: &[usize]) -> Result<Complex> {
        if assignment.len() != self.arity {
            return Err(Error::WrongAssignmentLength {
                expected: self.arity,
                got: assignment.len(),
            });
        }
        let hist = CountVector::histogram(self.domain, assignment)?;
        Ok(self.at(hist.as_slice()))
    }

    /// Largest entry magnitude, used to scale tolerances.
    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_close(&self, other: &Self, tol: crate::Tolerance) -> bool {
        self.domain == other.domain
            && self.arity == other.arity
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| tol.close(*a, *b))
    }
}
