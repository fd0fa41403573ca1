//! JSON documents for grids, signature sets and parameters.
//!
//! Complex numbers are `[re, im]` pairs and dense signature values follow the
//! canonical count-vector order of [`crate::signature`].

use std::collections::BTreeMap;
use std::sync::OnceLock;

use regex::Regex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::basis::OrthoBasis;
use crate::engine::FibParams;
use crate::error::Error;
use crate::fib3::FibParamsD3;
use crate::fib4::FibParamsD4;
use crate::grid::{NamedSignature, SignatureGrid};
use crate::signature::SymmetricSignature;
use crate::{Complex, Tolerance};

pub type Pair = [f64; 2];

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{context}: {source}")]
    Invalid { context: String, source: Error },
    #[error("{0}")]
    Shape(String),
}

fn pair(c: Complex) -> Pair {
    [c.re, c.im]
}

fn complex(p: Pair) -> Complex {
    Complex::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub weights: Vec<Pair>,
    /// Full vectors, each starting with `[1, 0]`.
    pub vectors: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureSpec {
    pub name: String,
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDocument {
    pub domain: usize,
    pub signatures: Vec<SignatureSpec>,
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

impl SignatureSpec {
    pub fn from_signature(name: &str, sig: &SymmetricSignature) -> Self {
        Self {
            name: name.to_string(),
            arity: sig.arity(),
            values: Some(sig.values().iter().copied().map(pair).collect()),
            generator: None,
        }
    }

    /// Dense signature, expanding and orthogonality-checking generator specs.
    pub fn expand(&self, domain: usize, tol: Tolerance) -> Result<SymmetricSignature, DocumentError> {
        let ctx = |source| DocumentError::Invalid {
            context: format!("signature {:?}", self.name),
            source,
        };
        match (&self.values, &self.generator) {
            (Some(values), None) => {
                SymmetricSignature::new(domain, self.arity, values.iter().copied().map(complex).collect()).map_err(ctx)
            }
            (None, Some(gen)) => {
                let vectors: Vec<Vec<Complex>> = gen
                    .vectors
                    .iter()
                    .map(|v| v.iter().copied().map(complex).collect())
                    .collect();
                let weights = gen.weights.iter().copied().map(complex).collect();
                if vectors.len() != domain {
                    return Err(ctx(Error::DomainMismatch {
                        expected: domain,
                        got: vectors.len(),
                    }));
                }
                let basis = OrthoBasis::from_full_vectors(weights, &vectors, tol).map_err(ctx)?;
                let sig = match domain {
                    3 => crate::fib3::generate(&basis, self.arity),
                    4 => crate::fib4::generate(&basis, self.arity, tol),
                    _ => Ok(basis.generate(self.arity)),
                };
                sig.map_err(ctx)
            }
            _ => Err(DocumentError::Shape(format!(
                "signature {:?}: exactly one of \"values\" or \"generator\" is required",
                self.name
            ))),
        }
    }
}

impl GridDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }

    /// All signatures expanded to dense form, in document order.
    pub fn named_signatures(&self, tol: Tolerance) -> Result<Vec<NamedSignature>, DocumentError> {
        self.signatures
            .iter()
            .map(|s| {
                Ok(NamedSignature {
                    name: s.name.clone(),
                    signature: s.expand(self.domain, tol)?,
                })
            })
            .collect()
    }

    /// Expanded grid; structural problems (degree mismatch, mixed domains) are errors.
    pub fn to_grid(&self, tol: Tolerance) -> Result<SignatureGrid, DocumentError> {
        let sigs = self.named_signatures(tol)?;
        let edges = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let grid = SignatureGrid::new(self.domain, sigs, &self.vertices, edges).map_err(|source| DocumentError::Invalid {
            context: "grid".into(),
            source,
        })?;
        let issues = grid.structural_issues();
        if let Some(first) = issues.first() {
            return Err(DocumentError::Invalid {
                context: "grid".into(),
                source: Error::InvalidGrid(first.to_string()),
            });
        }
        Ok(grid)
    }

    /// Dense document for a grid.
    pub fn from_grid(grid: &SignatureGrid) -> Self {
        Self {
            domain: grid.domain(),
            signatures: grid
                .signatures()
                .iter()
                .map(|s| SignatureSpec::from_signature(&s.name, &s.signature))
                .collect(),
            vertices: (0..grid.vertex_count())
                .map(|v| grid.signatures()[grid.vertex_signature_index(v)].name.clone())
                .collect(),
            edges: grid.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

pub fn parse_grid(text: &str, tol: Tolerance) -> Result<SignatureGrid, DocumentError> {
    GridDocument::from_json(text)?.to_grid(tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub domain: usize,
    #[serde(flatten)]
    pub values: BTreeMap<String, Pair>,
}

const D3_NAMES: [&str; 4] = ["s", "x", "y", "t"];

impl ParamsDocument {
    pub fn from_params(p: &FibParams) -> Self {
        let values = match p {
            FibParams::D3(q) => D3_NAMES.iter().zip(q.as_array()).map(|(n, v)| (n.to_string(), pair(v))).collect(),
            FibParams::D4(q) => FibParamsD4::NAMES
                .iter()
                .zip(q.as_array())
                .map(|(n, v)| (n.to_string(), pair(v)))
                .collect(),
        };
        Self {
            domain: p.domain(),
            values,
        }
    }

    pub fn to_params(&self) -> Result<FibParams, DocumentError> {
        let names: &[&str] = match self.domain {
            3 => &D3_NAMES,
            4 => &FibParamsD4::NAMES,
            d => return Err(DocumentError::Shape(format!("parameters for domain {d} are not supported"))),
        };
        if let Some(extra) = self.values.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(DocumentError::Shape(format!(
                "unexpected parameter {extra:?} for domain {}",
                self.domain
            )));
        }
        let vals = names
            .iter()
            .map(|n| {
                self.values
                    .get(*n)
                    .map(|&p| complex(p))
                    .ok_or_else(|| DocumentError::Shape(format!("missing parameter {n:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match self.domain {
            3 => FibParams::D3(FibParamsD3::new(vals[0], vals[1], vals[2], vals[3])),
            _ => FibParams::D4(FibParamsD4::from_array(vals.try_into().expect("ten names"))),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(self)
    }
}

/// Pretty JSON with every `[re, im]` pair kept on one line.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    static PAIR: OnceLock<Regex> = OnceLock::new();
    let re = PAIR.get_or_init(|| {
        Regex::new(r"\[\s*(-?[0-9][0-9.eE+-]*),\s*(-?[0-9][0-9.eE+-]*)\s*\]").expect("valid pattern")
    });
    let text = serde_json::to_string_pretty(value).expect("documents always serialize");
    re.replace_all(&text, "[$1, $2]").into_owned()
}

/// `[re, im]` with shortest round-trip formatting.
pub fn format_complex(c: Complex) -> String {
    format!("[{:?}, {:?}]", c.re, c.im)
}
