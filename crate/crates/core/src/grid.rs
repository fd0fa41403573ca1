//! Signature grids: multigraphs (self-loops and parallel edges allowed) with a
//! symmetric signature on every vertex.

use crate::error::{Error, Result};
use crate::signature::SymmetricSignature;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSignature {
    pub name: String,
    pub signature: SymmetricSignature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureGrid {
    domain: usize,
    signatures: Vec<NamedSignature>,
    /// Signature index per vertex.
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

/// Structural problems found on a single vertex.
#[derive(Debug, Clone, PartialEq)]
pub enum StructuralIssue {
    DegreeMismatch { vertex: usize, degree: usize, arity: usize },
    DomainMismatch { signature: String, domain: usize },
}

impl std::fmt::Display for StructuralIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::DegreeMismatch { vertex, degree, arity } => {
                write!(f, "vertex {vertex}: degree {degree} but signature arity {arity}")
            }
            Self::DomainMismatch { signature, domain } => {
                write!(f, "signature {signature:?}: domain {domain} differs from grid domain")
            }
        }
    }
}

impl SignatureGrid {
    /// Resolves vertex signature names and checks edge endpoints. Degree and
    /// domain consistency are reported by [`SignatureGrid::structural_issues`].
    pub fn new(
        domain: usize,
        signatures: Vec<NamedSignature>,
        vertex_names: &[impl AsRef<str>],
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let vertices = vertex_names
            .iter()
            .enumerate()
            .map(|(v, name)| {
                signatures
                    .iter()
                    .position(|s| s.name == name.as_ref())
                    .ok_or_else(|| Error::InvalidGrid(format!("vertex {v}: unknown signature {:?}", name.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some((k, &(u, v))) = edges
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| u >= vertices.len() || v >= vertices.len())
        {
            return Err(Error::InvalidGrid(format!(
                "edge {k} ({u}, {v}) refers to a missing vertex"
            )));
        }
        Ok(Self {
            domain,
            signatures,
            vertices,
            edges,
        })
    }

    /// Grid whose vertex `k` carries `sigs[k]` under the name `v{k}`.
    pub fn from_vertex_signatures(domain: usize, sigs: Vec<SymmetricSignature>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let names: Vec<String> = (0..sigs.len()).map(|k| format!("v{k}")).collect();
        let signatures = sigs
            .into_iter()
            .zip(&names)
            .map(|(signature, name)| NamedSignature {
                name: name.clone(),
                signature,
            })
            .collect();
        Self::new(domain, signatures, &names, edges)
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn signatures(&self) -> &[NamedSignature] {
        &self.signatures
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_signature_index(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn vertex_signature(&self, v: usize) -> &SymmetricSignature {
        &self.signatures[self.vertices[v]].signature
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degrees with self-loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Same grid with its edge list replaced (e.g. reordered).
    pub fn with_edges(&self, edges: Vec<(usize, usize)>) -> Self {
        Self {
            edges,
            ..self.clone()
        }
    }

    /// Disjoint union; vertex and signature indices of `other` are shifted.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch {
                expected: self.domain,
                got: other.domain,
            });
        }
        let sig_offset = self.signatures.len();
        let vert_offset = self.vertices.len();
        let mut signatures = self.signatures.clone();
        signatures.extend(other.signatures.iter().map(|s| NamedSignature {
            name: format!("{}'", s.name),
            signature: s.signature.clone(),
        }));
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|s| s + sig_offset));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + vert_offset, v + vert_offset)));
        Ok(Self {
            domain: self.domain,
            signatures,
            vertices,
            edges,
        })
    }

    pub fn structural_issues(&self) -> Vec<StructuralIssue> {
        let mut issues: Vec<StructuralIssue> = self
            .signatures
            .iter()
            .filter(|s| s.signature.domain() != self.domain)
            .map(|s| StructuralIssue::DomainMismatch {
                signature: s.name.clone(),
                domain: s.signature.domain(),
            })
            .collect();
        for (vertex, degree) in self.degrees().into_iter().enumerate() {
            let arity = self.vertex_signature(vertex).arity();
            if degree != arity {
                issues.push(StructuralIssue::DegreeMismatch { vertex, degree, arity });
            }
        }
        issues
    }
}

/// Union-find over vertex indices.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Merges the sets of `a` and `b` and returns the new root.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        a
    }
}
