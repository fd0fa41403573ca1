//! Polynomial-time Holant evaluation by edge-by-edge gate merging.
//!
//! Every vertex starts as a gate whose dangling edges are its incident edge
//! endpoints. Edges are then restored one at a time: joining two different
//! gates contracts one dangling edge of each (a cross merge), joining a gate
//! with itself contracts two of its own dangling edges (a self merge). With
//! Fibonacci inputs every intermediate gate is again a symmetric Fibonacci
//! gate with the same parameters, so it is stored densely by color counts.
//!
//! A merge producing arity `A` costs `O(A^(d-1) * d^2)` arithmetic, so a grid
//! is evaluated in `O(|E| * A_max^(d-1) * d^2)`.

use crate::error::{Error, Result};
use crate::fib3::{self, FibParamsD3};
use crate::fib4::{self, FibParamsD4};
use crate::grid::{DisjointSet, SignatureGrid, StructuralIssue};
use crate::recurrence::Violation;
use crate::signature::{counts_in_order, rank_of_count, SymmetricSignature};
use crate::{Complex, Tolerance};

/// Parameters of either supported domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FibParams {
    D3(FibParamsD3),
    D4(FibParamsD4),
}

impl FibParams {
    pub fn domain(&self) -> usize {
        match self {
            Self::D3(_) => 3,
            Self::D4(_) => 4,
        }
    }

    pub fn check(&self, tol: Tolerance) -> bool {
        match self {
            Self::D3(p) => fib3::check_params(p, tol),
            Self::D4(p) => fib4::check_params(p, tol),
        }
    }

    pub fn verify_gate(&self, g: &SymmetricSignature, tol: Tolerance) -> Result<bool> {
        match self {
            Self::D3(p) => fib3::verify_gate(g, p, tol),
            Self::D4(p) => fib4::verify_gate(g, p, tol),
        }
    }

    pub fn find_violation(&self, g: &SymmetricSignature, tol: Tolerance) -> Result<Option<Violation>> {
        match self {
            Self::D3(p) => fib3::find_violation(g, p, tol),
            Self::D4(p) => fib4::find_violation(g, p, tol),
        }
    }

    /// Fits parameters of the matching domain.
    pub fn fit(domain: usize, gs: &[SymmetricSignature], tol: Tolerance) -> Result<Self> {
        match domain {
            3 => fib3::fit_params(gs, tol).map(Self::D3),
            4 => fib4::fit_params(gs, tol).map(Self::D4),
            other => Err(Error::DomainMismatch { expected: 3, got: other }),
        }
    }
}

impl From<FibParamsD3> for FibParams {
    fn from(p: FibParamsD3) -> Self {
        Self::D3(p)
    }
}

impl From<FibParamsD4> for FibParams {
    fn from(p: FibParamsD4) -> Self {
        Self::D4(p)
    }
}

/// A grid fragment with dangling edges and its effective signature.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    signature: SymmetricSignature,
    members: Vec<usize>,
}

impl Gate {
    pub fn vertex(v: usize, signature: SymmetricSignature) -> Self {
        Self {
            signature,
            members: vec![v],
        }
    }

    pub fn new(signature: SymmetricSignature, members: Vec<usize>) -> Self {
        Self { signature, members }
    }

    pub fn dangling_count(&self) -> usize {
        self.signature.arity()
    }

    pub fn signature(&self) -> &SymmetricSignature {
        &self.signature
    }

    pub fn member_vertices(&self) -> &[usize] {
        &self.members
    }

    pub fn into_signature(self) -> SymmetricSignature {
        self.signature
    }
}

fn bump(m: &[usize], color: usize, by: usize) -> Vec<usize> {
    let mut v = m.to_vec();
    v[color] += by;
    v
}

/// Greedy split of `m` into a part of total `left` (filled from color 0) and the rest.
pub fn canonical_split(m: &[usize], left: usize) -> (Vec<usize>, Vec<usize>) {
    let mut remaining = left;
    let mut mf = vec![0; m.len()];
    for (slot, &c) in mf.iter_mut().zip(m) {
        let take = c.min(remaining);
        *slot = take;
        remaining -= take;
    }
    assert_eq!(remaining, 0, "split of {m:?} infeasible for {left}");
    let mg = m.iter().zip(&mf).map(|(a, b)| a - b).collect();
    (mf, mg)
}

/// `sum_c F[m_f + e_c] * G[m_g + e_c]` for an explicit split.
pub fn cross_entry(f: &SymmetricSignature, g: &SymmetricSignature, mf: &[usize], mg: &[usize]) -> Complex {
    (0..f.domain())
        .map(|c| f.values()[rank_of_count(&bump(mf, c, 1))] * g.values()[rank_of_count(&bump(mg, c, 1))])
        .sum()
}

/// Contracts one dangling edge of `f` with one of `g`.
pub fn merge_cross(f: &Gate, g: &Gate) -> Result<Gate> {
    let (fs, gs) = (&f.signature, &g.signature);
    if fs.domain() != gs.domain() {
        return Err(Error::DomainMismatch {
            expected: fs.domain(),
            got: gs.domain(),
        });
    }
    if fs.arity() == 0 || gs.arity() == 0 {
        return Err(Error::NothingToMerge);
    }
    let (r, w) = (fs.arity() - 1, gs.arity() - 1);
    let d = fs.domain();
    let values = counts_in_order(d, r + w)
        .map(|m| {
            let (mf, mg) = canonical_split(&m, r);
            cross_entry(fs, gs, &mf, &mg)
        })
        .collect();
    let mut members = f.members.clone();
    members.extend_from_slice(&g.members);
    Ok(Gate {
        signature: SymmetricSignature::from_values_unchecked(d, r + w, values),
        members,
    })
}

/// Contracts two dangling edges of the same gate.
pub fn merge_self(f: &Gate) -> Result<Gate> {
    let fs = &f.signature;
    if fs.arity() < 2 {
        return Err(Error::ArityTooSmall {
            min: 2,
            got: fs.arity(),
        });
    }
    let d = fs.domain();
    let values = counts_in_order(d, fs.arity() - 2)
        .map(|m| (0..d).map(|c| fs.values()[rank_of_count(&bump(&m, c, 2))]).sum())
        .collect();
    Ok(Gate {
        signature: SymmetricSignature::from_values_unchecked(d, fs.arity() - 2, values),
        members: f.members.clone(),
    })
}

/// Problems that stop a grid from being evaluated by the engine.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    Structural(StructuralIssue),
    ParamsDomain { params: usize, grid: usize },
    InvalidParams,
    NotFibonacci { vertex: usize, signature: String },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Structural(s) => s.fmt(f),
            Self::ParamsDomain { params, grid } => {
                write!(f, "parameters are for domain {params}, grid has domain {grid}")
            }
            Self::InvalidParams => write!(f, "parameters violate the Fibonacci constraints"),
            Self::NotFibonacci { vertex, signature } => {
                write!(f, "vertex {vertex}: signature {signature:?} is not a Fibonacci gate with these parameters")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn summary(&self) -> String {
        self.issues
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks structure and that every vertex carries a gate with parameters `params`.
pub fn validate_grid(grid: &SignatureGrid, params: &FibParams, tol: Tolerance) -> ValidationReport {
    let mut issues: Vec<ValidationIssue> = grid
        .structural_issues()
        .into_iter()
        .map(ValidationIssue::Structural)
        .collect();
    if params.domain() != grid.domain() {
        issues.push(ValidationIssue::ParamsDomain {
            params: params.domain(),
            grid: grid.domain(),
        });
        return ValidationReport { issues };
    }
    if !params.check(tol) {
        issues.push(ValidationIssue::InvalidParams);
        return ValidationReport { issues };
    }
    let mut sig_ok: Vec<Option<bool>> = vec![None; grid.signatures().len()];
    for v in 0..grid.vertex_count() {
        let idx = grid.vertex_signature_index(v);
        let sig = &grid.signatures()[idx];
        let ok = *sig_ok[idx].get_or_insert_with(|| {
            sig.signature.domain() == grid.domain()
                && matches!(params.find_violation(&sig.signature, tol), Ok(None))
        });
        if !ok {
            issues.push(ValidationIssue::NotFibonacci {
                vertex: v,
                signature: sig.name.clone(),
            });
        }
    }
    ValidationReport { issues }
}

/// Order in which edges are restored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    /// The grid's edge list order.
    #[default]
    Input,
    /// Greedily restore the edge whose merge yields the smallest gate.
    MinArity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub tolerance: Tolerance,
    /// Re-verify every intermediate gate against the parameters.
    pub strict: bool,
    pub order: EdgeOrder,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            tolerance: Tolerance::default(),
            strict: false,
            order: EdgeOrder::Input,
        }
    }
}

/// An intermediate gate that failed re-verification in strict mode.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeViolation {
    pub step: usize,
    pub edge: usize,
    pub arity: usize,
    pub detail: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub value: Complex,
    pub merges: usize,
    pub max_arity: usize,
    /// Number of intermediate gates checked (strict mode only).
    pub verified: usize,
    pub violations: Vec<MergeViolation>,
}

fn next_edge(order: EdgeOrder, pending: &mut Vec<usize>, grid: &SignatureGrid, ds: &mut DisjointSet, gates: &[Option<Gate>]) -> usize {
    match order {
        EdgeOrder::Input => pending.remove(0),
        EdgeOrder::MinArity => {
            let mut best = (usize::MAX, 0);
            for (pos, &e) in pending.iter().enumerate() {
                let (u, v) = grid.edges()[e];
                let (ru, rv) = (ds.find(u), ds.find(v));
                let au = gates[ru].as_ref().map_or(0, Gate::dangling_count);
                let resulting = if ru == rv {
                    au - 2
                } else {
                    au + gates[rv].as_ref().map_or(0, Gate::dangling_count) - 2
                };
                if resulting < best.0 {
                    best = (resulting, pos);
                }
            }
            pending.remove(best.1)
        }
    }
}

/// Engine evaluation with merge statistics and, in strict mode, every
/// intermediate verification failure.
pub fn holant_eval_report(grid: &SignatureGrid, params: &FibParams, opts: &EvalOptions) -> Result<EvalReport> {
    let report = validate_grid(grid, params, opts.tolerance);
    if !report.passed() {
        return Err(Error::InvalidGrid(report.summary()));
    }
    let n = grid.vertex_count();
    let mut ds = DisjointSet::new(n);
    let mut gates: Vec<Option<Gate>> = (0..n)
        .map(|v| Some(Gate::vertex(v, grid.vertex_signature(v).clone())))
        .collect();
    let mut pending: Vec<usize> = (0..grid.edges().len()).collect();
    let mut max_arity = gates.iter().flatten().map(Gate::dangling_count).max().unwrap_or(0);
    let mut violations = Vec::new();
    let mut verified = 0;
    let mut step = 0;

    while !pending.is_empty() {
        let e = next_edge(opts.order, &mut pending, grid, &mut ds, &gates);
        let (u, v) = grid.edges()[e];
        let (ru, rv) = (ds.find(u), ds.find(v));
        let merged = if ru == rv {
            let f = gates[ru].take().expect("root owns a gate");
            let h = merge_self(&f)?;
            gates[ru] = Some(h);
            ru
        } else {
            let f = gates[ru].take().expect("root owns a gate");
            let g = gates[rv].take().expect("root owns a gate");
            let h = merge_cross(&f, &g)?;
            let root = ds.union(ru, rv);
            gates[root] = Some(h);
            root
        };
        let gate = gates[merged].as_ref().expect("just stored");
        max_arity = max_arity.max(gate.dangling_count());
        if opts.strict {
            verified += 1;
            let detail = params.find_violation(gate.signature(), opts.tolerance)?;
            if detail.is_some() {
                violations.push(MergeViolation {
                    step,
                    edge: e,
                    arity: gate.dangling_count(),
                    detail,
                });
            }
        }
        step += 1;
    }

    // Each component is now an arity-0 gate; the Holant is their product.
    let value = gates
        .iter()
        .flatten()
        .map(|g| {
            debug_assert_eq!(g.dangling_count(), 0);
            g.signature().values()[0]
        })
        .product::<Complex>();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(EvalReport {
        value,
        merges: step,
        max_arity,
        verified,
        violations,
    })
}

/// Holant value of a Fibonacci grid. In strict mode an intermediate gate
/// failing verification is an error.
pub fn holant_eval(grid: &SignatureGrid, params: &FibParams, opts: &EvalOptions) -> Result<Complex> {
    let report = holant_eval_report(grid, params, opts)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::NotFibonacci(format!(
            "intermediate gate after merging edge {} (step {}, arity {}) fails verification",
            v.edge, v.step, v.arity
        )));
    }
    Ok(report.value)
}
