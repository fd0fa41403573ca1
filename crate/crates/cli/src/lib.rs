//! Command-line surface: `eval`, `verify`, `fit`, `gen`, `recover-basis`,
//! `selfcheck` and `bench`.
//!
//! Exit status is 0 on success, 1 when the inputs are well formed but the
//! requested computation fails (not Fibonacci, invalid grid, ...), and 2 on
//! usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use holant_core::basis::OrthoBasis;
use holant_core::engine::{cross_entry, holant_eval_report, merge_cross, EdgeOrder, EvalOptions, Gate};
use holant_core::io::{format_complex, to_pretty_json, GeneratorSpec, GridDocument, ParamsDocument, SignatureSpec};
use holant_core::random::{params_for_basis, random_fib_grid, GridShape};
use holant_core::signature::counts_in_order;
use holant_core::{fib3, holant_bruteforce, holant_eval, relative_error, Complex, FibParams, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "holant", about = "Holant evaluation for generalized Fibonacci gates")]
pub struct Cli {
    /// Relative tolerance for every numeric check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Re-verify every intermediate gate during evaluation.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Seed for all randomness.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Input,
    MinArity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Holant value of a grid document.
    Eval {
        grid: PathBuf,
        #[arg(long, conflicts_with = "oracle", required_unless_present = "oracle")]
        params: Option<PathBuf>,
        /// Use exhaustive enumeration instead of the engine.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = OrderArg::Input)]
        order: OrderArg,
    },
    /// Check that every signature of a document is a gate with the given parameters.
    Verify {
        signatures: PathBuf,
        #[arg(long)]
        params: PathBuf,
    },
    /// Fit shared parameters to the signatures of a document.
    Fit { signatures: PathBuf },
    /// Generate a signature from a basis (or a random basis with --domain).
    Gen {
        /// JSON `{"weights": [...], "vectors": [...]}`.
        #[arg(long, conflicts_with = "domain", required_unless_present = "domain")]
        basis: Option<PathBuf>,
        /// Draw a random orthogonal basis over this domain.
        #[arg(long)]
        domain: Option<usize>,
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value = "g")]
        name: String,
    },
    /// Recover the domain-3 basis matrix from parameters.
    RecoverBasis { params: PathBuf },
    /// Split-invariance and merge-preservation checks on random grids.
    Selfcheck {
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Engine vs oracle timing on random grids.
    Bench {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        domain: usize,
    },
}

/// Result of running one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok((ok, stdout)) => Outcome {
            status: if ok { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: 1,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_params(path: &Path) -> anyhow::Result<FibParams> {
    let text = read(path)?;
    ParamsDocument::from_json(&text)
        .and_then(|d| d.to_params())
        .with_context(|| format!("in {}", path.display()))
}

fn load_doc(path: &Path) -> anyhow::Result<GridDocument> {
    GridDocument::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn pairs(values: &[Complex]) -> Vec<[f64; 2]> {
    values.iter().map(|c| [c.re, c.im]).collect()
}

fn dispatch(cli: &Cli) -> anyhow::Result<(bool, String)> {
    let tol = Tolerance::relative(cli.tolerance);
    match &cli.command {
        Command::Eval { grid, params, oracle, order } => {
            let doc = load_doc(grid)?;
            let grid = doc.to_grid(tol).with_context(|| format!("in {}", grid.display()))?;
            let value = if *oracle {
                holant_bruteforce(&grid)?
            } else {
                let params = load_params(params.as_deref().expect("clap requires --params"))?;
                let opts = EvalOptions {
                    tolerance: tol,
                    strict: cli.strict,
                    order: match order {
                        OrderArg::Input => EdgeOrder::Input,
                        OrderArg::MinArity => EdgeOrder::MinArity,
                    },
                };
                holant_eval(&grid, &params, &opts)?
            };
            Ok((true, format!("{}\n", format_complex(value))))
        }
        Command::Verify { signatures, params } => {
            let doc = load_doc(signatures)?;
            let params = load_params(params)?;
            let params_ok = params.check(tol);
            let mut all = params_ok;
            let mut rows = Vec::new();
            for s in doc.named_signatures(tol)? {
                let ok = params.verify_gate(&s.signature, tol)?;
                all &= ok;
                rows.push(json!({"name": s.name, "arity": s.signature.arity(), "fibonacci": ok}));
            }
            let out = json!({"params_valid": params_ok, "signatures": rows, "all_fibonacci": all});
            Ok((all, format!("{}\n", to_pretty_json(&out))))
        }
        Command::Fit { signatures } => {
            let doc = load_doc(signatures)?;
            let sigs: Vec<_> = doc.named_signatures(tol)?.into_iter().map(|s| s.signature).collect();
            let params = FibParams::fit(doc.domain, &sigs, tol)?;
            Ok((true, format!("{}\n", ParamsDocument::from_params(&params).to_json())))
        }
        Command::Gen { basis, domain, arity, name } => {
            let (domain, spec) = match (basis, domain) {
                (Some(path), _) => {
                    let spec: GeneratorSpec =
                        serde_json::from_str(&read(path)?).with_context(|| format!("in {}", path.display()))?;
                    (spec.vectors.len(), spec)
                }
                (None, Some(d)) => {
                    if !(3..=4).contains(d) {
                        bail!("--domain must be 3 or 4");
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    let b = OrthoBasis::random(&mut rng, *d, false);
                    let vectors = (0..*d).map(|k| pairs(&b.vector(k))).collect();
                    (*d, GeneratorSpec { weights: pairs(b.weights()), vectors })
                }
                (None, None) => unreachable!("clap requires --basis or --domain"),
            };
            let gen_spec = SignatureSpec {
                name: name.clone(),
                arity: *arity,
                values: None,
                generator: Some(spec.clone()),
            };
            let sig = gen_spec.expand(domain, tol)?;
            let doc = GridDocument {
                domain,
                signatures: vec![SignatureSpec::from_signature(name, &sig)],
                vertices: vec![],
                edges: vec![],
            };
            Ok((true, format!("{}\n", doc.to_json())))
        }
        Command::RecoverBasis { params } => {
            let params = match load_params(params)? {
                FibParams::D3(p) => p,
                FibParams::D4(_) => bail!("basis recovery is only available for domain 3"),
            };
            let rep = fib3::recover_basis(&params, tol)?;
            let out = json!({
                "roots": pairs(&rep.roots),
                "vectors": rep.vectors.map(|vs| vs.iter().map(|v| pairs(v)).collect::<Vec<_>>()),
                "degeneracy": rep.degeneracy.map(|d| json!({
                    "products": pairs(&d.products),
                    "message": d.message,
                })),
            });
            Ok((true, format!("{}\n", to_pretty_json(&out))))
        }
        Command::Selfcheck { count } => selfcheck(cli.seed, *count, tol),
        Command::Bench { count, domain } => bench(cli.seed, *count, *domain, tol),
    }
}

fn selfcheck(seed: u64, count: usize, tol: Tolerance) -> anyhow::Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut split_checks = 0usize;
    let mut split_failures = 0usize;
    let mut gates = 0usize;
    let mut violations = 0usize;
    let mut oracle_failures = 0usize;
    let check_tol = Tolerance::relative(tol.rel.max(1e-8));
    for case in 0..count {
        let domain = if case % 2 == 0 { 3 } else { 4 };
        let basis = OrthoBasis::random(&mut rng, domain, true);
        let params = params_for_basis(&basis, tol)?;

        let rf = rng.gen_range(1..=3);
        let rg = rng.gen_range(1..=3);
        let f = basis.generate(rf);
        let g = basis.generate(rg);
        let h = merge_cross(&Gate::vertex(0, f.clone()), &Gate::vertex(1, g.clone()))?;
        for m in counts_in_order(domain, rf + rg - 2) {
            let reference = h.signature().at(&m);
            for mf in counts_in_order(domain, rf - 1) {
                if mf.iter().zip(&m).any(|(a, b)| a > b) {
                    continue;
                }
                let mg: Vec<usize> = m.iter().zip(&mf).map(|(a, b)| a - b).collect();
                split_checks += 1;
                let v = cross_entry(&f, &g, &mf, &mg);
                if !check_tol.within(v, reference, f.max_norm() * g.max_norm()) {
                    split_failures += 1;
                }
            }
        }

        let grid = random_fib_grid(&mut rng, &basis, GridShape::default())?;
        let opts = EvalOptions { tolerance: check_tol, strict: true, order: EdgeOrder::Input };
        let rep = holant_eval_report(&grid, &params, &opts)?;
        gates += rep.verified;
        violations += rep.violations.len();
        if relative_error(rep.value, holant_bruteforce(&grid)?) > 1e-8 {
            oracle_failures += 1;
        }
    }
    let ok = split_failures == 0 && violations == 0 && oracle_failures == 0;
    let out = json!({
        "cases": count,
        "split_checks": split_checks,
        "split_failures": split_failures,
        "intermediate_gates": gates,
        "merge_violations": violations,
        "oracle_mismatches": oracle_failures,
        "passed": ok,
    });
    Ok((ok, format!("{}\n", to_pretty_json(&out))))
}

fn bench(seed: u64, count: usize, domain: usize, tol: Tolerance) -> anyhow::Result<(bool, String)> {
    if !(3..=4).contains(&domain) {
        return Err(anyhow!("--domain must be 3 or 4"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut engine_total = 0.0;
    let mut oracle_total = 0.0;
    for edges in (2..=10).step_by(2) {
        let shape = GridShape { min_vertices: 2, max_vertices: edges, max_edges: edges, max_arity: 4 };
        let mut engine_secs = 0.0;
        let mut oracle_secs = 0.0;
        let mut worst: f64 = 0.0;
        for _ in 0..count {
            let basis = OrthoBasis::random(&mut rng, domain, true);
            let params = params_for_basis(&basis, tol)?;
            let grid = random_fib_grid(&mut rng, &basis, shape)?;
            let t = Instant::now();
            let e = holant_eval(&grid, &params, &EvalOptions::default())?;
            engine_secs += t.elapsed().as_secs_f64();
            let t = Instant::now();
            let o = holant_bruteforce(&grid)?;
            oracle_secs += t.elapsed().as_secs_f64();
            worst = worst.max(relative_error(e, o));
        }
        engine_total += engine_secs;
        oracle_total += oracle_secs;
        rows.push(json!({
            "max_edges": edges,
            "grids": count,
            "engine_seconds": engine_secs,
            "oracle_seconds": oracle_secs,
            "max_relative_error": worst,
        }));
    }
    let out = json!({"domain": domain, "rows": rows, "engine_seconds": engine_total, "oracle_seconds": oracle_total});
    Ok((true, format!("{}\n", to_pretty_json(&out))))
}
