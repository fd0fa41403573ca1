//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::time::Instant;

use holant_core::basis::OrthoBasis;
use holant_core::cubic::multiset_distance;
use holant_core::engine::{holant_eval_report, EvalOptions};
use holant_core::random::{fib_grid_on_edges, params_for_basis, random_fib_grid, random_regular_edges, shuffled, GridShape};
use holant_core::signature::SymmetricSignature;
use holant_core::{
    fib3, fib4, holant_bruteforce, holant_eval, relative_error, Complex, FibParams, FibParamsD3, SignatureGrid, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GRIDS_PER_DOMAIN: usize = 200;
const ORACLE_TOL: f64 = 1e-8;
const FIXTURE_TOL: f64 = 1e-10;
const D3_CONSTRAINT_TOL: f64 = 1e-9;
const D4_CONSTRAINT_TOL: f64 = 1e-8;
const ROOT_TOL: f64 = 1e-6;
const COMPLETION_TOL: f64 = 1e-9;
const SCALING_SECONDS: f64 = 5.0;
const ORDER_TOL: f64 = 1e-6;

fn r(v: f64) -> Complex {
    Complex::new(v, 0.0)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn b3() -> OrthoBasis {
    OrthoBasis::new(
        vec![r(1.0); 3],
        vec![vec![r(1.0), r(-2.0)], vec![r(-1.0), r(0.0)], vec![r(1.0), r(1.0)]],
        Tolerance::default(),
    )
    .unwrap()
}

fn h4() -> OrthoBasis {
    let v = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    OrthoBasis::new(
        vec![r(1.0); 4],
        v.iter().map(|t| t.iter().map(|&x| r(x)).collect()).collect(),
        Tolerance::default(),
    )
    .unwrap()
}

fn random_grids(domain: usize, seed: u64) -> Vec<(SignatureGrid, FibParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..GRIDS_PER_DOMAIN)
        .map(|_| {
            let basis = OrthoBasis::random(&mut rng, domain, true);
            let params = params_for_basis(&basis, Tolerance::default()).expect("random basis yields parameters");
            let grid = random_fib_grid(&mut rng, &basis, GridShape::default()).unwrap();
            (grid, params)
        })
        .collect()
}

fn oracle_equivalence(cases: &[(SignatureGrid, FibParams)]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (grid, params) in cases {
        let engine = holant_eval(grid, params, &EvalOptions::default()).unwrap();
        let oracle = holant_bruteforce(grid).unwrap();
        worst = worst.max(relative_error(engine, oracle));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= ORACLE_TOL && secs < 60.0,
        format!("{} grids, max rel err {worst:.2e}, {secs:.2}s", cases.len()),
    )
}

fn fixtures() -> Outcome {
    let tol = Tolerance::relative(FIXTURE_TOL);
    let opts = EvalOptions::default();
    let p3: FibParams = FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0).into();
    let g3 = fib3::generate(&b3(), 3).unwrap();
    let triple3 = SignatureGrid::from_vertex_signatures(3, vec![g3.clone(), g3], vec![(0, 1); 3]).unwrap();
    let g4 = fib4::generate(&h4(), 3, Tolerance::default()).unwrap();
    let p4: FibParams = fib4::fit_params(std::slice::from_ref(&g4), Tolerance::default()).unwrap().into();
    let triple4 = SignatureGrid::from_vertex_signatures(4, vec![g4.clone(), g4], vec![(0, 1); 3]).unwrap();
    let twice = triple3.disjoint_union(&triple3).unwrap();
    let unary = SignatureGrid::from_vertex_signatures(
        3,
        vec![
            SymmetricSignature::from_reals(3, 1, &[1.0, 2.0, 3.0]).unwrap(),
            SymmetricSignature::from_reals(3, 1, &[1.0, 1.0, 1.0]).unwrap(),
        ],
        vec![(0, 1)],
    )
    .unwrap();
    let cases = [
        ("B3 triple edge", &triple3, &p3, 251.0),
        ("H4 triple edge", &triple4, &p4, 256.0),
        ("two B3 copies", &twice, &p3, 63001.0),
        ("unary edge", &unary, &p3, 6.0),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, grid, params, expected) in cases {
        let engine = holant_eval(grid, params, &opts).unwrap();
        let oracle = holant_bruteforce(grid).unwrap();
        let ok = tol.close(engine, r(expected)) && tol.close(oracle, r(expected));
        pass &= ok;
        notes.push(format!("{name}={}", engine.re));
    }
    outcome(pass, notes.join(", "))
}

fn merge_preservation(cases: &[(SignatureGrid, FibParams)]) -> Outcome {
    let opts = EvalOptions {
        strict: true,
        ..Default::default()
    };
    let mut checked = 0;
    let mut violations = 0;
    for (grid, params) in cases {
        let rep = holant_eval_report(grid, params, &opts).unwrap();
        checked += rep.verified;
        violations += rep.violations.len();
    }
    outcome(
        violations == 0 && checked > 0,
        format!("{checked} intermediate gates, {violations} violations"),
    )
}

fn constraint_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tol3 = Tolerance::relative(D3_CONSTRAINT_TOL);
    let tol4 = Tolerance::relative(D4_CONSTRAINT_TOL);
    let mut fail3 = 0;
    for _ in 0..500 {
        let basis = OrthoBasis::random(&mut rng, 3, true);
        let p = fib3::params_from_basis(&basis, Tolerance::default()).unwrap();
        if !fib3::check_params(&p, tol3) {
            fail3 += 1;
        }
    }
    let mut fail4 = 0;
    for _ in 0..500 {
        let basis = OrthoBasis::random(&mut rng, 4, true);
        let g = fib4::generate(&basis, 3, Tolerance::default()).unwrap();
        match fib4::fit_params(&[g], tol4) {
            Ok(q) if fib4::check_params(&q, tol4) && fib4::check_side_relations(&q, tol4) => {}
            _ => fail4 += 1,
        }
    }
    outcome(
        fail3 == 0 && fail4 == 0,
        format!("domain 3: {fail3}/500 failures, domain 4: {fail4}/500 failures"),
    )
}

fn recovery_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 200 {
        let basis = OrthoBasis::random(&mut rng, 3, true);
        let t = basis.tails();
        let roots = [t[0][0], t[1][0], t[2][0]];
        let spread = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| (roots[i] - roots[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if spread < 1e-3 {
            continue;
        }
        let p = fib3::params_from_basis(&basis, Tolerance::default()).unwrap();
        let rep = fib3::recover_basis(&p, Tolerance::default()).unwrap();
        worst = worst.max(multiset_distance(&rep.roots, &roots));
        done += 1;
    }
    let fixture = fib3::recover_basis(&FibParamsD3::from_reals(0.0, 0.0, 1.0, -1.0), Tolerance::default()).unwrap();
    let fixture_ok = multiset_distance(&fixture.roots, &[r(1.0), r(1.0), r(-1.0)]) <= ROOT_TOL
        && fixture.degeneracy.is_some()
        && fixture.vectors.is_none();
    outcome(
        worst <= ROOT_TOL && fixture_ok,
        format!("200 triples, max root err {worst:.2e}; repeated-root fixture degenerate={}", fixture.degeneracy.is_some()),
    )
}

fn completion_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let tol = Tolerance::relative(COMPLETION_TOL);
    let mut failures = 0;
    let mut total = 0;
    for _ in 0..50 {
        let basis = OrthoBasis::random(&mut rng, 3, true);
        let p = fib3::params_from_basis(&basis, Tolerance::default()).unwrap();
        for n in 1..=8 {
            let g = fib3::generate(&basis, n).unwrap();
            let top = [g.values()[0], g.values()[1], g.values()[2]];
            let c = fib3::complete_from_top(top, &p, n, Tolerance::default()).unwrap();
            total += 1;
            if !c.is_close(&g, tol) {
                failures += 1;
            }
        }
        let basis = OrthoBasis::random(&mut rng, 4, true);
        let q = fib4::params_from_basis(&basis, Tolerance::default()).unwrap();
        for n in 1..=6 {
            let g = fib4::generate(&basis, n, Tolerance::default()).unwrap();
            let top = [g.values()[0], g.values()[1], g.values()[2], g.values()[3]];
            let c = fib4::complete_from_top(top, &q, n, Tolerance::default()).unwrap();
            total += 1;
            if !c.is_close(&g, tol) {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{failures}/{total} signatures differ"))
}

fn polynomial_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let basis = b3();
    let params: FibParams = fib3::params_from_basis(&basis, Tolerance::default()).unwrap().into();
    let edges = random_regular_edges(&mut rng, 100, 3);
    let grid = fib_grid_on_edges(&mut rng, &basis, 100, edges).unwrap();

    let start = Instant::now();
    let value = holant_eval(&grid, &params, &EvalOptions::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();

    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let perm = shuffled(&mut rng, grid.edges());
        let other = holant_eval(&grid.with_edges(perm), &params, &EvalOptions::default()).unwrap();
        worst = worst.max((other - value).norm() / value.norm());
    }
    let finite = value.re.is_finite() && value.im.is_finite() && value.norm() > 0.0;
    outcome(
        finite && secs < SCALING_SECONDS && worst <= ORDER_TOL,
        format!("100 vertices / 150 edges in {secs:.3}s, |H|={:.3e}, order spread {worst:.2e}", value.norm()),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let d3 = random_grids(3, 1);
    let d4 = random_grids(4, 2);
    let all: Vec<_> = d3.iter().chain(&d4).cloned().collect();

    let criteria: Vec<Criterion> = vec![
        ("1 oracle equivalence (d=3)", Box::new(|| oracle_equivalence(&d3))),
        ("1 oracle equivalence (d=4)", Box::new(|| oracle_equivalence(&d4))),
        ("2 fixture exactness", Box::new(fixtures)),
        ("3 merge preservation", Box::new(|| merge_preservation(&all))),
        ("4 constraint identities", Box::new(constraint_identities)),
        ("5 recovery round trip", Box::new(recovery_round_trip)),
        ("6 completion round trip", Box::new(completion_round_trip)),
        ("7 polynomial scaling", Box::new(polynomial_scaling)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
