//! Acceptance criteria, one PASS/FAIL line each. Runs sequentially so the
//! reported times are meaningful; exits non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tuttebound::graph::{is_connected, maxmaxflow, potts_brute, tutte_brute, BruteLimits, Multigraph};
use tuttebound::leaf::{cardioid_cusp, conjecture_scan};
use tuttebound::region::*;
use tuttebound::roots::find_roots;
use tuttebound::tutte::{algorithm1, chromatic_poly_tree};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

const TABLE: [(usize, f64, f64, f64, f64); 9] = [
    (2, 1.0, 1.0, 1.0, 1.0),
    (3, 0.376086, 0.333333, 2.658967, 3.0),
    (4, 0.240380, 0.219471, 4.160076, 4.556417),
    (5, 0.177591, 0.165204, 5.630929, 6.053134),
    (6, 0.141038, 0.132841, 7.090297, 7.527812),
    (7, 0.117041, 0.111213, 8.544040, 8.991750),
    (8, 0.100054, 0.095697, 9.994599, 10.449611),
    (9, 0.087388, 0.084008, 11.443181, 11.903688),
    (10, 0.077577, 0.074877, 12.890449, 13.355246),
];

fn critical_radius_table() -> Outcome {
    let rows = match rho_table(10) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut worst: f64 = 0.0;
    for (row, want) in rows.iter().zip(TABLE.iter()) {
        if row.lambda != want.0 {
            return outcome(false, format!("row for Lambda {} where {} expected", row.lambda, want.0));
        }
        for (got, w) in [
            (row.rho_star, want.1),
            (row.rho_double_star, want.2),
            (row.inv_rho_star, want.3),
            (row.inv_rho_double_star, want.4),
        ] {
            worst = worst.max((got - w).abs());
        }
    }
    let ok = rows.len() == TABLE.len() && worst <= 1e-6;
    outcome(ok, format!("{} rows, 36 values, max deviation {worst:.2e}", rows.len()))
}

fn lambda_three_constants() -> Outcome {
    let inv = 1.0 / rho_star(3).unwrap();
    let uniform = uniform_root_radius(3);
    let ok = (inv - 2.6589670819).abs() <= 1e-9 && (uniform - 2.8853900818).abs() <= 1e-9 && inv < uniform;
    outcome(ok, format!("1/rho*_3 = {inv:.10}, 2/log 2 = {uniform:.10}"))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn exact_evaluation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC3);
    let mut mismatches = 0;
    for _ in 0..500 {
        let edges = rng.gen_range(1..=10);
        let expr = common::random_expr(&mut rng, edges, 0.3);
        let (g, tree) = expr.build();
        let mut r = || rat(rng.gen_range(-4..=4), rng.gen_range(1..=4));
        let q = r();
        let w: Vec<BigRational> = (0..g.graph.edge_count()).map(|_| r()).collect();
        let z = algorithm1(&tree, &q, &w).unwrap().z(&q);
        if z != tutte_brute(&g.graph, &q, &w, BruteLimits::default()).unwrap() {
            mismatches += 1;
        }
    }
    let mut graphs = 0;
    let mut potts_mismatches = 0;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            let g = Multigraph::new(n, edges).unwrap();
            if !is_connected(&g) {
                continue;
            }
            graphs += 1;
            let w = vec![BigInt::from(-1); g.edge_count()];
            for q in 1..=4usize {
                let potts = potts_brute(&g, q, &w, BruteLimits::default()).unwrap();
                if potts != tutte_brute(&g, &BigInt::from(q), &w, BruteLimits::default()).unwrap() {
                    potts_mismatches += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0 && potts_mismatches == 0 && graphs == 1 + 1 + 4 + 38 + 728,
        format!(
            "500 expressions: {mismatches} mismatches; {graphs} connected labelled graphs x 4 colours: {potts_mismatches} mismatches"
        ),
    )
}

fn counterexample() -> Outcome {
    let c = match counterexample_94(1e-6) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let target = Complex64::new(-0.144883, -1.651418);
    let near = |z: Complex64| (z.re - target.re).abs() <= 1e-4 && (z.im - target.im).abs() <= 1e-4;
    let ok = c.omega_roots.len() == 31
        && c.conj_roots.len() == 31
        && (near(c.witness) || near(c.witness.conj()))
        && (2.00945..=2.00948).contains(&c.witness_distance)
        && c.h_vertices == 94
        && c.h_residual < 1e-6
        && c.validated;
    outcome(
        ok,
        format!(
            "{}+{} roots, witness {:.8}{:+.8}i, |q-1| = {:.8}, {} vertices, residual {:.1e}",
            c.omega_roots.len(),
            c.conj_roots.len(),
            c.witness.re,
            c.witness.im,
            c.witness_distance,
            c.h_vertices,
            c.h_residual
        ),
    )
}

fn transmissivity_on_circle() -> Outcome {
    let five = match teff_circle_max(2, 5, 2.0, SCAN_POINTS) {
        Ok(m) => m,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut smaller = Vec::new();
    for n in 1..=4 {
        smaller.push(teff_circle_max(2, n, 2.0, SCAN_POINTS).map(|m| m.max_abs).unwrap_or(f64::INFINITY));
    }
    let ok = (five.max_abs - 1.08448).abs() <= 1e-4
        && (five.theta_over_pi.abs() - 0.679954).abs() <= 1e-3
        && smaller.iter().all(|m| *m < 1.0);
    let shown: Vec<String> = smaller.iter().map(|m| format!("{m:.4}")).collect();
    outcome(
        ok,
        format!(
            "n = 5: max {:.6} at theta = {:.6} pi; n = 1..4: [{}]",
            five.max_abs,
            five.theta_over_pi,
            shown.join(", ")
        ),
    )
}

fn certification_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC6);
    let mut details = Vec::new();
    let mut ok = true;
    for lambda in 3..=5usize {
        let threshold = 1.0 / rho_star(lambda).unwrap();
        let (mut found, mut roots, mut bad, mut tries, mut worst) = (0, 0, 0, 0, 0.0f64);
        while found < 200 && tries < 200_000 {
            tries += 1;
            let edges = rng.gen_range(lambda..=45);
            let expr = common::random_expr(&mut rng, edges, 0.0);
            if expr.vertex_count() > 40 {
                continue;
            }
            let (g, tree) = expr.build();
            if maxmaxflow(&g.graph).unwrap() != lambda {
                continue;
            }
            found += 1;
            let p = chromatic_poly_tree(&tree).unwrap();
            let rs = find_roots(&p, 1e-12).unwrap();
            if !rs.converged {
                bad += 1;
            }
            for z in &rs.roots {
                roots += 1;
                let d = (z - 1.0).norm();
                worst = worst.max(d);
                if d >= threshold || certify(*z, lambda, CertifyMode::Chromatic).unwrap().certified {
                    bad += 1;
                }
            }
        }
        ok &= found == 200 && bad == 0;
        details.push(format!("Lambda {lambda}: {found} graphs, {roots} roots, max |q-1| {worst:.4} < {threshold:.4}, {bad} failures"));
    }
    let (mut found, mut bad, mut second_branch) = (0, 0, 0);
    while found < 100 {
        let edges = rng.gen_range(5..=30);
        let expr = common::random_expr(&mut rng, edges, 0.4);
        if !common::has_wheatstone(&expr) || expr.vertex_count() > 40 {
            continue;
        }
        found += 1;
        let (g, tree) = expr.build();
        let lambda = maxmaxflow(&g.graph).unwrap();
        let rs = find_roots(&chromatic_poly_tree(&tree).unwrap(), 1e-12).unwrap();
        for z in &rs.roots {
            let rho = 1.0 / (z - 1.0).norm();
            let near_one = rho > rho_star(lambda).unwrap();
            let x = RadiiParams { rho, choice: RadiiChoice::Maximal }.x(lambda);
            let near_two = (z - 2.0).norm() < 2.0 * (1.0 - rho * x * x) / (x * x - 1.0);
            if !near_one && near_two {
                second_branch += 1;
            }
            if !(near_one || near_two) || certify(*z, lambda, CertifyMode::Wheatstone).unwrap().certified {
                bad += 1;
            }
        }
        if !rs.converged {
            bad += 1;
        }
    }
    ok &= bad == 0;
    details.push(format!("{found} bridge graphs: {second_branch} roots only near 2, {bad} failures"));
    outcome(ok, details.join("; "))
}

fn leaf_tree_scan() -> Outcome {
    let (report, _) = match conjecture_scan(2, 8, 1e-12) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let worst = report.rows.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let converged = report.rows.iter().all(|r| r.converged);
    let cusp = cardioid_cusp();
    let ok = report.total_violations == 0
        && worst < 1e-8
        && converged
        && (cusp - Complex64::new(1.25, 0.0)).norm() <= 1e-9;
    outcome(
        ok,
        format!(
            "n = 1..8: {} violations, max residual {worst:.1e}, nondecreasing = {}; cusp {cusp}",
            report.total_violations, report.nondecreasing
        ),
    )
}

fn region_machinery() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC8);

    let mut assoc: f64 = 0.0;
    let mut triples = 0;
    while triples < 1000 {
        let rho = rng.gen_range(0.05..0.95);
        let x = [(); 3].map(|_| rng.gen_range(0.0..rho * rho / 3.0));
        let f = |a, b| f_bound(a, b, rho);
        let (Ok(ab), Ok(bc)) = (f(x[0], x[1]), f(x[1], x[2])) else { continue };
        let (Ok(l), Ok(r)) = (f(ab, x[2]), f(x[0], bc)) else { continue };
        triples += 1;
        assoc = assoc.max((l - r).abs());
    }
    if assoc > 1e-14 {
        failures.push(format!("associativity off by {assoc:.1e}"));
    }

    let mut closed: f64 = 0.0;
    let mut switch_bad = 0;
    for lambda in 3..=10 {
        let rs = rho_star(lambda).unwrap();
        for k in 1..=40 {
            let rho = rs * k as f64 / 40.0;
            for choice in [RadiiChoice::Minimal, RadiiChoice::Maximal] {
                let c = radii(RadiiParams { rho, choice }, lambda).unwrap();
                let it = radii_iterated(c[0], rho, lambda).unwrap();
                closed = c.iter().zip(&it).map(|(a, b)| (a - b).abs()).fold(closed, f64::max);
            }
        }
        for k in 1..=400 {
            let rho = k as f64 / 401.0;
            let fits = |choice| radii(RadiiParams { rho, choice }, lambda).map(|r| feasible(&r, rho, 1e-12)).unwrap_or(false);
            let want = rho <= rs;
            if fits(RadiiChoice::Minimal) != want || fits(RadiiChoice::Maximal) != want || disc_condition(rho, lambda) != want {
                switch_bad += 1;
            }
        }
    }
    if closed > 1e-13 {
        failures.push(format!("closed-form radii off by {closed:.1e}"));
    }
    if switch_bad > 0 {
        failures.push(format!("{switch_bad} grid points where feasibility disagrees with rho*"));
    }

    let mut arc_bad = 0;
    for _ in 0..20 {
        let q = 1.0 + Complex64::from_polar(rng.gen_range(1.2..6.0), rng.gen_range(-PI..PI));
        let rho = 1.0 / (q - 1.0).norm();
        for k in 0..=50 {
            if !par_preserves_disc(cq_point(-(k as f64) / 50.0, q), q, rho, 1e-9) {
                arc_bad += 1;
            }
        }
        let mut off = 0;
        while off < 20 {
            let t = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * rho;
            if in_cq(t, q, 1e-6) {
                continue;
            }
            off += 1;
            if par_preserves_disc(t, q, rho, 1e-12) {
                arc_bad += 1;
            }
        }
    }
    if arc_bad > 0 {
        failures.push(format!("{arc_bad} points where disc preservation fails on or off the arc"));
    }

    let mut grid = Vec::new();
    for angle in [PI / 12.0, PI / 6.0, PI / 3.0] {
        let q = 1.0 + Complex64::from_polar(2.2, angle);
        match grid_closure(q, 3, 256) {
            Ok(g) if !g.escaped => grid.push(format!("{} cells", g.count(2))),
            Ok(_) => failures.push(format!("grid escaped at 1 + 2.2 e^(i {:.4})", angle)),
            Err(e) => failures.push(e.to_string()),
        }
    }
    match grid_closure(Complex64::new(1.1, 0.0), 3, 256) {
        Ok(g) if g.escaped => {}
        Ok(_) => failures.push("grid at q = 1.1 did not escape".into()),
        Err(e) => failures.push(e.to_string()),
    }

    let detail = format!(
        "{triples} triples (assoc {assoc:.1e}), radii {closed:.1e}, 3200 feasibility points, 20 arc checks, grid S_2 sizes [{}]",
        grid.join(", ")
    );
    if failures.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", failures.join("; ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("critical radius table", Duration::from_secs(1), critical_radius_table),
        ("Lambda = 3 constants", Duration::from_secs(1), lambda_three_constants),
        ("exact evaluation against brute force", Duration::from_secs(120), exact_evaluation),
        ("94-vertex counterexample", Duration::from_secs(300), counterexample),
        ("transmissivity on |q - 1| = 2", Duration::from_secs(300), transmissivity_on_circle),
        ("certification never covers a root", Duration::from_secs(600), certification_soundness),
        ("leaf-joined tree scan and cusp", Duration::from_secs(600), leaf_tree_scan),
        ("region machinery and grid closure", Duration::from_secs(300), region_machinery),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= *budget;
        let pass = out.ok && in_time;
        if !pass {
            failed += 1;
        }
        let time_note = if in_time { String::new() } else { format!(" (over the {}s budget)", budget.as_secs()) };
        println!(
            "{} criterion {}: {name}: {} [{:.2}s{time_note}]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            took.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
