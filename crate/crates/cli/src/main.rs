//! `tuttebound`: Tutte and chromatic polynomials of series-parallel graphs,
//! maxmaxflow, zero-free region certificates and the leaf-joined tree probes.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::{json, Value};

use output::{complex_json, ext_json, num, parse_complex, Artifact, Csv, Destination};
use tuttebound::graph::{maxmaxflow, read_graph_json, read_weights_json, BruteLimits, GraphRecord};
use tuttebound::leaf::{conjecture_scan, leaf_tree_chromatic_poly, multiplier_loci, t_eff_leaf_tree, LocusKind};
use tuttebound::region::{
    boundary_curve, certify, counterexample_94, grid_closure, rho_table, teff_circle_max, verify_family, CertifyMode,
    SCAN_POINTS,
};
use tuttebound::roots::{find_roots, RootSet};
use tuttebound::sp::{decompose_sp, parse_sp};
use tuttebound::tutte::{algorithm2, chromatic_poly, chromatic_poly_tree};
use tuttebound::{BigPoly, DecompTree, Error, System, TwoTerminalGraph, WeightAssignment};

#[derive(Parser, Debug)]
#[command(name = "tuttebound", version, about = "Chromatic and Tutte polynomials of series-parallel graphs and their zero-free regions")]
struct Cli {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Manifest path; defaults to `<out>.manifest.json`, or stderr without `--out`.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "TUTTEBOUND_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maxmaxflow of a graph.
    Flow(GraphInput),
    /// Tutte partition function and chromatic polynomial.
    #[command(subcommand)]
    Tutte(TutteCmd),
    /// Series-parallel structure.
    #[command(subcommand)]
    Sp(SpCmd),
    /// Zero-free regions and their sharpness.
    #[command(subcommand)]
    Region(RegionCmd),
    /// Leaf-joined trees: roots, transmissivity and stability curves.
    #[command(subcommand)]
    Leaftree(LeafCmd),
    /// Polynomial root finding.
    #[command(subcommand)]
    Roots(RootsCmd),
}

#[derive(Args, Debug, Clone)]
struct GraphInput {
    /// Series-parallel expression, e.g. "P(S(e,e),S(e,e))".
    #[arg(long, conflicts_with = "graph")]
    dsl: Option<String>,
    /// Graph JSON file: {"vertices": n, "edges": [[a,b],...], "s": i, "t": j}.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum TutteCmd {
    /// Evaluate Z at complex q.
    Eval {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Complex64,
        /// Weights JSON file; all edges get v = -1 when omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Exact chromatic polynomial.
    Chromatic {
        #[command(flatten)]
        input: GraphInput,
    },
}

#[derive(Subcommand, Debug)]
enum SpCmd {
    /// Series-parallel decomposition tree.
    Decompose {
        #[command(flatten)]
        input: GraphInput,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Chromatic,
    Antiferro,
    Wheatstone,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Locus {
    Circle,
    Cardioid,
    Egg,
}

#[derive(Subcommand, Debug)]
enum RegionCmd {
    /// Certify that q is not a root for maxmaxflow at most Lambda.
    Certify {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Complex64,
        #[arg(long)]
        lambda: usize,
        #[arg(long, value_enum, default_value = "chromatic")]
        mode: Mode,
        /// Sample points per inclusion check of the audit.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Rasterised region closure; CSV of (level, t_re, t_im).
    Grid {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Complex64,
        #[arg(long, default_value_t = 3)]
        lambda: usize,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
    },
    /// Largest rho for which the exact radii stay feasible; CSV of (theta, rho_max).
    Boundary {
        #[arg(long, default_value_t = 3)]
        lambda: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Critical radii for Lambda = 2..lambda-max.
    RhoTable {
        #[arg(long, default_value_t = 10)]
        lambda_max: usize,
    },
    /// The 94-vertex graph with a chromatic root beyond |q - 1| = 2.
    Counterexample {
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
enum LeafCmd {
    /// Chromatic roots of the leaf-joined tree; CSV of (re, im, residual).
    Roots {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Exact effective transmissivity of one leaf-joined tree.
    Teff {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Also evaluate at this q.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Option<Complex64>,
        /// Also report the largest modulus on |q - 1| = radius.
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Marginal-stability curves; CSV of (kind, phi, q_re, q_im).
    Loci {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, value_enum, default_value = "circle")]
        kind: Locus,
        #[arg(long, default_value_t = 720)]
        samples: usize,
    },
    /// Root counts against |q - 1| < r for n = 1..n-max.
    Scan {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
enum RootsCmd {
    /// Roots of an integer polynomial or of a graph's chromatic polynomial.
    Solve {
        /// Ascending integer coefficients, e.g. "2,-3,1".
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["dsl", "graph"])]
        coeffs: Option<String>,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

struct Loaded {
    graph: TwoTerminalGraph,
    tree: Option<DecompTree>,
}

impl GraphInput {
    fn describe(&self) -> Value {
        json!({ "dsl": self.dsl, "graph": self.graph })
    }

    /// Graph with a decomposition tree when it is series-parallel; a graph
    /// file without terminals yields no tree.
    fn load(&self) -> Result<Loaded> {
        match (&self.dsl, &self.graph) {
            (Some(text), None) => {
                let (graph, tree) = parse_sp(text)?;
                Ok(Loaded { graph, tree: Some(tree) })
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let record = read_graph_json(&text)?;
                match record.two_terminal()? {
                    Some(graph) => {
                        let tree = decompose_sp(&graph)?;
                        Ok(Loaded { graph, tree })
                    }
                    None => Ok(Loaded { graph: TwoTerminalGraph { graph: record.graph()?, s: 0, t: 0 }, tree: None }),
                }
            }
            _ => bail!(Error::Input("give exactly one of --dsl and --graph".into())),
        }
    }
}

fn poly_json(p: &BigPoly) -> Value {
    json!({
        "degree": p.degree(),
        "coefficients": p.to_decimal_strings(),
        "text": p.to_string(),
    })
}

fn chromatic_of(loaded: &Loaded) -> Result<BigPoly> {
    Ok(match &loaded.tree {
        Some(tree) => chromatic_poly_tree(tree)?,
        None => chromatic_poly(&loaded.graph.graph, BruteLimits::default())?,
    })
}

fn roots_csv(rs: &RootSet, multiplicity: bool) -> String {
    let mut header = vec!["re", "im", "residual"];
    if multiplicity {
        header.push("multiplicity");
    }
    let mut csv = Csv::new(&header);
    for (i, z) in rs.roots.iter().enumerate() {
        let mut cells = vec![num(z.re), num(z.im), num(rs.residuals[i])];
        if multiplicity {
            cells.push(rs.multiplicities[i].to_string());
        }
        csv.row(&cells);
    }
    csv.finish()
}

fn roots_summary(rs: &RootSet) -> Value {
    json!({
        "degree": rs.degree,
        "roots": rs.roots.len(),
        "max_residual": rs.tolerance_achieved,
        "converged": rs.converged,
    })
}

fn run(command: &Command) -> Result<Artifact> {
    match command {
        Command::Flow(input) => {
            let loaded = input.load()?;
            let g = &loaded.graph.graph;
            Artifact::json(&json!({
                "maxmaxflow": maxmaxflow(g)?,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
            }))
        }
        Command::Tutte(TutteCmd::Eval { input, q, weights }) => {
            let loaded = input.load()?;
            let Some(tree) = &loaded.tree else {
                bail!(Error::Input("evaluation needs a series-parallel graph with terminals".into()));
            };
            let m = loaded.graph.graph.edge_count();
            let w = match weights {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    read_weights_json(&text, m)?
                }
                None => WeightAssignment::chromatic(m),
            };
            let res = algorithm2(tree, *q, &w)?;
            let system = match w.system {
                System::V => "v",
                System::T => "t",
                System::Y => "y",
            };
            Artifact::json(&json!({
                "q": complex_json(*q),
                "system": system,
                "z": ext_json(res.z),
                "v_eff": ext_json(res.v_eff),
                "prefactor": complex_json(res.prefactor),
            }))
        }
        Command::Tutte(TutteCmd::Chromatic { input }) => {
            let loaded = input.load()?;
            let p = chromatic_of(&loaded)?;
            Artifact::json(&poly_json(&p))
        }
        Command::Sp(SpCmd::Decompose { input }) => {
            let loaded = input.load()?;
            if loaded.graph.s == loaded.graph.t {
                bail!(Error::Input("decomposition needs terminals \"s\" and \"t\" in the graph file".into()));
            }
            let g = &loaded.graph;
            let record = GraphRecord::from_graph(&g.graph, Some((g.s, g.t)));
            let body = match &loaded.tree {
                Some(tree) => json!({
                    "series_parallel": true,
                    "maximal": tree.is_maximal(),
                    "graph": record,
                    "root": tree.root(),
                    "nodes": tree.nodes(),
                }),
                None => json!({ "series_parallel": false, "graph": record }),
            };
            Artifact::json(&body)
        }
        Command::Region(cmd) => run_region(cmd),
        Command::Leaftree(cmd) => run_leaf(cmd),
        Command::Roots(RootsCmd::Solve { coeffs, input, tol }) => {
            let p = match coeffs {
                Some(text) => {
                    let cs = text
                        .split(',')
                        .map(|c| c.trim().parse::<BigInt>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| Error::Input(format!("coefficients must be integers: {e}")))?;
                    BigPoly::from_coeffs(cs)
                }
                None => chromatic_of(&input.load()?)?,
            };
            let rs = find_roots(&p, *tol)?;
            let converged = rs.converged;
            Ok(Artifact::csv(roots_csv(&rs, true)).with_summary(roots_summary(&rs)).converged(converged))
        }
    }
}

fn run_region(cmd: &RegionCmd) -> Result<Artifact> {
    match cmd {
        RegionCmd::Certify { q, lambda, mode, samples } => {
            let mode = match mode {
                Mode::Chromatic => CertifyMode::Chromatic,
                Mode::Antiferro => CertifyMode::Antiferro,
                Mode::Wheatstone => CertifyMode::Wheatstone,
            };
            let cert = certify(*q, *lambda, mode)?;
            let audit = cert.family.as_ref().map(|f| verify_family(f, *samples));
            let summary = json!({ "certified": cert.certified, "audit_passed": audit.as_ref().map(|a| a.passed) });
            Ok(Artifact::json(&json!({ "certificate": cert, "audit": audit }))?.with_summary(summary))
        }
        RegionCmd::Grid { q, lambda, resolution } => {
            let set = grid_closure(*q, *lambda, *resolution)?;
            let mut csv = Csv::new(&["level", "t_re", "t_im"]);
            let mut counts = Vec::new();
            for level in 1..set.lambda {
                let pts = set.points(level);
                counts.push(pts.len());
                for t in pts {
                    csv.row(&[level.to_string(), num(t.re), num(t.im)]);
                }
            }
            let summary = json!({
                "escaped": set.escaped,
                "escape_point": set.escape_point.map(complex_json),
                "sweeps": set.sweeps,
                "cells_per_level": counts,
                "rounding_radius": set.rounding_radius(),
            });
            Ok(Artifact::csv(csv.finish()).with_summary(summary))
        }
        RegionCmd::Boundary { lambda, samples, tol } => {
            let curve = boundary_curve(*lambda, *samples, *tol)?;
            let mut csv = Csv::new(&["theta", "rho_max"]);
            for p in &curve {
                csv.row(&[num(p.theta), num(p.rho_max)]);
            }
            Ok(Artifact::csv(csv.finish()))
        }
        RegionCmd::RhoTable { lambda_max } => {
            let rows = rho_table(*lambda_max)?;
            let mut csv = Csv::new(&["lambda", "rho_star", "rho_double_star", "inv_rho_star", "inv_rho_double_star"]);
            for r in &rows {
                csv.row(&[
                    r.lambda.to_string(),
                    num(r.rho_star),
                    num(r.rho_double_star),
                    num(r.inv_rho_star),
                    num(r.inv_rho_double_star),
                ]);
            }
            Ok(Artifact::csv(csv.finish()))
        }
        RegionCmd::Counterexample { tol } => {
            let c = counterexample_94(*tol)?;
            let summary = json!({
                "witness": complex_json(c.witness),
                "witness_distance": c.witness_distance,
                "validated": c.validated,
            });
            let converged = c.roots_converged && c.validated;
            Ok(Artifact::json(&c)?.with_summary(summary).converged(converged))
        }
    }
}

fn run_leaf(cmd: &LeafCmd) -> Result<Artifact> {
    match cmd {
        LeafCmd::Roots { r, n, tol } => {
            let p = leaf_tree_chromatic_poly(*r, *n)?;
            let rs = find_roots(&p, *tol)?;
            let converged = rs.converged;
            Ok(Artifact::csv(roots_csv(&rs, false)).with_summary(roots_summary(&rs)).converged(converged))
        }
        LeafCmd::Teff { r, n, q, radius } => {
            let t = t_eff_leaf_tree(*r, *n)?;
            let mut body = json!({
                "r": r,
                "n": n,
                "numerator": poly_json(&t.num),
                "denominator": poly_json(&t.den),
            });
            if let Some(q) = q {
                body["q"] = complex_json(*q);
                body["value"] = ext_json(t.eval(*q));
            }
            if let Some(radius) = radius {
                let m = teff_circle_max(*r, *n, *radius, SCAN_POINTS)?;
                body["circle_max"] = json!({
                    "radius": radius,
                    "max_abs": m.max_abs,
                    "theta_over_pi": m.theta_over_pi,
                    "q": complex_json(m.q),
                });
            }
            Artifact::json(&body)
        }
        LeafCmd::Loci { r, kind, samples } => {
            let kind = match kind {
                Locus::Circle => LocusKind::FixedPointCircle,
                Locus::Cardioid => LocusKind::Cardioid,
                Locus::Egg => LocusKind::Period2Egg,
            };
            let curve = multiplier_loci(*r, kind, *samples)?;
            let mut csv = Csv::new(&["kind", "phi", "q_re", "q_im"]);
            for p in &curve.points {
                csv.row(&[kind.name().to_string(), num(p.phi), num(p.q.re), num(p.q.im)]);
            }
            Ok(Artifact::csv(csv.finish()))
        }
        LeafCmd::Scan { r, n_max, tol } => {
            let (report, _) = conjecture_scan(*r, *n_max, *tol)?;
            let converged = report.rows.iter().all(|row| row.converged);
            let summary = json!({ "violations": report.total_violations, "nondecreasing": report.nondecreasing });
            Ok(Artifact::json(&report)?.with_summary(summary).converged(converged))
        }
    }
}

fn config_json(command: &Command) -> Value {
    match command {
        Command::Flow(input) => json!({ "command": "flow", "input": input.describe() }),
        Command::Tutte(TutteCmd::Eval { input, q, weights }) => {
            json!({ "command": "tutte eval", "input": input.describe(), "q": complex_json(*q), "weights": weights })
        }
        Command::Tutte(TutteCmd::Chromatic { input }) => json!({ "command": "tutte chromatic", "input": input.describe() }),
        Command::Sp(SpCmd::Decompose { input }) => json!({ "command": "sp decompose", "input": input.describe() }),
        Command::Region(RegionCmd::Certify { q, lambda, mode, samples }) => json!({
            "command": "region certify", "q": complex_json(*q), "lambda": lambda,
            "mode": format!("{mode:?}").to_lowercase(), "samples": samples,
        }),
        Command::Region(RegionCmd::Grid { q, lambda, resolution }) => json!({
            "command": "region grid", "q": complex_json(*q), "lambda": lambda, "resolution": resolution,
        }),
        Command::Region(RegionCmd::Boundary { lambda, samples, tol }) => json!({
            "command": "region boundary", "lambda": lambda, "samples": samples, "tol": tol,
        }),
        Command::Region(RegionCmd::RhoTable { lambda_max }) => json!({ "command": "region rho-table", "lambda_max": lambda_max }),
        Command::Region(RegionCmd::Counterexample { tol }) => json!({ "command": "region counterexample", "tol": tol }),
        Command::Leaftree(LeafCmd::Roots { r, n, tol }) => json!({ "command": "leaftree roots", "r": r, "n": n, "tol": tol }),
        Command::Leaftree(LeafCmd::Teff { r, n, q, radius }) => json!({
            "command": "leaftree teff", "r": r, "n": n, "q": q.map(complex_json), "radius": radius,
        }),
        Command::Leaftree(LeafCmd::Loci { r, kind, samples }) => json!({
            "command": "leaftree loci", "r": r, "kind": format!("{kind:?}").to_lowercase(), "samples": samples,
        }),
        Command::Leaftree(LeafCmd::Scan { r, n_max, tol }) => {
            json!({ "command": "leaftree scan", "r": r, "n_max": n_max, "tol": tol })
        }
        Command::Roots(RootsCmd::Solve { coeffs, input, tol }) => json!({
            "command": "roots solve", "coeffs": coeffs, "input": input.describe(), "tol": tol,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(output::EXIT_DOMAIN);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    let dest = Destination { out: cli.out.clone(), manifest: cli.manifest.clone() };
    let result = run(&cli.command);
    let (code, status, summary) = match &result {
        Ok(artifact) => {
            let code = if artifact.converged { 0 } else { output::EXIT_NONCONVERGENCE };
            let status = if artifact.converged { "ok" } else { "not converged" };
            (code, json!(status), artifact.summary.clone())
        }
        Err(e) => (output::exit_code(e), json!(format!("{e:#}")), Value::Null),
    };
    if let Ok(artifact) = &result {
        if let Err(e) = dest.write_artifact(artifact) {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    }
    let manifest = json!({
        "tool": "tuttebound",
        "version": env!("CARGO_PKG_VERSION"),
        "arguments": std::env::args().skip(1).collect::<Vec<_>>(),
        "config": config_json(&cli.command),
        "threads": rayon::current_num_threads(),
        "output": { "path": cli.out, "format": result.as_ref().ok().map(|a| a.format) },
        "exit_code": code,
        "status": status,
        "summary": summary,
    });
    if let Err(e) = dest.write_manifest(&manifest) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if let Err(e) = &result {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(code)
}
