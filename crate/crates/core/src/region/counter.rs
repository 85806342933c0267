use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::leaf::t_eff_leaf_tree;
use crate::roots::{find_roots, residual, ExactEvaluator};
use crate::sp::{gen_cycle_with_tail, leaf_joined_expr};
use crate::tutte::chromatic_poly_tree;

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub num_degree: usize,
    pub den_degree: usize,
    /// Solutions of `t_eff = e^{2 pi i/3}`.
    pub omega_roots: Vec<Complex64>,
    /// Solutions of `t_eff = e^{-2 pi i/3}`.
    pub conj_roots: Vec<Complex64>,
    /// Solution of largest `|q - 1|` among `omega_roots`.
    pub witness: Complex64,
    pub witness_distance: f64,
    pub h_vertices: usize,
    pub h_degree: usize,
    /// Newton residual of the witness against the chromatic polynomial of `H`.
    pub h_residual: f64,
    pub validated: bool,
    pub roots_converged: bool,
}

/// A chromatic root with `|q - 1| > 2` of a 94-vertex graph of maxmaxflow 3:
/// three copies of the leaf-joined tree `G_5^2` closed into a cycle have a
/// root wherever the effective transmissivity of one copy is a primitive
/// cube root of unity.
pub fn counterexample_94(tol: f64) -> Result<Counterexample> {
    let t = t_eff_leaf_tree(2, 5)?;
    let (n, d) = (t.num.clone(), t.den.clone());
    // t^2 + t + 1 = 0 with t = n/d
    let p = &n * &n + &n * &d + &d * &d;
    let rs = find_roots(&p, 1e-12)?;
    let w = Complex64::from_polar(1.0, TAU / 3.0);
    let (en, ed) = (ExactEvaluator::new(&n), ExactEvaluator::new(&d));
    let mut omega_roots = Vec::new();
    let mut conj_roots = Vec::new();
    for &z in &rs.roots {
        let (nz, dz) = (en.value(z), ed.value(z));
        if (nz - w * dz).norm() <= (nz - w.conj() * dz).norm() {
            omega_roots.push(z);
        } else {
            conj_roots.push(z);
        }
    }
    let key = |z: &Complex64| (z - 1.0).norm();
    let witness = omega_roots
        .iter()
        .copied()
        .max_by(|a, b| key(a).total_cmp(&key(b)))
        .unwrap_or(Complex64::new(f64::NAN, f64::NAN));

    let (h, tree) = gen_cycle_with_tail(3, &leaf_joined_expr(2, 5))?;
    let ph = chromatic_poly_tree(&tree)?;
    let h_residual = residual(&ph, witness);
    Ok(Counterexample {
        num_degree: n.degree().unwrap_or(0),
        den_degree: d.degree().unwrap_or(0),
        omega_roots,
        conj_roots,
        witness,
        witness_distance: key(&witness),
        h_vertices: h.graph.vertex_count(),
        h_degree: ph.degree().unwrap_or(0),
        h_residual,
        validated: h_residual <= tol,
        roots_converged: rs.converged,
    })
}
