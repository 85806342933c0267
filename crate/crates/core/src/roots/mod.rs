//! Simultaneous (Aberth–Ehrlich) root finding for integer polynomials, with
//! Newton corrections computed from exact dyadic evaluation.

mod eval;

pub use eval::{big_ratio, ExactEvaluator};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tutte::poly::{bigint_log2, bigint_to_f64, BigPoly};

/// Solver settings.
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Residual bound each root must meet.
    pub tol: f64,
    /// Maximum number of simultaneous sweeps.
    pub max_sweeps: usize,
    /// Maximum Newton polishing steps per root.
    pub max_polish: usize,
    /// Divide out exact roots at 0 and 1 before iterating.
    pub deflate_trivial: bool,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { tol: 1e-12, max_sweeps: 2000, max_polish: 80, deflate_trivial: true }
    }
}

/// Roots with their residuals `|p(z)/p'(z)| / max(1, |z|)` (the size of the
/// remaining Newton step relative to the root) and cluster multiplicities.
#[derive(Clone, Debug, Serialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub degree: usize,
    /// Largest residual.
    pub tolerance_achieved: f64,
    /// Number of roots removed exactly at 0 and 1 before iterating.
    pub deflated: usize,
    pub sweeps: usize,
    pub converged: bool,
}

/// Something whose Newton ratio `p(z)/p'(z)` can be evaluated.
pub trait NewtonEval: Sync {
    fn degree(&self) -> usize;
    /// `log2 |c_j|` per coefficient, `None` for zero coefficients.
    fn log2_coeffs(&self) -> Vec<Option<f64>>;
    /// `p(z)/p'(z)`; zero when `p(z)` vanishes exactly, infinite when only `p'(z)` does.
    fn newton(&self, z: Complex64) -> Complex64;
}

/// Complex double-precision coefficients, ascending.
pub struct FloatPoly(pub Vec<Complex64>);

impl NewtonEval for FloatPoly {
    fn degree(&self) -> usize {
        self.0.len() - 1
    }
    fn log2_coeffs(&self) -> Vec<Option<f64>> {
        self.0.iter().map(|c| if c.norm() == 0.0 { None } else { Some(c.norm().log2()) }).collect()
    }
    fn newton(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for c in self.0.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        if p.norm() == 0.0 {
            Complex64::zero()
        } else {
            p / dp
        }
    }
}

/// Initial points from the upper convex hull of `(j, log|c_j|)`: each hull
/// edge contributes as many points as its width, on a circle whose radius
/// is the corresponding slope.
fn initial_points(logs: &[Option<f64>]) -> Vec<Complex64> {
    let d = logs.len() - 1;
    let pts: Vec<(usize, f64)> = logs.iter().enumerate().filter_map(|(j, l)| l.map(|l| (j, l))).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(d);
    let sigma = 0.7;
    // zero low-order coefficients: roots at the origin
    let first = hull.first().map_or(d, |p| p.0);
    for m in 0..first {
        out.push(Complex64::from_polar(1e-8, std::f64::consts::TAU * m as f64 / first as f64 + sigma));
    }
    for w in hull.windows(2) {
        let ((i, li), (k, lk)) = (w[0], w[1]);
        let width = k - i;
        let radius = ((li - lk) / width as f64).exp2();
        for m in 0..width {
            let angle = std::f64::consts::TAU * (m as f64 / width as f64 + i as f64 / d as f64) + sigma;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

fn relative_step(n: Complex64, z: Complex64) -> f64 {
    n.norm() / z.norm().max(1.0)
}

/// Aberth–Ehrlich iteration with Jacobi updates, then Newton polishing.
/// Returns roots, residuals, sweeps used and whether every root settled.
pub fn aberth<E: NewtonEval>(p: &E, opts: &RootOptions) -> (Vec<Complex64>, Vec<f64>, usize, bool) {
    let d = p.degree();
    if d == 0 {
        return (Vec::new(), Vec::new(), 0, true);
    }
    let mut z = initial_points(&p.log2_coeffs());
    let mut done = vec![false; d];
    let settle = 4.0 * f64::EPSILON;
    let mut sweeps = 0;
    while sweeps < opts.max_sweeps && done.iter().any(|x| !x) {
        sweeps += 1;
        let snapshot = z.clone();
        let updates: Vec<Option<Complex64>> = (0..d)
            .into_par_iter()
            .map(|i| {
                if done[i] {
                    return None;
                }
                let zi = snapshot[i];
                let n = p.newton(zi);
                if n.is_zero() {
                    return Some(Complex64::zero());
                }
                if !n.is_finite() {
                    return Some(zi * Complex64::new(1e-7, 1e-7) + Complex64::new(1e-9, 0.0));
                }
                let s: Complex64 =
                    snapshot.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &zj)| (zi - zj).inv()).sum();
                let den = Complex64::new(1.0, 0.0) - n * s;
                let step = if den.norm() == 0.0 || !den.is_finite() { n } else { n / den };
                Some(step)
            })
            .collect();
        for (i, u) in updates.into_iter().enumerate() {
            if let Some(step) = u {
                z[i] -= step;
                if relative_step(step, z[i]) <= settle {
                    done[i] = true;
                }
            }
        }
    }
    let converged = done.iter().all(|&x| x);
    let polished: Vec<(Complex64, f64)> = z
        .par_iter()
        .map(|&z0| {
            let mut zi = z0;
            let mut n = p.newton(zi);
            let mut last = relative_step(n, zi);
            for _ in 0..opts.max_polish {
                if last <= settle || !n.is_finite() {
                    break;
                }
                let cand = zi - n;
                let nc = p.newton(cand);
                let r = relative_step(nc, cand);
                if r.partial_cmp(&last) != Some(std::cmp::Ordering::Less) {
                    break;
                }
                zi = cand;
                n = nc;
                last = r;
            }
            (zi, if n.is_finite() { last } else { f64::INFINITY })
        })
        .collect();
    let (roots, residuals) = polished.into_iter().unzip();
    (roots, residuals, sweeps, converged)
}

/// Group roots closer than `radius * max(1, |z|)` and report each root's cluster size.
fn multiplicities(roots: &[Complex64], radius: f64) -> Vec<usize> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= radius * roots[i].norm().max(1.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let reps: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    reps.iter().map(|r| reps.iter().filter(|x| *x == r).count()).collect()
}

fn assemble(
    trivial: Vec<Complex64>,
    found: (Vec<Complex64>, Vec<f64>, usize, bool),
    degree: usize,
    tol: f64,
) -> RootSet {
    let (found_roots, found_res, sweeps, aberth_ok) = found;
    let deflated = trivial.len();
    let mut roots = trivial;
    let mut residuals = vec![0.0; deflated];
    roots.extend(found_roots);
    residuals.extend(found_res);
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    let mult = multiplicities(&roots, tol.sqrt());
    RootSet {
        converged: aberth_ok && worst <= tol,
        roots,
        residuals,
        multiplicities: mult,
        degree,
        tolerance_achieved: worst,
        deflated,
        sweeps,
    }
}

/// All complex roots of a nonzero integer polynomial of degree at least one.
pub fn find_roots(p: &BigPoly, tol: f64) -> Result<RootSet> {
    find_roots_with(p, &RootOptions { tol, ..RootOptions::default() })
}

pub fn find_roots_with(p: &BigPoly, opts: &RootOptions) -> Result<RootSet> {
    let degree = match p.degree() {
        None => return Err(Error::domain("the zero polynomial has no finite root set")),
        Some(0) => return Err(Error::domain("constant polynomial has no roots")),
        Some(d) => d,
    };
    let mut work = p.clone();
    let mut trivial = Vec::new();
    if opts.deflate_trivial {
        while work.degree().unwrap_or(0) > 0 && work.coeff(0).is_zero() {
            work = BigPoly::from_coeffs(work.coeffs()[1..].to_vec());
            trivial.push(Complex64::new(0.0, 0.0));
        }
        while work.degree().unwrap_or(0) > 0 {
            match work.deflate_root(&BigInt::one()) {
                Some(w) => {
                    work = w;
                    trivial.push(Complex64::new(1.0, 0.0));
                }
                None => break,
            }
        }
    }
    let center = integer_centroid(&work);
    let mut shifted = if center.is_zero() { work.clone() } else { taylor_shift(&work, &center) };
    // roots exactly at the center
    let at_center = shifted.coeffs().iter().take_while(|c| c.is_zero()).count();
    if at_center > 0 && opts.deflate_trivial {
        shifted = BigPoly::from_coeffs(shifted.coeffs()[at_center..].to_vec());
        let c = Complex64::new(bigint_to_f64(&center), 0.0);
        trivial.extend(std::iter::repeat_n(c, at_center));
    }
    let (mut roots, mut residuals, sweeps, ok) = aberth(&ExactEvaluator::new(&shifted), opts);
    if !center.is_zero() {
        let c = bigint_to_f64(&center);
        let eval = ExactEvaluator::new(&work);
        for (z, res) in roots.iter_mut().zip(residuals.iter_mut()) {
            *z += c;
            *res = relative_step(eval.newton(*z), *z);
        }
    }
    Ok(assemble(trivial, (roots, residuals, sweeps, ok), degree, opts.tol))
}

/// Nearest integer to the mean of the roots, `-c_{d-1} / (d c_d)`.
fn integer_centroid(p: &BigPoly) -> BigInt {
    let d = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return BigInt::zero(),
    };
    let num = -p.coeff(d - 1);
    let den = p.coeff(d) * BigInt::from(d);
    let mean = big_ratio(&num, &den);
    if mean.is_finite() && mean.abs() < 1e15 {
        BigInt::from(mean.round() as i64)
    } else {
        BigInt::zero()
    }
}

/// Exact coefficients of `p(x + c)`.
pub fn taylor_shift(p: &BigPoly, c: &BigInt) -> BigPoly {
    let mut a = p.coeffs().to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &a[j + 1] * c;
            a[j] += t;
        }
    }
    BigPoly::from_coeffs(a)
}

/// Roots of a polynomial with complex double-precision coefficients (ascending).
pub fn find_roots_complex(coeffs: &[Complex64], opts: &RootOptions) -> Result<RootSet> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::domain("constant polynomial has no roots"));
    }
    let degree = c.len() - 1;
    Ok(assemble(Vec::new(), aberth(&FloatPoly(c), opts), degree, opts.tol))
}

/// Residual of a candidate root under the solver's convention.
pub fn residual(p: &BigPoly, z: Complex64) -> f64 {
    relative_step(ExactEvaluator::new(p).newton(z), z)
}

/// `log2` of the largest coefficient magnitude.
pub fn coefficient_bits(p: &BigPoly) -> f64 {
    p.coeffs().iter().filter(|c| !c.is_zero()).map(bigint_log2).fold(f64::NEG_INFINITY, f64::max)
}
