use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::leaf::t_eff_at;
use crate::tutte::ExtendedComplex;

/// Default number of boundary samples before refinement.
pub const SCAN_POINTS: usize = 4096;

/// `t ||_q t'` in the `t` plane, as a plain quotient.
pub fn tpar(a: Complex64, b: Complex64, q: Complex64) -> Complex64 {
    (a + b + (q - 2.0) * a * b) / (1.0 + (q - 1.0) * a * b)
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximisation of `f` on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Maximum of a periodic function from `n` samples plus golden refinement
/// around the best sample. Returns `(argmax, max)`.
fn periodic_max(f: impl Fn(f64) -> f64 + Sync, n: usize) -> (f64, f64) {
    let vals: Vec<f64> = (0..n).into_par_iter().map(|k| f(TAU * k as f64 / n as f64)).collect();
    let mut best = 0;
    for (k, v) in vals.iter().enumerate() {
        if v > &vals[best] || vals[best].is_nan() {
            best = k;
        }
    }
    let h = TAU / n as f64;
    let centre = h * best as f64;
    let (x, v) = golden_max(&f, centre - h, centre + h, 1e-13);
    if v >= vals[best] {
        (x, v)
    } else {
        (centre, vals[best])
    }
}

/// True maximum of `|t_e ||_q t_f|` over `|t_e| = x`, `|t_f| = y`.
/// On the diagonal `x = y` the maximum is attained at `t_e = t_f`, so a
/// one-dimensional scan suffices; otherwise the torus is scanned.
pub fn f_exact(x: f64, y: f64, q: Complex64) -> f64 {
    f_exact_with(x, y, q, SCAN_POINTS)
}

pub fn f_exact_with(x: f64, y: f64, q: Complex64, points: usize) -> f64 {
    if x == 0.0 || y == 0.0 {
        return x.max(y);
    }
    if x * y * (q - 1.0).norm() >= 1.0 {
        return f64::INFINITY;
    }
    if x == y {
        let g = |th: f64| {
            let t = Complex64::from_polar(x, th);
            tpar(t, t, q).norm()
        };
        return periodic_max(g, points).1;
    }
    let m = (points as f64).sqrt().ceil().max(16.0) as usize;
    let g = |a: f64, b: f64| tpar(Complex64::from_polar(x, a), Complex64::from_polar(y, b), q).norm();
    let h = TAU / m as f64;
    let (mut a, mut b, best) = (0..m * m)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (h * (k / m) as f64, h * (k % m) as f64);
            (a, b, g(a, b))
        })
        .reduce(|| (0.0, 0.0, f64::NEG_INFINITY), |u, v| if v.2 > u.2 { v } else { u });
    let mut val = best;
    let mut width = h;
    for _ in 0..60 {
        let (na, va) = golden_max(|s| g(s, b), a - width, a + width, 1e-14);
        if va > val {
            a = na;
            val = va;
        }
        let (nb, vb) = golden_max(|s| g(a, s), b - width, b + width, 1e-14);
        if vb > val {
            b = nb;
            val = vb;
        }
        width *= 0.7;
        if width < 1e-12 {
            break;
        }
    }
    val
}

/// `q` with `1/(1 - q) = rho e^{i theta}`.
pub fn q_from_polar_t0(rho: f64, theta: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0 / rho, -theta)
}

/// Radii from the exact parallel bound: `r_1 = rho^2` and
/// `r_s = max_{k + l = s} f(r_k, r_l)`.
pub fn exact_radii(q: Complex64, lambda: usize) -> Vec<f64> {
    let rho = 1.0 / (q - 1.0).norm();
    let mut r = vec![rho * rho];
    for s in 2..lambda {
        let mut best: f64 = 0.0;
        for k in 1..=s / 2 {
            best = best.max(f_exact(r[k - 1], r[s - k - 1], q));
        }
        r.push(best);
    }
    r
}

/// Largest `rho` such that the point+disc family built from the exact
/// parallel bound closes up, with `t_0 = rho e^{i theta}`, found by bisection.
pub fn boundary_rho(lambda: usize, theta: f64, tol: f64) -> Result<f64> {
    if lambda < 3 {
        return Err(Error::domain("boundary scan needs Lambda >= 3"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let holds = |rho: f64| {
        let q = q_from_polar_t0(rho, theta);
        exact_radii(q, lambda).last().is_some_and(|&r| r <= rho)
    };
    let (mut lo, mut hi) = (1e-3, 1.0 - 1e-12);
    if !holds(lo) {
        return Err(Error::NonConvergence(format!("condition fails already at rho = {lo}")));
    }
    if holds(hi) {
        return Ok(hi);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub rho_max: f64,
}

/// `boundary_rho` at `samples` angles in `[0, 2 pi)`.
pub fn boundary_curve(lambda: usize, samples: usize, tol: f64) -> Result<Vec<BoundaryPoint>> {
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let theta = TAU * k as f64 / samples as f64;
            Ok(BoundaryPoint { theta, rho_max: boundary_rho(lambda, theta, tol)? })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CircleMax {
    /// Angle of `q - 1`, in units of `pi`.
    pub theta_over_pi: f64,
    pub q: Complex64,
    pub max_abs: f64,
}

/// Maximum of `|t_eff(G_n^r)|` on the circle `|q - 1| = radius`.
pub fn teff_circle_max(r: usize, n: usize, radius: f64, samples: usize) -> Result<CircleMax> {
    crate::leaf::t_eff_at(Complex64::new(1.0 + radius, 0.0), r, n)?;
    let f = |th: f64| match t_eff_at(1.0 + Complex64::from_polar(radius, th), r, n) {
        Ok(ExtendedComplex::Finite(t)) => t.norm(),
        _ => f64::INFINITY,
    };
    let (th, max_abs) = periodic_max(f, samples);
    let mut th = th.rem_euclid(TAU);
    if th > PI {
        th -= TAU;
    }
    Ok(CircleMax { theta_over_pi: th / PI, q: 1.0 + Complex64::from_polar(radius, th), max_abs })
}
