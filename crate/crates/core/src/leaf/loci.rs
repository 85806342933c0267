use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{find_roots_complex, RootOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocusKind {
    /// `|q - 1| = r`, where the fixed point `y = 1` is marginal.
    FixedPointCircle,
    /// The other marginal fixed points for `r = 2`.
    Cardioid,
    /// Marginal period-2 orbits for `r = 2`.
    Period2Egg,
}

impl LocusKind {
    pub fn name(&self) -> &'static str {
        match self {
            LocusKind::FixedPointCircle => "circle",
            LocusKind::Cardioid => "cardioid",
            LocusKind::Period2Egg => "egg",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LocusPoint {
    /// Angle of the multiplier (or of `q - 1` for the circle).
    pub phi: f64,
    /// Branch index among the solutions for this angle.
    pub branch: usize,
    pub q: Complex64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusCurve {
    pub kind: LocusKind,
    pub r: usize,
    pub points: Vec<LocusPoint>,
}

/// Both cardioid branches at multiplier `lambda`.
fn cardioid_points(lambda: Complex64) -> [Complex64; 2] {
    let base = 8.0 - 6.0 * lambda - lambda * lambda;
    let root = (2.0 + lambda) * (lambda * (8.0 + lambda)).sqrt();
    [(base + root) / 8.0, (base - root) / 8.0]
}

/// Solutions of `(q - 1)^2 / (q - 2)^3 = 4 / lambda`.
fn egg_points(lambda: Complex64) -> Result<Vec<Complex64>> {
    // 4(q - 2)^3 - lambda (q - 1)^2 = 0, ascending coefficients
    let coeffs = [-32.0 - lambda, 48.0 + 2.0 * lambda, -24.0 - lambda, Complex64::new(4.0, 0.0)];
    let rs = find_roots_complex(&coeffs, &RootOptions { tol: 1e-13, ..RootOptions::default() })?;
    let mut roots = rs.roots;
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(roots)
}

/// Sample a locus at `samples` equally spaced angles in `[0, 2 pi)`.
pub fn multiplier_loci(r: usize, kind: LocusKind, samples: usize) -> Result<LocusCurve> {
    if samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    if r < 2 {
        return Err(Error::domain("branching factor must be at least 2"));
    }
    if kind != LocusKind::FixedPointCircle && r != 2 {
        return Err(Error::domain(format!("the {} locus is only available for r = 2", kind.name())));
    }
    let mut points = Vec::new();
    for k in 0..samples {
        let phi = TAU * k as f64 / samples as f64;
        let e = Complex64::from_polar(1.0, phi);
        match kind {
            LocusKind::FixedPointCircle => {
                points.push(LocusPoint { phi, branch: 0, q: 1.0 + r as f64 * e });
            }
            LocusKind::Cardioid => {
                for (branch, q) in cardioid_points(e).into_iter().enumerate() {
                    points.push(LocusPoint { phi, branch, q });
                }
            }
            LocusKind::Period2Egg => {
                for (branch, q) in egg_points(e)?.into_iter().enumerate() {
                    points.push(LocusPoint { phi, branch, q });
                }
            }
        }
    }
    Ok(LocusCurve { kind, r, points })
}

/// Cusp of the cardioid: the point of the `+` branch where `dq/dphi`
/// vanishes, located by golden-section search on the speed.
pub fn cardioid_cusp() -> Complex64 {
    let q_at = |phi: f64| cardioid_points(Complex64::from_polar(1.0, phi))[0];
    let speed = |phi: f64| {
        let h = 1e-6;
        ((q_at(phi + h) - q_at(phi - h)) / (2.0 * h)).norm()
    };
    // coarse scan over a window that avoids the branch cut at phi = pi
    let n = 2000;
    let window = 0.9 * std::f64::consts::PI;
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..=n {
        let phi = -window + 2.0 * window * k as f64 / n as f64;
        let s = speed(phi);
        if s < best.0 {
            best = (s, phi);
        }
    }
    let step = 2.0 * window / n as f64;
    let (mut a, mut b) = (best.1 - step, best.1 + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if speed(c) < speed(d) {
            b = d;
        } else {
            a = c;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    q_at(0.5 * (a + b))
}
