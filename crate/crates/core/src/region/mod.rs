//! Zero-free regions for chromatic roots of series-parallel graphs: nested
//! region families in the `t = v/(q+v)` plane, their radii, certification of
//! `|q - 1| >= 1/rho*`, and the numerical probes of how sharp that is.

mod counter;
mod grid;
mod radii;
mod scan;

pub use counter::{counterexample_94, Counterexample};
pub use grid::{grid_closure, grid_closure_with, GridSet, DEFAULT_MAX_SWEEPS};
pub use radii::{
    disc_condition, double_star_bound_margin, f_bound, feasible, radii, radii_iterated, rho_double_star,
    rho_double_star_lower_bound, rho_star, rho_star_lower_bound, rho_table, star_bound_margin, uniform_root_radius, RadiiChoice,
    RadiiParams, RhoRow,
};
pub use scan::{
    boundary_curve, boundary_rho, exact_radii, f_exact, f_exact_with, q_from_polar_t0, teff_circle_max, tpar,
    BoundaryPoint, CircleMax, SCAN_POINTS,
};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tutte::{par, ExtendedComplex, System};

/// Which graph class and weights a certificate is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertifyMode {
    /// Chromatic polynomial (`v = -1` on every edge).
    Chromatic,
    /// Any real weights `v` in `[-1, 0]`.
    Antiferro,
    /// Chromatic polynomial of graphs built from edges and Wheatstone bridges.
    Wheatstone,
}

#[derive(Clone, Debug, Serialize)]
pub enum RegionShape {
    /// `S_k = {t_0} ∪ D(r_k)`.
    PointDisc { t0: Complex64, radii: Vec<f64> },
    /// `S_k = (C_q || D(r_{k-1})) ∪ D(r_k)` with `r_0 = 0`.
    StalkDisc { radii: Vec<f64> },
    Grid(GridSet),
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionFamily {
    pub lambda: usize,
    pub q: Complex64,
    pub shape: RegionShape,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub certified: bool,
    pub mode: CertifyMode,
    pub lambda: usize,
    pub q: Complex64,
    /// `1/|q - 1|`.
    pub rho: f64,
    /// `1/rho*_Lambda`.
    pub threshold: f64,
    /// Bound on `|v/(q+v)|` for edges placed at level 1.
    pub s1_radius: Option<f64>,
    /// Lower bound required on `|q - 2|` in Wheatstone mode.
    pub wheatstone_bound: Option<f64>,
    pub family: Option<RegionFamily>,
    pub reason: Option<String>,
}

/// Certify that no graph of the class with maxmaxflow at most `lambda` has
/// a zero at `q`.
pub fn certify(q: Complex64, lambda: usize, mode: CertifyMode) -> Result<Certificate> {
    let rs = rho_star(lambda)?;
    let d = (q - 1.0).norm();
    let rho = 1.0 / d;
    let mut cert = Certificate {
        certified: false,
        mode,
        lambda,
        q,
        rho,
        threshold: 1.0 / rs,
        s1_radius: None,
        wheatstone_bound: None,
        family: None,
        reason: None,
    };
    if !q.is_finite() || q == Complex64::new(0.0, 0.0) || q == Complex64::new(1.0, 0.0) {
        cert.reason = Some("q must be finite and different from 0 and 1".into());
        return Ok(cert);
    }
    let inside = if lambda == 2 { d <= 1.0 } else { rho > rs };
    if inside {
        cert.reason = Some(format!("|q - 1| = {d} is below the threshold {}", 1.0 / rs));
        return Ok(cert);
    }
    let params = RadiiParams { rho, choice: RadiiChoice::Maximal };
    let rs_seq = match radii(params, lambda) {
        Ok(r) => r,
        Err(e) => {
            cert.reason = Some(e.to_string());
            return Ok(cert);
        }
    };
    let x = params.x(lambda);
    cert.s1_radius = Some(rho * (x - 1.0) / (1.0 - rho * x));
    if mode == CertifyMode::Wheatstone && lambda >= 3 {
        let bound = 2.0 * (1.0 - rho * x * x) / (x * x - 1.0);
        cert.wheatstone_bound = Some(bound);
        let d2 = (q - 2.0).norm();
        if d2 < bound {
            cert.reason = Some(format!("|q - 2| = {d2} is below the Wheatstone bound {bound}"));
            return Ok(cert);
        }
    }
    let shape = match mode {
        CertifyMode::Antiferro => RegionShape::StalkDisc { radii: rs_seq },
        _ => RegionShape::PointDisc { t0: 1.0 / (1.0 - q), radii: rs_seq },
    };
    cert.family = Some(RegionFamily { lambda, q, shape });
    cert.certified = true;
    Ok(cert)
}

/// `v/(q+v)`, the point of `C_q` for `v` in `[-1, 0]`.
pub fn cq_point(v: f64, q: Complex64) -> Complex64 {
    v / (q + v)
}

/// `y = 1 + v` as a function of `t`; `None` at `t = 1`.
fn y_of_t(t: Complex64, q: Complex64) -> Option<Complex64> {
    let den = 1.0 - t;
    if den == Complex64::new(0.0, 0.0) {
        None
    } else {
        Some((1.0 + (q - 1.0) * t) / den)
    }
}

/// Whether `t` lies on `C_q`, i.e. its `y` value is real in `[0, 1]`.
pub fn in_cq(t: Complex64, q: Complex64, tol: f64) -> bool {
    y_of_t(t, q).is_some_and(|y| y.im.abs() <= tol && y.re >= -tol && y.re <= 1.0 + tol)
}

/// Image of the closed disc `D(r)` under `s -> t || s`, as `(centre, radius)`;
/// `None` when the image is unbounded.
pub fn par_disc_image(t: Complex64, q: Complex64, r: f64) -> Option<(Complex64, f64)> {
    // s -> (a s + b)/(c s + d)
    let a = 1.0 + (q - 2.0) * t;
    let b = t;
    let c = (q - 1.0) * t;
    let d = Complex64::new(1.0, 0.0);
    let den = d.norm_sqr() - c.norm_sqr() * r * r;
    if den <= 0.0 {
        return None;
    }
    let centre = (b * d.conj() - a * c.conj() * r * r) / den;
    let radius = r * (a * d - b * c).norm() / den;
    Some((centre, radius))
}

/// Whether `t || D(r)` is contained in `D(r)`, up to relative `slack`.
pub fn par_preserves_disc(t: Complex64, q: Complex64, r: f64, slack: f64) -> bool {
    par_disc_image(t, q, r).is_some_and(|(c, rad)| c.norm() + rad <= r * (1.0 + slack))
}

/// Whether `t` lies in `C_q || D(r)`: in the `y` plane this is the union of
/// the scaled discs `s * y(D(r))` over `s` in `[0, 1]`.
pub fn in_stalk(t: Complex64, q: Complex64, r: f64, slack: f64) -> bool {
    let Some(y) = y_of_t(t, q) else { return false };
    if r >= 1.0 {
        return false;
    }
    let c = (1.0 + (q - 1.0) * r * r) / (1.0 - r * r);
    let rad = r * q.norm() / (1.0 - r * r);
    // the excess |y - s c| - s rad is convex in s
    let phi = |s: f64| (y - s * c).norm() - s * rad;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..100 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if phi(m1) <= phi(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let best = phi(0.0).min(phi(1.0)).min(phi(0.5 * (lo + hi)));
    best <= slack * (1.0 + y.norm() + c.norm() + rad)
}

impl RegionFamily {
    fn rho(&self) -> f64 {
        1.0 / (self.q - 1.0).norm()
    }

    fn radius(&self, level: usize) -> f64 {
        match &self.shape {
            RegionShape::PointDisc { radii, .. } | RegionShape::StalkDisc { radii } => {
                if level == 0 {
                    0.0
                } else {
                    radii[level - 1]
                }
            }
            RegionShape::Grid(_) => f64::NAN,
        }
    }

    /// Membership in `S_level` (1-based), up to relative `slack`.
    pub fn contains(&self, level: usize, t: Complex64, slack: f64) -> bool {
        if level == 0 || level >= self.lambda {
            return false;
        }
        match &self.shape {
            RegionShape::PointDisc { t0, .. } => {
                (t - t0).norm() <= slack * (1.0 + t0.norm()) || t.norm() <= self.radius(level) * (1.0 + slack)
            }
            RegionShape::StalkDisc { .. } => {
                t.norm() <= self.radius(level) * (1.0 + slack) || in_stalk(t, self.q, self.radius(level - 1), slack)
            }
            RegionShape::Grid(g) => g.contains(level, t),
        }
    }

    /// Sample points of `S_level`: boundary circle, random interior points
    /// and, for stalks, `c || d` with `c` on `C_q`.
    fn sample(&self, level: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        let q = self.q;
        let disc_point = |r: f64, rng: &mut ChaCha8Rng, boundary: bool| {
            let th = rng.gen::<f64>() * std::f64::consts::TAU;
            let rad = if boundary { r } else { r * rng.gen::<f64>().sqrt() };
            Complex64::from_polar(rad, th)
        };
        let mut out = Vec::with_capacity(count + 1);
        match &self.shape {
            RegionShape::PointDisc { t0, .. } => {
                out.push(*t0);
                let r = self.radius(level);
                for k in 0..count {
                    out.push(disc_point(r, rng, k % 2 == 0));
                }
            }
            RegionShape::StalkDisc { .. } => {
                let (r, r_prev) = (self.radius(level), self.radius(level - 1));
                out.push(1.0 / (1.0 - q));
                for k in 0..count {
                    if k % 2 == 0 {
                        out.push(disc_point(r, rng, k % 4 == 0));
                    } else {
                        let c = cq_point(-rng.gen::<f64>(), q);
                        let d = disc_point(r_prev, rng, k % 4 == 1);
                        out.push(tpar(c, d, q));
                    }
                }
            }
            RegionShape::Grid(g) => {
                let pts = g.points(level);
                if !pts.is_empty() {
                    for _ in 0..count {
                        out.push(pts[rng.gen_range(0..pts.len())]);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

const SLACK: f64 = 1e-9;

/// Independent audit of the closure conditions a region family must satisfy:
/// series products stay in the smaller level, parallel connections land in
/// the summed level, `1` is excluded from the top level and the parallel
/// operation is defined for levels summing to `Lambda`. Inclusions are
/// checked exactly where a disc argument applies and otherwise on `samples`
/// deterministic random points per level.
pub fn verify_family(family: &RegionFamily, samples: usize) -> VerifyReport {
    let mut checks = Vec::new();
    let lambda = family.lambda;
    let q = family.q;
    let rho = family.rho();
    let top = lambda - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CheckResult { name: name.into(), passed, detail });
    };
    let levels: Vec<Vec<Complex64>> = (1..lambda).map(|k| family.sample(k, samples.max(8), &mut rng)).collect();
    let pairs = samples.max(8);

    let disc_shaped = !matches!(family.shape, RegionShape::Grid(_));
    if disc_shaped {
        let r: Vec<f64> = (1..lambda).map(|k| family.radius(k)).collect();
        let ok = feasible(&r, rho, SLACK) && rho < 1.0;
        push("radii", ok, format!("rho = {rho}, radii = {r:?}"));
    }

    // series closure
    {
        let mut exact = false;
        if disc_shaped {
            let big = rho.max(family.radius(top));
            let mut holds = big * big <= family.radius(1) * (1.0 + SLACK);
            if let RegionShape::StalkDisc { .. } = family.shape {
                let rp = family.radius(top - 1).min(rho);
                holds &= (0..=samples.max(8)).all(|k| {
                    let v = -(k as f64) / samples.max(8) as f64;
                    par_preserves_disc(cq_point(v, q), q, rho, 1e-9) || rp == 0.0
                });
            }
            exact = holds;
        }
        if exact {
            push("series", true, "top level lies in a disc whose square lies in level 1".into());
        } else {
            let mut bad = None;
            'outer: for k in 1..lambda {
                for l in k..lambda {
                    for _ in 0..pairs {
                        let a = levels[k - 1][rng.gen_range(0..levels[k - 1].len().max(1))];
                        let b = levels[l - 1][rng.gen_range(0..levels[l - 1].len().max(1))];
                        let p = a * b;
                        if !family.contains(k, p, SLACK) {
                            bad = Some(format!("{a} * {b} = {p} not in S_{k}"));
                            break 'outer;
                        }
                    }
                }
            }
            push("series", bad.is_none(), bad.unwrap_or_else(|| "sampled".into()));
        }
    }

    // parallel closure
    {
        let mut bad = None;
        'outer: for k in 1..lambda {
            for l in k..lambda {
                if k + l > top {
                    continue;
                }
                if disc_shaped {
                    let f = f_exact(family.radius(k), family.radius(l), q);
                    if f > family.radius(k + l) * (1.0 + SLACK) {
                        bad = Some(format!("disc bound {f} exceeds r_{} = {}", k + l, family.radius(k + l)));
                        break 'outer;
                    }
                }
                for _ in 0..pairs {
                    let a = levels[k - 1][rng.gen_range(0..levels[k - 1].len().max(1))];
                    let b = levels[l - 1][rng.gen_range(0..levels[l - 1].len().max(1))];
                    let p = tpar(a, b, q);
                    if !family.contains(k + l, p, 1e-7) {
                        bad = Some(format!("{a} || {b} = {p} not in S_{}", k + l));
                        break 'outer;
                    }
                }
            }
        }
        push("parallel", bad.is_none(), bad.unwrap_or_else(|| "ok".into()));
    }

    let one = Complex64::new(1.0, 0.0);
    let has_one = family.contains(top, one, 0.0);
    push("excludes_one", !has_one, format!("1 in S_{top}: {has_one}"));

    // parallel is defined for levels summing to Lambda
    {
        let mut bad = None;
        'outer: for k in 1..lambda {
            let l = lambda - k;
            if l < k {
                continue;
            }
            for _ in 0..pairs {
                let a = levels[k - 1][rng.gen_range(0..levels[k - 1].len().max(1))];
                let b = levels[l - 1][rng.gen_range(0..levels[l - 1].len().max(1))];
                match par(ExtendedComplex::Finite(a), ExtendedComplex::Finite(b), System::T, q) {
                    Ok(ExtendedComplex::Undefined) | Err(_) => {
                        bad = Some(format!("{a} || {b} undefined"));
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
        push("defined", bad.is_none(), bad.unwrap_or_else(|| "ok".into()));
    }

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { passed, checks }
}

/// Disc-shaped family with given radii, for auditing arbitrary choices.
pub fn point_disc_family(q: Complex64, radii: Vec<f64>) -> Result<RegionFamily> {
    if radii.is_empty() {
        return Err(Error::domain("need at least one radius"));
    }
    Ok(RegionFamily { lambda: radii.len() + 1, q, shape: RegionShape::PointDisc { t0: 1.0 / (1.0 - q), radii } })
}
