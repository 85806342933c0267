use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// Naive upper bound on `|t_e ||_q t_f|` over circles of radii `x`, `y`
/// when `|q - 1| = 1/rho`.
pub fn f_bound(x: f64, y: f64, rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::domain(format!("rho = {rho} must lie in (0, 1)")));
    }
    if !(0.0..rho).contains(&x) || !(0.0..rho).contains(&y) {
        return Err(Error::domain(format!("radii ({x}, {y}) must lie in [0, rho = {rho})")));
    }
    Ok((x + y + (1.0 / rho + 1.0) * x * y) / (1.0 - x * y / rho))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RadiiChoice {
    /// `r_1 = rho^2`.
    Minimal,
    /// `r_{Lambda-1} = rho`.
    Maximal,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RadiiParams {
    pub rho: f64,
    pub choice: RadiiChoice,
}

impl RadiiParams {
    /// Growth factor of the Moebius-conjugated radius sequence.
    pub fn x(&self, lambda: usize) -> f64 {
        let rho = self.rho;
        match self.choice {
            RadiiChoice::Minimal => (1.0 + rho) / (1.0 + rho * rho),
            RadiiChoice::Maximal => (2.0 / (1.0 + rho)).powf(1.0 / (lambda as f64 - 1.0)),
        }
    }
}

fn check_lambda(lambda: usize) -> Result<()> {
    if lambda < 2 {
        return Err(Error::domain(format!("Lambda = {lambda} must be at least 2")));
    }
    Ok(())
}

/// `r_k = rho (X^k - 1)/(1 - rho X^k)` for `k = 1..Lambda-1`.
pub fn radii(params: RadiiParams, lambda: usize) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    let rho = params.rho;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::domain(format!("rho = {rho} must lie in (0, 1)")));
    }
    let x = params.x(lambda);
    (1..lambda)
        .map(|k| {
            let xk = x.powi(k as i32);
            let den = 1.0 - rho * xk;
            if den <= 0.0 {
                Err(Error::domain(format!("radii blow up at k = {k}")))
            } else {
                Ok(rho * (xk - 1.0) / den)
            }
        })
        .collect()
}

/// `r_{s+1} = F(r_1, r_s)` starting from `r_1`, up to `r_{Lambda-1}`.
pub fn radii_iterated(r1: f64, rho: f64, lambda: usize) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    let mut out = vec![r1];
    while out.len() < lambda - 1 {
        let last = *out.last().expect("nonempty");
        if last >= rho {
            return Err(Error::domain(format!("radius {last} reached rho = {rho} before k = {}", lambda - 1)));
        }
        out.push(f_bound(r1, last, rho)?);
    }
    Ok(out)
}

/// Whether the sequence satisfies `rho^2 <= r_1 <= ... <= r_{Lambda-1} <= rho`
/// up to a relative slack.
pub fn feasible(radii: &[f64], rho: f64, slack: f64) -> bool {
    let lo = rho * rho * (1.0 - slack);
    let hi = rho * (1.0 + slack);
    radii.first().is_some_and(|&r| r >= lo)
        && radii.last().is_some_and(|&r| r <= hi)
        && radii.windows(2).all(|w| w[1] >= w[0] * (1.0 - slack))
}

/// `(1 + rho)^Lambda <= 2 (1 + rho^2)^(Lambda - 1)`.
pub fn disc_condition(rho: f64, lambda: usize) -> bool {
    star_gap(rho, lambda as f64) <= 0.0
}

fn star_gap(rho: f64, lambda: f64) -> f64 {
    lambda * rho.ln_1p() - (lambda - 1.0) * (rho * rho).ln_1p() - LN_2
}

fn double_star_gap(rho: f64, lambda: f64) -> f64 {
    (lambda + 1.0) * rho.ln_1p() - (lambda - 1.0) * (1.0 - rho + 2.0 * rho * rho).ln() - 2.0 * LN_2
}

/// Unique zero in `(0, 1)` of a gap function that is negative near 0,
/// rises to a positive maximum and returns to 0 at `rho = 1`.
fn bisect_gap(gap: impl Fn(f64) -> f64) -> f64 {
    // locate the interior maximum (the gap is concave on [0, 1])
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if gap(c) > gap(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let (mut lo, mut hi) = (0.0f64, 0.5 * (a + b));
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solution in `(0, 1)` of `(1 + rho)^Lambda = 2 (1 + rho^2)^(Lambda - 1)`; 1 when `Lambda = 2`.
pub fn rho_star(lambda: usize) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 2 {
        return Ok(1.0);
    }
    let l = lambda as f64;
    Ok(bisect_gap(|r| star_gap(r, l)))
}

/// Solution in `(0, 1)` of `(1 + rho)^(Lambda+1) = 4 (1 - rho + 2 rho^2)^(Lambda - 1)`;
/// reported as 1 when `Lambda = 2`.
pub fn rho_double_star(lambda: usize) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 2 {
        return Ok(1.0);
    }
    let l = lambda as f64;
    Ok(bisect_gap(|r| double_star_gap(r, l)))
}

/// Closed-form lower bound `log 2 / (Lambda - 1.5 log 2)` on `rho_star`.
pub fn rho_star_lower_bound(lambda: usize) -> f64 {
    LN_2 / (lambda as f64 - 1.5 * LN_2)
}

/// Closed-form lower bound `log 2 / (Lambda - log 2)` on `rho_double_star`.
pub fn rho_double_star_lower_bound(lambda: usize) -> f64 {
    LN_2 / (lambda as f64 - LN_2)
}

/// Radius `(Lambda - 1)/log 2` of the disc that contains the roots for every
/// `Lambda`; always at least `1/rho*`.
pub fn uniform_root_radius(lambda: usize) -> f64 {
    (lambda as f64 - 1.0) / LN_2
}

/// The lower-bound inequalities rewritten as functions of `rho` alone;
/// both are positive on `(0, 1)`.
pub fn star_bound_margin(rho: f64) -> f64 {
    let lambda = LN_2 / rho + 1.5 * LN_2;
    -rho * star_gap(rho, lambda)
}

pub fn double_star_bound_margin(rho: f64) -> f64 {
    let lambda = LN_2 / rho + LN_2;
    -rho * double_star_gap(rho, lambda)
}

/// One row of the threshold table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RhoRow {
    pub lambda: usize,
    pub rho_star: f64,
    pub rho_double_star: f64,
    pub inv_rho_star: f64,
    pub inv_rho_double_star: f64,
}

pub fn rho_table(lambda_max: usize) -> Result<Vec<RhoRow>> {
    (2..=lambda_max)
        .map(|lambda| {
            let rs = rho_star(lambda)?;
            let rd = rho_double_star(lambda)?;
            Ok(RhoRow { lambda, rho_star: rs, rho_double_star: rd, inv_rho_star: 1.0 / rs, inv_rho_double_star: 1.0 / rd })
        })
        .collect()
}
