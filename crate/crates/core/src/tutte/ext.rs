//! Edge weights on the Riemann sphere and the series/parallel algebra in the
//! `v`, `t` and `y` variable systems.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the Riemann sphere, or the absorbing `Undefined` marker.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
    Undefined,
}

/// The three weight coordinate systems: `v`, `t = v/(q+v)`, `y = 1+v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum System {
    V,
    T,
    Y,
}

/// Relative size below which a cancelling sum is treated as an exact zero.
pub const SNAP_TOL: f64 = 64.0 * f64::EPSILON;

impl ExtendedComplex {
    pub const ZERO: ExtendedComplex = ExtendedComplex::Finite(Complex64::new(0.0, 0.0));
    pub const ONE: ExtendedComplex = ExtendedComplex::Finite(Complex64::new(1.0, 0.0));

    pub fn real(x: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(x, 0.0))
    }

    pub fn new(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedComplex::Finite(_))
    }

    pub fn is_undefined(&self) -> bool {
        matches!(self, ExtendedComplex::Undefined)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            ExtendedComplex::Finite(z) => Some(*z),
            _ => None,
        }
    }

    /// Homogeneous coordinates `(x0 : x1)` with `x = x0/x1`.
    fn homogeneous(&self) -> Option<(Complex64, Complex64)> {
        match *self {
            ExtendedComplex::Finite(z) => Some((z, Complex64::new(1.0, 0.0))),
            ExtendedComplex::Infinity => Some((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))),
            ExtendedComplex::Undefined => None,
        }
    }

    /// Chordal distance on the sphere; `Undefined` is at distance 0 from
    /// itself and 1 from everything else.
    pub fn chordal_distance(&self, other: &ExtendedComplex) -> f64 {
        use ExtendedComplex::*;
        match (self, other) {
            (Undefined, Undefined) => 0.0,
            (Undefined, _) | (_, Undefined) => 1.0,
            (Infinity, Infinity) => 0.0,
            (Finite(z), Infinity) | (Infinity, Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (Finite(a), Finite(b)) => {
                2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
            }
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

impl std::fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedComplex::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            ExtendedComplex::Infinity => write!(f, "inf"),
            ExtendedComplex::Undefined => write!(f, "undef"),
        }
    }
}

/// A homogeneous sum together with the magnitude of its terms, so that
/// near-total cancellation can be recognised as zero.
#[derive(Clone, Copy)]
struct Term {
    val: Complex64,
    scale: f64,
}

impl Term {
    fn of(parts: &[Complex64]) -> Term {
        let val = parts.iter().sum();
        let scale = parts.iter().map(|p| p.norm()).sum();
        Term { val, scale }
    }

    fn is_zero(&self) -> bool {
        self.val.norm() <= SNAP_TOL * self.scale
    }
}

fn project(n: Term, d: Term) -> ExtendedComplex {
    match (n.is_zero(), d.is_zero()) {
        (true, true) => ExtendedComplex::Undefined,
        (false, true) => ExtendedComplex::Infinity,
        (true, false) => ExtendedComplex::ZERO,
        (false, false) => ExtendedComplex::Finite(n.val / d.val),
    }
}

fn check_q(q: Complex64) -> Result<()> {
    if q == Complex64::new(0.0, 0.0) || !q.is_finite() {
        return Err(Error::domain("q must be finite and nonzero"));
    }
    Ok(())
}

/// Parallel connection of two edges whose weights are given in `system`.
pub fn par(a: ExtendedComplex, b: ExtendedComplex, system: System, q: Complex64) -> Result<ExtendedComplex> {
    check_q(q)?;
    let (Some((a0, a1)), Some((b0, b1))) = (a.homogeneous(), b.homogeneous()) else {
        return Ok(ExtendedComplex::Undefined);
    };
    let one = Complex64::new(1.0, 0.0);
    Ok(match system {
        System::V => {
            // (1+ve)(1+vf) - 1
            let n = Term::of(&[a0 * b0, a0 * b1, a1 * b0]);
            let d = Term::of(&[a1 * b1]);
            project(n, d)
        }
        System::T => {
            let n = Term::of(&[a0 * b1, a1 * b0, (q - 2.0 * one) * a0 * b0]);
            let d = Term::of(&[a1 * b1, (q - one) * a0 * b0]);
            project(n, d)
        }
        System::Y => project(Term::of(&[a0 * b0]), Term::of(&[a1 * b1])),
    })
}

/// Series connection of two edges whose weights are given in `system`.
pub fn ser(a: ExtendedComplex, b: ExtendedComplex, system: System, q: Complex64) -> Result<ExtendedComplex> {
    check_q(q)?;
    let (Some((a0, a1)), Some((b0, b1))) = (a.homogeneous(), b.homogeneous()) else {
        return Ok(ExtendedComplex::Undefined);
    };
    let one = Complex64::new(1.0, 0.0);
    Ok(match system {
        System::V => {
            let n = Term::of(&[a0 * b0]);
            let d = Term::of(&[q * a1 * b1, a0 * b1, a1 * b0]);
            project(n, d)
        }
        System::T => project(Term::of(&[a0 * b0]), Term::of(&[a1 * b1])),
        System::Y => {
            let n = Term::of(&[(q - one) * a1 * b1, a0 * b0]);
            let d = Term::of(&[(q - 2.0 * one) * a1 * b1, a0 * b1, a1 * b0]);
            project(n, d)
        }
    })
}

/// Möbius map `x -> (a x + b)/(c x + d)` on the sphere.
fn mobius(x: ExtendedComplex, a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> ExtendedComplex {
    let Some((x0, x1)) = x.homogeneous() else {
        return ExtendedComplex::Undefined;
    };
    let n = Term::of(&[a * x0, b * x1]);
    let den = Term::of(&[c * x0, d * x1]);
    match project(n, den) {
        // a nondegenerate map never sends a point to 0/0; fall back to the raw quotient
        ExtendedComplex::Undefined => ExtendedComplex::Finite(n.val / den.val),
        r => r,
    }
}

/// Change of variables between the `v`, `t` and `y` systems at parameter `q`.
pub fn convert(x: ExtendedComplex, from: System, to: System, q: Complex64) -> Result<ExtendedComplex> {
    check_q(q)?;
    if from == to || x.is_undefined() {
        return Ok(x);
    }
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    Ok(match (from, to) {
        (System::V, System::T) => mobius(x, o, z, o, q),
        (System::T, System::V) => mobius(x, q, z, -o, o),
        (System::V, System::Y) => mobius(x, o, o, z, o),
        (System::Y, System::V) => mobius(x, o, -o, z, o),
        // y = ((q-1) t + 1)/(1 - t)
        (System::T, System::Y) => mobius(x, q - o, o, -o, o),
        // t = (y - 1)/(y + q - 1)
        (System::Y, System::T) => mobius(x, o, -o, o, q - o),
        _ => unreachable!(),
    })
}
