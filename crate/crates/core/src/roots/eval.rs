use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::NewtonEval;
use crate::tutte::poly::{bigint_log2, BigPoly};

/// `a / b` rounded to double precision, for arbitrarily large operands.
pub fn big_ratio(a: &BigInt, b: &BigInt) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    if b.is_zero() {
        return if a.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    let top = |x: &BigInt| -> (f64, i64) {
        let bits = x.bits() as i64;
        let shift = (bits - 64).max(0);
        let t: BigInt = x >> shift as usize;
        (t.to_f64().unwrap_or(0.0), shift)
    };
    let (fa, sa) = top(a);
    let (fb, sb) = top(b);
    let e = sa - sb;
    let q = fa / fb;
    // split the scaling so intermediate powers of two stay representable
    let e = e.clamp(-4000, 4000) as i32;
    let half = e / 2;
    q * 2f64.powi(half) * 2f64.powi(e - half)
}

/// Newton ratio `p(z)/p'(z)` of an integer polynomial, computed exactly:
/// `z` is written as `w / 2^k` with a Gaussian integer `w`, both `p` and `p'`
/// are accumulated as scaled Gaussian integers, and only the final quotient
/// is rounded.
pub struct ExactEvaluator {
    coeffs: Vec<BigInt>,
}

const MANTISSA_BITS: i32 = 62;
const MAX_SCALE: i32 = 1100;

/// `x * 2^k` rounded to the nearest integer, computed from the bit pattern.
fn dyadic(x: f64, k: i32) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
    let s = e + k;
    let mag = if s >= 0 {
        BigInt::from(m) << s as usize
    } else if -s > 60 {
        BigInt::zero()
    } else {
        BigInt::from((m + (1u64 << (-s - 1))) >> -s)
    };
    if x < 0.0 {
        -mag
    } else {
        mag
    }
}

impl ExactEvaluator {
    pub fn new(p: &BigPoly) -> Self {
        ExactEvaluator { coeffs: p.coeffs().to_vec() }
    }

    /// `p(z)` from the exact dyadic evaluation, rounded once.
    pub fn value(&self, z: Complex64) -> Complex64 {
        if self.coeffs.is_empty() {
            return Complex64::zero();
        }
        let d = self.coeffs.len() - 1;
        let ((pr, pi), _, k) = self.scaled(z);
        let scale = BigInt::from(1) << (k as usize * d);
        Complex64::new(big_ratio(&pr, &scale), big_ratio(&pi, &scale))
    }

    /// Scaled values `(P, Q, k)` with `p(z) = P / 2^(kd)` and
    /// `p'(z) = Q / 2^(k(d-1))`, where `d` is the degree.
    fn scaled(&self, z: Complex64) -> ((BigInt, BigInt), (BigInt, BigInt), i32) {
        let d = self.coeffs.len() - 1;
        let m = z.re.abs().max(z.im.abs());
        let k = if m == 0.0 {
            0
        } else {
            let (_, exp) = frexp(m);
            (MANTISSA_BITS - exp).clamp(0, MAX_SCALE)
        };
        let (wr, wi) = (dyadic(z.re, k), dyadic(z.im, k));
        let mut pr = self.coeffs[d].clone();
        let mut pi = BigInt::zero();
        let mut qr = BigInt::zero();
        let mut qi = BigInt::zero();
        for j in (0..d).rev() {
            // Q_j = P_{j+1} + w Q_{j+1}
            let nqr = &pr + &wr * &qr - &wi * &qi;
            let nqi = &pi + &wr * &qi + &wi * &qr;
            // P_j = c_j 2^{k(d-j)} + w P_{j+1}
            let shift = k as usize * (d - j);
            let npr = (&self.coeffs[j] << shift) + &wr * &pr - &wi * &pi;
            let npi = &wr * &pi + &wi * &pr;
            pr = npr;
            pi = npi;
            qr = nqr;
            qi = nqi;
        }
        ((pr, pi), (qr, qi), k)
    }
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let mut e = x.abs().log2().floor() as i32 + 1;
    let mut m = x / 2f64.powi(e);
    while m.abs() >= 1.0 {
        m /= 2.0;
        e += 1;
    }
    while m.abs() < 0.5 {
        m *= 2.0;
        e -= 1;
    }
    (m, e)
}

/// A complex value as scaled integer `(re, im)` parts.
type FixedComplex = (BigInt, BigInt);

impl ExactEvaluator {
    /// Fixed-point Horner with `frac` fractional bits and floor rounding.
    /// Returns `(P, Q)` scaled by `2^frac`, or the number of fractional bits
    /// that should suffice if the a-priori rounding bound does not leave 30
    /// significant bits in both values.
    fn fixed_point(&self, z: Complex64, frac: usize) -> std::result::Result<(FixedComplex, FixedComplex), usize> {
        let d = self.coeffs.len() - 1;
        let f = frac as i32;
        let (wr, wi) = (dyadic(z.re, f), dyadic(z.im, f));
        let one: BigInt = BigInt::from(1) << frac;
        let mul = |ar: &BigInt, ai: &BigInt| -> (BigInt, BigInt) {
            ((&wr * ar - &wi * ai) >> frac, (&wr * ai + &wi * ar) >> frac)
        };
        let mut pr = &self.coeffs[d] * &one;
        let mut pi = BigInt::zero();
        let mut qr = BigInt::zero();
        let mut qi = BigInt::zero();
        for j in (0..d).rev() {
            let (tr, ti) = mul(&qr, &qi);
            qr = tr + &pr;
            qi = ti + &pi;
            let (tr, ti) = mul(&pr, &pi);
            pr = tr + &self.coeffs[j] * &one;
            pi = ti;
        }
        // accumulated floor errors, in units of 2^-frac: at most (d+1) M^d for
        // the value and (d+1)^2 M^d for the derivative, M = max(1, |z|)
        let growth = d as f64 * z.norm().max(1.0).log2();
        let log_d = ((d + 1) as f64).log2();
        let size = |a: &BigInt, b: &BigInt| a.bits().max(b.bits()) as f64 - 1.0;
        let short_p = log_d + growth + 31.0 - size(&pr, &pi);
        let short_q = 2.0 * log_d + growth + 31.0 - size(&qr, &qi);
        let short = short_p.max(short_q);
        if short <= 0.0 {
            Ok(((pr, pi), (qr, qi)))
        } else {
            Err(frac + short.ceil() as usize + 16)
        }
    }
}

fn ratio(p: (BigInt, BigInt), q: (BigInt, BigInt), shift: usize) -> Complex64 {
    let ((pr, pi), (qr, qi)) = (p, q);
    if pr.is_zero() && pi.is_zero() {
        return Complex64::zero();
    }
    if qr.is_zero() && qi.is_zero() {
        return Complex64::new(f64::INFINITY, f64::INFINITY);
    }
    // P / (Q 2^shift) = P conj(Q) / (|Q|^2 2^shift)
    let nr = &pr * &qr + &pi * &qi;
    let ni = &pi * &qr - &pr * &qi;
    let den: BigInt = (&qr * &qr + &qi * &qi) << shift;
    Complex64::new(big_ratio(&nr, &den), big_ratio(&ni, &den))
}

impl NewtonEval for ExactEvaluator {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn log2_coeffs(&self) -> Vec<Option<f64>> {
        self.coeffs.iter().map(|c| if c.is_zero() { None } else { Some(bigint_log2(c)) }).collect()
    }

    /// Tries fixed-point evaluation at increasing precision and falls back
    /// to the exact dyadic value when rounding could still matter.
    fn newton(&self, z: Complex64) -> Complex64 {
        if !z.is_finite() {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        if self.coeffs.len() < 2 {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        let d = self.coeffs.len() - 1;
        let exact_bits = MANTISSA_BITS as usize * d;
        let growth = d as f64 * z.norm().max(1.0).log2() + 2.0 * ((d + 1) as f64).log2();
        let mut frac = 64 + growth.ceil() as usize;
        while frac < exact_bits / 2 {
            match self.fixed_point(z, frac) {
                Ok((p, q)) => return ratio(p, q, 0),
                // a noise-dominated value understates the shortfall, so always at least double
                Err(wanted) => frac = wanted.max(2 * frac),
            }
        }
        let (p, q, k) = self.scaled(z);
        ratio(p, q, k as usize)
    }
}
