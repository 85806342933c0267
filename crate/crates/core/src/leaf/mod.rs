//! Leaf-joined trees `G_n^r`: exact partial-polynomial recursion, the
//! effective-weight map `R_q`, effective transmissivity and multiplier loci.

mod loci;

pub use loci::{cardioid_cusp, multiplier_loci, LocusCurve, LocusKind, LocusPoint};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{find_roots, ExactEvaluator, RootSet};
use crate::tutte::poly::{ring_pow, BiPoly, BigPoly, Ring};
use crate::tutte::{AbPair, ExtendedComplex, SNAP_TOL};

/// Largest `r^n` accepted by the exact recursions.
pub const EXACT_SIZE_LIMIT: u64 = 1 << 16;

fn check_size(r: usize, n: usize) -> Result<()> {
    if r < 2 || n < 1 {
        return Err(Error::domain(format!("leaf-joined tree needs r >= 2 and n >= 1, got r = {r}, n = {n}")));
    }
    let size = (r as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > EXACT_SIZE_LIMIT {
        return Err(Error::limit(format!("r^n = {r}^{n} exceeds the exact-mode limit {EXACT_SIZE_LIMIT}")));
    }
    Ok(())
}

/// `(A_n, B_n)` of `G_n^r` with every edge weighted `v`, in any ring.
pub fn leaf_tree_ab<R: Ring>(r: usize, n: usize, q: &R, v: &R) -> AbPair<R> {
    let one = R::one();
    let r32 = r as u32;
    let mut a = one.clone();
    let mut b = ring_pow(&(one.clone() + v.clone()), r32) - one.clone();
    let qv = q.clone() + v.clone();
    for _ in 1..n {
        let base = qv.clone() * a.clone() + b.clone();
        let with_edge = qv.clone() * a.clone() + (one.clone() + v.clone()) * b.clone();
        a = ring_pow(&base, r32);
        b = ring_pow(&with_edge, r32) - a.clone();
    }
    AbPair { a, b }
}

/// Which representation `leaf_tree_state` should compute.
#[derive(Clone, Copy, Debug)]
pub enum LeafMode {
    /// Integer polynomials in `q` with every edge weight `-1`.
    Chromatic,
    /// Polynomials in `v` with coefficients in `Z[q]`, uniform weight `v`.
    Bivariate,
    /// Effective `y` at a fixed `q` and edge value `y_sharp = 1 + v`.
    Numeric { q: Complex64, y_sharp: Complex64 },
}

#[derive(Clone, Debug)]
pub enum LeafValues {
    Chromatic(AbPair<BigPoly>),
    Bivariate(AbPair<BiPoly>),
    Numeric { q: Complex64, y: ExtendedComplex },
}

#[derive(Clone, Debug)]
pub struct LeafTreeState {
    pub r: usize,
    pub n: usize,
    pub values: LeafValues,
}

pub fn leaf_tree_state(r: usize, n: usize, mode: LeafMode) -> Result<LeafTreeState> {
    let values = match mode {
        LeafMode::Chromatic => LeafValues::Chromatic(leaf_tree_chromatic(r, n)?),
        LeafMode::Bivariate => {
            check_size(r, n)?;
            LeafValues::Bivariate(leaf_tree_ab(r, n, &BiPoly::constant(BigPoly::x()), &BiPoly::x()))
        }
        LeafMode::Numeric { q, y_sharp } => LeafValues::Numeric { q, y: iterate_rq(q, r, n, y_sharp)? },
    };
    Ok(LeafTreeState { r, n, values })
}

/// `(A_n, B_n)` at `v = -1` as integer polynomials in `q`.
pub fn leaf_tree_chromatic(r: usize, n: usize) -> Result<AbPair<BigPoly>> {
    check_size(r, n)?;
    Ok(leaf_tree_ab(r, n, &BigPoly::x(), &BigPoly::from_i64(&[-1])))
}

/// Chromatic polynomial `q^2 A_n + q B_n` of `G_n^r`.
pub fn leaf_tree_chromatic_poly(r: usize, n: usize) -> Result<BigPoly> {
    Ok(leaf_tree_chromatic(r, n)?.z(&BigPoly::x()))
}

/// A point of the Riemann sphere in homogeneous coordinates, kept at unit
/// max-norm so neither component overflows near `infinity`.
#[derive(Clone, Copy, Debug)]
struct Projective {
    num: Complex64,
    den: Complex64,
}

impl Projective {
    fn infinity() -> Self {
        Projective { num: Complex64::new(1.0, 0.0), den: Complex64::zero() }
    }

    fn normalized(num: Complex64, den: Complex64) -> Self {
        let s = num.norm().max(den.norm());
        Projective { num: num / s, den: den / s }
    }

    fn value(&self) -> ExtendedComplex {
        if self.den.is_zero() {
            ExtendedComplex::Infinity
        } else {
            ExtendedComplex::Finite(self.num / self.den)
        }
    }
}

/// One application of `y -> ((q - 1 + y# y) / (q - 2 + y# + y))^r`; `None`
/// when numerator and denominator cancel to rounding level.
fn rq_step(p: Projective, q: Complex64, r: usize, y_sharp: Complex64) -> Option<Projective> {
    let (n, d) = (p.num, p.den);
    let num_terms = [(q - 1.0) * d, y_sharp * n];
    let den_terms = [(q - 2.0 + y_sharp) * d, n];
    let num: Complex64 = num_terms.iter().sum();
    let den: Complex64 = den_terms.iter().sum();
    let scale = num_terms.iter().chain(den_terms.iter()).map(|x| x.norm()).fold(0.0, f64::max);
    let tiny = SNAP_TOL * scale.max(f64::MIN_POSITIVE);
    if num.norm() <= tiny && den.norm() <= tiny {
        return None;
    }
    let (num, den) = (if num.norm() <= tiny { Complex64::zero() } else { num }, if den.norm() <= tiny {
        Complex64::zero()
    } else {
        den
    });
    let mut acc = Projective::normalized(num, den);
    let base = acc;
    for _ in 1..r {
        acc = Projective::normalized(acc.num * base.num, acc.den * base.den);
    }
    Some(acc)
}

fn check_q(q: Complex64) -> Result<()> {
    if q == Complex64::new(0.0, 0.0) || q == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("the leaf-tree map needs q not in {0, 1}"));
    }
    Ok(())
}

/// Orbit `y_0 = infinity, y_1, ..., y_n` under `R_q`.
pub fn rq_orbit(q: Complex64, r: usize, n: usize, y_sharp: Complex64) -> Result<Vec<ExtendedComplex>> {
    check_q(q)?;
    if r < 1 {
        return Err(Error::domain("branching factor must be positive"));
    }
    let mut p = Some(Projective::infinity());
    let mut out = vec![ExtendedComplex::Infinity];
    for _ in 0..n {
        p = p.and_then(|x| rq_step(x, q, r, y_sharp));
        out.push(p.map_or(ExtendedComplex::Undefined, |x| x.value()));
    }
    Ok(out)
}

/// `R_q^n(infinity)`: the effective `y = 1 + v_eff` of `G_n^r`.
pub fn iterate_rq(q: Complex64, r: usize, n: usize, y_sharp: Complex64) -> Result<ExtendedComplex> {
    Ok(*rq_orbit(q, r, n, y_sharp)?.last().expect("orbit is nonempty"))
}

/// Apply `R_q` once to an arbitrary point.
pub fn rq_map(y: ExtendedComplex, q: Complex64, r: usize, y_sharp: Complex64) -> Result<ExtendedComplex> {
    check_q(q)?;
    let p = match y {
        ExtendedComplex::Finite(z) => Projective::normalized(z, Complex64::new(1.0, 0.0)),
        ExtendedComplex::Infinity => Projective::infinity(),
        ExtendedComplex::Undefined => return Ok(ExtendedComplex::Undefined),
    };
    Ok(rq_step(p, q, r, y_sharp).map_or(ExtendedComplex::Undefined, |x| x.value()))
}

/// Chromatic zero test: `P_{G_n^r}(q) = 0` exactly when `R_q^n(infinity) = 1 - q`.
/// Returns the chordal distance between the two.
pub fn zero_test_distance(q: Complex64, r: usize, n: usize) -> Result<f64> {
    let y = iterate_rq(q, r, n, Complex64::zero())?;
    Ok(y.chordal_distance(&ExtendedComplex::Finite(Complex64::new(1.0, 0.0) - q)))
}

/// Exact effective transmissivity `B / (q A + B)` in lowest terms, with a
/// positive leading denominator coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: BigPoly,
    pub den: BigPoly,
}

impl RationalFunction {
    /// Value at `q` from exact evaluation of both parts; `Undefined` only
    /// when both vanish exactly.
    pub fn eval(&self, q: Complex64) -> ExtendedComplex {
        let n = ExactEvaluator::new(&self.num).value(q);
        let d = ExactEvaluator::new(&self.den).value(q);
        match (n.is_zero(), d.is_zero()) {
            (true, true) => ExtendedComplex::Undefined,
            (false, true) => ExtendedComplex::Infinity,
            _ => ExtendedComplex::Finite(n / d),
        }
    }
}

pub fn t_eff_leaf_tree(r: usize, n: usize) -> Result<RationalFunction> {
    let ab = leaf_tree_chromatic(r, n)?;
    let q = BigPoly::x();
    let num = ab.b.clone();
    let den = q * ab.a + ab.b;
    Ok(reduce(num, den))
}

fn reduce(num: BigPoly, den: BigPoly) -> RationalFunction {
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
        (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
    } else {
        (num, den)
    };
    let c = num.content().gcd(&den.content());
    if !c.is_zero() && c != BigInt::from(1) {
        num = BigPoly::from_coeffs(num.coeffs().iter().map(|x| x / &c).collect());
        den = BigPoly::from_coeffs(den.coeffs().iter().map(|x| x / &c).collect());
    }
    if den.leading().is_some_and(|l| l.is_negative()) {
        num = -num;
        den = -den;
    }
    RationalFunction { num, den }
}

/// Numeric `t_eff` of the chromatic `G_n^r` at `q`, from the `R_q` orbit
/// followed by `t = (y - 1)/(y + q - 1)`.
pub fn t_eff_at(q: Complex64, r: usize, n: usize) -> Result<ExtendedComplex> {
    let y = iterate_rq(q, r, n, Complex64::zero())?;
    crate::tutte::convert(y, crate::tutte::System::Y, crate::tutte::System::T, q)
}

/// Per-depth result of a root scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub degree: usize,
    pub max_offset: f64,
    pub violations: usize,
    pub max_residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub r: usize,
    pub rows: Vec<ScanRow>,
    /// Whether the largest `|q - 1|` never decreases with `n` (informational).
    pub nondecreasing: bool,
    pub total_violations: usize,
}

/// Roots of `P_{G_n^r}` for `n = 1..=n_max`, counted against the disc `|q - 1| < r`.
pub fn conjecture_scan(r: usize, n_max: usize, tol: f64) -> Result<(ScanReport, Vec<RootSet>)> {
    let mut rows = Vec::new();
    let mut sets = Vec::new();
    for n in 1..=n_max {
        let p = leaf_tree_chromatic_poly(r, n)?;
        let rs = find_roots(&p, tol)?;
        let one = Complex64::new(1.0, 0.0);
        let max_offset = rs.roots.iter().map(|z| (z - one).norm()).fold(0.0, f64::max);
        let violations = rs.roots.iter().filter(|z| (*z - one).norm() >= r as f64).count();
        rows.push(ScanRow {
            n,
            degree: rs.degree,
            max_offset,
            violations,
            max_residual: rs.tolerance_achieved,
            converged: rs.converged,
        });
        sets.push(rs);
    }
    let nondecreasing = rows.windows(2).all(|w| w[1].max_offset >= w[0].max_offset);
    let total_violations = rows.iter().map(|r| r.violations).sum();
    Ok((ScanReport { r, rows, nondecreasing, total_violations }, sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::{gen_leaf_joined_tree, DEFAULT_VERTEX_LIMIT};
    use crate::tutte::chromatic_poly_tree;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn base_case() {
        let ab = leaf_tree_chromatic(2, 1).unwrap();
        assert_eq!(ab.a, BigPoly::from_i64(&[1]));
        assert_eq!(ab.b, BigPoly::from_i64(&[-1]));
        assert_eq!(leaf_tree_chromatic_poly(2, 1).unwrap(), BigPoly::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn matches_tree_evaluation() {
        for (r, n) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
            let (_, tree) = gen_leaf_joined_tree(r, n, DEFAULT_VERTEX_LIMIT).unwrap();
            let p = leaf_tree_chromatic_poly(r, n).unwrap();
            assert_eq!(p, chromatic_poly_tree(&tree).unwrap(), "r = {r}, n = {n}");
            let verts = (r.pow(n as u32) + r - 2) / (r - 1);
            assert_eq!(p.degree(), Some(verts));
        }
    }

    #[test]
    fn size_guard() {
        assert!(leaf_tree_chromatic(2, 17).is_err());
        assert!(check_size(2, 16).is_ok());
        assert!(leaf_tree_chromatic(1, 3).is_err());
    }

    #[test]
    fn critical_orbit() {
        let q = c(0.3, 1.9);
        let orbit = rq_orbit(q, 2, 2, Complex64::zero()).unwrap();
        assert_eq!(orbit[0], ExtendedComplex::Infinity);
        assert_eq!(orbit[1], ExtendedComplex::ZERO);
        let expect = ((q - 1.0) / (q - 2.0)).powu(2);
        assert!((orbit[2].finite().unwrap() - expect).norm() < 1e-15);
        let pole = rq_map(ExtendedComplex::Finite(2.0 - q), q, 2, Complex64::zero()).unwrap();
        assert_eq!(pole, ExtendedComplex::Infinity);
    }

    #[test]
    fn one_is_fixed_and_attracting_outside() {
        let q = c(1.0, 3.0);
        assert!((rq_map(ExtendedComplex::ONE, q, 2, Complex64::zero()).unwrap().finite().unwrap() - 1.0).norm() < 1e-15);
        let y = iterate_rq(q, 2, 80, Complex64::zero()).unwrap().finite().unwrap();
        assert!((y - 1.0).norm() < 1e-10);
    }

    #[test]
    fn rejects_degenerate_q() {
        assert!(iterate_rq(Complex64::zero(), 2, 3, Complex64::zero()).is_err());
        assert!(iterate_rq(c(1.0, 0.0), 2, 3, Complex64::zero()).is_err());
    }

    #[test]
    fn teff_of_double_edge() {
        let t = t_eff_leaf_tree(2, 1).unwrap();
        assert_eq!(t.num, BigPoly::from_i64(&[-1]));
        assert_eq!(t.den, BigPoly::from_i64(&[-1, 1]));
        let z = t.eval(c(3.0, 0.0)).finite().unwrap();
        assert!((z + 0.5).norm() < 1e-15);
    }

    #[test]
    fn teff_agrees_with_orbit() {
        let t = t_eff_leaf_tree(2, 4).unwrap();
        for q in [c(-0.5, 1.7), c(2.9, -0.4), c(1.0, 2.0)] {
            let exact = t.eval(q).finite().unwrap();
            let orbit = t_eff_at(q, 2, 4).unwrap().finite().unwrap();
            assert!((exact - orbit).norm() < 1e-10 * exact.norm().max(1.0));
        }
    }

    #[test]
    fn zero_test_on_roots() {
        let p = leaf_tree_chromatic_poly(2, 3).unwrap();
        let rs = find_roots(&p, 1e-13).unwrap();
        for z in rs.roots.iter().filter(|z| (*z - 1.0).norm() > 1e-6 && z.norm() > 1e-6) {
            assert!(zero_test_distance(*z, 2, 3).unwrap() < 1e-8, "{z}");
        }
        assert!(zero_test_distance(c(0.7, 0.9), 2, 3).unwrap() > 1e-3);
    }
}
