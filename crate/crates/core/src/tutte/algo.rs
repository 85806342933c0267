use num_complex::Complex64;
use serde::Serialize;

use super::ext::{par, ExtendedComplex, System};
use super::poly::Ring;
use crate::error::{Error, Result};
use crate::graph::{partial_tutte_brute, BruteLimits, WeightAssignment};
use crate::sp::{gen_wheatstone, DecompTree, Leaf, NodeKind};

/// Partial polynomials of a two-terminal graph: `Z = q^2 A + q B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbPair<R> {
    pub a: R,
    pub b: R,
}

impl<R: Ring> AbPair<R> {
    pub fn z(&self, q: &R) -> R {
        q.clone() * q.clone() * self.a.clone() + q.clone() * self.b.clone()
    }

    pub fn parallel(&self, other: &Self) -> Self {
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        AbPair {
            a: a1.clone() * a2.clone(),
            b: a1.clone() * b2.clone() + a2.clone() * b1.clone() + b1.clone() * b2.clone(),
        }
    }

    pub fn series(&self, other: &Self, q: &R) -> Self {
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        AbPair {
            a: a1.clone() * b2.clone() + a2.clone() * b1.clone() + q.clone() * a1.clone() * a2.clone(),
            b: b1.clone() * b2.clone(),
        }
    }
}

fn small<R: Ring>(k: i32) -> R {
    let mut x = R::zero();
    for _ in 0..k.unsigned_abs() {
        x = x + R::one();
    }
    if k < 0 {
        -x
    } else {
        x
    }
}

fn leaf_pair<R: Ring>(leaf: &Leaf, q: &R, w: &[R]) -> Result<AbPair<R>> {
    let weight = |e: usize| w.get(e).cloned().ok_or_else(|| Error::domain(format!("no weight for edge {e}")));
    match leaf {
        Leaf::Edge(e) => Ok(AbPair { a: R::one(), b: weight(*e)? }),
        Leaf::Wheatstone { edges, .. } => {
            let local = edges.iter().map(|&e| weight(e)).collect::<Result<Vec<R>>>()?;
            let minus_one = -R::one();
            if local.iter().all(|x| *x == minus_one) {
                let two = small::<R>(2);
                let q2 = q.clone() - two.clone();
                Ok(AbPair { a: q2.clone() * (q.clone() - small(3)), b: two * q2 })
            } else {
                let (w, _) = gen_wheatstone();
                let (a, b) = partial_tutte_brute(&w, q, &local, BruteLimits::default())?;
                Ok(AbPair { a, b })
            }
        }
    }
}

/// Bottom-up evaluation of `(A, B)` at every node; `w` is indexed by host edge id.
pub fn algorithm1_nodes<R: Ring>(tree: &DecompTree, q: &R, w: &[R]) -> Result<Vec<AbPair<R>>> {
    let mut out: Vec<AbPair<R>> = Vec::with_capacity(tree.nodes().len());
    for node in tree.nodes() {
        let pair = match &node.kind {
            NodeKind::Leaf(l) => leaf_pair(l, q, w)?,
            NodeKind::Parallel(l, r) => out[*l].parallel(&out[*r]),
            NodeKind::Series(l, r) => out[*l].series(&out[*r], q),
        };
        out.push(pair);
    }
    Ok(out)
}

/// `(A, B)` of the whole graph.
pub fn algorithm1<R: Ring>(tree: &DecompTree, q: &R, w: &[R]) -> Result<AbPair<R>> {
    let mut all = algorithm1_nodes(tree, q, w)?;
    Ok(all.swap_remove(tree.root()))
}

/// Outcome of the effective-weight evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Alg2Result {
    /// Effective weight of the root constituent.
    pub v_eff: ExtendedComplex,
    /// Product of all series prefactors and leaf `A` values.
    pub prefactor: Complex64,
    /// `Z`, or `Undefined` if a vanishing prefactor was met.
    pub z: ExtendedComplex,
}

impl Alg2Result {
    fn undefined() -> Self {
        Alg2Result {
            v_eff: ExtendedComplex::Undefined,
            prefactor: Complex64::new(0.0, 0.0),
            z: ExtendedComplex::Undefined,
        }
    }
}

/// Floating evaluation through effective weights; a vanishing series
/// prefactor `q + v1 + v2` yields an `Undefined` result.
pub fn algorithm2(tree: &DecompTree, q: Complex64, weights: &WeightAssignment) -> Result<Alg2Result> {
    let v = weights.to_system(System::V, q)?.values;
    let zero_tol = 1e-14 * (1.0 + q.norm());
    let mut veff: Vec<ExtendedComplex> = Vec::with_capacity(tree.nodes().len());
    let mut prefactor = Complex64::new(1.0, 0.0);
    for node in tree.nodes() {
        let x = match &node.kind {
            NodeKind::Leaf(Leaf::Edge(e)) => {
                *v.get(*e).ok_or_else(|| Error::domain(format!("no weight for edge {e}")))?
            }
            NodeKind::Leaf(leaf @ Leaf::Wheatstone { edges, .. }) => {
                let mut local = vec![Complex64::new(0.0, 0.0); v.len()];
                for &e in edges {
                    local[e] = v[e].finite().ok_or_else(|| Error::domain("Wheatstone leaf needs finite weights"))?;
                }
                let pair = leaf_pair(leaf, &q, &local)?;
                if pair.a.norm() <= zero_tol {
                    return Err(Error::domain("Wheatstone leaf has vanishing A"));
                }
                prefactor *= pair.a;
                ExtendedComplex::Finite(pair.b / pair.a)
            }
            NodeKind::Parallel(l, r) => par(veff[*l], veff[*r], System::V, q)?,
            NodeKind::Series(l, r) => {
                let (Some(a), Some(b)) = (veff[*l].finite(), veff[*r].finite()) else {
                    return Ok(Alg2Result::undefined());
                };
                let pre = q + a + b;
                if pre.norm() < zero_tol {
                    return Ok(Alg2Result::undefined());
                }
                prefactor *= pre;
                ExtendedComplex::Finite(a * b / pre)
            }
        };
        veff.push(x);
    }
    let root = veff[tree.root()];
    let z = match root.finite() {
        Some(vr) => ExtendedComplex::Finite(q * (q + vr) * prefactor),
        None => ExtendedComplex::Undefined,
    };
    Ok(Alg2Result { v_eff: root, prefactor, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::parse_sp;
    use crate::tutte::poly::BigPoly;

    fn chromatic(text: &str) -> (BigPoly, AbPair<BigPoly>) {
        let (g, tree) = parse_sp(text).unwrap();
        let w = vec![BigPoly::from_i64(&[-1]); g.graph.edge_count()];
        let q = BigPoly::x();
        let ab = algorithm1(&tree, &q, &w).unwrap();
        (ab.z(&q), ab)
    }

    #[test]
    fn double_edge() {
        let (z, ab) = chromatic("P(e,e)");
        assert_eq!(ab.a, BigPoly::from_i64(&[1]));
        assert_eq!(ab.b, BigPoly::from_i64(&[-1]));
        assert_eq!(z, BigPoly::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn path_of_two() {
        let (z, ab) = chromatic("S(e,e)");
        assert_eq!(ab.a, BigPoly::from_i64(&[-2, 1]));
        assert_eq!(ab.b, BigPoly::from_i64(&[1]));
        assert_eq!(z, BigPoly::from_i64(&[0, 1, -2, 1]));
    }

    #[test]
    fn wheatstone_leaf() {
        let (z, ab) = chromatic("W");
        assert_eq!(ab.a, BigPoly::from_roots(&[2, 3]));
        assert_eq!(ab.b, BigPoly::from_roots(&[2]).scale(&2.into()));
        assert_eq!(z, BigPoly::from_roots(&[0, 1, 2, 2]));
    }

    #[test]
    fn vanishing_prefactor_example() {
        // S(e, P(f, g)) with v_e = -q, v_f = -1/2, v_g = 1
        let (_, tree) = parse_sp("S(e,P(e,e))").unwrap();
        for q in [Complex64::new(3.0, 0.0), Complex64::new(-0.7, 1.3)] {
            let w = WeightAssignment {
                system: System::V,
                values: vec![ExtendedComplex::Finite(-q), ExtendedComplex::real(-0.5), ExtendedComplex::real(1.0)],
            };
            let r = algorithm2(&tree, q, &w).unwrap();
            assert!(r.z.is_undefined());
            let wv = [-q, Complex64::new(-0.5, 0.0), Complex64::new(1.0, 0.0)];
            let z = algorithm1(&tree, &q, &wv).unwrap().z(&q);
            let expected = q * (q + wv[0]) * (q + wv[1] + wv[2] + wv[1] * wv[2]);
            assert!((z - expected).norm() < 1e-12);
            assert!(z.norm() < 1e-12);
        }
    }

    #[test]
    fn single_chromatic_edge() {
        let (_, tree) = parse_sp("e").unwrap();
        let q = Complex64::new(3.0, 0.0);
        let r = algorithm2(&tree, q, &WeightAssignment::chromatic(1)).unwrap();
        assert_eq!(r.v_eff, ExtendedComplex::real(-1.0));
        assert_eq!(r.z, ExtendedComplex::real(6.0));
    }
}
