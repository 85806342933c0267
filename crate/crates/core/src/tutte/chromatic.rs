use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::algo::algorithm1;
use super::poly::{BiPoly, BigPoly};
use crate::error::{Error, Result};
use crate::graph::{blocks, tutte_brute, BruteLimits, Multigraph, TwoTerminalGraph};
use crate::sp::{decompose_sp, DecompTree};

fn minus_one() -> BigPoly {
    BigPoly::constant(BigInt::from(-1))
}

/// Chromatic polynomial of the graph described by a decomposition tree.
pub fn chromatic_poly_tree(tree: &DecompTree) -> Result<BigPoly> {
    let m = tree.edges_under(tree.root()).len();
    let q = BigPoly::x();
    Ok(algorithm1(tree, &q, &vec![minus_one(); m])?.z(&q))
}

/// `Z` with every edge carrying the same symbolic weight `v`, as a
/// polynomial in `v` with coefficients in `Z[q]`.
pub fn tutte_tree_uniform(tree: &DecompTree) -> Result<BiPoly> {
    let m = tree.edges_under(tree.root()).len();
    let q = BiPoly::constant(BigPoly::x());
    Ok(algorithm1(tree, &q, &vec![BiPoly::x(); m])?.z(&q))
}

fn number_of_components(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = n;
    for &(a, b) in g.edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    comps
}

/// Chromatic polynomial of a loopless multigraph: blocks are evaluated by a
/// series-parallel decomposition when one exists and by subset expansion
/// otherwise, then combined as `prod P_B / q^(#blocks - #components)`.
pub fn chromatic_poly(g: &Multigraph, limits: BruteLimits) -> Result<BigPoly> {
    if g.has_loops() {
        return Err(Error::domain("graph has a loop, so its chromatic polynomial vanishes; refusing"));
    }
    let bs = blocks(g);
    let mut p = BigPoly::one();
    for b in &bs {
        let pb = match (b.graph.vertex_count(), b.graph.edge_count()) {
            (1, 0) => BigPoly::x(),
            (2, _) => BigPoly::from_i64(&[0, -1, 1]),
            _ => {
                let (s, t) = b.graph.edges()[0];
                let tt = TwoTerminalGraph::new(b.graph.clone(), s, t)?;
                match decompose_sp(&tt)? {
                    Some(tree) => chromatic_poly_tree(&tree)?,
                    None => {
                        let w = vec![minus_one(); b.graph.edge_count()];
                        tutte_brute(&b.graph, &BigPoly::x(), &w, limits)?
                    }
                }
            }
        };
        p = p * pb;
    }
    let drop = bs.len() - number_of_components(g);
    let coeffs = p.coeffs();
    if coeffs.iter().take(drop).any(|c| !c.is_zero()) {
        return Err(Error::domain("block product not divisible by the expected power of q"));
    }
    Ok(BigPoly::from_coeffs(coeffs[drop.min(coeffs.len())..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::parse_sp;

    #[test]
    fn four_cycle() {
        let c4 = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let p = chromatic_poly(&c4, BruteLimits::default()).unwrap();
        let qm1 = BigPoly::from_i64(&[-1, 1]);
        assert_eq!(p, qm1.pow(4) + qm1);
    }

    #[test]
    fn triple_bundle() {
        let g = Multigraph::new(2, vec![(0, 1); 3]).unwrap();
        assert_eq!(chromatic_poly(&g, BruteLimits::default()).unwrap(), BigPoly::from_roots(&[0, 1]));
    }

    #[test]
    fn wheatstone_graph() {
        let w = Multigraph::new(4, vec![(0, 2), (0, 3), (2, 3), (2, 1), (3, 1)]).unwrap();
        assert_eq!(chromatic_poly(&w, BruteLimits::default()).unwrap(), BigPoly::from_roots(&[0, 1, 2, 2]));
    }

    #[test]
    fn non_sp_block_uses_subset_expansion() {
        let k4 = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(chromatic_poly(&k4, BruteLimits::default()).unwrap(), BigPoly::from_roots(&[0, 1, 2, 3]));
    }

    #[test]
    fn separable_and_disconnected() {
        // triangle sharing a vertex with an edge, plus an isolated vertex
        let g = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let p = chromatic_poly(&g, BruteLimits::default()).unwrap();
        assert_eq!(p, BigPoly::from_roots(&[0, 0, 1, 1, 2]));
        assert!(chromatic_poly(&Multigraph::new(1, vec![(0, 0)]).unwrap(), BruteLimits::default()).is_err());
        assert_eq!(chromatic_poly(&Multigraph::empty(0), BruteLimits::default()).unwrap(), BigPoly::one());
    }

    #[test]
    fn uniform_weight_specialises() {
        let (_, tree) = parse_sp("P(S(e,e),S(e,e))").unwrap();
        let z = tutte_tree_uniform(&tree).unwrap();
        assert_eq!(z.eval(&minus_one()), chromatic_poly_tree(&tree).unwrap());
        // 4-cycle with uniform v: (q+v)^4 + (q-1) v^4 at q = 2, v = 3
        let at_v = z.eval(&BigPoly::from_i64(&[3]));
        assert_eq!(at_v.eval(&BigInt::from(2)), BigInt::from(5i64.pow(4) + 81));
    }
}
