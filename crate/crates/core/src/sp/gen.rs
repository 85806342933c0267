use super::{DecompTree, SpExpr};
use crate::error::{Error, Result};
use crate::graph::TwoTerminalGraph;

pub const DEFAULT_VERTEX_LIMIT: usize = 200_000;

/// `(r^n + r - 2)/(r - 1)`, or `None` on overflow.
pub fn leaf_joined_vertex_count(r: usize, n: usize) -> Option<usize> {
    let rn = r.checked_pow(u32::try_from(n).ok()?)?;
    Some((rn.checked_add(r)? - 2) / (r - 1))
}

/// Expression for the leaf-joined tree: `G_1 = e^||r`, `G_{k+1} = S(e, G_k)^||r`.
pub fn leaf_joined_expr(r: usize, n: usize) -> SpExpr {
    let mut g = SpExpr::parallel(vec![SpExpr::Edge; r]);
    for _ in 1..n {
        g = SpExpr::parallel(vec![SpExpr::Series(vec![SpExpr::Edge, g]); r]);
    }
    g
}

/// Complete `r`-ary tree of height `n` with all leaves identified; the
/// terminals are the root (`s`) and the identified leaves (`t`).
pub fn gen_leaf_joined_tree(r: usize, n: usize, vertex_limit: usize) -> Result<(TwoTerminalGraph, DecompTree)> {
    if r < 2 || n < 1 {
        return Err(Error::domain("leaf-joined trees need r >= 2 and n >= 1"));
    }
    match leaf_joined_vertex_count(r, n) {
        Some(v) if v <= vertex_limit => Ok(leaf_joined_expr(r, n).build()),
        _ => Err(Error::limit(format!("leaf-joined tree r={r}, n={n} exceeds {vertex_limit} vertices"))),
    }
}

/// `K_4 - e` with the two degree-2 vertices as terminals.
pub fn gen_wheatstone() -> (TwoTerminalGraph, DecompTree) {
    SpExpr::Wheatstone.build()
}

/// `p` internally disjoint paths of length `s` between the terminals.
pub fn gen_theta(s: usize, p: usize) -> Result<(TwoTerminalGraph, DecompTree)> {
    if s == 0 || p == 0 {
        return Err(Error::domain("theta graphs need s, p >= 1"));
    }
    Ok(SpExpr::parallel(vec![SpExpr::series(vec![SpExpr::Edge; s]); p]).build())
}

/// `N` copies of `gadget` chained in series and closed into a cycle by one
/// extra edge between the outer terminals.
pub fn gen_cycle_with_tail(copies: usize, gadget: &SpExpr) -> Result<(TwoTerminalGraph, DecompTree)> {
    if copies == 0 {
        return Err(Error::domain("need at least one gadget copy"));
    }
    Ok(SpExpr::Parallel(vec![SpExpr::Edge, SpExpr::series(vec![gadget.clone(); copies])]).build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::maxmaxflow;

    #[test]
    fn leaf_joined_sizes() {
        let (g1, _) = gen_leaf_joined_tree(2, 1, DEFAULT_VERTEX_LIMIT).unwrap();
        assert_eq!((g1.graph.vertex_count(), g1.graph.edge_count()), (2, 2));
        let (g3, _) = gen_leaf_joined_tree(2, 3, DEFAULT_VERTEX_LIMIT).unwrap();
        assert_eq!(g3.graph.vertex_count(), 8);
        let (g, _) = gen_leaf_joined_tree(3, 2, DEFAULT_VERTEX_LIMIT).unwrap();
        assert_eq!(g.graph.vertex_count(), 5);
        assert_eq!(g.flow().unwrap(), 3);
        assert_eq!(maxmaxflow(&g.graph).unwrap(), 4);
        assert!(gen_leaf_joined_tree(2, 20, 1000).is_err());
        assert!(gen_leaf_joined_tree(1, 2, 1000).is_err());
    }

    #[test]
    fn wheatstone_shape() {
        let (w, _) = gen_wheatstone();
        assert_eq!((w.graph.vertex_count(), w.graph.edge_count()), (4, 5));
        assert_eq!(w.graph.degree(w.s), 2);
        assert_eq!(w.graph.degree(w.t), 2);
    }

    #[test]
    fn theta_is_cycle() {
        let (c4, _) = gen_theta(2, 2).unwrap();
        assert_eq!((c4.graph.vertex_count(), c4.graph.edge_count()), (4, 4));
        assert!((0..4).all(|v| c4.graph.degree(v) == 2));
    }

    #[test]
    fn ninety_four_vertices() {
        let (h, tree) = gen_cycle_with_tail(3, &leaf_joined_expr(2, 5)).unwrap();
        assert_eq!(h.graph.vertex_count(), 94);
        tree.validate().unwrap();
        assert_eq!(maxmaxflow(&h.graph).unwrap(), 3);
    }
}
