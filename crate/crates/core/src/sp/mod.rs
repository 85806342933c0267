//! Series-parallel structure: decomposition trees, recognition by
//! reduction, niceness, the composition DSL and named graph families.

mod dsl;
mod gen;
mod reduce;

pub use dsl::{parse_expr, parse_sp, SpExpr};
pub use gen::{
    gen_cycle_with_tail, gen_leaf_joined_tree, gen_theta, gen_wheatstone, leaf_joined_expr, leaf_joined_vertex_count,
    DEFAULT_VERTEX_LIMIT,
};
pub use reduce::decompose_sp;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{blocks, is_connected, Multigraph, TwoTerminalGraph};

/// Leaf constituents. A Wheatstone leaf is `K_4 - e` on terminals `s, t` and
/// inner vertices `a, b`, with edges ordered `sa, sb, ab, at, bt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Leaf {
    Edge(usize),
    Wheatstone { edges: [usize; 5], a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Leaf(Leaf),
    /// Left constituent's `t` is glued to the right constituent's `s`.
    Series(usize, usize),
    Parallel(usize, usize),
}

/// A tree node: its kind, constituent terminals and between-terminals flow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub kind: NodeKind,
    pub s: usize,
    pub t: usize,
    pub flow: usize,
}

/// Binary decomposition tree stored as an arena in which every child
/// precedes its parent, so a forward pass is a bottom-up traversal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompTree {
    nodes: Vec<Node>,
    root: usize,
}

impl DecompTree {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_node(&self) -> &Node {
        &self.nodes[self.root]
    }

    /// Node ids of the subtree rooted at `i`, children before parents.
    pub fn subtree(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![i];
        while let Some(u) = stack.pop() {
            out.push(u);
            match self.nodes[u].kind {
                NodeKind::Series(l, r) | NodeKind::Parallel(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                NodeKind::Leaf(_) => {}
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether every leaf is a single edge.
    pub fn is_maximal(&self) -> bool {
        self.leaves().all(|l| matches!(l, Leaf::Edge(_)))
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Leaf> {
        self.nodes.iter().filter_map(|n| match &n.kind {
            NodeKind::Leaf(l) => Some(l),
            _ => None,
        })
    }

    /// Host edges `(id, endpoints)` covered by the subtree at `i`.
    pub fn edges_under(&self, i: usize) -> Vec<(usize, (usize, usize))> {
        let mut out = Vec::new();
        for u in self.subtree(i) {
            let n = &self.nodes[u];
            match &n.kind {
                NodeKind::Leaf(Leaf::Edge(e)) => out.push((*e, (n.s, n.t))),
                NodeKind::Leaf(Leaf::Wheatstone { edges, a, b }) => {
                    let ends = [(n.s, *a), (n.s, *b), (*a, *b), (*a, n.t), (*b, n.t)];
                    out.extend(edges.iter().copied().zip(ends));
                }
                _ => {}
            }
        }
        out.sort_unstable();
        out
    }

    /// Rebuild the host graph from the tree alone.
    pub fn to_graph(&self, vertex_count: usize) -> Result<TwoTerminalGraph> {
        let edges = self.edges_under(self.root);
        let mut list = vec![None; edges.len()];
        for (e, ends) in edges {
            let slot = list.get_mut(e).ok_or_else(|| Error::domain("edge ids in tree are not contiguous"))?;
            *slot = Some(ends);
        }
        let list = list.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::domain("edge ids missing"))?;
        let r = self.root_node();
        TwoTerminalGraph::new(Multigraph::new(vertex_count, list)?, r.s, r.t)
    }

    /// The constituent of node `i`, relabelled so that its vertices are
    /// `0..k` with `s = 0` and `t = 1`; also returns the host edge ids.
    pub fn constituent(&self, i: usize) -> (TwoTerminalGraph, Vec<usize>) {
        let n = &self.nodes[i];
        let mut vmap = vec![n.s, n.t];
        let mut edges = Vec::new();
        let mut ids = Vec::new();
        let local = |v: usize, vmap: &mut Vec<usize>| match vmap.iter().position(|&u| u == v) {
            Some(p) => p,
            None => {
                vmap.push(v);
                vmap.len() - 1
            }
        };
        for (e, (a, b)) in self.edges_under(i) {
            let la = local(a, &mut vmap);
            let lb = local(b, &mut vmap);
            edges.push((la, lb));
            ids.push(e);
        }
        let g = Multigraph::new(vmap.len(), edges).expect("local ids in range");
        (TwoTerminalGraph::new(g, 0, 1).expect("distinct terminals"), ids)
    }

    /// Check the structural invariants: child order, terminal gluing and flows.
    pub fn validate(&self) -> Result<()> {
        for (i, n) in self.nodes.iter().enumerate() {
            let bad = |m: &str| Err(Error::domain(format!("node {i}: {m}")));
            match n.kind {
                NodeKind::Leaf(Leaf::Edge(_)) if n.flow != 1 => return bad("edge flow must be 1"),
                NodeKind::Leaf(Leaf::Wheatstone { .. }) if n.flow != 2 => return bad("Wheatstone flow must be 2"),
                NodeKind::Series(l, r) => {
                    if l >= i || r >= i {
                        return bad("child after parent");
                    }
                    let (a, b) = (&self.nodes[l], &self.nodes[r]);
                    if a.s != n.s || a.t != b.s || b.t != n.t {
                        return bad("series terminals do not chain");
                    }
                    if n.flow != a.flow.min(b.flow) {
                        return bad("series flow is not the minimum");
                    }
                }
                NodeKind::Parallel(l, r) => {
                    if l >= i || r >= i {
                        return bad("child after parent");
                    }
                    let (a, b) = (&self.nodes[l], &self.nodes[r]);
                    if (a.s, a.t) != (n.s, n.t) || (b.s, b.t) != (n.s, n.t) {
                        return bad("parallel terminals differ");
                    }
                    if n.flow != a.flow + b.flow {
                        return bad("parallel flow is not the sum");
                    }
                }
                _ => {}
            }
            if n.s == n.t {
                return bad("terminals coincide");
            }
        }
        Ok(())
    }
}

/// Between-terminals flow of every node, indexed by node id.
pub fn constituent_flows(tree: &DecompTree) -> Vec<usize> {
    tree.nodes.iter().map(|n| n.flow).collect()
}

/// Whether every proper constituent (every non-root node) has flow at most `lambda - 1`.
pub fn check_proper_flow_bound(tree: &DecompTree, lambda: usize) -> bool {
    tree.nodes.iter().enumerate().all(|(i, n)| i == tree.root || n.flow < lambda)
}

/// `G` connected and `G + st` nonseparable.
pub fn is_nice(g: &TwoTerminalGraph) -> bool {
    is_connected(&g.graph) && blocks(&g.with_terminal_edge()).len() == 1
}

/// Incremental construction of a graph together with its tree.
#[derive(Clone, Debug)]
pub struct TreeBuilder {
    pub graph: Multigraph,
    nodes: Vec<Node>,
}

impl TreeBuilder {
    pub fn new(vertex_count: usize) -> Self {
        TreeBuilder { graph: Multigraph::empty(vertex_count), nodes: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.graph.add_vertex()
    }

    fn push(&mut self, kind: NodeKind, s: usize, t: usize, flow: usize) -> usize {
        self.nodes.push(Node { kind, s, t, flow });
        self.nodes.len() - 1
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn edge(&mut self, s: usize, t: usize) -> usize {
        let e = self.graph.add_edge(s, t);
        self.push(NodeKind::Leaf(Leaf::Edge(e)), s, t, 1)
    }

    /// Leaf for an already present host edge.
    pub(crate) fn existing_edge(&mut self, e: usize, s: usize, t: usize) -> usize {
        self.push(NodeKind::Leaf(Leaf::Edge(e)), s, t, 1)
    }

    pub fn wheatstone(&mut self, s: usize, t: usize) -> usize {
        let a = self.add_vertex();
        let b = self.add_vertex();
        let edges = [(s, a), (s, b), (a, b), (a, t), (b, t)].map(|(x, y)| self.graph.add_edge(x, y));
        self.push(NodeKind::Leaf(Leaf::Wheatstone { edges, a, b }), s, t, 2)
    }

    pub fn series(&mut self, l: usize, r: usize) -> usize {
        let (a, b) = (&self.nodes[l], &self.nodes[r]);
        assert_eq!(a.t, b.s, "series children must share the middle vertex");
        let (s, t, f) = (a.s, b.t, a.flow.min(b.flow));
        self.push(NodeKind::Series(l, r), s, t, f)
    }

    pub fn parallel(&mut self, l: usize, r: usize) -> usize {
        let (a, b) = (&self.nodes[l], &self.nodes[r]);
        assert_eq!((a.s, a.t), (b.s, b.t), "parallel children must share terminals");
        let (s, t, f) = (a.s, a.t, a.flow + b.flow);
        self.push(NodeKind::Parallel(l, r), s, t, f)
    }

    /// Swap the terminals of the subtree at `i` in place, reversing series order.
    pub(crate) fn flip(&mut self, i: usize) {
        let mut stack = vec![i];
        while let Some(u) = stack.pop() {
            let n = &mut self.nodes[u];
            std::mem::swap(&mut n.s, &mut n.t);
            match &mut n.kind {
                NodeKind::Series(l, r) => {
                    std::mem::swap(l, r);
                    stack.push(*l);
                    stack.push(*r);
                }
                NodeKind::Parallel(l, r) => {
                    stack.push(*l);
                    stack.push(*r);
                }
                NodeKind::Leaf(Leaf::Wheatstone { edges, .. }) => {
                    let e = *edges;
                    *edges = [e[3], e[4], e[2], e[0], e[1]];
                }
                NodeKind::Leaf(Leaf::Edge(_)) => {}
            }
        }
    }

    pub fn finish(self, root: usize) -> (Multigraph, DecompTree) {
        (self.graph, DecompTree { nodes: self.nodes, root })
    }
}
