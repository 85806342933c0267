//! Multigraphs with distinguished terminals, flows, blocks and brute-force
//! oracles for the Tutte and Potts sums.

mod blocks;
mod brute;
mod flow;
mod io;

pub use blocks::{blocks, is_connected, Block};
pub use brute::{partial_tutte_brute, potts_brute, tutte_brute, BruteLimits};
pub use flow::{max_flow, maxmaxflow, min_cut_brute};
pub use io::{read_graph_json, read_weights_json, GraphRecord};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tutte::{convert, ExtendedComplex, System};
use num_complex::Complex64;

/// Undirected multigraph; the position of an edge in `edges` is its identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= vertex_count || b >= vertex_count) {
            return Err(Error::domain(format!("edge ({a},{b}) out of range for {vertex_count} vertices")));
        }
        Ok(Multigraph { vertex_count, edges })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Multigraph { vertex_count, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        assert!(a < self.vertex_count && b < self.vertex_count, "edge endpoint out of range");
        self.edges.push((a, b));
        self.edges.len() - 1
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub(crate) fn require_loopless(&self) -> Result<()> {
        if self.has_loops() {
            return Err(Error::domain("graph has a loop; this operation needs a loopless graph"));
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    /// Incidence lists: for each vertex, `(edge id, other endpoint)`.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push((e, b));
            if a != b {
                inc[b].push((e, a));
            }
        }
        inc
    }

    /// Disjoint union; the second graph's vertices and edges are renumbered after the first's.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let off = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        Multigraph { vertex_count: off + other.vertex_count, edges }
    }

    /// Replace edge `e_star` of `self` by a copy of `g`, gluing `g.s` to `a`
    /// and `g.t` to the other endpoint of `e_star`. The surviving edges of
    /// `self` keep their order and `g`'s edges are appended.
    pub fn insert_2term(&self, e_star: usize, a: usize, g: &TwoTerminalGraph) -> Result<Multigraph> {
        let &(x, y) = self.edges.get(e_star).ok_or_else(|| Error::domain(format!("no edge {e_star}")))?;
        let b = if a == x {
            y
        } else if a == y {
            x
        } else {
            return Err(Error::domain(format!("vertex {a} is not an endpoint of edge {e_star}")));
        };
        let mut out = Multigraph::empty(self.vertex_count);
        for (i, &(p, r)) in self.edges.iter().enumerate() {
            if i != e_star {
                out.add_edge(p, r);
            }
        }
        let mut map = vec![usize::MAX; g.graph.vertex_count];
        map[g.s] = a;
        map[g.t] = b;
        for m in map.iter_mut() {
            if *m == usize::MAX {
                *m = out.add_vertex();
            }
        }
        for &(p, r) in &g.graph.edges {
            out.add_edge(map[p], map[r]);
        }
        Ok(out)
    }
}

/// Multigraph with two distinct distinguished vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTerminalGraph {
    pub graph: Multigraph,
    pub s: usize,
    pub t: usize,
}

impl TwoTerminalGraph {
    pub fn new(graph: Multigraph, s: usize, t: usize) -> Result<Self> {
        if s == t {
            return Err(Error::domain("terminals must be distinct"));
        }
        if s >= graph.vertex_count || t >= graph.vertex_count {
            return Err(Error::domain("terminal out of range"));
        }
        Ok(TwoTerminalGraph { graph, s, t })
    }

    /// The graph `G + st` with one extra terminal-to-terminal edge.
    pub fn with_terminal_edge(&self) -> Multigraph {
        let mut g = self.graph.clone();
        g.add_edge(self.s, self.t);
        g
    }

    /// Between-terminals flow.
    pub fn flow(&self) -> Result<usize> {
        max_flow(&self.graph, self.s, self.t)
    }
}

/// Edge weights in one coordinate system, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightAssignment {
    pub system: System,
    pub values: Vec<ExtendedComplex>,
}

impl WeightAssignment {
    pub fn uniform(system: System, value: ExtendedComplex, edges: usize) -> Self {
        WeightAssignment { system, values: vec![value; edges] }
    }

    /// The chromatic point `v_e = -1` on every edge.
    pub fn chromatic(edges: usize) -> Self {
        Self::uniform(System::V, ExtendedComplex::real(-1.0), edges)
    }

    pub fn check_for(&self, g: &Multigraph) -> Result<()> {
        if self.values.len() != g.edge_count() {
            return Err(Error::domain(format!(
                "weight assignment has {} values for {} edges",
                self.values.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }

    /// Same weights expressed in another system.
    pub fn to_system(&self, to: System, q: Complex64) -> Result<WeightAssignment> {
        let values = self.values.iter().map(|&x| convert(x, self.system, to, q)).collect::<Result<_>>()?;
        Ok(WeightAssignment { system: to, values })
    }

    /// Finite `v` values, failing if any weight is infinite or undefined there.
    pub fn finite_v(&self, q: Complex64) -> Result<Vec<Complex64>> {
        self.to_system(System::V, q)?
            .values
            .iter()
            .enumerate()
            .map(|(e, x)| x.finite().ok_or_else(|| Error::domain(format!("edge {e} has non-finite v weight {x}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_path_into_triangle() {
        let tri = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let path = TwoTerminalGraph::new(Multigraph::new(3, vec![(0, 2), (2, 1)]).unwrap(), 0, 1).unwrap();
        let h = tri.insert_2term(0, 0, &path).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 4);
        assert!((0..4).all(|v| h.degree(v) == 2));
    }

    #[test]
    fn insert_single_edge_is_identity_up_to_order() {
        let tri = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let k2 = TwoTerminalGraph::new(Multigraph::new(2, vec![(0, 1)]).unwrap(), 0, 1).unwrap();
        let h = tri.insert_2term(1, 1, &k2).unwrap();
        assert_eq!(h.edges(), &[(0, 1), (2, 0), (1, 2)]);
        assert!(tri.insert_2term(5, 0, &k2).is_err());
        assert!(tri.insert_2term(0, 2, &k2).is_err());
    }

    #[test]
    fn rejects_bad_edges_and_terminals() {
        assert!(Multigraph::new(2, vec![(0, 2)]).is_err());
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        assert!(TwoTerminalGraph::new(g.clone(), 0, 0).is_err());
        assert!(TwoTerminalGraph::new(g, 0, 3).is_err());
    }
}
