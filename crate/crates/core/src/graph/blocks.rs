use super::Multigraph;

/// A block with maps from its local vertex and edge ids to the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub graph: Multigraph,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Block {
    fn from_edges(host: &Multigraph, mut edge_ids: Vec<usize>) -> Block {
        edge_ids.sort_unstable();
        let mut vertices = Vec::new();
        for &e in &edge_ids {
            let (a, b) = host.edges()[e];
            for v in [a, b] {
                if !vertices.contains(&v) {
                    vertices.push(v);
                }
            }
        }
        let local = |v: usize| vertices.iter().position(|&u| u == v).unwrap();
        let edges = edge_ids.iter().map(|&e| (local(host.edges()[e].0), local(host.edges()[e].1))).collect();
        Block { graph: Multigraph::new(vertices.len(), edges).unwrap(), vertices, edges: edge_ids }
    }
}

/// Block decomposition. Every loop is its own block and every isolated
/// vertex without loops is a one-vertex block.
pub fn blocks(g: &Multigraph) -> Vec<Block> {
    let n = g.vertex_count();
    let inc = g.incidence();
    let mut out = Vec::new();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();

    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            out.push(Block::from_edges(g, vec![e]));
        }
    }

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if inc[root].iter().all(|&(_, w)| w == root) {
            if inc[root].is_empty() {
                out.push(Block { graph: Multigraph::empty(1), vertices: vec![root], edges: Vec::new() });
            }
            continue;
        }
        // frames: (vertex, edge used to enter it, next incidence index)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, pe, idx) = *frame;
            if idx < inc[v].len() {
                frame.2 += 1;
                let (e, w) = inc[v][idx];
                if e == pe || w == v {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push(e);
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        out.push(Block::from_edges(g, comp));
                    }
                }
            }
        }
    }
    out
}

/// Whether all vertices lie in one connected component (true for 0 or 1 vertices).
pub fn is_connected(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    let inc = g.incidence();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(_, w) in &inc[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bowtie_has_two_blocks() {
        let g = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let bs = blocks(&g);
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.edges.len() == 3));
    }

    #[test]
    fn nonseparable_is_one_block() {
        let k4 = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let bs = blocks(&k4);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].graph.edge_count(), 6);
        assert_eq!(bs[0].vertices.len(), 4);
    }

    #[test]
    fn path_of_two_edges() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(blocks(&g).len(), 2);
    }

    #[test]
    fn loops_parallels_and_isolated() {
        let g = Multigraph::new(4, vec![(0, 1), (1, 0), (1, 1), (1, 2)]).unwrap();
        let bs = blocks(&g);
        // {0-1 double}, {loop at 1}, {1-2}, {3}
        assert_eq!(bs.len(), 4);
        let mut sizes: Vec<usize> = bs.iter().map(|b| b.edges.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![0, 1, 1, 2]);
        let covered: usize = bs.iter().map(|b| b.edges.len()).sum();
        assert_eq!(covered, g.edge_count());
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&Multigraph::new(3, vec![(0, 1), (2, 1)]).unwrap()));
        assert!(!is_connected(&Multigraph::new(3, vec![(0, 1)]).unwrap()));
    }
}
