use std::collections::VecDeque;

use super::Multigraph;
use crate::error::{Error, Result};

/// Maximum number of edge-disjoint `x`-`y` paths (unit capacity per edge).
pub fn max_flow(g: &Multigraph, x: usize, y: usize) -> Result<usize> {
    let n = g.vertex_count();
    if x >= n || y >= n {
        return Err(Error::domain(format!("vertex out of range ({x}, {y}) for {n} vertices")));
    }
    if x == y {
        return Err(Error::domain("max_flow needs two distinct vertices"));
    }
    g.require_loopless()?;
    Ok(flow_on(g, &g.incidence(), x, y, usize::MAX))
}

/// Augmenting-path flow, stopping early once `cap` units are found.
fn flow_on(g: &Multigraph, inc: &[Vec<(usize, usize)>], x: usize, y: usize, cap: usize) -> usize {
    let edges = g.edges();
    // flow[e] = +1 if one unit runs a -> b for edges[e] = (a, b), -1 for b -> a
    let mut flow = vec![0i8; edges.len()];
    let mut total = 0;
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    while total < cap {
        pred.iter_mut().for_each(|p| *p = None);
        pred[x] = Some((usize::MAX, x));
        queue.clear();
        queue.push_back(x);
        'bfs: while let Some(u) = queue.pop_front() {
            for &(e, w) in &inc[u] {
                if pred[w].is_some() {
                    continue;
                }
                let forward = edges[e].0 == u;
                let room = if forward { flow[e] < 1 } else { flow[e] > -1 };
                if room {
                    pred[w] = Some((e, u));
                    if w == y {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if pred[y].is_none() {
            break;
        }
        let mut v = y;
        while v != x {
            let (e, u) = pred[v].unwrap();
            if edges[e].0 == u {
                flow[e] += 1;
            } else {
                flow[e] -= 1;
            }
            v = u;
        }
        total += 1;
    }
    total
}

/// Maximum of `max_flow` over all unordered vertex pairs.
pub fn maxmaxflow(g: &Multigraph) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::domain("maxmaxflow needs at least two vertices"));
    }
    g.require_loopless()?;
    let inc = g.incidence();
    let deg: Vec<usize> = inc.iter().map(|l| l.len()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|a, b| deg[*b].cmp(&deg[*a]));
    let mut best = 0;
    for (i, &x) in order.iter().enumerate() {
        if deg[x] <= best {
            break;
        }
        for &y in &order[i + 1..] {
            if deg[y] <= best {
                break;
            }
            best = best.max(flow_on(g, &inc, x, y, usize::MAX));
        }
    }
    Ok(best)
}

/// Minimum number of edges whose removal separates `x` from `y`, by
/// exhaustive search over vertex bipartitions. Test oracle for small graphs.
pub fn min_cut_brute(g: &Multigraph, x: usize, y: usize) -> Result<usize> {
    let n = g.vertex_count();
    if x == y || x >= n || y >= n {
        return Err(Error::domain("min_cut_brute needs two distinct valid vertices"));
    }
    if n > 20 {
        return Err(Error::limit("min_cut_brute is limited to 20 vertices"));
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
    let mut best = usize::MAX;
    for mask in 0u32..(1u32 << others.len()) {
        let mut side = vec![false; n];
        side[x] = true;
        for (i, &v) in others.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let cut = g.edges().iter().filter(|&&(a, b)| side[a] != side[b]).count();
        best = best.min(cut);
    }
    Ok(best)
}
