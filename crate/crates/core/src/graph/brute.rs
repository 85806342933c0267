use super::{Multigraph, TwoTerminalGraph};
use crate::error::{Error, Result};
use crate::tutte::poly::{ring_pow, Ring};

/// Size guards for the exponential-time oracles.
#[derive(Clone, Copy, Debug)]
pub struct BruteLimits {
    pub max_edges: usize,
    pub max_vertices: usize,
}

impl Default for BruteLimits {
    fn default() -> Self {
        BruteLimits { max_edges: 24, max_vertices: 10 }
    }
}

/// Union-find with undo, for depth-first subset enumeration.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    comps: usize,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n).collect(), size: vec![1; n], comps: n, history: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.comps -= 1;
        self.history.push(Some((ra, rb)));
    }

    fn undo(&mut self) {
        if let Some((ra, rb)) = self.history.pop().expect("undo without union") {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
            self.comps += 1;
        }
    }
}

/// Visit every edge subset with (component structure, product of weights).
fn for_each_subset<R: Ring>(g: &Multigraph, w: &[R], visit: &mut impl FnMut(&RollbackDsu, &R)) {
    fn rec<R: Ring>(
        e: usize,
        g: &Multigraph,
        w: &[R],
        dsu: &mut RollbackDsu,
        prod: R,
        visit: &mut impl FnMut(&RollbackDsu, &R),
    ) {
        if e == g.edge_count() {
            visit(dsu, &prod);
            return;
        }
        rec(e + 1, g, w, dsu, prod.clone(), visit);
        let (a, b) = g.edges()[e];
        dsu.union(a, b);
        rec(e + 1, g, w, dsu, prod * w[e].clone(), visit);
        dsu.undo();
    }
    let mut dsu = RollbackDsu::new(g.vertex_count());
    rec(0, g, w, &mut dsu, R::one(), visit);
}

fn check_subset_input<R>(g: &Multigraph, w: &[R], limits: BruteLimits) -> Result<()> {
    if w.len() != g.edge_count() {
        return Err(Error::domain(format!("{} weights for {} edges", w.len(), g.edge_count())));
    }
    if g.edge_count() > limits.max_edges {
        return Err(Error::limit(format!(
            "subset expansion over {} edges exceeds the limit of {}",
            g.edge_count(),
            limits.max_edges
        )));
    }
    Ok(())
}

/// Subset expansion `sum_A q^k(A) prod_{e in A} v_e`.
pub fn tutte_brute<R: Ring>(g: &Multigraph, q: &R, w: &[R], limits: BruteLimits) -> Result<R> {
    check_subset_input(g, w, limits)?;
    let qpow: Vec<R> = (0..=g.vertex_count()).map(|k| ring_pow(q, k as u32)).collect();
    let mut z = R::zero();
    for_each_subset(g, w, &mut |dsu, prod| {
        z = z.clone() + qpow[dsu.comps].clone() * prod.clone();
    });
    Ok(z)
}

/// Partial polynomials `(A, B)`: subsets with the terminals disconnected
/// (resp. connected), counting only components that avoid both terminals.
pub fn partial_tutte_brute<R: Ring>(g: &TwoTerminalGraph, q: &R, w: &[R], limits: BruteLimits) -> Result<(R, R)> {
    check_subset_input(&g.graph, w, limits)?;
    let qpow: Vec<R> = (0..=g.graph.vertex_count()).map(|k| ring_pow(q, k as u32)).collect();
    let (mut a, mut b) = (R::zero(), R::zero());
    for_each_subset(&g.graph, w, &mut |dsu, prod| {
        if dsu.find(g.s) == dsu.find(g.t) {
            b = b.clone() + qpow[dsu.comps - 1].clone() * prod.clone();
        } else {
            a = a.clone() + qpow[dsu.comps - 2].clone() * prod.clone();
        }
    });
    Ok((a, b))
}

/// Potts sum over all `q^|V|` colourings with edge factors `1 + v_e [same colour]`.
pub fn potts_brute<R: Ring>(g: &Multigraph, q: usize, w: &[R], limits: BruteLimits) -> Result<R> {
    if q == 0 {
        return Err(Error::domain("potts_brute needs q >= 1"));
    }
    if w.len() != g.edge_count() {
        return Err(Error::domain(format!("{} weights for {} edges", w.len(), g.edge_count())));
    }
    let n = g.vertex_count();
    if n > limits.max_vertices {
        return Err(Error::limit(format!("{n} vertices exceeds the colouring limit of {}", limits.max_vertices)));
    }
    // edges become active once their later endpoint is coloured
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        closing[a.max(b)].push(e);
    }
    let factor: Vec<R> = w.iter().map(|v| R::one() + v.clone()).collect();
    let mut colour = vec![0usize; n];

    #[allow(clippy::too_many_arguments)]
    fn rec<R: Ring>(
        v: usize,
        q: usize,
        g: &Multigraph,
        closing: &[Vec<usize>],
        factor: &[R],
        colour: &mut [usize],
        prod: R,
        total: &mut R,
    ) {
        if v == colour.len() {
            *total = total.clone() + prod;
            return;
        }
        for c in 0..q {
            colour[v] = c;
            let mut p = prod.clone();
            for &e in &closing[v] {
                let (a, b) = g.edges()[e];
                if colour[a] == colour[b] {
                    p = p * factor[e].clone();
                }
            }
            rec(v + 1, q, g, closing, factor, colour, p, total);
        }
    }
    let mut total = R::zero();
    rec(0, q, g, &closing, &factor, &mut colour, R::one(), &mut total);
    Ok(total)
}
