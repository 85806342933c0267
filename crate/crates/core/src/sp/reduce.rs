use std::collections::{BTreeSet, HashMap};

use super::{DecompTree, TreeBuilder};
use crate::error::{Error, Result};
use crate::graph::{is_connected, TwoTerminalGraph};

/// Live edge of the reduced graph: endpoints and the tree node it stands for.
#[derive(Clone, Copy)]
struct Virtual {
    a: usize,
    b: usize,
    node: usize,
}

struct Reducer {
    builder: TreeBuilder,
    live: Vec<Option<Virtual>>,
    incident: Vec<BTreeSet<usize>>,
    bundles: HashMap<(usize, usize), Vec<usize>>,
    pending: Vec<usize>,
    s: usize,
    t: usize,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Reducer {
    fn remove(&mut self, id: usize) -> Virtual {
        let v = self.live[id].take().expect("live virtual edge");
        self.incident[v.a].remove(&id);
        self.incident[v.b].remove(&id);
        let bundle = self.bundles.get_mut(&key(v.a, v.b)).unwrap();
        bundle.retain(|&x| x != id);
        v
    }

    fn note_degree(&mut self, v: usize) {
        if v != self.s && v != self.t && self.incident[v].len() == 2 {
            self.pending.push(v);
        }
    }

    /// Insert a virtual edge and absorb any parallel partner.
    fn insert(&mut self, a: usize, b: usize, node: usize) {
        let id = self.live.len();
        self.live.push(Some(Virtual { a, b, node }));
        self.incident[a].insert(id);
        self.incident[b].insert(id);
        let bundle = self.bundles.entry(key(a, b)).or_default();
        bundle.push(id);
        if bundle.len() >= 2 {
            let (first, second) = (bundle[0], bundle[1]);
            let x = self.remove(first);
            let y = self.remove(second);
            // orient the second constituent like the first
            if self.builder.node(y.node).s != self.builder.node(x.node).s {
                self.builder.flip(y.node);
            }
            let p = self.builder.parallel(x.node, y.node);
            let (s, t) = (self.builder.node(p).s, self.builder.node(p).t);
            self.insert(s, t, p);
            self.note_degree(a);
            self.note_degree(b);
        }
    }

    fn contract(&mut self, v: usize) {
        let ids: Vec<usize> = self.incident[v].iter().copied().collect();
        let x = self.remove(ids[0]);
        let y = self.remove(ids[1]);
        if self.builder.node(x.node).t != v {
            self.builder.flip(x.node);
        }
        if self.builder.node(y.node).s != v {
            self.builder.flip(y.node);
        }
        let sn = self.builder.series(x.node, y.node);
        let (s, t) = (self.builder.node(sn).s, self.builder.node(sn).t);
        self.insert(s, t, sn);
    }
}

/// Maximal decomposition tree with single-edge leaves if `(G, s, t)` is
/// two-terminal series-parallel, found by exhaustive series and parallel
/// reduction; `None` otherwise.
pub fn decompose_sp(g: &TwoTerminalGraph) -> Result<Option<DecompTree>> {
    g.graph.require_loopless()?;
    if !is_connected(&g.graph) {
        return Err(Error::domain("decompose_sp needs a connected graph"));
    }
    let n = g.graph.vertex_count();
    let mut r = Reducer {
        builder: TreeBuilder::new(n),
        live: Vec::new(),
        incident: vec![BTreeSet::new(); n],
        bundles: HashMap::new(),
        pending: Vec::new(),
        s: g.s,
        t: g.t,
    };
    r.builder.graph = g.graph.clone();
    for (e, &(a, b)) in g.graph.edges().iter().enumerate() {
        let leaf = r.builder.existing_edge(e, a, b);
        r.insert(a, b, leaf);
    }
    for v in 0..n {
        r.note_degree(v);
    }
    while let Some(v) = r.pending.pop() {
        if r.incident[v].len() == 2 {
            r.contract(v);
        }
    }
    let remaining: Vec<usize> = (0..r.live.len()).filter(|&i| r.live[i].is_some()).collect();
    if remaining.len() != 1 {
        return Ok(None);
    }
    let last = r.live[remaining[0]].unwrap();
    if key(last.a, last.b) != key(g.s, g.t) {
        return Ok(None);
    }
    if r.builder.node(last.node).s != g.s {
        r.builder.flip(last.node);
    }
    let (_, tree) = r.builder.finish(last.node);
    Ok(Some(tree))
}
