#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use tuttebound::SpExpr;

/// Random composition with exactly `edges` edge slots; a slot becomes a
/// Wheatstone bridge with probability `w_prob` when at least five remain.
pub fn random_expr<R: Rng>(rng: &mut R, edges: usize, w_prob: f64) -> SpExpr {
    if edges >= 5 && rng.gen_bool(w_prob) && (edges == 5 || rng.gen_bool(0.5)) {
        if edges == 5 {
            return SpExpr::Wheatstone;
        }
        let rest = random_expr(rng, edges - 5, w_prob);
        let parts = vec![SpExpr::Wheatstone, rest];
        return if rng.gen_bool(0.5) { SpExpr::Series(parts) } else { SpExpr::Parallel(parts) };
    }
    if edges == 1 {
        return SpExpr::Edge;
    }
    let k = rng.gen_range(2..=edges.min(3));
    // split into k positive parts
    let mut cuts: Vec<usize> = Vec::new();
    while cuts.len() < k - 1 {
        let c = rng.gen_range(1..edges);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut sizes = Vec::new();
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(edges)) {
        sizes.push(c - prev);
        prev = c;
    }
    let parts = sizes.into_iter().map(|s| random_expr(rng, s, w_prob)).collect();
    if rng.gen_bool(0.5) {
        SpExpr::Series(parts)
    } else {
        SpExpr::Parallel(parts)
    }
}

/// Whether the expression uses a Wheatstone leaf.
pub fn has_wheatstone(e: &SpExpr) -> bool {
    match e {
        SpExpr::Edge => false,
        SpExpr::Wheatstone => true,
        SpExpr::Series(xs) | SpExpr::Parallel(xs) => xs.iter().any(has_wheatstone),
    }
}

pub fn arb_expr(max_edges: usize, with_w: bool) -> impl Strategy<Value = SpExpr> {
    let leaf = if with_w {
        prop_oneof![4 => Just(SpExpr::Edge), 1 => Just(SpExpr::Wheatstone)].boxed()
    } else {
        Just(SpExpr::Edge).boxed()
    };
    leaf.prop_recursive(4, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(SpExpr::Series),
            prop::collection::vec(inner, 2..=3).prop_map(SpExpr::Parallel),
        ]
    })
    .prop_filter("edge budget", move |e| e.edge_count() <= max_edges)
}
