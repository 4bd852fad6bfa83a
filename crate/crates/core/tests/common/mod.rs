#![allow(dead_code)]

use mrdom::{Graph, Label, Labeling};
use proptest::prelude::*;

/// Graph on `n` vertices from a bitmask over pairs `u < v` in lexicographic order.
pub fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |m| graph_from_mask(n, &m))
    })
}

pub fn arb_label() -> impl Strategy<Value = Label> {
    prop_oneof![Just(Label::Minus), Just(Label::Plus), Just(Label::Two)]
}

pub fn arb_graph_and_labeling(max_n: usize) -> impl Strategy<Value = (Graph, Labeling)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (
            Just(g),
            proptest::collection::vec(arb_label(), n).prop_map(Labeling::new),
        )
    })
}
