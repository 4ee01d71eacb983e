use crate::graph::Graph;
use crate::graphon::SampledGraph;

/// Vertices of a `k`-clique if one exists. Exact branch-and-bound search.
pub fn find_clique(g: &SampledGraph, k: usize) -> Option<Vec<usize>> {
    clique_in(&g.graph, k)
}

pub fn clique_in(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let words = g.words();
    let mut cand = vec![0u64; words];
    for v in (0..n).filter(|&v| g.degree(v) + 1 >= k) {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut chosen = Vec::with_capacity(k);
    grow(g, k, &mut chosen, &cand).then_some(chosen)
}

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn grow(g: &Graph, k: usize, chosen: &mut Vec<usize>, cand: &[u64]) -> bool {
    if chosen.len() == k {
        return true;
    }
    let mut rest = cand.to_vec();
    while count(&rest) + chosen.len() >= k {
        let (w, bits) = rest.iter().enumerate().find(|(_, b)| **b != 0).map(|(w, b)| (w, *b)).expect("nonempty");
        let v = w * 64 + bits.trailing_zeros() as usize;
        rest[w] &= !(1 << (v % 64));
        let next: Vec<u64> = rest.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
        chosen.push(v);
        if grow(g, k, chosen, &next) {
            return true;
        }
        chosen.pop();
    }
    false
}
