use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::graph::{is_cyclic_component, strongly_connected_components};
use crate::regex::nfa::Nfa;

/// Cycle rank (loop complexity) of the transition digraph of `n`.
pub fn cycle_rank(n: &Nfa) -> usize {
    graph_cycle_rank(&n.graph())
}

/// Recursive cycle rank: 0 for acyclic graphs, otherwise the maximum over
/// strongly connected components, where a cyclic component scores one plus
/// the minimum rank left after deleting one of its vertices.
pub fn graph_cycle_rank(adj: &[Vec<usize>]) -> usize {
    let all: BitSet = (0..adj.len()).collect();
    let mut memo = HashMap::new();
    rank(adj, &all, &mut memo)
}

fn rank(adj: &[Vec<usize>], alive: &BitSet, memo: &mut HashMap<BitSet, usize>) -> usize {
    if let Some(&r) = memo.get(alive) {
        return r;
    }
    let mask: Vec<bool> = (0..adj.len()).map(|v| alive.contains(v)).collect();
    let mut best = 0;
    for comp in strongly_connected_components(adj, &mask) {
        if !is_cyclic_component(adj, &comp) {
            continue;
        }
        let comp_set: BitSet = comp.iter().copied().collect();
        let inner = comp
            .iter()
            .map(|&v| {
                let mut rest = comp_set.clone();
                rest.remove(v);
                rank(adj, &rest, memo)
            })
            .min()
            .unwrap_or(0);
        best = best.max(1 + inner);
    }
    memo.insert(alive.clone(), best);
    best
}
