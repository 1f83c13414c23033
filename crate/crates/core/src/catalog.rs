//! Small-graph catalogs for exhaustive checks.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Every labeled graph on `n` vertices (2^(n choose 2) of them). Intended for
/// `n <= 6`.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    assert!(pairs.len() < 32, "catalog too large");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn adjacency_key(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut key = 0u64;
    for v in 1..n {
        for u in 0..v {
            key = (key << 1) | u64::from(g.has_edge(perm[u], perm[v]));
        }
    }
    key
}

/// Brute-force canonical key: the minimum adjacency bit string over all
/// relabelings.
pub fn canonical_key(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| adjacency_key(g, p)).min().unwrap_or(0)
}

/// One representative per isomorphism class of graphs on `n` vertices
/// (1, 1, 2, 4, 11, 34, 156 for n = 0..=6), in a deterministic order.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "catalog too large");
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let smaller = nonisomorphic_graphs(n - 1);
    let perms = permutations(n);
    let mut classes: BTreeMap<u64, Graph> = BTreeMap::new();
    for base in &smaller {
        for mask in 0u32..1 << (n - 1) {
            let mut edges = base.edges();
            edges.extend(
                (0..n - 1)
                    .filter(|u| mask >> u & 1 == 1)
                    .map(|u| (u, n - 1)),
            );
            let g = Graph::from_edges(n, &edges).unwrap();
            classes.entry(canonical_key(&g, &perms)).or_insert(g);
        }
    }
    classes.into_values().collect()
}

/// Non-isomorphic graphs on at most `max_n` vertices, by increasing order.
pub fn nonisomorphic_up_to(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(nonisomorphic_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(all_labeled_graphs(4).len(), 64);
        assert_eq!(permutations(4).len(), 24);
    }
}
