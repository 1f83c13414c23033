use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::graph::Graph;
use crate::wl::{ChiColoring, Digest};

use super::words::{add_count, check_cap, WordCounts, WordTrie};

/// Color-word counts of k-simplicial walks, one map per length 1..=t_max.
///
/// Walks are enumerated on ordered tuples: an incoming vertex is appended, an
/// outgoing vertex is removed from its slot. Each step is colored by χ_{k,h}
/// of the current tuple. `cap` bounds the number of live (tuple, word) pairs.
pub fn walk_census(
    g: &Graph,
    k: usize,
    h: usize,
    t_max: usize,
    cap: u64,
) -> Result<Vec<WordCounts>> {
    let coloring = ChiColoring::new(g, k, h);
    let n = g.n();

    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..=k {
        let next: Vec<Vec<usize>> = layer
            .iter()
            .flat_map(|t| {
                (0..n).filter(|v| !t.contains(v)).map(move |v| {
                    let mut u = t.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
        tuples.extend(next.iter().cloned());
        layer = next;
    }
    let index: HashMap<&[usize], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();

    let mut palette: Vec<Digest> = Vec::new();
    let mut color_of_digest: HashMap<Digest, u32> = HashMap::new();
    let color: Vec<u32> = tuples
        .iter()
        .map(|t| {
            let d = coloring.color(t).digest();
            *color_of_digest.entry(d).or_insert_with(|| {
                palette.push(d);
                (palette.len() - 1) as u32
            })
        })
        .collect();
    let succ: Vec<Vec<usize>> = tuples
        .iter()
        .map(|t| {
            let mut out = Vec::new();
            if t.len() <= k {
                for v in (0..n).filter(|v| !t.contains(v)) {
                    let mut u = t.clone();
                    u.push(v);
                    out.push(index[u.as_slice()]);
                }
            }
            if t.len() >= 2 {
                for i in 0..t.len() {
                    let mut u = t.clone();
                    u.remove(i);
                    out.push(index[u.as_slice()]);
                }
            }
            out
        })
        .collect();

    let mut trie = WordTrie::new();
    let mut live: HashMap<(usize, u32), u64> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        if t.len() == 1 {
            live.insert((i, trie.extend(0, color[i])), 1);
        }
    }
    let mut out = Vec::with_capacity(t_max);
    for step in 1..=t_max {
        let mut census: HashMap<u32, u64> = HashMap::new();
        for (&(_, w), &c) in &live {
            add_count(census.entry(w).or_default(), c, "walk count")?;
        }
        out.push(
            census
                .into_iter()
                .map(|(w, c)| (trie.spell(w, &palette), c))
                .collect(),
        );
        if step == t_max {
            break;
        }
        let mut next: HashMap<(usize, u32), u64> = HashMap::new();
        for (&(i, w), &c) in &live {
            for &j in &succ[i] {
                let key = (j, trie.extend(w, color[j]));
                add_count(next.entry(key).or_default(), c, "walk count")?;
            }
        }
        check_cap(next.len(), cap, "live census entries")?;
        live = next;
    }
    Ok(out)
}

/// Number of walks with 1..=t_max simplices starting at a vertex, in the
/// Hasse graph of the (k+1)-bounded nonempty subsets of an n-set, by
/// repeated multiplication with the adjacency matrix.
pub fn hasse_walk_totals(n: usize, k: usize, t_max: usize) -> Vec<BigUint> {
    assert!(n < 32, "subset masks are 32-bit");
    let simplices: Vec<u32> = (1u32..1 << n)
        .filter(|s| s.count_ones() as usize <= k + 1)
        .collect();
    let index: HashMap<u32, usize> = simplices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let adj: Vec<Vec<usize>> = simplices
        .iter()
        .map(|&s| {
            (0..n)
                .filter_map(|v| index.get(&(s ^ (1 << v))).copied())
                .collect()
        })
        .collect();
    let mut vec: Vec<BigUint> = simplices
        .iter()
        .map(|s| {
            if s.count_ones() == 1 {
                BigUint::from(1u8)
            } else {
                BigUint::zero()
            }
        })
        .collect();
    let mut out = Vec::with_capacity(t_max);
    for step in 1..=t_max {
        out.push(vec.iter().sum());
        if step == t_max {
            break;
        }
        let mut next = vec![BigUint::zero(); simplices.len()];
        for (i, x) in vec.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &j in &adj[i] {
                next[j] += x;
            }
        }
        vec = next;
    }
    out
}
