use std::collections::HashMap;

use crate::error::Result;
use crate::graph::Graph;
use crate::wl::{ChiColoring, Digest};

use super::words::{add_count, check_cap, WordCounts, WordTrie};

/// The multisets Sw^(0..=t_max) of the literal (k,h) walk refinement.
///
/// Tuples range over all of V^{1..=k+1}, repeats included. A tuple's word
/// multiset at step t+1 collects, each extended by the tuple's own color,
/// the words of its prefix (incoming last entry) and of every (ℓ+1)-tuple
/// that yields it by deleting one position (outgoing entry), counting each
/// (longer tuple, position) pair once. Sw^(t) sums over tuples of length
/// at most k. Words in Sw^(t) have t+1 colors.
pub fn sw_refinement(
    g: &Graph,
    k: usize,
    h: usize,
    t_max: usize,
    cap: u64,
) -> Result<Vec<WordCounts>> {
    let coloring = ChiColoring::new(g, k, h);
    let n = g.n();

    // tuples of each length in base-n order, offsets per length
    let mut offset = vec![0usize; k + 3];
    for l in 1..=k + 1 {
        offset[l + 1] = offset[l] + n.pow(l as u32);
    }
    let total = offset[k + 2];
    let decode = |mut i: usize| -> Vec<usize> {
        let l = (1..=k + 1).find(|&l| i < offset[l + 1]).unwrap();
        i -= offset[l];
        let mut t = vec![0; l];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    };
    let encode =
        |t: &[usize]| -> usize { offset[t.len()] + t.iter().fold(0, |acc, &v| acc * n + v) };

    let mut palette: Vec<Digest> = Vec::new();
    let mut by_digest: HashMap<Digest, u32> = HashMap::new();
    let mut color = Vec::with_capacity(total);
    let mut sources: Vec<Vec<usize>> = Vec::with_capacity(total);
    for i in 0..total {
        let t = decode(i);
        let d = coloring.color(&t).digest();
        color.push(*by_digest.entry(d).or_insert_with(|| {
            palette.push(d);
            (palette.len() - 1) as u32
        }));
        let l = t.len();
        let mut src = Vec::new();
        if l > 1 {
            src.push(encode(&t[..l - 1]));
        }
        if l <= k {
            for p in 0..=l {
                for x in 0..n {
                    let mut v = t.clone();
                    v.insert(p, x);
                    src.push(encode(&v));
                }
            }
        }
        sources.push(src);
    }

    let mut trie = WordTrie::new();
    let mut words: Vec<HashMap<u32, u64>> = (0..total)
        .map(|i| {
            let mut m = HashMap::new();
            if i < offset[2] {
                m.insert(trie.extend(0, color[i]), 1);
            }
            m
        })
        .collect();
    let aggregate = |words: &[HashMap<u32, u64>], trie: &WordTrie| -> Result<WordCounts> {
        let mut acc: HashMap<u32, u64> = HashMap::new();
        for m in &words[..offset[k + 1]] {
            for (&w, &c) in m {
                add_count(acc.entry(w).or_default(), c, "walk refinement count")?;
            }
        }
        Ok(acc
            .into_iter()
            .map(|(w, c)| (trie.spell(w, &palette), c))
            .collect())
    };

    let mut out = vec![aggregate(&words, &trie)?];
    for _ in 0..t_max {
        let mut next: Vec<HashMap<u32, u64>> = Vec::with_capacity(total);
        let mut live = 0usize;
        for (i, src) in sources.iter().enumerate() {
            let mut m: HashMap<u32, u64> = HashMap::new();
            for &s in src {
                for (&w, &c) in &words[s] {
                    let key = trie.extend(w, color[i]);
                    add_count(m.entry(key).or_default(), c, "walk refinement count")?;
                }
            }
            live += m.len();
            next.push(m);
        }
        check_cap(live, cap, "live refinement entries")?;
        words = next;
        out.push(aggregate(&words, &trie)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::DEFAULT_CAP;

    #[test]
    fn base_case_colors_vertices() {
        let g = Graph::path(3);
        let sw = sw_refinement(&g, 1, 1, 0, DEFAULT_CAP).unwrap();
        assert_eq!(sw[0].values().sum::<u64>(), 3);
        assert!(sw[0].keys().all(|w| w.len() == 1));
    }

    #[test]
    fn single_vertex_counts_repeated_tuples() {
        // (v,v) first extends (v) at step 1; (v) then draws from it through
        // both deletable slots at step 2
        let sw = sw_refinement(&Graph::empty(1), 1, 1, 2, DEFAULT_CAP).unwrap();
        assert_eq!(sw[1].values().sum::<u64>(), 0);
        assert_eq!(sw[2].values().sum::<u64>(), 2);
    }
}
