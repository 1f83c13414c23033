//! Atomic types of vertex tuples: the equality-and-adjacency pattern.

use std::fmt;

use crate::error::Result;
use crate::graph::Graph;

/// The atomic type of an ℓ-tuple.
///
/// Equality blocks partition the positions `0..ℓ` and are listed by their
/// smallest position; adjacency pairs `(i, j)` with `i < j` are sorted. The
/// derived order is the canonical order on atomic types.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicType {
    eq_blocks: Vec<Vec<u8>>,
    adj_pairs: Vec<(u8, u8)>,
}

impl AtomicType {
    pub fn len(&self) -> usize {
        self.eq_blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.eq_blocks.is_empty()
    }

    pub fn eq_blocks(&self) -> &[Vec<u8>] {
        &self.eq_blocks
    }

    pub fn adj_pairs(&self) -> &[(u8, u8)] {
        &self.adj_pairs
    }

    /// Stable byte encoding, used for structural digests.
    pub fn encode(&self, out: &mut Vec<u8>) {
        out.push(self.len() as u8);
        out.push(self.eq_blocks.len() as u8);
        for b in &self.eq_blocks {
            out.push(b.len() as u8);
            out.extend_from_slice(b);
        }
        out.push(self.adj_pairs.len() as u8);
        for &(i, j) in &self.adj_pairs {
            out.push(i);
            out.push(j);
        }
    }
}

impl fmt::Debug for AtomicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "atp{:?}{:?}", self.eq_blocks, self.adj_pairs)
    }
}

/// Computes the atomic type of `tuple` in `g`.
pub fn atomic_type(g: &Graph, tuple: &[usize]) -> Result<AtomicType> {
    for &v in tuple {
        g.check_vertex(v)?;
    }
    Ok(atomic_type_unchecked(g, tuple))
}

pub(crate) fn atomic_type_unchecked(g: &Graph, tuple: &[usize]) -> AtomicType {
    let mut eq_blocks: Vec<Vec<u8>> = Vec::new();
    let mut block_of: Vec<usize> = Vec::with_capacity(tuple.len());
    for (i, &v) in tuple.iter().enumerate() {
        match (0..i).find(|&j| tuple[j] == v) {
            Some(j) => {
                let b = block_of[j];
                eq_blocks[b].push(i as u8);
                block_of.push(b);
            }
            None => {
                block_of.push(eq_blocks.len());
                eq_blocks.push(vec![i as u8]);
            }
        }
    }
    let mut adj_pairs = Vec::new();
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if g.has_edge(tuple[i], tuple[j]) {
                adj_pairs.push((i as u8, j as u8));
            }
        }
    }
    AtomicType {
        eq_blocks,
        adj_pairs,
    }
}

/// Atomic type of a vertex pair. Exactly three classes exist for simple graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atp2Class {
    Equal,
    Adjacent,
    DistinctNonAdjacent,
}

impl Atp2Class {
    pub const ALL: [Atp2Class; 3] = [
        Atp2Class::Equal,
        Atp2Class::Adjacent,
        Atp2Class::DistinctNonAdjacent,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Atp2Class::Equal => "=",
            Atp2Class::Adjacent => "E",
            Atp2Class::DistinctNonAdjacent => "N",
        }
    }
}

pub fn atp2(g: &Graph, u: usize, v: usize) -> Result<Atp2Class> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    Ok(atp2_unchecked(g, u, v))
}

#[inline]
pub(crate) fn atp2_unchecked(g: &Graph, u: usize, v: usize) -> Atp2Class {
    if u == v {
        Atp2Class::Equal
    } else if g.has_edge(u, v) {
        Atp2Class::Adjacent
    } else {
        Atp2Class::DistinctNonAdjacent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let k2 = Graph::complete(2);
        let t = atomic_type(&k2, &[0, 1]).unwrap();
        assert_eq!(t.eq_blocks(), &[vec![0], vec![1]]);
        assert_eq!(t.adj_pairs(), &[(0, 1)]);
    }

    #[test]
    fn unary_type_is_unique() {
        let g = Graph::path(4);
        let t0 = atomic_type(&g, &[0]).unwrap();
        for v in 1..4 {
            assert_eq!(atomic_type(&g, &[v]).unwrap(), t0);
        }
        assert_eq!(t0.eq_blocks(), &[vec![0]]);
        assert!(t0.adj_pairs().is_empty());
    }

    #[test]
    fn repeated_entries_share_a_block() {
        let g = Graph::path(3);
        let t = atomic_type(&g, &[1, 0, 1]).unwrap();
        assert_eq!(t.eq_blocks(), &[vec![0, 2], vec![1]]);
        assert_eq!(t.adj_pairs(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn two_triangles_share_all_injective_triple_types() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let mut types = std::collections::BTreeSet::new();
        for comp in [[0, 1, 2], [3, 4, 5]] {
            for &a in &comp {
                for &b in &comp {
                    for &c in &comp {
                        if a != b && b != c && a != c {
                            types.insert(atomic_type(&g, &[a, b, c]).unwrap());
                        }
                    }
                }
            }
        }
        assert_eq!(types.len(), 1);
    }

    #[test]
    fn atp2_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(atp2(&k2, 1, 1).unwrap(), Atp2Class::Equal);
        assert_eq!(atp2(&k2, 0, 1).unwrap(), Atp2Class::Adjacent);
        let p3 = Graph::path(3);
        assert_eq!(atp2(&p3, 0, 2).unwrap(), Atp2Class::DistinctNonAdjacent);
        assert!(atp2(&p3, 0, 3).is_err());
        assert!(atomic_type(&p3, &[0, 7]).is_err());
    }
}
