//! k-dimensional Weisfeiler-Leman refinement with graph-independent color
//! names, and the combined coloring χ_{k,h} of vertex tuples of length up to
//! k+1.
//!
//! Colors are recursive values (a DAG of [`ColorNode`]s) rather than
//! per-graph integer ranks, so colors computed on different graphs can be
//! compared directly. Every node carries a SHA-256 digest of its structure;
//! equality is digest equality, and the order is the canonical recursive one
//! (base before refined, base nodes by atomic type, refined nodes
//! lexicographically by previous color then signature).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use sha2::{Digest as _, Sha256};

use crate::atomic::{atomic_type_unchecked, AtomicType};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A SHA-256 structural digest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest(pub [u8; 32]);

impl Digest {
    pub fn of(bytes: &[u8]) -> Digest {
        Digest(Sha256::digest(bytes).into())
    }

    pub fn hex(&self) -> String {
        hex::encode(self.0)
    }

    /// First 8 bytes in hex, for human-facing output.
    pub fn short(&self) -> String {
        hex::encode(&self.0[..8])
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.short())
    }
}

/// One element of a refinement signature: the atomic type of the extended
/// (k+1)-tuple and the k colors of the substituted tuples.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignatureEntry {
    pub atp: AtomicType,
    pub colors: Vec<ColorNode>,
}

#[derive(Clone)]
pub enum NodeKind {
    Base(AtomicType),
    Refined {
        prev: ColorNode,
        signature: Vec<SignatureEntry>,
    },
}

struct NodeData {
    digest: Digest,
    round: usize,
    kind: NodeKind,
}

/// A hash-consed WL color value.
#[derive(Clone)]
pub struct ColorNode(Arc<NodeData>);

impl ColorNode {
    pub fn base(atp: AtomicType) -> ColorNode {
        let mut buf = vec![b'B'];
        atp.encode(&mut buf);
        ColorNode(Arc::new(NodeData {
            digest: Digest::of(&buf),
            round: 0,
            kind: NodeKind::Base(atp),
        }))
    }

    /// `signature` must already be sorted.
    pub fn refined(prev: ColorNode, signature: Vec<SignatureEntry>) -> ColorNode {
        debug_assert!(signature.windows(2).all(|w| w[0] <= w[1]));
        let mut buf = vec![b'R'];
        buf.extend_from_slice(&prev.digest().0);
        buf.extend_from_slice(&(signature.len() as u64).to_le_bytes());
        for e in &signature {
            e.atp.encode(&mut buf);
            buf.push(e.colors.len() as u8);
            for c in &e.colors {
                buf.extend_from_slice(&c.digest().0);
            }
        }
        let round = prev.round() + 1;
        ColorNode(Arc::new(NodeData {
            digest: Digest::of(&buf),
            round,
            kind: NodeKind::Refined { prev, signature },
        }))
    }

    pub fn digest(&self) -> Digest {
        self.0.digest
    }

    pub fn round(&self) -> usize {
        self.0.round
    }

    pub fn kind(&self) -> &NodeKind {
        &self.0.kind
    }

    /// The round-0 ancestor's atomic type.
    pub fn atomic_type(&self) -> &AtomicType {
        match &self.0.kind {
            NodeKind::Base(a) => a,
            NodeKind::Refined { prev, .. } => prev.atomic_type(),
        }
    }

    /// Structural equality by full unfolding, ignoring digests. Slow; for
    /// tests.
    pub fn deep_eq(&self, other: &ColorNode) -> bool {
        match (&self.0.kind, &other.0.kind) {
            (NodeKind::Base(a), NodeKind::Base(b)) => a == b,
            (
                NodeKind::Refined {
                    prev: p1,
                    signature: s1,
                },
                NodeKind::Refined {
                    prev: p2,
                    signature: s2,
                },
            ) => {
                p1.deep_eq(p2)
                    && s1.len() == s2.len()
                    && s1.iter().zip(s2).all(|(x, y)| {
                        x.atp == y.atp
                            && x.colors.len() == y.colors.len()
                            && x.colors.iter().zip(&y.colors).all(|(a, b)| a.deep_eq(b))
                    })
            }
            _ => false,
        }
    }

    /// Canonical recursive order computed without digest shortcuts. Slow;
    /// for tests.
    pub fn deep_cmp(&self, other: &ColorNode) -> Ordering {
        match (&self.0.kind, &other.0.kind) {
            (NodeKind::Base(a), NodeKind::Base(b)) => a.cmp(b),
            (NodeKind::Base(_), NodeKind::Refined { .. }) => Ordering::Less,
            (NodeKind::Refined { .. }, NodeKind::Base(_)) => Ordering::Greater,
            (
                NodeKind::Refined {
                    prev: p1,
                    signature: s1,
                },
                NodeKind::Refined {
                    prev: p2,
                    signature: s2,
                },
            ) => p1.deep_cmp(p2).then_with(|| {
                for (x, y) in s1.iter().zip(s2) {
                    let o = x.atp.cmp(&y.atp).then_with(|| {
                        for (a, b) in x.colors.iter().zip(&y.colors) {
                            let o = a.deep_cmp(b);
                            if o != Ordering::Equal {
                                return o;
                            }
                        }
                        x.colors.len().cmp(&y.colors.len())
                    });
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                s1.len().cmp(&s2.len())
            }),
        }
    }
}

impl PartialEq for ColorNode {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.digest == other.0.digest
    }
}

impl Eq for ColorNode {}

impl Hash for ColorNode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.digest.hash(state);
    }
}

impl Ord for ColorNode {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (&self.0.kind, &other.0.kind) {
            (NodeKind::Base(a), NodeKind::Base(b)) => a.cmp(b),
            (NodeKind::Base(_), NodeKind::Refined { .. }) => Ordering::Less,
            (NodeKind::Refined { .. }, NodeKind::Base(_)) => Ordering::Greater,
            (
                NodeKind::Refined {
                    prev: p1,
                    signature: s1,
                },
                NodeKind::Refined {
                    prev: p2,
                    signature: s2,
                },
            ) => p1.cmp(p2).then_with(|| s1.cmp(s2)),
        }
    }
}

impl PartialOrd for ColorNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ColorNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}{:?}", self.round(), self.digest())
    }
}

/// WL colors of all k-tuples (with repeats), one vector per round. Tuples are
/// indexed in base n, first entry most significant.
#[derive(Clone, Debug)]
pub struct ColorTable {
    n: usize,
    k: usize,
    rounds: Vec<Vec<ColorNode>>,
}

impl ColorTable {
    /// Round 0: every k-tuple colored by its atomic type.
    pub fn initial(g: &Graph, k: usize) -> ColorTable {
        assert!(k >= 1, "k must be positive");
        let n = g.n();
        let count = n.pow(k as u32);
        let mut interned: HashMap<Digest, ColorNode> = HashMap::new();
        let mut tuple = vec![0; k];
        let round0 = (0..count)
            .map(|idx| {
                decode_tuple(idx, n, &mut tuple);
                let node = ColorNode::base(atomic_type_unchecked(g, &tuple));
                interned.entry(node.digest()).or_insert(node).clone()
            })
            .collect();
        ColorTable {
            n,
            k,
            rounds: vec![round0],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the last computed round.
    pub fn last_round(&self) -> usize {
        self.rounds.len() - 1
    }

    pub fn round(&self, r: usize) -> Result<&[ColorNode]> {
        self.rounds
            .get(r)
            .map(Vec::as_slice)
            .ok_or(Error::InsufficientRounds {
                have: self.last_round(),
                need: r,
            })
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.k);
        tuple.iter().fold(0, |acc, &v| acc * self.n + v)
    }

    pub fn color(&self, r: usize, tuple: &[usize]) -> Result<&ColorNode> {
        let round = self.round(r)?;
        Ok(&round[self.tuple_index(tuple)])
    }

    /// Appends the next refinement round.
    pub fn refine(&mut self, g: &Graph) {
        let next = wl_round(g, self.k, self.rounds.last().expect("round 0 exists"));
        self.rounds.push(next);
    }

    /// Color histogram of round `r`, keyed by digest.
    pub fn histogram(&self, r: usize) -> Result<BTreeMap<Digest, usize>> {
        let mut h = BTreeMap::new();
        for c in self.round(r)? {
            *h.entry(c.digest()).or_insert(0) += 1;
        }
        Ok(h)
    }

    /// Number of distinct colors in round `r`.
    pub fn class_count(&self, r: usize) -> Result<usize> {
        Ok(self.histogram(r)?.len())
    }
}

fn decode_tuple(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// One refinement step. For every k-tuple ū the new color pairs the old one
/// with the sorted multiset over all vertices v of
/// `(atp(ū v), χ(ū[1↦v]), …, χ(ū[k↦v]))`.
pub fn wl_round(g: &Graph, k: usize, prev: &[ColorNode]) -> Vec<ColorNode> {
    let n = g.n();
    debug_assert_eq!(prev.len(), n.pow(k as u32));
    let mut interned: HashMap<Digest, ColorNode> = HashMap::new();
    let mut tuple = vec![0; k];
    let mut ext = vec![0; k + 1];
    let mut powers = vec![1usize; k];
    for p in (0..k.saturating_sub(1)).rev() {
        powers[p] = powers[p + 1] * n;
    }
    (0..prev.len())
        .map(|idx| {
            decode_tuple(idx, n, &mut tuple);
            ext[..k].copy_from_slice(&tuple);
            let mut signature: Vec<SignatureEntry> = (0..n)
                .map(|v| {
                    ext[k] = v;
                    let colors = (0..k)
                        .map(|p| {
                            let sub = idx - tuple[p] * powers[p] + v * powers[p];
                            prev[sub].clone()
                        })
                        .collect();
                    SignatureEntry {
                        atp: atomic_type_unchecked(g, &ext),
                        colors,
                    }
                })
                .collect();
            signature.sort();
            let node = ColorNode::refined(prev[idx].clone(), signature);
            interned.entry(node.digest()).or_insert(node).clone()
        })
        .collect()
}

/// Builds the table with rounds `0..=rounds`.
pub fn wl_colors(g: &Graph, k: usize, rounds: usize) -> ColorTable {
    let mut t = ColorTable::initial(g, k);
    for _ in 0..rounds {
        t.refine(g);
    }
    t
}

/// A χ_{k,h} color: a WL color node for tuples of length at most k, the
/// atomic type for (k+1)-tuples. Atomic-tagged colors order first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ChiColor {
    Atomic(AtomicType),
    Node(ColorNode),
}

impl ChiColor {
    pub fn digest(&self) -> Digest {
        match self {
            ChiColor::Atomic(a) => {
                let mut buf = vec![b'A'];
                a.encode(&mut buf);
                Digest::of(&buf)
            }
            ChiColor::Node(c) => c.digest(),
        }
    }

    pub fn atomic_type(&self) -> &AtomicType {
        match self {
            ChiColor::Atomic(a) => a,
            ChiColor::Node(c) => c.atomic_type(),
        }
    }
}

/// Graph-independent total order on colors.
pub fn color_order(a: &ChiColor, b: &ChiColor) -> Ordering {
    a.cmp(b)
}

/// The round a length-ℓ tuple (ℓ <= k) reads under χ_{k,h}.
pub fn chi_round(k: usize, h: usize, len: usize) -> usize {
    k + h - len
}

/// χ_{k,h}(G, ū). Tuples of length ℓ <= k are padded by repeating their last
/// entry to length k and read at round k+h-ℓ; (k+1)-tuples get their atomic
/// type.
pub fn chi_kh(
    g: &Graph,
    tuple: &[usize],
    k: usize,
    h: usize,
    table: &ColorTable,
) -> Result<ChiColor> {
    let len = tuple.len();
    if len == 0 || len > k + 1 {
        return Err(Error::TupleLength { len, max: k + 1 });
    }
    for &v in tuple {
        g.check_vertex(v)?;
    }
    if len == k + 1 {
        return Ok(ChiColor::Atomic(atomic_type_unchecked(g, tuple)));
    }
    let mut padded = tuple.to_vec();
    padded.resize(k, tuple[len - 1]);
    Ok(ChiColor::Node(
        table.color(chi_round(k, h, len), &padded)?.clone(),
    ))
}

/// χ_{k,h} for one graph with its color table built to the required depth
/// (rounds `0..=k+h-1`).
#[derive(Clone, Debug)]
pub struct ChiColoring<'g> {
    g: &'g Graph,
    k: usize,
    h: usize,
    table: ColorTable,
}

impl<'g> ChiColoring<'g> {
    pub fn new(g: &'g Graph, k: usize, h: usize) -> Self {
        assert!(k >= 1 && h >= 1, "k and h must be positive");
        let table = wl_colors(g, k, k + h - 1);
        ChiColoring { g, k, h, table }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn table(&self) -> &ColorTable {
        &self.table
    }

    /// χ_{k,h} of a non-empty tuple of length at most k+1 with valid entries.
    pub fn color(&self, tuple: &[usize]) -> ChiColor {
        chi_kh(self.g, tuple, self.k, self.h, &self.table).expect("tuple within range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atomic::atomic_type;

    fn partition(round: &[ColorNode]) -> Vec<Vec<usize>> {
        let mut m: BTreeMap<Digest, Vec<usize>> = BTreeMap::new();
        for (i, c) in round.iter().enumerate() {
            m.entry(c.digest()).or_default().push(i);
        }
        let mut p: Vec<_> = m.into_values().collect();
        p.sort();
        p
    }

    #[test]
    fn cycle_stays_monochromatic() {
        let t = wl_colors(&Graph::cycle(6), 1, 1);
        assert_eq!(t.class_count(1).unwrap(), 1);
    }

    #[test]
    fn path_splits_by_degree() {
        let t = wl_colors(&Graph::path(3), 1, 1);
        let r1 = t.round(1).unwrap();
        assert_ne!(r1[0], r1[1]);
        assert_eq!(r1[0], r1[2]);
    }

    #[test]
    fn stable_partition_is_fixed_point() {
        let g = Graph::path(5);
        let t = wl_colors(&g, 1, 6);
        assert_eq!(
            partition(t.round(5).unwrap()),
            partition(t.round(6).unwrap())
        );
    }

    #[test]
    fn round_zero_is_atomic_type() {
        let g = Graph::path(4);
        let t = wl_colors(&g, 2, 0);
        for u in 0..4 {
            for v in 0..4 {
                let c = t.color(0, &[u, v]).unwrap();
                assert_eq!(c, &ColorNode::base(atomic_type(&g, &[u, v]).unwrap()));
            }
        }
    }

    #[test]
    fn c6_vs_two_triangles() {
        let c6 = Graph::cycle(6);
        let tt = Graph::complete(3).disjoint_union(&Graph::complete(3));
        for r in 0..=3 {
            let a = wl_colors(&c6, 1, r);
            let b = wl_colors(&tt, 1, r);
            assert_eq!(a.histogram(r).unwrap(), b.histogram(r).unwrap());
        }
        let a = wl_colors(&c6, 2, 2);
        let b = wl_colors(&tt, 2, 2);
        assert_ne!(a.histogram(2).unwrap(), b.histogram(2).unwrap());
    }

    #[test]
    fn chi_cases() {
        let g = Graph::path(4);
        let col = ChiColoring::new(&g, 1, 1);
        assert_eq!(
            col.color(&[0, 1]),
            ChiColor::Atomic(atomic_type(&g, &[0, 1]).unwrap())
        );
        // k=1, h=1, ℓ=1: round-1 color, which here separates by degree.
        for u in 0..4 {
            for v in 0..4 {
                let same = col.color(&[u]) == col.color(&[v]);
                assert_eq!(same, g.degree(u) == g.degree(v));
            }
        }
        let col2 = ChiColoring::new(&g, 2, 1);
        let c = col2.color(&[2]);
        assert_eq!(
            c,
            ChiColor::Node(col2.table().color(2, &[2, 2]).unwrap().clone())
        );
        assert!(chi_kh(&g, &[], 2, 1, col2.table()).is_err());
        assert!(chi_kh(&g, &[0, 1, 2, 3], 2, 1, col2.table()).is_err());
        let shallow = wl_colors(&g, 2, 0);
        assert!(matches!(
            chi_kh(&g, &[0], 2, 1, &shallow),
            Err(Error::InsufficientRounds { .. })
        ));
    }

    #[test]
    fn digest_and_deep_comparison_agree() {
        let g = Graph::path(4);
        let h = g.permute(&[2, 0, 3, 1]).unwrap();
        let a = wl_colors(&g, 2, 2);
        let b = wl_colors(&h, 2, 2);
        let ra = a.round(2).unwrap();
        let rb = b.round(2).unwrap();
        for x in ra {
            for y in rb {
                assert_eq!(x == y, x.deep_eq(y));
                assert_eq!(x.cmp(y), x.deep_cmp(y));
            }
        }
    }

    #[test]
    fn order_is_antisymmetric() {
        let g = Graph::star(3);
        let t = wl_colors(&g, 1, 2);
        let nodes: Vec<ChiColor> = t
            .round(2)
            .unwrap()
            .iter()
            .cloned()
            .map(ChiColor::Node)
            .collect();
        let atp = ChiColor::Atomic(atomic_type(&g, &[0, 1]).unwrap());
        for a in nodes.iter().chain([&atp]) {
            assert_eq!(color_order(a, a), Ordering::Equal);
            for b in nodes.iter().chain([&atp]) {
                assert_eq!(color_order(a, b), color_order(b, a).reverse());
            }
            if a != &atp {
                assert_eq!(color_order(&atp, a), Ordering::Less);
            }
        }
    }
}
