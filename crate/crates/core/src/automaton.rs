//! The simplicial walk automaton of a graph: states are injective vertex
//! tuples of length 1..=k, letters are colored moves (insert or drop one
//! entry) and colored swaps (replace one entry), and all weights are 0/1
//! rationals before summation over positions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use crate::atomic::{atp2_unchecked, Atp2Class};
use crate::graph::Graph;
use crate::linalg::{fmt_rational, rat, Rational, SparseMatrix};
use crate::mia::Mia;
use crate::wl::{ChiColor, ChiColoring};

/// Dense indexing of the injective tuples of length 1..=k, ordered by
/// (length, lexicographic entries).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateIndex {
    n: usize,
    k: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl StateIndex {
    pub fn new(n: usize, k: usize) -> StateIndex {
        assert!(k >= 1, "k must be positive");
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for t in &layer {
                for v in 0..n {
                    if !t.contains(&v) {
                        let mut u = t.clone();
                        u.push(v);
                        next.push(u);
                    }
                }
            }
            tuples.extend(next.iter().cloned());
            layer = next;
        }
        let index = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        StateIndex {
            n,
            k,
            tuples,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }
}

/// Direction of a move: `Minus` drops an entry, `Plus` inserts one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        }
    }
}

/// A letter of the walk alphabet. `a` is the color of the state the letter
/// leaves, `b` the color of the state it enters. Swap positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Move {
        a: ChiColor,
        s: Sign,
        b: ChiColor,
    },
    Swap {
        a: ChiColor,
        tau: Atp2Class,
        p: usize,
        b: ChiColor,
    },
}

impl Letter {
    pub fn star(&self) -> Letter {
        match self {
            Letter::Move { a, s, b } => Letter::Move {
                a: b.clone(),
                s: s.flip(),
                b: a.clone(),
            },
            Letter::Swap { a, tau, p, b } => Letter::Swap {
                a: b.clone(),
                tau: *tau,
                p: *p,
                b: a.clone(),
            },
        }
    }

    pub fn start_color(&self) -> &ChiColor {
        match self {
            Letter::Move { a, .. } | Letter::Swap { a, .. } => a,
        }
    }

    pub fn end_color(&self) -> &ChiColor {
        match self {
            Letter::Move { b, .. } | Letter::Swap { b, .. } => b,
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Letter::Move { .. } => 0,
            Letter::Swap { .. } => 1,
        }
    }

    /// Stable text form with full color digests.
    pub fn render(&self) -> String {
        match self {
            Letter::Move { a, s, b } => format!("M {} {} {}", a.digest(), s.symbol(), b.digest()),
            Letter::Swap { a, tau, p, b } => {
                format!("S {} {} {} {}", a.digest(), tau.symbol(), p, b.digest())
            }
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then_with(|| self.start_color().cmp(other.start_color()))
            .then_with(|| self.end_color().cmp(other.end_color()))
            .then_with(|| match (self, other) {
                (Letter::Move { s, .. }, Letter::Move { s: t, .. }) => s.cmp(t),
                (Letter::Swap { tau, p, .. }, Letter::Swap { tau: t, p: q, .. }) => {
                    (tau, p).cmp(&(t, q))
                }
                _ => unreachable!("kinds compared first"),
            })
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Move { a, s, b } => write!(
                f,
                "({}, {}, {})",
                a.digest().short(),
                s.symbol(),
                b.digest().short()
            ),
            Letter::Swap { a, tau, p, b } => write!(
                f,
                "({}, {}, {}, {})",
                a.digest().short(),
                tau.symbol(),
                p,
                b.digest().short()
            ),
        }
    }
}

/// D^s_p over `states`: D⁻_p(ū, v̄) = 1 iff deleting position p of ū gives v̄;
/// D⁺_p is its transpose. Positions are 1-based.
pub fn matrix_d(states: &StateIndex, s: Sign, p: usize) -> SparseMatrix {
    assert!(p >= 1 && p <= states.k(), "position out of range");
    let mut trip = Vec::new();
    for (i, u) in states.tuples().iter().enumerate() {
        if u.len() < 2 || u.len() < p {
            continue;
        }
        let mut v = u.clone();
        v.remove(p - 1);
        let j = states
            .index_of(&v)
            .expect("shorter injective tuple is a state");
        trip.push((i, j, rat(1)));
    }
    let minus = SparseMatrix::from_triplets(states.len(), states.len(), trip);
    match s {
        Sign::Minus => minus,
        Sign::Plus => minus.transpose(),
    }
}

/// Σ_p D^s_p.
pub fn matrix_d_sum(states: &StateIndex, s: Sign) -> SparseMatrix {
    let d = states.len();
    (1..=states.k()).fold(SparseMatrix::zeros(d, d), |acc, p| {
        acc.add(&matrix_d(states, s, p))
    })
}

/// T^τ_p(ū, v̄) = 1 iff ū and v̄ agree off position p and their entries at p
/// have pair type τ.
pub fn matrix_t(g: &Graph, states: &StateIndex, tau: Atp2Class, p: usize) -> SparseMatrix {
    assert!(p >= 1 && p <= states.k(), "position out of range");
    let mut trip = Vec::new();
    for (i, u) in states.tuples().iter().enumerate() {
        if u.len() < p {
            continue;
        }
        let x = u[p - 1];
        for y in 0..g.n() {
            if atp2_unchecked(g, x, y) != tau {
                continue;
            }
            let mut v = u.clone();
            v[p - 1] = y;
            if let Some(j) = states.index_of(&v) {
                trip.push((i, j, rat(1)));
            }
        }
    }
    SparseMatrix::from_triplets(states.len(), states.len(), trip)
}

/// The diagonal projection onto states of color `a`.
pub fn matrix_p(colors: &[ChiColor], a: &ChiColor) -> SparseMatrix {
    let trip = colors
        .iter()
        .enumerate()
        .filter(|(_, c)| *c == a)
        .map(|(i, _)| (i, i, rat(1)))
        .collect();
    SparseMatrix::from_triplets(colors.len(), colors.len(), trip)
}

/// The simplicial walk automaton of (G, k, h) with all-ones initial and
/// final vectors. Only letters with nonzero matrices are present.
#[derive(Clone, Debug)]
pub struct SwAutomaton {
    n: usize,
    k: usize,
    h: usize,
    states: StateIndex,
    colors: Vec<ChiColor>,
    d_minus: SparseMatrix,
    d_plus: SparseMatrix,
    swaps: Vec<((Atp2Class, usize), SparseMatrix)>,
    mia: Mia<Letter>,
}

impl SwAutomaton {
    pub fn build(g: &Graph, k: usize, h: usize) -> SwAutomaton {
        let coloring = ChiColoring::new(g, k, h);
        let states = StateIndex::new(g.n(), k);
        let colors: Vec<ChiColor> = states.tuples().iter().map(|t| coloring.color(t)).collect();

        // dense color ids in canonical color order
        let mut distinct: Vec<&ChiColor> = colors.iter().collect();
        distinct.sort();
        distinct.dedup();
        let id_of: HashMap<&ChiColor, usize> =
            distinct.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let cid: Vec<usize> = colors.iter().map(|c| id_of[c]).collect();

        let d_minus = matrix_d_sum(&states, Sign::Minus);
        let d_plus = d_minus.transpose();
        let mut swaps = Vec::new();
        for tau in Atp2Class::ALL {
            for p in 1..=k {
                swaps.push(((tau, p), matrix_t(g, &states, tau, p)));
            }
        }

        let d = states.len();
        // (kind, a, b, param) -> triplets; param orders like the letter
        type Triplets = Vec<(usize, usize, Rational)>;
        let mut blocks: BTreeMap<(u8, usize, usize, usize), Triplets> = BTreeMap::new();
        let mut collect = |kind: u8, param: usize, m: &SparseMatrix| {
            for (i, j, x) in m.entries() {
                blocks
                    .entry((kind, cid[*i], cid[*j], param))
                    .or_default()
                    .push((*i, *j, x.clone()));
            }
        };
        collect(0, 0, &d_minus);
        collect(0, 1, &d_plus);
        for (t, ((_, _), m)) in swaps.iter().enumerate() {
            collect(1, t, m);
        }

        let mut letters: Vec<(Letter, SparseMatrix)> = blocks
            .into_iter()
            .map(|((kind, a, b, param), trip)| {
                let (a, b) = (distinct[a].clone(), distinct[b].clone());
                let letter = if kind == 0 {
                    let s = if param == 0 { Sign::Minus } else { Sign::Plus };
                    Letter::Move { a, s, b }
                } else {
                    let (tau, p) = swaps[param].0;
                    Letter::Swap { a, tau, p, b }
                };
                (letter, SparseMatrix::from_triplets(d, d, trip))
            })
            .collect();
        letters.sort_by(|x, y| x.0.cmp(&y.0));
        let alphabet: Vec<Letter> = letters.iter().map(|(l, _)| l.clone()).collect();
        let involution = alphabet
            .iter()
            .map(|l| {
                alphabet
                    .binary_search(&l.star())
                    .expect("alphabet is closed under the involution")
            })
            .collect();
        let transitions = letters.into_iter().map(|(_, m)| m).collect();
        let ones = vec![rat(1); d];
        let mia = Mia::new(d, alphabet, involution, transitions, ones.clone(), ones)
            .expect("automaton shapes are consistent");

        SwAutomaton {
            n: g.n(),
            k,
            h,
            states,
            colors,
            d_minus,
            d_plus,
            swaps,
            mia,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn states(&self) -> &StateIndex {
        &self.states
    }

    pub fn state_colors(&self) -> &[ChiColor] {
        &self.colors
    }

    pub fn mia(&self) -> &Mia<Letter> {
        &self.mia
    }

    pub fn alphabet(&self) -> &[Letter] {
        self.mia.alphabet()
    }

    pub fn letter_matrix(&self, letter: &Letter) -> Option<&SparseMatrix> {
        self.mia.matrix(letter)
    }

    /// Σ_p D^s_p.
    pub fn d_sum(&self, s: Sign) -> &SparseMatrix {
        match s {
            Sign::Minus => &self.d_minus,
            Sign::Plus => &self.d_plus,
        }
    }

    /// T^τ_p for every (τ, p) in (τ, p) order.
    pub fn swap_matrices(&self) -> &[((Atp2Class, usize), SparseMatrix)] {
        &self.swaps
    }

    pub fn swap_matrix(&self, tau: Atp2Class, p: usize) -> &SparseMatrix {
        &self
            .swaps
            .iter()
            .find(|(key, _)| *key == (tau, p))
            .expect("position within 1..=k")
            .1
    }

    /// Human-readable dump: states with colors, the ordered alphabet with
    /// adjoints, and every letter matrix as sorted triples.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "automaton n={} k={} h={}", self.n, self.k, self.h);
        let _ = writeln!(out, "states {}", self.states.len());
        for (i, t) in self.states.tuples().iter().enumerate() {
            let _ = writeln!(out, "q {i} {:?} {}", t, self.colors[i].digest());
        }
        let alphabet = self.mia.alphabet();
        let _ = writeln!(out, "letters {}", alphabet.len());
        for (i, l) in alphabet.iter().enumerate() {
            let _ = writeln!(
                out,
                "letter {i} {} star {}",
                l.render(),
                self.mia.involution()[i]
            );
            for (r, c, x) in self.mia.transitions()[i].entries() {
                let _ = writeln!(out, "  {r} {c} {}", fmt_rational(x));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_counts() {
        assert_eq!(StateIndex::new(3, 1).len(), 3);
        assert_eq!(StateIndex::new(3, 2).len(), 9);
        assert_eq!(StateIndex::new(0, 2).len(), 0);
        let s = StateIndex::new(3, 2);
        assert_eq!(s.tuple(3), &[0, 1]);
        assert_eq!(s.index_of(&[2, 1]), Some(8));
        assert_eq!(s.index_of(&[1, 1]), None);
    }

    #[test]
    fn drop_first_on_two_vertices() {
        let s = StateIndex::new(2, 2);
        let d = matrix_d(&s, Sign::Minus, 1);
        assert_eq!(d.nnz(), 2);
        // (0,1) -> (1)
        assert_eq!(
            d.get(s.index_of(&[0, 1]).unwrap(), s.index_of(&[1]).unwrap()),
            rat(1)
        );
    }

    #[test]
    fn swap_adjacent_on_edge_is_adjacency() {
        let g = Graph::complete(2);
        let s = StateIndex::new(2, 1);
        let t = matrix_t(&g, &s, Atp2Class::Adjacent, 1);
        assert_eq!(
            t.to_dense(),
            vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]
        );
        assert_eq!(
            matrix_t(&g, &s, Atp2Class::Equal, 1),
            SparseMatrix::identity(2)
        );
    }

    #[test]
    fn single_vertex_alphabet() {
        let a = SwAutomaton::build(&Graph::empty(1), 1, 1);
        assert_eq!(a.alphabet().len(), 1);
        assert!(matches!(
            &a.alphabet()[0],
            Letter::Swap {
                tau: Atp2Class::Equal,
                p: 1,
                ..
            }
        ));
    }

    #[test]
    fn valid_and_counts_states() {
        let g = Graph::path(4);
        let a = SwAutomaton::build(&g, 2, 1);
        assert_eq!(a.mia().validate(), Ok(()));
        assert_eq!(a.mia().evaluate(&[]).unwrap(), rat(4 + 12));
    }

    #[test]
    fn edge_k1_has_no_insertions() {
        let a = SwAutomaton::build(&Graph::complete(2), 1, 1);
        assert!(a
            .alphabet()
            .iter()
            .all(|l| !matches!(l, Letter::Move { .. })));
    }

    #[test]
    fn equal_swaps_sum_to_identity() {
        let a = SwAutomaton::build(&Graph::path(4), 2, 2);
        let d = a.states().len();
        let sum = a
            .alphabet()
            .iter()
            .filter(|l| {
                matches!(
                    l,
                    Letter::Swap {
                        tau: Atp2Class::Equal,
                        p: 1,
                        ..
                    }
                )
            })
            .fold(SparseMatrix::zeros(d, d), |acc, l| {
                acc.add(a.letter_matrix(l).unwrap())
            });
        assert_eq!(sum, SparseMatrix::identity(d));
    }

    #[test]
    fn color_mismatched_moves_annihilate() {
        let a = SwAutomaton::build(&Graph::path(4), 2, 1);
        let moves: Vec<&Letter> = a
            .alphabet()
            .iter()
            .filter(|l| matches!(l, Letter::Move { .. }))
            .collect();
        for x in &moves {
            for y in &moves {
                if x.end_color() != y.start_color() {
                    let prod = a.letter_matrix(x).unwrap().mul(a.letter_matrix(y).unwrap());
                    assert!(prod.is_zero());
                }
            }
        }
    }
}
