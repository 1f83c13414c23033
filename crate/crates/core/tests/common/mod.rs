//! Fixtures shared by the integration suites: a pool of graph pairs and a
//! generator of small random involution automata.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swcanon::linalg::{ratio, Rational, SparseMatrix};
use swcanon::mia::Mia;
use swcanon::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).unwrap()
}

pub fn union(parts: &[Graph]) -> Graph {
    parts
        .iter()
        .fold(Graph::empty(0), |acc, g| acc.disjoint_union(g))
}

/// 4×4 rook's graph: cells adjacent iff they share exactly one coordinate.
pub fn rook_4x4() -> Graph {
    let mut edges = Vec::new();
    for x in 0..16usize {
        for y in x + 1..16 {
            if (x / 4 == y / 4) ^ (x % 4 == y % 4) {
                edges.push((x, y));
            }
        }
    }
    graph(16, &edges)
}

/// Shrikhande graph as a Cayley graph on Z4 × Z4.
pub fn shrikhande() -> Graph {
    let gens = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    let mut edges = Vec::new();
    for x in 0..16usize {
        for y in x + 1..16 {
            let d = ((y / 4 + 4 - x / 4) % 4, (y % 4 + 4 - x % 4) % 4);
            if gens.contains(&d) {
                edges.push((x, y));
            }
        }
    }
    graph(16, &edges)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 0..n {
        for u in 0..v {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    graph(n, &edges)
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Named graph pairs: regular and irregular 1-WL-equivalent pairs,
/// disconnected cases, distinguishable pairs, and isomorphic relabelings.
pub fn pool() -> Vec<(&'static str, Graph, Graph)> {
    let c = Graph::cycle;
    let k = Graph::complete;
    let mut r = rng(0x5eed);
    let base = random_graph(&mut r, 6, 0.5);
    let relabeled = base.permute(&random_perm(&mut r, 6)).unwrap();
    let star5 = Graph::star(5);
    let star5_perm = star5.permute(&[3, 0, 5, 1, 4, 2]).unwrap();
    let two_k3 = union(&[c(3), c(3)]);
    let two_k3_perm = two_k3.permute(&[5, 2, 0, 4, 1, 3]).unwrap();
    let bull = graph(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]);
    vec![
        ("C6 / 2K3", c(6), union(&[c(3), c(3)])),
        (
            "K33 / prism",
            Graph::complete_bipartite(3, 3),
            c(6).complement(),
        ),
        ("C7 / C3+C4", c(7), union(&[c(3), c(4)])),
        ("C8 / 2C4", c(8), union(&[c(4), c(4)])),
        ("C8 / C3+C5", c(8), union(&[c(3), c(5)])),
        (
            "irregular A",
            graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 5), (2, 4), (2, 5)]),
            graph(6, &[(0, 2), (0, 3), (0, 5), (1, 4), (1, 5), (2, 3), (4, 5)]),
        ),
        (
            "irregular B",
            graph(
                6,
                &[
                    (0, 3),
                    (0, 4),
                    (0, 5),
                    (1, 3),
                    (1, 4),
                    (1, 5),
                    (2, 4),
                    (2, 5),
                ],
            ),
            graph(
                6,
                &[
                    (0, 2),
                    (0, 3),
                    (0, 4),
                    (1, 4),
                    (1, 5),
                    (2, 3),
                    (2, 5),
                    (4, 5),
                ],
            ),
        ),
        (
            "C6+K1 / 2K3+K1",
            graph(7, &[(0, 4), (0, 5), (1, 4), (1, 6), (2, 5), (2, 6)]),
            graph(7, &[(0, 3), (0, 4), (1, 5), (1, 6), (3, 4), (5, 6)]),
        ),
        ("rook 4x4 / Shrikhande", rook_4x4(), shrikhande()),
        (
            "co-C7 / co-(C3+C4)",
            c(7).complement(),
            union(&[c(3), c(4)]).complement(),
        ),
        ("P4 / K13", Graph::path(4), Graph::star(3)),
        ("K3+K1 / K13", union(&[k(3), k(1)]), Graph::star(3)),
        ("K1 / K2", k(1), k(2)),
        ("C4+K1 / K14", union(&[c(4), k(1)]), Graph::star(4)),
        ("C5 / bull", c(5), bull),
        (
            "3K2 / P3+K2+K1",
            union(&[k(2), k(2), k(2)]),
            union(&[Graph::path(3), k(2), k(1)]),
        ),
        ("C4 / P4", c(4), Graph::path(4)),
        ("P3 / K2+K1", Graph::path(3), union(&[k(2), k(1)])),
        ("random G6 / relabeled", base, relabeled),
        ("K15 / relabeled", star5, star5_perm),
        ("2K3 / relabeled", two_k3, two_k3_perm),
        ("3K1 / 3K1", Graph::empty(3), Graph::empty(3)),
    ]
}

/// How the letters of a random automaton pair up under the involution.
#[derive(Clone, Copy, Debug)]
pub enum Shape {
    /// 'a' self-adjoint.
    One,
    /// 'a', 'b' self-adjoint.
    TwoSelf,
    /// 'a' ↔ 'b'.
    TwoSwapped,
    /// 'a' ↔ 'b', 'c' self-adjoint.
    ThreeMixed,
    /// 'a', 'b', 'c' self-adjoint.
    ThreeSelf,
}

impl Shape {
    pub const ALL: [Shape; 5] = [
        Shape::One,
        Shape::TwoSelf,
        Shape::TwoSwapped,
        Shape::ThreeMixed,
        Shape::ThreeSelf,
    ];

    fn letters(self) -> (Vec<char>, Vec<usize>) {
        match self {
            Shape::One => (vec!['a'], vec![0]),
            Shape::TwoSelf => (vec!['a', 'b'], vec![0, 1]),
            Shape::TwoSwapped => (vec!['a', 'b'], vec![1, 0]),
            Shape::ThreeMixed => (vec!['a', 'b', 'c'], vec![1, 0, 2]),
            Shape::ThreeSelf => (vec!['a', 'b', 'c'], vec![0, 1, 2]),
        }
    }
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    // about half the entries vanish
    if rng.random_bool(0.5) {
        return Rational::default();
    }
    let num = [-2i64, -1, 1, 2, 3][rng.random_range(0..5)];
    let den = [1i64, 1, 2, 3][rng.random_range(0..4)];
    ratio(num, den)
}

fn random_dense(rng: &mut impl Rng, dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|_| (0..dim).map(|_| small_rational(rng)).collect())
        .collect()
}

/// A random MIA over `shape` with α = η (the adjoint of a row vector is its
/// transpose) and M(c*) = M(c)ᵀ.
pub fn random_mia(rng: &mut impl Rng, dim: usize, shape: Shape) -> Mia<char> {
    let (alphabet, involution) = shape.letters();
    let mut transitions: Vec<Option<SparseMatrix>> = vec![None; alphabet.len()];
    for i in 0..alphabet.len() {
        if transitions[i].is_some() {
            continue;
        }
        let m = random_dense(rng, dim);
        let j = involution[i];
        let m = if j == i {
            // symmetrize
            let sym: Vec<Vec<Rational>> = (0..dim)
                .map(|r| {
                    (0..dim)
                        .map(|c| {
                            if c >= r {
                                m[r][c].clone()
                            } else {
                                m[c][r].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            SparseMatrix::from_dense(&sym, dim)
        } else {
            let m = SparseMatrix::from_dense(&m, dim);
            transitions[j] = Some(m.transpose());
            m
        };
        transitions[i] = Some(m);
    }
    let mut initial: Vec<Rational> = (0..dim).map(|_| small_rational(rng)).collect();
    if initial.iter().all(|x| *x == Rational::default()) {
        initial[0] = ratio(1, 1);
    }
    Mia::new(
        dim,
        alphabet,
        involution,
        transitions.into_iter().map(Option::unwrap).collect(),
        initial.clone(),
        initial,
    )
    .unwrap()
}

/// Block sum with a random block of dimension `extra` whose initial vector
/// vanishes, rotated by a rational orthogonal map on the first two states.
/// The series is unchanged.
pub fn padded_equivalent(rng: &mut impl Rng, a: &Mia<char>, extra: usize) -> Mia<char> {
    let d = a.dim() + extra;
    let filler_m = random_dense(rng, extra);
    let mut transitions = Vec::new();
    for (i, m) in a.transitions().iter().enumerate() {
        let mut trip: Vec<(usize, usize, Rational)> = m.entries().to_vec();
        // unreachable block, with the adjoint structure kept
        let j = a.involution()[i];
        for r in 0..extra {
            for c in 0..extra {
                let x = if j == i {
                    let (lo, hi) = if r <= c { (r, c) } else { (c, r) };
                    filler_m[lo][hi].clone()
                } else if i < j {
                    filler_m[r][c].clone()
                } else {
                    filler_m[c][r].clone()
                };
                trip.push((a.dim() + r, a.dim() + c, x));
            }
        }
        transitions.push(SparseMatrix::from_triplets(d, d, trip));
    }
    let mut initial = a.initial().to_vec();
    initial.resize(d, Rational::default());
    let padded = Mia::new(
        d,
        a.alphabet().to_vec(),
        a.involution().to_vec(),
        transitions,
        initial.clone(),
        initial,
    )
    .unwrap();
    if d < 2 {
        return padded;
    }
    // Q = [[3/5, -4/5], [4/5, 3/5]] ⊕ I; conjugating by an orthogonal map
    // keeps α = η and M(c*) = M(c)ᵀ
    let mut q = vec![vec![Rational::default(); d]; d];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = ratio(1, 1);
    }
    q[0][0] = ratio(3, 5);
    q[0][1] = ratio(-4, 5);
    q[1][0] = ratio(4, 5);
    q[1][1] = ratio(3, 5);
    let q = SparseMatrix::from_dense(&q, d);
    let qt = q.transpose();
    let initial = q.left_mul(padded.initial());
    let transitions = padded
        .transitions()
        .iter()
        .map(|m| qt.mul(m).mul(&q))
        .collect();
    Mia::new(
        d,
        padded.alphabet().to_vec(),
        padded.involution().to_vec(),
        transitions,
        initial.clone(),
        initial,
    )
    .unwrap()
}

/// Enumerates every word of length at most `max_len` over `letters` letters.
pub fn words_up_to(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
