//! The canonical walk invariant of a graph: the simplicial walk automaton
//! in the basis of its forward-reduction words, with letter matrices summed
//! back over colors.
//!
//! Rows of F are supported on states of one color (the end color of the
//! word) when the reduction starts from single letters, so F·Fᵀ is block
//! diagonal by end color. That makes the summed matrices lossless: masking
//! rows and columns by end color recovers every per-letter matrix.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::atomic::Atp2Class;
use crate::automaton::{Letter, Sign, SwAutomaton};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{dot, fmt_rational, mul_dense, vec_mul_dense, Echelon, Rational, SparseMatrix};
use crate::mia::{forward_reduce, right_inverse, CanonicalMia, ForwardBasis, Variant};
use crate::wl::{ChiColor, Digest};

const MAGIC: &str = "swcanon-invariant v1";

/// Forward reduction specialized to walk automata, starting from single
/// letters. Produces the same basis as the generic reduction:
///
/// - a word ending in color `c` is only extended by letters leaving `c`
///   (all other children have zero rows);
/// - `row·D⁻`, `row·D⁺` and `row·T^τ_p` are computed once per accepted word
///   and masked to each letter's end color;
/// - independence is tested within the end-color block, since rows of
///   different blocks have disjoint supports.
pub fn fast_forward_reduce(aut: &SwAutomaton) -> ForwardBasis {
    let mia = aut.mia();
    let dim = mia.dim();
    let mut color_id: HashMap<&ChiColor, usize> = HashMap::new();
    let state_color: Vec<usize> = aut
        .state_colors()
        .iter()
        .map(|c| {
            let next = color_id.len();
            *color_id.entry(c).or_insert(next)
        })
        .collect();
    let alphabet = mia.alphabet();
    let start: Vec<usize> = alphabet.iter().map(|l| color_id[l.start_color()]).collect();
    let end: Vec<usize> = alphabet.iter().map(|l| color_id[l.end_color()]).collect();

    // kind 0/1: D⁻/D⁺, kind 2+t: t-th swap matrix
    let swap_slot: HashMap<(Atp2Class, usize), usize> = aut
        .swap_matrices()
        .iter()
        .enumerate()
        .map(|(t, (key, _))| (*key, t))
        .collect();
    let kind: Vec<usize> = alphabet
        .iter()
        .map(|l| match l {
            Letter::Move { s: Sign::Minus, .. } => 0,
            Letter::Move { s: Sign::Plus, .. } => 1,
            Letter::Swap { tau, p, .. } => 2 + swap_slot[&(*tau, *p)],
        })
        .collect();
    let kind_matrix = |x: usize| -> &SparseMatrix {
        match x {
            0 => aut.d_sum(Sign::Minus),
            1 => aut.d_sum(Sign::Plus),
            _ => &aut.swap_matrices()[x - 2].1,
        }
    };
    let mut leaving: Vec<Vec<usize>> = vec![Vec::new(); color_id.len()];
    for (c, &a) in start.iter().enumerate() {
        leaving[a].push(c);
    }
    let masked = |v: &[Rational], color: usize| -> Vec<Rational> {
        v.iter()
            .zip(&state_color)
            .map(|(x, &sc)| {
                if sc == color {
                    x.clone()
                } else {
                    Rational::default()
                }
            })
            .collect()
    };

    let mut blocks: HashMap<usize, Echelon> = HashMap::new();
    let mut rank = 0;
    let mut basis = ForwardBasis {
        words: Vec::new(),
        rows: Vec::new(),
    };
    let mut queue: VecDeque<(Vec<usize>, Vec<Rational>)> = VecDeque::new();
    for (c, m) in mia.transitions().iter().enumerate() {
        queue.push_back((vec![c], m.left_mul(mia.initial())));
    }
    while let Some((word, row)) = queue.pop_front() {
        let color = end[*word.last().expect("words are non-empty")];
        if !blocks
            .entry(color)
            .or_insert_with(|| Echelon::new(dim))
            .insert(&row)
        {
            continue;
        }
        rank += 1;
        let mut cache: HashMap<usize, Vec<Rational>> = HashMap::new();
        for &c in &leaving[color] {
            let prod = cache
                .entry(kind[c])
                .or_insert_with(|| kind_matrix(kind[c]).left_mul(&row));
            let mut child = word.clone();
            child.push(c);
            queue.push_back((child, masked(prod, end[c])));
        }
        basis.words.push(word);
        basis.rows.push(row);
        if rank == dim {
            break;
        }
    }
    basis
}

/// Forward basis of a walk automaton. The fast path applies only to the
/// letter-initialized variant; otherwise the generic reduction runs.
pub fn sw_forward_basis(aut: &SwAutomaton, variant: Variant, fast: bool) -> ForwardBasis {
    if fast && variant == Variant::B3 {
        fast_forward_reduce(aut)
    } else {
        forward_reduce(aut.mia(), variant)
    }
}

/// The canonical invariant: words of the forward basis, α̂, η̂, and the
/// transformed summed matrices F·X·F⁺ for X ∈ {D⁻, D⁺, T^τ_p}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalInvariant {
    pub n: usize,
    pub k: usize,
    pub h: usize,
    pub variant: Variant,
    pub words: Vec<Vec<Letter>>,
    pub initial: Vec<Rational>,
    pub final_: Vec<Rational>,
    pub d_minus: SparseMatrix,
    pub d_plus: SparseMatrix,
    /// Every (τ, p) in (τ, p) order, including zero blocks.
    pub swaps: Vec<((Atp2Class, usize), SparseMatrix)>,
}

/// The invariant of (G, k, h) via the letter-initialized fast reduction.
pub fn sw_invariant(g: &Graph, k: usize, h: usize) -> Result<CanonicalInvariant> {
    sw_invariant_with(g, k, h, Variant::B3, true)
}

pub fn sw_invariant_with(
    g: &Graph,
    k: usize,
    h: usize,
    variant: Variant,
    fast: bool,
) -> Result<CanonicalInvariant> {
    let aut = SwAutomaton::build(g, k, h);
    let basis = sw_forward_basis(&aut, variant, fast);
    invariant_from_basis(&aut, &basis, variant)
}

fn transform(f: &[Vec<Rational>], x: &SparseMatrix, f_plus: &[Vec<Rational>]) -> SparseMatrix {
    let r = f.len();
    let fx: Vec<Vec<Rational>> = f.iter().map(|row| x.left_mul(row)).collect();
    SparseMatrix::from_dense(&mul_dense(&fx, f_plus, r), r)
}

pub fn invariant_from_basis(
    aut: &SwAutomaton,
    basis: &ForwardBasis,
    variant: Variant,
) -> Result<CanonicalInvariant> {
    let mia = aut.mia();
    let r = basis.rank();
    let f = &basis.rows;
    let f_plus = if r == 0 {
        Vec::new()
    } else {
        right_inverse(f, mia.dim())?
    };
    let initial = if r == 0 {
        Vec::new()
    } else {
        vec_mul_dense(mia.initial(), &f_plus, r)
    };
    let final_ = f.iter().map(|row| dot(row, mia.final_vector())).collect();
    let swaps = aut
        .swap_matrices()
        .iter()
        .map(|(key, m)| (*key, transform(f, m, &f_plus)))
        .collect();
    Ok(CanonicalInvariant {
        n: aut.n(),
        k: aut.k(),
        h: aut.h(),
        variant,
        words: basis.words_as_letters(mia.alphabet()),
        initial,
        final_,
        d_minus: transform(f, aut.d_sum(Sign::Minus), &f_plus),
        d_plus: transform(f, aut.d_sum(Sign::Plus), &f_plus),
        swaps,
    })
}

fn write_vector(out: &mut String, name: &str, v: &[Rational]) {
    let nz: Vec<(usize, &Rational)> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != Rational::default())
        .collect();
    let _ = writeln!(out, "{name} {}", nz.len());
    for (i, x) in nz {
        let _ = writeln!(out, "{i} {}", fmt_rational(x));
    }
}

fn write_matrix(out: &mut String, name: &str, m: &SparseMatrix) {
    let _ = writeln!(out, "{name} {}", m.nnz());
    for (i, j, x) in m.entries() {
        let _ = writeln!(out, "{i} {j} {}", fmt_rational(x));
    }
}

impl CanonicalInvariant {
    pub fn rank(&self) -> usize {
        self.words.len()
    }

    /// The byte-exact artifact. Equal strings mean indistinguishable graphs.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(
            out,
            "n {} k {} h {} variant {}",
            self.n,
            self.k,
            self.h,
            self.variant.name()
        );
        if self.n == 0 {
            let _ = writeln!(out, "empty");
        } else {
            let _ = writeln!(out, "S {}", self.rank());
            for w in &self.words {
                let letters: Vec<String> = w.iter().map(Letter::render).collect();
                let _ = write!(out, "w {}", w.len());
                if !letters.is_empty() {
                    let _ = write!(out, " {}", letters.join(" ; "));
                }
                let _ = writeln!(out);
            }
            write_vector(&mut out, "alpha", &self.initial);
            write_vector(&mut out, "eta", &self.final_);
            write_matrix(&mut out, "D-", &self.d_minus);
            write_matrix(&mut out, "D+", &self.d_plus);
            for ((tau, p), m) in &self.swaps {
                write_matrix(&mut out, &format!("T {} {}", tau.symbol(), p), m);
            }
        }
        let digest = Digest::of(out.as_bytes());
        let _ = writeln!(out, "digest {digest}");
        out
    }

    /// Per-letter matrices recovered from the summed ones by masking rows
    /// and columns with the end colors of the basis words.
    pub fn reconstruct(&self) -> Result<CanonicalMia<Letter>> {
        reconstruct_canonical(self)
    }
}

/// Inverse of the color summation: the canonical automaton whose letter
/// matrices add up to the invariant's matrices.
pub fn reconstruct_canonical(inv: &CanonicalInvariant) -> Result<CanonicalMia<Letter>> {
    let r = inv.rank();
    let shape_ok = inv.initial.len() == r
        && inv.final_.len() == r
        && std::iter::once(&inv.d_minus)
            .chain(std::iter::once(&inv.d_plus))
            .chain(inv.swaps.iter().map(|(_, m)| m))
            .all(|m| m.rows() == r && m.cols() == r);
    if !shape_ok {
        return Err(Error::MalformedInvariant(
            "matrix shapes do not match the word count".into(),
        ));
    }
    let mut ends: Vec<&ChiColor> = Vec::with_capacity(r);
    for w in &inv.words {
        let last = w
            .last()
            .ok_or_else(|| Error::MalformedInvariant("empty word has no end color".into()))?;
        ends.push(last.end_color());
    }
    let colors: BTreeSet<&ChiColor> = ends.iter().copied().collect();

    let mut transitions = BTreeMap::new();
    let mut add = |make: &dyn Fn(&ChiColor, &ChiColor) -> Letter, m: &SparseMatrix| {
        for a in &colors {
            for b in &colors {
                let block = m.mask(|i| ends[i] == *a, |j| ends[j] == *b);
                if !block.is_zero() {
                    transitions.insert(make(a, b), block);
                }
            }
        }
    };
    for (s, m) in [(Sign::Minus, &inv.d_minus), (Sign::Plus, &inv.d_plus)] {
        add(
            &|a, b| Letter::Move {
                a: a.clone(),
                s,
                b: b.clone(),
            },
            m,
        );
    }
    for ((tau, p), m) in &inv.swaps {
        add(
            &|a, b| Letter::Swap {
                a: a.clone(),
                tau: *tau,
                p: *p,
                b: b.clone(),
            },
            m,
        );
    }
    let involution = transitions
        .keys()
        .map(|l: &Letter| (l.clone(), l.star()))
        .collect();
    Ok(CanonicalMia {
        words: inv.words.clone(),
        initial: inv.initial.clone(),
        final_: inv.final_.clone(),
        transitions,
        involution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::mia::canonical_form_from_basis;

    fn c6_and_two_triangles() -> (Graph, Graph) {
        (
            Graph::cycle(6),
            Graph::cycle(3).disjoint_union(&Graph::cycle(3)),
        )
    }

    #[test]
    fn fast_path_matches_generic() {
        for g in [Graph::path(4), Graph::star(3), Graph::cycle(5)] {
            for k in 1..=2 {
                let aut = SwAutomaton::build(&g, k, 1);
                assert_eq!(
                    fast_forward_reduce(&aut),
                    forward_reduce(aut.mia(), Variant::B3)
                );
            }
        }
    }

    #[test]
    fn hexagon_vs_triangles() {
        let (c6, tt) = c6_and_two_triangles();
        let a = sw_invariant(&c6, 1, 1).unwrap().serialize();
        let b = sw_invariant(&tt, 1, 1).unwrap().serialize();
        assert_eq!(a, b);
        let a = sw_invariant(&c6, 2, 1).unwrap().serialize();
        let b = sw_invariant(&tt, 2, 1).unwrap().serialize();
        assert_ne!(a, b);
    }

    #[test]
    fn reconstruction_round_trip() {
        let g = Graph::path(4);
        for k in 1..=2 {
            let aut = SwAutomaton::build(&g, k, 1);
            let basis = fast_forward_reduce(&aut);
            let inv = invariant_from_basis(&aut, &basis, Variant::B3).unwrap();
            let canon = canonical_form_from_basis(aut.mia(), &basis).unwrap();
            assert_eq!(inv.reconstruct().unwrap(), canon);
        }
    }

    #[test]
    fn empty_graph_sentinel() {
        let inv = sw_invariant(&Graph::empty(0), 1, 1).unwrap();
        assert_eq!(inv.rank(), 0);
        let text = inv.serialize();
        assert!(text.contains("\nempty\n"));
        let rec = inv.reconstruct().unwrap();
        assert!(rec.transitions.is_empty());
    }

    #[test]
    fn empty_word_value_is_state_count() {
        // η̂ on a basis word is the series value of that word
        let g = Graph::path(3);
        let inv = sw_invariant_with(&g, 1, 1, Variant::A3, false).unwrap();
        assert!(inv.words[0].is_empty());
        assert_eq!(inv.final_[0], rat(3));
    }
}
