use std::collections::VecDeque;

use crate::linalg::{Echelon, Rational};

use super::{Mia, Symbol};

/// Where the breadth-first exploration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Start from the empty word.
    A3,
    /// Start from the single letters in alphabet order; the empty word is
    /// never a basis word.
    B3,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::A3 => "3a",
            Variant::B3 => "3b",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "3a" => Some(Variant::A3),
            "3b" => Some(Variant::B3),
            _ => None,
        }
    }
}

/// Basis words (as letter indices) and their forward vectors α·M(w), in
/// acceptance order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardBasis {
    pub words: Vec<Vec<usize>>,
    pub rows: Vec<Vec<Rational>>,
}

impl ForwardBasis {
    pub fn rank(&self) -> usize {
        self.words.len()
    }

    pub fn words_as_letters<L: Clone>(&self, alphabet: &[L]) -> Vec<Vec<L>> {
        self.words
            .iter()
            .map(|w| w.iter().map(|&c| alphabet[c].clone()).collect())
            .collect()
    }
}

/// Breadth-first forward reduction. A dequeued word is accepted iff its
/// forward vector is independent of those accepted before it; each accepted
/// word `w` enqueues `w·c` for every letter `c` in alphabet order.
pub fn forward_reduce<L: Symbol>(mia: &Mia<L>, variant: Variant) -> ForwardBasis {
    let mut echelon = Echelon::new(mia.dim());
    let mut basis = ForwardBasis {
        words: Vec::new(),
        rows: Vec::new(),
    };
    let mut queue: VecDeque<(Vec<usize>, Vec<Rational>)> = VecDeque::new();
    match variant {
        Variant::A3 => queue.push_back((Vec::new(), mia.initial().to_vec())),
        Variant::B3 => {
            for (c, m) in mia.transitions().iter().enumerate() {
                queue.push_back((vec![c], m.left_mul(mia.initial())));
            }
        }
    }
    while let Some((word, row)) = queue.pop_front() {
        if !echelon.insert(&row) {
            continue;
        }
        for (c, m) in mia.transitions().iter().enumerate() {
            let mut child = word.clone();
            child.push(c);
            queue.push_back((child, m.left_mul(&row)));
        }
        basis.words.push(word);
        basis.rows.push(row);
        if echelon.rank() == mia.dim() {
            break;
        }
    }
    basis
}
