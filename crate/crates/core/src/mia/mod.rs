//! Multiplicity automata over the rationals with an alphabet involution
//! (MIAs), their forward reduction, and the canonical form it induces.
//!
//! An automaton recognizes the word series `w ↦ α·M(w)·η`. It is an MIA when
//! `αᵀ = η` (I1) and `M(c*) = M(c)ᵀ` for every letter (I2). For MIAs the
//! forward reduction alone yields a minimal realization that depends only on
//! the series, given a fixed order on the alphabet.

mod canon;
mod reduce;

pub use canon::{
    canonical_form, canonical_form_from_basis, equivalent, right_inverse, CanonicalMia,
};
pub use reduce::{forward_reduce, ForwardBasis, Variant};

use std::fmt::Debug;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot, Rational, SparseMatrix};

/// Letter types usable in an automaton alphabet.
pub trait Symbol: Clone + Ord + Debug {}
impl<T: Clone + Ord + Debug> Symbol for T {}

/// A rational multiplicity automaton with an alphabet involution.
///
/// The alphabet is strictly increasing under `L`'s order; that order is the
/// order the forward reduction explores letters in. Conditions I1 and I2 are
/// checked by [`Mia::validate`], not at construction, so the type also holds
/// plain multiplicity automata (canonical forms among them).
#[derive(Clone, Debug, PartialEq)]
pub struct Mia<L> {
    dim: usize,
    alphabet: Vec<L>,
    involution: Vec<usize>,
    transitions: Vec<SparseMatrix>,
    initial: Vec<Rational>,
    final_: Vec<Rational>,
}

/// The first I1/I2 violation found by [`Mia::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MiaViolation {
    /// α* ≠ η.
    InitialFinalNotAdjoint,
    /// The letter map is not an involution at this letter.
    NotAnInvolution(String),
    /// M(c*) ≠ M(c)* for this letter.
    TransitionNotAdjoint(String),
}

impl<L: Symbol> Mia<L> {
    /// Assembles an automaton. `involution[i]` is the index of the adjoint of
    /// letter `i`.
    pub fn new(
        dim: usize,
        alphabet: Vec<L>,
        involution: Vec<usize>,
        transitions: Vec<SparseMatrix>,
        initial: Vec<Rational>,
        final_: Vec<Rational>,
    ) -> Result<Self> {
        let bad = |detail: String| Error::Validation {
            condition: "automaton shape",
            detail,
        };
        if alphabet.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("alphabet must be strictly increasing".into()));
        }
        if involution.len() != alphabet.len() || transitions.len() != alphabet.len() {
            return Err(bad("one involution entry and one matrix per letter".into()));
        }
        if involution.iter().any(|&j| j >= alphabet.len()) {
            return Err(bad("involution index out of range".into()));
        }
        if transitions
            .iter()
            .any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(bad(format!("transition matrices must be {dim}x{dim}")));
        }
        if initial.len() != dim || final_.len() != dim {
            return Err(bad(format!("vectors must have length {dim}")));
        }
        Ok(Mia {
            dim,
            alphabet,
            involution,
            transitions,
            initial,
            final_,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &[L] {
        &self.alphabet
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn transitions(&self) -> &[SparseMatrix] {
        &self.transitions
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn final_vector(&self) -> &[Rational] {
        &self.final_
    }

    pub fn letter_index(&self, letter: &L) -> Option<usize> {
        self.alphabet.binary_search(letter).ok()
    }

    pub fn matrix(&self, letter: &L) -> Option<&SparseMatrix> {
        self.letter_index(letter).map(|i| &self.transitions[i])
    }

    pub fn star(&self, letter: &L) -> Option<&L> {
        self.letter_index(letter)
            .map(|i| &self.alphabet[self.involution[i]])
    }

    /// Checks I1 (α* = η) and I2 (the letter map is an involution and
    /// M(c*) = M(c)ᵀ for every letter).
    pub fn validate(&self) -> std::result::Result<(), MiaViolation> {
        if self.initial != self.final_ {
            return Err(MiaViolation::InitialFinalNotAdjoint);
        }
        for (i, &j) in self.involution.iter().enumerate() {
            if self.involution[j] != i {
                return Err(MiaViolation::NotAnInvolution(format!(
                    "{:?}",
                    self.alphabet[i]
                )));
            }
            if self.transitions[j] != self.transitions[i].transpose() {
                return Err(MiaViolation::TransitionNotAdjoint(format!(
                    "{:?}",
                    self.alphabet[i]
                )));
            }
        }
        Ok(())
    }

    /// The row vector α·M(w) for a word given by letter indices.
    pub fn forward_vector(&self, word: &[usize]) -> Vec<Rational> {
        let mut v = self.initial.clone();
        for &c in word {
            if v.iter().all(Zero::is_zero) {
                break;
            }
            v = self.transitions[c].left_mul(&v);
        }
        v
    }

    /// α·M(w)·η for a word given by letter indices.
    pub fn evaluate_indices(&self, word: &[usize]) -> Rational {
        dot(&self.forward_vector(word), &self.final_)
    }

    /// α·M(c₁)⋯M(c_t)·η.
    pub fn evaluate(&self, word: &[L]) -> Result<Rational> {
        let idx = self.word_indices(word)?;
        Ok(self.evaluate_indices(&idx))
    }

    pub fn word_indices(&self, word: &[L]) -> Result<Vec<usize>> {
        word.iter()
            .map(|c| {
                self.letter_index(c)
                    .ok_or_else(|| Error::UnknownLetter(format!("{c:?}")))
            })
            .collect()
    }

    /// The adjoint word: reversed, each letter replaced by its adjoint.
    pub fn star_word(&self, word: &[usize]) -> Vec<usize> {
        word.iter().rev().map(|&c| self.involution[c]).collect()
    }

    /// Conjugates by a state relabeling: state `q` becomes `perm[q]`.
    pub fn permute_states(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.dim];
        if perm.len() != self.dim
            || perm
                .iter()
                .any(|&p| p >= self.dim || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::NotABijection(self.dim));
        }
        let move_vec = |v: &[Rational]| {
            let mut out = vec![Rational::zero(); self.dim];
            for (q, x) in v.iter().enumerate() {
                out[perm[q]] = x.clone();
            }
            out
        };
        Ok(Mia {
            dim: self.dim,
            alphabet: self.alphabet.clone(),
            involution: self.involution.clone(),
            transitions: self.transitions.iter().map(|m| m.permute(perm)).collect(),
            initial: move_vec(&self.initial),
            final_: move_vec(&self.final_),
        })
    }

    /// Re-expresses the automaton over a larger alphabet; letters absent from
    /// `self` get zero matrices. `star` gives the adjoint of each new letter.
    pub fn extend_alphabet(&self, alphabet: &[L], star: impl Fn(&L) -> L) -> Result<Self> {
        let mut sorted = alphabet.to_vec();
        sorted.sort();
        sorted.dedup();
        for (c, &j) in self.alphabet.iter().zip(&self.involution) {
            if sorted.binary_search(c).is_err() {
                return Err(Error::AlphabetMismatch(format!("{c:?} dropped")));
            }
            if star(c) != self.alphabet[j] {
                return Err(Error::AlphabetMismatch(format!("adjoint of {c:?} differs")));
            }
        }
        let mut involution = Vec::with_capacity(sorted.len());
        for c in &sorted {
            let s = star(c);
            let j = sorted
                .binary_search(&s)
                .map_err(|_| Error::AlphabetMismatch(format!("adjoint of {c:?} missing")))?;
            involution.push(j);
        }
        let transitions = sorted
            .iter()
            .map(|c| {
                self.matrix(c)
                    .cloned()
                    .unwrap_or_else(|| SparseMatrix::zeros(self.dim, self.dim))
            })
            .collect();
        Mia::new(
            self.dim,
            sorted,
            involution,
            transitions,
            self.initial.clone(),
            self.final_.clone(),
        )
    }
}
