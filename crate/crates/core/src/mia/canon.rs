use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{
    dot, invert, mul_dense, transpose_dense, vec_mul_dense, Rational, SparseMatrix,
};

use super::{forward_reduce, ForwardBasis, Mia, Symbol, Variant};

/// F⁺ = Fᵀ(FFᵀ)⁻¹ for a full-row-rank `rows × dim` matrix F, so F·F⁺ = I.
pub fn right_inverse(f: &[Vec<Rational>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    let ft = transpose_dense(f, dim);
    let gram = mul_dense(f, &ft, f.len());
    let inv = invert(&gram)?;
    Ok(mul_dense(&ft, &inv, f.len()))
}

/// The automaton `(F⁺ᵀα, F·M(c)·F⁺, F·η)` written in the basis of its
/// forward-basis words. Only letters with nonzero transitions are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMia<L: Ord> {
    pub words: Vec<Vec<L>>,
    pub initial: Vec<Rational>,
    pub final_: Vec<Rational>,
    pub transitions: BTreeMap<L, SparseMatrix>,
    /// Restricted to the letters in `transitions`.
    pub involution: BTreeMap<L, L>,
}

impl<L: Symbol> CanonicalMia<L> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// The canonical form as an automaton over the letters it keeps plus
    /// their adjoints (with zero matrices where dropped).
    pub fn to_mia(&self) -> Result<Mia<L>> {
        let mut letters: Vec<L> = self.involution.keys().cloned().collect();
        letters.extend(self.involution.values().cloned());
        letters.sort();
        letters.dedup();
        let mut star: BTreeMap<L, L> = BTreeMap::new();
        for (a, b) in &self.involution {
            star.insert(a.clone(), b.clone());
            star.insert(b.clone(), a.clone());
        }
        let involution = letters
            .iter()
            .map(|c| letters.binary_search(&star[c]).unwrap())
            .collect();
        let d = self.dim();
        let transitions = letters
            .iter()
            .map(|c| {
                self.transitions
                    .get(c)
                    .cloned()
                    .unwrap_or_else(|| SparseMatrix::zeros(d, d))
            })
            .collect();
        Mia::new(
            d,
            letters,
            involution,
            transitions,
            self.initial.clone(),
            self.final_.clone(),
        )
    }
}

/// Canonical form of `mia` in the basis found by [`forward_reduce`].
pub fn canonical_form<L: Symbol>(mia: &Mia<L>, variant: Variant) -> Result<CanonicalMia<L>> {
    let basis = forward_reduce(mia, variant);
    canonical_form_from_basis(mia, &basis)
}

/// Canonical form for a precomputed forward basis of `mia`.
pub fn canonical_form_from_basis<L: Symbol>(
    mia: &Mia<L>,
    basis: &ForwardBasis,
) -> Result<CanonicalMia<L>> {
    let d = mia.dim();
    let r = basis.rank();
    let f = &basis.rows;
    let f_plus = if r == 0 {
        Vec::new()
    } else {
        right_inverse(f, d)?
    };
    let initial = if r == 0 {
        Vec::new()
    } else {
        vec_mul_dense(mia.initial(), &f_plus, r)
    };
    let final_: Vec<Rational> = f.iter().map(|row| dot(row, mia.final_vector())).collect();
    let mut transitions = BTreeMap::new();
    let mut involution = BTreeMap::new();
    for (i, (c, m)) in mia.alphabet().iter().zip(mia.transitions()).enumerate() {
        if r == 0 || m.is_zero() {
            continue;
        }
        let fm: Vec<Vec<Rational>> = f.iter().map(|row| m.left_mul(row)).collect();
        let hat = SparseMatrix::from_dense(&mul_dense(&fm, &f_plus, r), r);
        if hat.is_zero() {
            continue;
        }
        transitions.insert(c.clone(), hat);
        involution.insert(c.clone(), mia.alphabet()[mia.involution()[i]].clone());
    }
    Ok(CanonicalMia {
        words: basis.words_as_letters(mia.alphabet()),
        initial,
        final_,
        transitions,
        involution,
    })
}

/// Whether two MIAs recognize the same series, decided by comparing
/// canonical forms. Letters present on one side only act as zero matrices;
/// the two involutions must agree on common letters.
pub fn equivalent<L: Symbol>(a: &Mia<L>, b: &Mia<L>) -> Result<bool> {
    for c in a.alphabet() {
        if let Some(sb) = b.star(c) {
            if a.star(c) != Some(sb) {
                return Err(Error::AlphabetMismatch(format!("adjoint of {c:?} differs")));
            }
        }
    }
    Ok(canonical_form(a, Variant::A3)? == canonical_form(b, Variant::A3)?)
}
