use std::collections::VecDeque;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot, Rational};
use crate::mia::{Mia, Symbol};

/// Both automata over the union alphabet, missing letters as zero matrices.
fn align<L: Symbol>(a: &Mia<L>, b: &Mia<L>) -> Result<(Mia<L>, Mia<L>)> {
    for c in a.alphabet() {
        if let Some(sb) = b.star(c) {
            if a.star(c) != Some(sb) {
                return Err(Error::AlphabetMismatch(format!("adjoint of {c:?} differs")));
            }
        }
    }
    let mut union: Vec<L> = a.alphabet().iter().chain(b.alphabet()).cloned().collect();
    union.sort();
    union.dedup();
    let star = |c: &L| -> L {
        a.star(c)
            .or_else(|| b.star(c))
            .cloned()
            .expect("letter of the union")
    };
    Ok((
        a.extend_alphabet(&union, star)?,
        b.extend_alphabet(&union, star)?,
    ))
}

/// Independent equivalence check: breadth-first search over words for a
/// basis of the joint forward space spanned by (α₁M₁(w), α₂M₂(w)); the
/// series agree iff they agree on every basis word.
pub fn brute_equivalent<L: Symbol>(a: &Mia<L>, b: &Mia<L>) -> Result<bool> {
    let (a, b) = align(a, b)?;
    let (da, db) = (a.dim(), b.dim());
    let letters = a.alphabet().len();
    // plain Gaussian elimination: rows stored reduced against earlier rows
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut queue: VecDeque<(Vec<Rational>, Vec<Rational>)> = VecDeque::new();
    queue.push_back((a.initial().to_vec(), b.initial().to_vec()));
    while let Some((x, y)) = queue.pop_front() {
        let mut joint: Vec<Rational> = x.iter().chain(&y).cloned().collect();
        for (p, row) in &basis {
            if joint[*p].is_zero() {
                continue;
            }
            let f = &joint[*p] / &row[*p];
            for (u, v) in joint.iter_mut().zip(row) {
                *u -= &f * v;
            }
        }
        let Some(p) = joint.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        if dot(&x, a.final_vector()) != dot(&y, b.final_vector()) {
            return Ok(false);
        }
        basis.push((p, joint));
        if basis.len() == da + db {
            break;
        }
        for c in 0..letters {
            queue.push_back((
                a.transitions()[c].left_mul(&x),
                b.transitions()[c].left_mul(&y),
            ));
        }
    }
    Ok(true)
}

/// Whether the two series agree on every word of length at most `max_len`,
/// by exhaustive evaluation over the union alphabet.
pub fn series_agree_up_to<L: Symbol>(a: &Mia<L>, b: &Mia<L>, max_len: usize) -> Result<bool> {
    let (a, b) = align(a, b)?;
    let letters = a.alphabet().len();
    let mut frontier: Vec<(Vec<Rational>, Vec<Rational>)> =
        vec![(a.initial().to_vec(), b.initial().to_vec())];
    for len in 0..=max_len {
        for (x, y) in &frontier {
            if dot(x, a.final_vector()) != dot(y, b.final_vector()) {
                return Ok(false);
            }
        }
        if len == max_len {
            break;
        }
        let (a, b) = (&a, &b);
        frontier = frontier
            .iter()
            .flat_map(|(x, y)| {
                (0..letters).map(move |c| {
                    (
                        a.transitions()[c].left_mul(x),
                        b.transitions()[c].left_mul(y),
                    )
                })
            })
            .collect();
    }
    Ok(true)
}
