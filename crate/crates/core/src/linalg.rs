//! Exact rational linear algebra: sorted-triple sparse matrices, dense row
//! helpers, an incrementally maintained reduced row-echelon basis, and
//! Gauss-Jordan inversion.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `num/den` in lowest terms with a positive denominator.
pub fn fmt_rational(q: &Rational) -> String {
    // BigRational is kept normalized: reduced, denominator > 0.
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    let q = Rational::new(n.clone(), d.clone());
    (q.numer() == &n && q.denom() == &d).then_some(q)
}

/// A sparse rational matrix stored as `(row, col, value)` triples sorted by
/// `(row, col)`, without duplicates or stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rational)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Rational::one())).collect(),
        }
    }

    /// Builds from arbitrary triples: duplicates are summed, zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, Rational)>,
    ) -> Self {
        triplets.sort_by_key(|e| (e.0, e.1));
        let mut entries: Vec<(usize, usize, Rational)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) outside {rows}x{cols}"
            );
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| !e.2.is_zero());
        SparseMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.len(), cols);
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((r, c, v.clone()));
                }
            }
        }
        SparseMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Rational)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.entries.binary_search_by(|e| (e.0, e.1).cmp(&(r, c))) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, c, v)| (*c, *r, v.clone()))
            .collect();
        entries.sort_by_key(|e| (e.0, e.1));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut t = self.entries.clone();
        t.extend(other.entries.iter().cloned());
        SparseMatrix::from_triplets(self.rows, self.cols, t)
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let starts = other.row_starts();
        let mut t = Vec::new();
        for (r, k, a) in &self.entries {
            for (_, c, b) in &other.entries[starts[*k]..starts[*k + 1]] {
                t.push((*r, *c, a * b));
            }
        }
        SparseMatrix::from_triplets(self.rows, other.cols, t)
    }

    fn row_starts(&self) -> Vec<usize> {
        let mut starts = vec![0; self.rows + 1];
        for (r, _, _) in &self.entries {
            starts[r + 1] += 1;
        }
        for i in 0..self.rows {
            starts[i + 1] += starts[i];
        }
        starts
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (r, c, x) in &self.entries {
            if !v[*r].is_zero() {
                out[*c] += &v[*r] * x;
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn right_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, x) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] += x * &v[*c];
            }
        }
        out
    }

    /// Keeps only entries whose row and column pass the predicates.
    pub fn mask(&self, keep_row: impl Fn(usize) -> bool, keep_col: impl Fn(usize) -> bool) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .filter(|(r, c, _)| keep_row(*r) && keep_col(*c))
                .cloned()
                .collect(),
        }
    }

    /// Conjugation by a state relabeling: entry `(r, c)` moves to
    /// `(perm[r], perm[c])`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let t = self
            .entries
            .iter()
            .map(|(r, c, v)| (perm[*r], perm[*c], v.clone()))
            .collect();
        SparseMatrix::from_triplets(self.rows, self.cols, t)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}", self.rows, self.cols)?;
        for (r, c, v) in &self.entries {
            write!(f, " ({r},{c})={}", fmt_rational(v))?;
        }
        write!(f, ")")
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn transpose_dense(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    (0..cols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Dense product `a (r x k)` times `b (k x c)`.
pub fn mul_dense(a: &[Vec<Rational>], b: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// Row vector times dense matrix.
pub fn vec_mul_dense(v: &[Rational], m: &[Vec<Rational>], cols: usize) -> Vec<Rational> {
    mul_dense(std::slice::from_ref(&v.to_vec()), m, cols)
        .pop()
        .unwrap_or_default()
}

/// Exact inverse of a square matrix by Gauss-Jordan elimination with
/// first-nonzero pivoting.
pub fn invert(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix expected");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::RankDeficient)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A basis kept in reduced row-echelon form, grown one vector at a time.
/// Pivots are the first nonzero column of each reduced vector.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    pub fn is_independent(&self, v: &[Rational]) -> bool {
        !is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` if it increases the rank; returns whether it did.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn triplets_normalize() {
        let a = SparseMatrix::from_triplets(
            2,
            2,
            vec![
                (1, 0, rat(1)),
                (0, 1, rat(2)),
                (1, 0, rat(-1)),
                (0, 1, rat(1)),
            ],
        );
        assert_eq!(a.entries(), &[(0, 1, rat(3))]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&m(&[&[1, 2], &[0, 3]]), 2);
        let b = SparseMatrix::from_dense(&m(&[&[0, 1], &[1, 0]]), 2);
        assert_eq!(a.mul(&b).to_dense(), m(&[&[2, 1], &[3, 0]]));
        assert_eq!(a.transpose().to_dense(), m(&[&[1, 0], &[2, 3]]));
        assert_eq!(a.left_mul(&[rat(1), rat(1)]), vec![rat(1), rat(5)]);
        assert_eq!(a.right_mul(&[rat(1), rat(1)]), vec![rat(3), rat(3)]);
    }

    #[test]
    fn invert_diagonal() {
        let inv = invert(&m(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(
            inv,
            vec![vec![ratio(1, 2), rat(0)], vec![rat(0), ratio(1, 3)]]
        );
        assert_eq!(invert(&m(&[&[1, 2], &[2, 4]])), Err(Error::RankDeficient));
    }

    #[test]
    fn echelon_rank() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[rat(0), rat(2), rat(2)]));
        assert!(e.insert(&[rat(1), rat(1), rat(1)]));
        assert!(!e.insert(&[rat(2), rat(5), rat(5)]));
        assert!(e.insert(&[rat(0), rat(0), rat(7)]));
        assert_eq!(e.rank(), 3);
        assert!(!e.insert(&[rat(0), rat(0), rat(0)]));
    }

    #[test]
    fn rational_format() {
        assert_eq!(fmt_rational(&ratio(-4, 6)), "-2/3");
        assert_eq!(fmt_rational(&ratio(3, -1)), "-3/1");
        assert_eq!(parse_rational("-2/3"), Some(ratio(-2, 3)));
        assert_eq!(parse_rational("2/4"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(vals in proptest::collection::vec(-4i64..=4, 9)) {
            let a: Vec<Vec<Rational>> = vals.chunks(3).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
            if let Ok(inv) = invert(&a) {
                let id: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| rat((i == j) as i64)).collect()).collect();
                prop_assert_eq!(mul_dense(&a, &inv, 3), id.clone());
                prop_assert_eq!(mul_dense(&inv, &a, 3), id);
            }
        }
    }
}
