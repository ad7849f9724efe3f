//! Exact Gaussian elimination over a [`FieldSpec`].
//!
//! Matrices are plain row vectors of [`Scalar`]s. Everything here is the
//! brute-force side of the certification story: ranks of spans, kernels of
//! linear conditions, inverses of basis-change matrices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{x : A x = 0}` for an `rows x cols` matrix.
pub fn nullspace(field: FieldSpec, rows: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

pub fn inverse(field: FieldSpec, a: &[Vec<Scalar>]) -> Result<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// One solution of `A x = b`, or `None` when the system is inconsistent.
pub fn solve(field: FieldSpec, a: &[Vec<Scalar>], b: &[Scalar], cols: usize) -> Option<Vec<Scalar>> {
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn mat_vec(a: &[Vec<Scalar>], v: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(field.zero(), |acc, (x, y)| {
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    &acc + &(x * y)
                }
            })
        })
        .collect()
}

/// Rank of a family of sparse vectors indexed by an arbitrary ordered key
/// (polynomial monomials, `(component, monomial)` pairs, ...).
/// Row-echelon basis of sparse vectors, grown one vector at a time. Each
/// stored row is monic at its smallest key.
#[derive(Clone, Debug)]
pub struct IncrementalBasis<K: Ord + Clone> {
    field: FieldSpec,
    rows: BTreeMap<K, BTreeMap<K, Scalar>>,
}

impl<K: Ord + Clone> IncrementalBasis<K> {
    pub fn new(field: FieldSpec) -> Self {
        IncrementalBasis {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the remainder is zero exactly
    /// when `v` lies in their span.
    pub fn reduce(&self, mut v: BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        v.retain(|_, c| !c.is_zero());
        let mut done: BTreeMap<K, Scalar> = BTreeMap::new();
        while let Some((k, c)) = v.pop_first() {
            let Some(row) = self.rows.get(&k) else {
                done.insert(k, c);
                continue;
            };
            for (rk, rc) in row.iter().skip(1) {
                let d = &c * rc;
                let e = v.entry(rk.clone()).or_insert_with(|| self.field.zero());
                *e = &*e - &d;
                if e.is_zero() {
                    v.remove(rk);
                }
            }
        }
        done
    }

    /// Adds `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: BTreeMap<K, Scalar>) -> bool {
        let r = self.reduce(v);
        let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inverse().expect("nonzero pivot");
        let row = r.into_iter().map(|(key, x)| (key, &x * &inv)).collect();
        self.rows.insert(k, row);
        true
    }

    pub fn contains(&self, v: BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank_of_sparse<K: Ord + Clone>(field: FieldSpec, vectors: &[BTreeMap<K, Scalar>]) -> usize {
    let mut basis = IncrementalBasis::new(field);
    for v in vectors {
        basis.insert(v.clone());
    }
    basis.rank()
}
