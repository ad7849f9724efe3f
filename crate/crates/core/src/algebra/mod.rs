//! Finite-dimensional Z2-graded algebras given by structure constants.
//!
//! Every algebra carries a parity per basis vector; an ungraded algebra is
//! simply one whose basis is entirely even. The constructor rejects tables
//! that do not respect the declared grading, so every [`StructureAlgebra`]
//! is a superalgebra in the weak sense that products of homogeneous
//! elements are homogeneous.

pub(crate) mod builtin;
pub(crate) mod identities;
mod io;
mod m2;

pub use builtin::{b42_literature_presentation, builtin, parse_builtin, BuiltinSpec};
pub use identities::{check_identity, IdentityKind, IdentityOutcome, IdentityReport};
pub use io::{AlgebraFile, ElementJson};
pub use m2::{decompose_m2_bimodule, symplectic_involution, Decomposition, M2Embedding};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{FieldSpec, Scalar};

/// Sparse coefficient vector: `(basis index, nonzero coefficient)` pairs in
/// increasing index order.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    parity: Vec<u8>,
    table: Vec<Vec<SparseVec>>,
    unit: Option<Vec<Scalar>>,
}

fn sparse_from(field: FieldSpec, mut entries: Vec<(usize, Scalar)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (k, c) in entries {
        match out.last_mut() {
            Some((last, acc)) if *last == k => *acc = &*acc + &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    debug_assert!(out.iter().all(|(_, c)| c.field() == field));
    out
}

impl StructureAlgebra {
    /// Builds an algebra from a product rule on basis indices.
    pub fn from_fn(
        field: FieldSpec,
        labels: Vec<String>,
        parity: Vec<u8>,
        unit: Option<Vec<Scalar>>,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, Scalar)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let table = (0..dim)
            .map(|i| (0..dim).map(|j| sparse_from(field, product(i, j))).collect())
            .collect();
        Self::new(field, labels, parity, table, unit)
    }

    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        parity: Vec<u8>,
        table: Vec<Vec<SparseVec>>,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidParams("algebra must have positive dimension".into()));
        }
        if parity.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: parity.len(),
            });
        }
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::InvalidParams("parity must be 0 or 1".into()));
        }
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParams(format!("table must be {dim}x{dim}")));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                for (k, c) in entry {
                    if *k >= dim {
                        return Err(Error::IndexOutOfRange(format!(
                            "product {}*{} refers to basis index {k}",
                            labels[i], labels[j]
                        )));
                    }
                    if c.field() != field {
                        return Err(Error::FieldMismatch(field, c.field()));
                    }
                    if parity[*k] != parity[i] ^ parity[j] {
                        return Err(Error::GradingViolation(labels[i].clone(), labels[j].clone()));
                    }
                }
            }
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: u.len(),
                });
            }
            if u.iter().any(|c| c.field() != field) {
                return Err(Error::FieldMismatch(field, u[0].field()));
            }
        }
        let alg = StructureAlgebra {
            field,
            labels,
            parity,
            table,
            unit,
        };
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_unit(&self) -> Result<()> {
        let Some(u) = &self.unit else {
            return Ok(());
        };
        for b in 0..self.dim() {
            let e = self.basis_vector(b);
            if self.mul_vec(u, &e) != e || self.mul_vec(&e, u) != e {
                return Err(Error::BadUnit(self.labels[b].clone()));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == 0).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == 1).collect()
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<SparseVec>] {
        &self.table
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn dense(&self, s: &SparseVec) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        for (k, c) in s {
            v[*k] = c.clone();
        }
        v
    }

    /// Bilinear extension of the table.
    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        let bs: Vec<(usize, &Scalar)> = b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for &(j, cb) in &bs {
                let entry = &self.table[i][j];
                if entry.is_empty() {
                    continue;
                }
                let cab = ca * cb;
                for (k, c) in entry {
                    out[*k] = &out[*k] + &(&cab * c);
                }
            }
        }
        out
    }

    /// `(ab)c - a(bc)`.
    pub fn associator_vec(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        let left = self.mul_vec(&self.mul_vec(a, b), c);
        let right = self.mul_vec(a, &self.mul_vec(b, c));
        sub_vec(&left, &right)
    }

    pub fn associator_basis(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
        self.associator_vec(&a, &b, &c)
    }

    /// Parity of a homogeneous vector; `None` for mixed vectors. The zero
    /// vector counts as even.
    pub fn homogeneous_parity(&self, v: &[Scalar]) -> Option<u8> {
        let mut found: Option<u8> = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(self.parity[i]),
                Some(p) if p != self.parity[i] => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    /// Parses a linear combination of basis labels, e.g. `2*e11 - 1/2*m2`.
    pub fn parse_element(&self, s: &str) -> Result<Vec<Scalar>> {
        let mut out = self.zero_vector();
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0i32;
        for ch in s.chars() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') && !cur.trim().ends_with('*') {
                if !cur.trim().is_empty() {
                    terms.push((neg, cur.trim().to_string()));
                }
                cur.clear();
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if !cur.trim().is_empty() {
            terms.push((neg, cur.trim().to_string()));
        }
        for (neg, term) in terms {
            let (coeff, label) = match term.split_once('*') {
                Some((c, l)) if self.field.parse_scalar(c).is_ok() => {
                    (self.field.parse_scalar(c)?, l.trim().to_string())
                }
                _ => (self.field.one(), term.clone()),
            };
            let idx = self
                .index_of(&label)
                .ok_or_else(|| Error::Parse(format!("unknown basis label `{label}`")))?;
            let c = if neg { -coeff } else { coeff };
            out[idx] = &out[idx] + &c;
        }
        Ok(out)
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        let mut s = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&self.labels[i]);
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    /// Re-expresses the algebra in the basis whose `i`-th vector is column
    /// `i` of `change` (given as a list of new basis vectors).
    pub fn change_basis(&self, new_basis: &[Vec<Scalar>], labels: Vec<String>) -> Result<Self> {
        let dim = self.dim();
        if new_basis.len() != dim || labels.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: new_basis.len(),
            });
        }
        let mut parity = Vec::with_capacity(dim);
        for v in new_basis {
            parity.push(self.homogeneous_parity(v).ok_or(Error::NonHomogeneous)?);
        }
        // columns are the new basis vectors
        let p: Matrix = (0..dim)
            .map(|r| new_basis.iter().map(|v| v[r].clone()).collect())
            .collect();
        let p_inv = linalg::inverse(self.field, &p)?;
        let unit = self.unit.as_ref().map(|u| linalg::mat_vec(&p_inv, u, self.field));
        StructureAlgebra::from_fn(self.field, labels, parity, unit, |i, j| {
            let prod = self.mul_vec(&new_basis[i], &new_basis[j]);
            linalg::mat_vec(&p_inv, &prod, self.field)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
    }

    /// Even part as an algebra in its own right (closed under products by
    /// the grading).
    pub fn even_subalgebra(&self) -> Result<Self> {
        let even = self.even_indices();
        let pos = |k: usize| even.iter().position(|&e| e == k).expect("even product stays even");
        let labels = even.iter().map(|&i| self.labels[i].clone()).collect();
        let unit = self.unit.as_ref().and_then(|u| {
            (self.homogeneous_parity(u) == Some(0)).then(|| even.iter().map(|&i| u[i].clone()).collect())
        });
        StructureAlgebra::from_fn(self.field, labels, vec![0; even.len()], unit, |a, b| {
            self.table[even[a]][even[b]]
                .iter()
                .map(|(k, c)| (pos(*k), c.clone()))
                .collect()
        })
    }

    /// Plain tensor product of algebras; parities add.
    pub fn tensor(&self, other: &StructureAlgebra) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (n, m) = (self.dim(), other.dim());
        let labels = (0..n * m)
            .map(|k| format!("{}⊗{}", self.labels[k / m], other.labels[k % m]))
            .collect();
        let parity = (0..n * m).map(|k| self.parity[k / m] ^ other.parity[k % m]).collect();
        let unit = match (&self.unit, &other.unit) {
            (Some(a), Some(b)) => Some((0..n * m).map(|k| &a[k / m] * &b[k % m]).collect()),
            _ => None,
        };
        StructureAlgebra::from_fn(self.field, labels, parity, unit, |p, q| {
            let mut out = Vec::new();
            for (k1, c1) in &self.table[p / m][q / m] {
                for (k2, c2) in &other.table[p % m][q % m] {
                    out.push((k1 * m + k2, c1 * c2));
                }
            }
            out
        })
    }

    /// Checks that the linear map with the given images of basis vectors
    /// (`images[i]` is the image of basis vector `i`, in `target`
    /// coordinates) is multiplicative on all basis pairs.
    pub fn verify_homomorphism(&self, target: &StructureAlgebra, images: &[Vec<Scalar>]) -> Result<()> {
        if self.field != target.field {
            return Err(Error::FieldMismatch(self.field, target.field));
        }
        if images.len() != self.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: images.len(),
            });
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = apply_map(images, &self.dense(&self.table[i][j]), target);
                let rhs = target.mul_vec(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "f({0}*{1}) = {2} but f({0})*f({1}) = {3}",
                        self.labels[i],
                        self.labels[j],
                        target.format_vector(&lhs),
                        target.format_vector(&rhs)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Homomorphism that also respects the grading (images of homogeneous
    /// basis vectors are homogeneous of the same parity).
    pub fn verify_graded_homomorphism(&self, target: &StructureAlgebra, images: &[Vec<Scalar>]) -> Result<()> {
        for (i, img) in images.iter().enumerate() {
            match target.homogeneous_parity(img) {
                Some(p) if p == self.parity[i] || img.iter().all(Scalar::is_zero) => {}
                _ => {
                    return Err(Error::NotGraded(format!(
                        "image of {} is {}",
                        self.labels[i],
                        target.format_vector(img)
                    )))
                }
            }
        }
        self.verify_homomorphism(target, images)
    }

    /// Bijective homomorphism.
    pub fn verify_isomorphism(&self, target: &StructureAlgebra, images: &[Vec<Scalar>]) -> Result<()> {
        if self.dim() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: target.dim(),
            });
        }
        let rank = linalg::rank(images);
        if rank != self.dim() {
            return Err(Error::NotBijective { rank, dim: self.dim() });
        }
        self.verify_homomorphism(target, images)
    }
}

/// Image of `v` under the map sending basis vector `i` to `images[i]`.
pub fn apply_map(images: &[Vec<Scalar>], v: &[Scalar], target: &StructureAlgebra) -> Vec<Scalar> {
    let mut out = target.zero_vector();
    for (c, img) in v.iter().zip(images) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(img) {
            if !x.is_zero() {
                *o = &*o + &(c * x);
            }
        }
    }
    out
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// A vector in a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: Arc<StructureAlgebra>,
    coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn new(algebra: Arc<StructureAlgebra>, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: coords.len(),
            });
        }
        if let Some(c) = coords.iter().find(|c| c.field() != algebra.field()) {
            return Err(Error::FieldMismatch(algebra.field(), c.field()));
        }
        Ok(AlgebraElement { algebra, coords })
    }

    pub fn basis(algebra: &Arc<StructureAlgebra>, label: &str) -> Result<Self> {
        let i = algebra
            .index_of(label)
            .ok_or_else(|| Error::Parse(format!("unknown basis label `{label}`")))?;
        Ok(AlgebraElement {
            coords: algebra.basis_vector(i),
            algebra: algebra.clone(),
        })
    }

    pub fn parse(algebra: &Arc<StructureAlgebra>, s: &str) -> Result<Self> {
        Ok(AlgebraElement {
            coords: algebra.parse_element(s)?,
            algebra: algebra.clone(),
        })
    }

    pub fn unit(algebra: &Arc<StructureAlgebra>) -> Result<Self> {
        let u = algebra
            .unit()
            .ok_or_else(|| Error::NoUnit("algebra declares no unit".into()))?;
        Ok(AlgebraElement {
            coords: u.to_vec(),
            algebra: algebra.clone(),
        })
    }

    pub fn algebra(&self) -> &Arc<StructureAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    pub fn parity(&self) -> Option<u8> {
        self.algebra.homogeneous_parity(&self.coords)
    }

    fn same(&self, other: &AlgebraElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<Self> {
        self.same(other)?;
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coords: add_vec(&self.coords, &other.coords),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords: scale_vec(c, &self.coords),
        }
    }
}

pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.same(b)?;
    Ok(AlgebraElement {
        algebra: a.algebra.clone(),
        coords: a.algebra.mul_vec(&a.coords, &b.coords),
    })
}

/// `(ab)c - a(bc)`. In super mode the inputs must be parity-homogeneous and
/// the parity of the result (sum of input parities) is returned alongside.
pub fn associator(
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
    super_mode: bool,
) -> Result<(AlgebraElement, Option<u8>)> {
    a.same(b)?;
    a.same(c)?;
    let parity = if super_mode {
        let pa = a.parity().ok_or(Error::NonHomogeneous)?;
        let pb = b.parity().ok_or(Error::NonHomogeneous)?;
        let pc = c.parity().ok_or(Error::NonHomogeneous)?;
        Some(pa ^ pb ^ pc)
    } else {
        None
    };
    let coords = a.algebra.associator_vec(&a.coords, &b.coords, &c.coords);
    Ok((
        AlgebraElement {
            algebra: a.algebra.clone(),
            coords,
        },
        parity,
    ))
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.algebra.format_vector(&self.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> Arc<StructureAlgebra> {
        Arc::new(builtin(&BuiltinSpec::M2, FieldSpec::Rationals).unwrap())
    }

    #[test]
    fn parse_and_format_elements() {
        let a = m2();
        let v = a.parse_element("2*e11 - 1/2*e21 + e22").unwrap();
        assert_eq!(a.format_vector(&v), "2*e11 - 1/2*e21 + e22");
        assert!(a.parse_element("e33").is_err());
        assert_eq!(a.format_vector(&a.parse_element("0").unwrap()), "0");
    }

    #[test]
    fn algebra_mismatch() {
        let a = m2();
        let b = Arc::new(builtin(&BuiltinSpec::B12, FieldSpec::Rationals).unwrap());
        let x = AlgebraElement::basis(&a, "e11").unwrap();
        let y = AlgebraElement::basis(&b, "x").unwrap();
        assert_eq!(multiply(&x, &y), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn super_associator_rejects_mixed_parity() {
        let b = Arc::new(builtin(&BuiltinSpec::B42, FieldSpec::Rationals).unwrap());
        let mixed = AlgebraElement::parse(&b, "e11 + m1").unwrap();
        let m1 = AlgebraElement::basis(&b, "m1").unwrap();
        assert_eq!(associator(&mixed, &m1, &m1, true), Err(Error::NonHomogeneous));
        assert!(associator(&mixed, &m1, &m1, false).is_ok());
    }

    #[test]
    fn grading_violation_is_rejected() {
        let q = FieldSpec::Rationals;
        let r = StructureAlgebra::from_fn(q, vec!["a".into(), "b".into()], vec![0, 1], None, |i, j| {
            if i == 1 && j == 1 {
                vec![(1, q.one())]
            } else {
                vec![]
            }
        });
        assert_eq!(r, Err(Error::GradingViolation("b".into(), "b".into())));
    }

    #[test]
    fn bad_unit_is_rejected() {
        let q = FieldSpec::Rationals;
        let r = StructureAlgebra::from_fn(q, vec!["a".into()], vec![0], Some(vec![q.one()]), |_, _| vec![]);
        assert_eq!(r, Err(Error::BadUnit("a".into())));
    }

    #[test]
    fn tensor_with_scalars_is_identity() {
        let q = FieldSpec::Rationals;
        let f = builtin(&BuiltinSpec::Trunc(1), q).unwrap();
        let t = m2().tensor(&f).unwrap();
        let images: Vec<_> = (0..4).map(|i| t.basis_vector(i)).collect();
        m2().verify_isomorphism(&t, &images).unwrap();
    }
}
