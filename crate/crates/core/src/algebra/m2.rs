//! Matrix units inside larger algebras: the symplectic involution and the
//! splitting of an M2-algebra into its associative and Cayley parts.

use super::builtin::{unit_bar, unit_product, M2_LABELS};
use super::{sub_vec, AlgebraElement, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{signed, Scalar};

/// Four vectors playing the roles of `e11, e12, e21, e22`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Embedding {
    pub units: [Vec<Scalar>; 4],
}

impl M2Embedding {
    /// The basis vectors labelled `e11, e12, e21, e22`, if present.
    pub fn from_labels(alg: &StructureAlgebra) -> Result<Self> {
        let idx: Vec<usize> = M2_LABELS
            .iter()
            .map(|l| {
                alg.index_of(l)
                    .ok_or_else(|| Error::MatrixUnitRelations(format!("no basis vector labelled {l}")))
            })
            .collect::<Result<_>>()?;
        Ok(M2Embedding {
            units: [0, 1, 2, 3].map(|k| alg.basis_vector(idx[k])),
        })
    }

    /// `e_ij e_kl = delta_jk e_il` and `e11 + e22 = 1`.
    pub fn validate(&self, alg: &StructureAlgebra) -> Result<()> {
        if self.units.iter().any(|u| u.len() != alg.dim()) {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                got: self.units.iter().map(Vec::len).find(|&l| l != alg.dim()).unwrap_or(0),
            });
        }
        for a in 0..4 {
            for b in 0..4 {
                let prod = alg.mul_vec(&self.units[a], &self.units[b]);
                let expected = match unit_product(a, b) {
                    Some(k) => self.units[k].clone(),
                    None => alg.zero_vector(),
                };
                if prod != expected {
                    return Err(Error::MatrixUnitRelations(format!(
                        "{}*{} = {}",
                        M2_LABELS[a],
                        M2_LABELS[b],
                        alg.format_vector(&prod)
                    )));
                }
            }
        }
        let sum = super::add_vec(&self.units[0], &self.units[3]);
        match alg.unit() {
            Some(u) if u == sum.as_slice() => Ok(()),
            Some(_) => Err(Error::MatrixUnitRelations("e11 + e22 is not the unit".into())),
            None => Err(Error::MatrixUnitRelations("algebra declares no unit".into())),
        }
    }

    /// `bar(e_k)` as a vector.
    fn bar(&self, k: usize, alg: &StructureAlgebra) -> Vec<Scalar> {
        let (neg, j) = unit_bar(k);
        super::scale_vec(&signed(alg.field(), neg), &self.units[j])
    }
}

/// `a -> bar(a)`: `e11 <-> e22`, `e12 -> -e12`, `e21 -> -e21`. Defined on
/// the span of the basis vectors labelled `e11..e22`.
pub fn symplectic_involution(a: &AlgebraElement) -> Result<AlgebraElement> {
    let alg = a.algebra();
    let idx: Vec<usize> = M2_LABELS
        .iter()
        .map(|l| alg.index_of(l).ok_or(Error::OutsideM2))
        .collect::<Result<_>>()?;
    let coords = a.coords();
    if coords
        .iter()
        .enumerate()
        .any(|(i, c)| !c.is_zero() && !idx.contains(&i))
    {
        return Err(Error::OutsideM2);
    }
    let mut out = alg.zero_vector();
    for (k, &i) in idx.iter().enumerate() {
        let (neg, j) = unit_bar(k);
        out[idx[j]] = &coords[i] * &signed(alg.field(), neg);
    }
    AlgebraElement::new(alg.clone(), out)
}

/// Bases of the two pieces of an M2-bimodule decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Vectors `v` with `(a,b,v) = (a,v,b) = (v,a,b) = 0` for `a, b` in M2.
    pub associative: Vec<Vec<Scalar>>,
    /// Vectors `v` with `a v = v bar(a)` for `a` in M2.
    pub cayley: Vec<Vec<Scalar>>,
    /// Whether the two pieces span the algebra and meet trivially.
    pub complementary: bool,
}

/// Stacks the matrices of the linear maps `v -> f_r(v)` and returns the
/// common kernel.
/// Linear maps on the algebra, given as closures on coordinate vectors.
type LinearMaps<'a> = Vec<Box<dyn Fn(&[Scalar]) -> Vec<Scalar> + 'a>>;

fn common_kernel(alg: &StructureAlgebra, maps: LinearMaps<'_>) -> Vec<Vec<Scalar>> {
    let n = alg.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for f in &maps {
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| f(&alg.basis_vector(i))).collect();
        for r in 0..n {
            let row: Vec<Scalar> = (0..n).map(|c| cols[c][r].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    linalg::nullspace(alg.field(), &rows, n)
}

pub fn decompose_m2_bimodule(alg: &StructureAlgebra, emb: &M2Embedding) -> Result<Decomposition> {
    emb.validate(alg)?;
    let u = &emb.units;
    let mut cay_maps: LinearMaps<'_> = Vec::new();
    for k in 0..4 {
        let abar = emb.bar(k, alg);
        cay_maps.push(Box::new(move |v: &[Scalar]| {
            sub_vec(&alg.mul_vec(&u[k], v), &alg.mul_vec(v, &abar))
        }));
    }
    let mut assoc_maps: LinearMaps<'_> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            assoc_maps.push(Box::new(move |v: &[Scalar]| alg.associator_vec(&u[a], &u[b], v)));
            assoc_maps.push(Box::new(move |v: &[Scalar]| alg.associator_vec(&u[a], v, &u[b])));
            assoc_maps.push(Box::new(move |v: &[Scalar]| alg.associator_vec(v, &u[a], &u[b])));
        }
    }
    let cayley = common_kernel(alg, cay_maps);
    let associative = common_kernel(alg, assoc_maps);
    let mut all = associative.clone();
    all.extend(cayley.iter().cloned());
    let complementary = all.len() == alg.dim() && linalg::rank(&all) == alg.dim();
    Ok(Decomposition {
        associative,
        cayley,
        complementary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, BuiltinSpec};
    use crate::scalar::FieldSpec;
    use std::sync::Arc;

    #[test]
    fn involution_on_units() {
        let m = Arc::new(builtin(&BuiltinSpec::M2, FieldSpec::Rationals).unwrap());
        let bar = |s: &str| {
            symplectic_involution(&AlgebraElement::parse(&m, s).unwrap())
                .unwrap()
                .to_string()
        };
        assert_eq!(bar("e11"), "e22");
        assert_eq!(bar("e12"), "-e12");
        assert_eq!(bar("e11 + e22"), "e11 + e22");
        let b = Arc::new(builtin(&BuiltinSpec::B42, FieldSpec::Rationals).unwrap());
        let m1 = AlgebraElement::basis(&b, "m1").unwrap();
        assert_eq!(symplectic_involution(&m1), Err(Error::OutsideM2));
    }

    #[test]
    fn decompositions_of_catalog() {
        let q = FieldSpec::Rationals;
        let cases = [
            (BuiltinSpec::M2, 4, 0),
            (BuiltinSpec::B42, 4, 2),
            (BuiltinSpec::CaySplitNull, 4, 2),
            (BuiltinSpec::OctonionSplit { v_squared: q.one() }, 4, 4),
        ];
        for (spec, a, c) in cases {
            let alg = builtin(&spec, q).unwrap();
            let d = decompose_m2_bimodule(&alg, &M2Embedding::from_labels(&alg).unwrap()).unwrap();
            assert_eq!((d.associative.len(), d.cayley.len()), (a, c), "{spec}");
            assert!(d.complementary, "{spec}");
        }
    }

    #[test]
    fn bad_units_are_rejected() {
        let alg = builtin(&BuiltinSpec::M2, FieldSpec::Rationals).unwrap();
        let mut emb = M2Embedding::from_labels(&alg).unwrap();
        emb.units.swap(1, 2);
        assert!(matches!(
            decompose_m2_bimodule(&alg, &emb),
            Err(Error::MatrixUnitRelations(_))
        ));
    }
}
