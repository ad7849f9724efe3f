//! JSON structure-constant files.
//!
//! ```json
//! {"field": "fp:3",
//!  "basis": [{"label": "1", "parity": 0}, ...],
//!  "unit": ["1", "0", ...] or null,
//!  "table": [[["0", "1", ...], ...], ...]}
//! ```
//!
//! `table[i][j]` is the dense coefficient vector of `e_i e_j`. Scalars are
//! strings so that rationals survive untouched.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgebraElement, StructureAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub parity: u8,
}

/// Serialized form of a [`StructureAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub unit: Option<Vec<String>>,
    pub table: Vec<Vec<Vec<String>>>,
}

fn parse_vec(field: FieldSpec, coeffs: &[String], dim: usize, at: &str) -> Result<Vec<Scalar>> {
    if coeffs.len() != dim {
        return Err(Error::Parse(format!(
            "{at}: expected {dim} coefficients, found {}",
            coeffs.len()
        )));
    }
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            field
                .parse_scalar(c)
                .map_err(|e| Error::Parse(format!("{at}[{k}]: {e}")))
        })
        .collect()
}

impl AlgebraFile {
    pub fn from_algebra(alg: &StructureAlgebra) -> Self {
        let render = |v: &[Scalar]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        AlgebraFile {
            field: alg.field(),
            basis: alg
                .labels()
                .iter()
                .zip(alg.parities())
                .map(|(l, &p)| BasisEntry {
                    label: l.clone(),
                    parity: p,
                })
                .collect(),
            unit: alg.unit().map(render),
            table: (0..alg.dim())
                .map(|i| {
                    (0..alg.dim())
                        .map(|j| render(&alg.dense(alg.basis_product(i, j))))
                        .collect()
                })
                .collect(),
        }
    }

    /// Validates and builds the algebra. Errors name the offending location,
    /// e.g. `table[2][3][1]`.
    pub fn to_algebra(&self) -> Result<StructureAlgebra> {
        let dim = self.basis.len();
        let field = self.field;
        for (i, b) in self.basis.iter().enumerate() {
            if b.parity > 1 {
                return Err(Error::Parse(format!("basis[{i}].parity must be 0 or 1")));
            }
        }
        if self.table.len() != dim {
            return Err(Error::Parse(format!(
                "table: expected {dim} rows, found {}",
                self.table.len()
            )));
        }
        let mut table = Vec::with_capacity(dim);
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Parse(format!(
                    "table[{i}]: expected {dim} entries, found {}",
                    row.len()
                )));
            }
            let mut out_row = Vec::with_capacity(dim);
            for (j, entry) in row.iter().enumerate() {
                let v = parse_vec(field, entry, dim, &format!("table[{i}][{j}]"))?;
                out_row.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
            table.push(out_row);
        }
        let unit = self
            .unit
            .as_ref()
            .map(|u| parse_vec(field, u, dim, "unit"))
            .transpose()?;
        StructureAlgebra::new(
            field,
            self.basis.iter().map(|b| b.label.clone()).collect(),
            self.basis.iter().map(|b| b.parity).collect(),
            table,
            unit,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("structure-constant file: {e}")))
    }
}

impl StructureAlgebra {
    pub fn to_json(&self) -> String {
        AlgebraFile::from_algebra(self).to_json()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        AlgebraFile::from_json(s)?.to_algebra()
    }
}

/// Serialized element: dense coordinates with the basis labels they refer
/// to, so a reader can check it is being paired with the right algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    pub coords: Vec<String>,
}

impl AlgebraElement {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            field: self.algebra().field(),
            labels: self.algebra().labels().to_vec(),
            coords: self.coords().iter().map(Scalar::to_string).collect(),
        }
    }

    pub fn from_json(algebra: &Arc<StructureAlgebra>, j: &ElementJson) -> Result<Self> {
        if j.field != algebra.field() {
            return Err(Error::FieldMismatch(algebra.field(), j.field));
        }
        if j.labels != algebra.labels() {
            return Err(Error::Parse("element labels do not match the algebra's basis".into()));
        }
        let coords = parse_vec(j.field, &j.coords, algebra.dim(), "coords")?;
        AlgebraElement::new(algebra.clone(), coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, BuiltinSpec};

    #[test]
    fn round_trip_catalog() {
        let q = FieldSpec::Rationals;
        for spec in [
            BuiltinSpec::M2,
            BuiltinSpec::B42,
            BuiltinSpec::B12,
            BuiltinSpec::Grassmann(2),
            BuiltinSpec::OctonionSplit {
                v_squared: q.parse_scalar("-1/2").unwrap(),
            },
        ] {
            let a = builtin(&spec, q).unwrap();
            let json = a.to_json();
            let back = StructureAlgebra::from_json(&json).unwrap();
            assert_eq!(a, back, "{spec}");
            assert_eq!(back.to_json(), json);
        }
    }

    #[test]
    fn diagnostics_name_the_location() {
        let a = builtin(&BuiltinSpec::B12, FieldSpec::Prime(5)).unwrap();
        let mut f = AlgebraFile::from_algebra(&a);
        f.table[1][2][0] = "1/5".into();
        let err = f.to_algebra().unwrap_err().to_string();
        assert!(err.contains("table[1][2][0]"), "{err}");
        f.table[1].pop();
        let err = f.to_algebra().unwrap_err().to_string();
        assert!(err.contains("table[1]"), "{err}");
        assert!(AlgebraFile::from_json("{\"field\": \"q\"").is_err());
    }

    #[test]
    fn element_round_trip() {
        let a = Arc::new(builtin(&BuiltinSpec::B12, FieldSpec::Rationals).unwrap());
        let e = AlgebraElement::parse(&a, "1/2*1 - 3*y").unwrap();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AlgebraElement::from_json(&a, &back).unwrap(), e);
        let other = Arc::new(builtin(&BuiltinSpec::Grassmann(1), FieldSpec::Rationals).unwrap());
        assert!(AlgebraElement::from_json(&other, &back).is_err());
    }
}
