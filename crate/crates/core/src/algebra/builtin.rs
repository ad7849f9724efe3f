use std::fmt;

use super::StructureAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{signed, FieldSpec, Scalar};

/// Named members of the algebra catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinSpec {
    /// 2x2 matrix units.
    M2,
    /// `M2 + Cay` with odd Cay.
    B42,
    /// `F + (Fx + Fy)`, `x^2 = y^2 = 0`, `xy = -yx = 1`.
    B12,
    /// `M2 + Cay` with `Cay^2 = 0`.
    CaySplitNull,
    /// `M2 + v M2` by Cayley-Dickson doubling with the given nonzero `v^2`.
    OctonionSplit { v_squared: Scalar },
    /// Grassmann algebra on `k` odd generators.
    Grassmann(usize),
    /// `F[s]/(s^k)`, purely even.
    Trunc(usize),
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinSpec::M2 => write!(f, "M2"),
            BuiltinSpec::B42 => write!(f, "B42"),
            BuiltinSpec::B12 => write!(f, "B12"),
            BuiltinSpec::CaySplitNull => write!(f, "cay-split-null"),
            BuiltinSpec::OctonionSplit { v_squared } => write!(f, "octonion-split:{v_squared}"),
            BuiltinSpec::Grassmann(k) => write!(f, "grassmann:{k}"),
            BuiltinSpec::Trunc(k) => write!(f, "trunc:{k}"),
        }
    }
}

/// Parses `name[:param]`, e.g. `B42`, `octonion-split:1`, `grassmann:3`.
pub fn parse_builtin(s: &str, field: FieldSpec) -> Result<BuiltinSpec> {
    let (name, param) = match s.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p.trim())),
        None => (s.trim(), None),
    };
    let int_param = |what: &str| -> Result<usize> {
        param
            .ok_or_else(|| Error::InvalidParams(format!("{name} needs {what}")))?
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad {what} for {name}")))
    };
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "m2" => Ok(BuiltinSpec::M2),
        "b42" | "b(4,2)" => Ok(BuiltinSpec::B42),
        "b12" | "b(1,2)" => Ok(BuiltinSpec::B12),
        "cay-split-null" | "split-null" => Ok(BuiltinSpec::CaySplitNull),
        "octonion-split" | "octonions" => Ok(BuiltinSpec::OctonionSplit {
            v_squared: field.parse_scalar(param.unwrap_or("1"))?,
        }),
        "grassmann" => Ok(BuiltinSpec::Grassmann(int_param("a generator count")?)),
        "trunc" => Ok(BuiltinSpec::Trunc(int_param("a nilpotency index")?)),
        _ => Err(Error::UnknownBuiltin(s.to_string())),
    }
}

/// Matrix units are indexed `e11 = 0, e12 = 1, e21 = 2, e22 = 3`.
pub(crate) const M2_LABELS: [&str; 4] = ["e11", "e12", "e21", "e22"];

pub(crate) fn unit_product(a: usize, b: usize) -> Option<usize> {
    let (i, j) = (a / 2, a % 2);
    let (k, l) = (b / 2, b % 2);
    (j == k).then_some(2 * i + l)
}

/// Symplectic involution on matrix units: `(sign, index)`.
pub(crate) fn unit_bar(a: usize) -> (bool, usize) {
    match a {
        0 => (false, 3),
        1 => (true, 1),
        2 => (true, 2),
        3 => (false, 0),
        _ => unreachable!(),
    }
}

fn m2_unit(field: FieldSpec, dim: usize) -> Vec<Scalar> {
    let mut u = vec![field.zero(); dim];
    u[0] = field.one();
    u[3] = field.one();
    u
}

/// Action of matrix units on Cay: `e_ij * m_k = delta_ik m_j` and
/// `m_k * a = bar(a) * m_k`. Cay indices are 0 (m1) and 1 (m2).
pub(crate) fn cay_left(a: usize, k: usize) -> Option<usize> {
    let (i, j) = (a / 2, a % 2);
    (i == k).then_some(j)
}

pub(crate) fn cay_right(k: usize, a: usize) -> Option<(bool, usize)> {
    let (neg, abar) = unit_bar(a);
    cay_left(abar, k).map(|j| (neg, j))
}

/// Odd products in B(4,2): `m1^2 = e21, m2^2 = -e12, m1 m2 = -e11, m2 m1 = e22`.
pub(crate) fn cay_product(k: usize, l: usize) -> (bool, usize) {
    match (k, l) {
        (0, 0) => (false, 2),
        (1, 1) => (true, 1),
        (0, 1) => (true, 0),
        (1, 0) => (false, 3),
        _ => unreachable!(),
    }
}

fn m2_plus_cay(field: FieldSpec, with_odd_product: bool) -> Result<StructureAlgebra> {
    let labels = M2_LABELS
        .iter()
        .map(|s| s.to_string())
        .chain(["m1".to_string(), "m2".to_string()])
        .collect();
    StructureAlgebra::from_fn(
        field,
        labels,
        vec![0, 0, 0, 0, 1, 1],
        Some(m2_unit(field, 6)),
        |i, j| match (i < 4, j < 4) {
            (true, true) => unit_product(i, j).map(|k| vec![(k, field.one())]).unwrap_or_default(),
            (true, false) => cay_left(i, j - 4)
                .map(|k| vec![(k + 4, field.one())])
                .unwrap_or_default(),
            (false, true) => cay_right(i - 4, j)
                .map(|(neg, k)| vec![(k + 4, signed(field, neg))])
                .unwrap_or_default(),
            (false, false) => {
                if with_odd_product {
                    let (neg, k) = cay_product(i - 4, j - 4);
                    vec![(k, signed(field, neg))]
                } else {
                    vec![]
                }
            }
        },
    )
}

fn grassmann(field: FieldSpec, k: usize) -> Result<StructureAlgebra> {
    if k > 12 {
        return Err(Error::InvalidParams("grassmann supports at most 12 generators".into()));
    }
    let mut masks: Vec<u32> = (0..1u32 << k).collect();
    masks.sort_by_key(|&m| {
        let bits: Vec<u32> = (0..k as u32).filter(|b| m >> b & 1 == 1).collect();
        (bits.len(), bits)
    });
    let pos = |m: u32| masks.iter().position(|&x| x == m).expect("mask present");
    let labels = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..k)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| format!("g{}", b + 1))
                    .collect()
            }
        })
        .collect();
    let parity = masks.iter().map(|m| (m.count_ones() % 2) as u8).collect();
    let mut unit = vec![field.zero(); masks.len()];
    unit[0] = field.one();
    StructureAlgebra::from_fn(field, labels, parity, Some(unit), |i, j| {
        let (a, b) = (masks[i], masks[j]);
        if a & b != 0 {
            return vec![];
        }
        // sign of sorting the concatenated generator list
        let inversions: u32 = (0..k as u32)
            .filter(|x| a >> x & 1 == 1)
            .map(|x| (b & ((1u32 << x) - 1)).count_ones())
            .sum();
        vec![(pos(a | b), signed(field, inversions % 2 == 1))]
    })
}

fn trunc(field: FieldSpec, k: usize) -> Result<StructureAlgebra> {
    if k == 0 {
        return Err(Error::InvalidParams("trunc needs k >= 1".into()));
    }
    let labels = (0..k)
        .map(|e| match e {
            0 => "1".to_string(),
            1 => "s".to_string(),
            _ => format!("s^{e}"),
        })
        .collect();
    let mut unit = vec![field.zero(); k];
    unit[0] = field.one();
    StructureAlgebra::from_fn(field, labels, vec![0; k], Some(unit), |i, j| {
        if i + j < k {
            vec![(i + j, field.one())]
        } else {
            vec![]
        }
    })
}

fn octonion_split(field: FieldSpec, v_squared: &Scalar) -> Result<StructureAlgebra> {
    if v_squared.field() != field {
        return Err(Error::FieldMismatch(field, v_squared.field()));
    }
    if v_squared.is_zero() {
        return Err(Error::InvalidParams("octonion-split requires v^2 != 0".into()));
    }
    let labels = M2_LABELS
        .iter()
        .map(|s| s.to_string())
        .chain(M2_LABELS.iter().map(|s| format!("v{s}")))
        .collect();
    // products of M2 elements given as (sign, unit) pairs
    let prod = |a: (bool, usize), b: usize| unit_product(a.1, b).map(|k| (a.0, k));
    StructureAlgebra::from_fn(
        field,
        labels,
        vec![0, 0, 0, 0, 1, 1, 1, 1],
        Some(m2_unit(field, 8)),
        |i, j| {
            let term = |r: Option<(bool, usize)>, offset: usize, scale: &Scalar| {
                r.map(|(neg, k)| vec![(k + offset, &signed(field, neg) * scale)])
                    .unwrap_or_default()
            };
            let one = field.one();
            match (i < 4, j < 4) {
                // a . b = ab
                (true, true) => term(prod((false, i), j), 0, &one),
                // a . vb = v(bar(a) b)
                (true, false) => term(prod(unit_bar(i), j - 4), 4, &one),
                // vb . a = v(ab)
                (false, true) => term(prod((false, j), i - 4), 4, &one),
                // va . vb = (b bar(a)) v^2
                (false, false) => {
                    let (neg, abar) = unit_bar(i - 4);
                    term(unit_product(j - 4, abar).map(|k| (neg, k)), 0, v_squared)
                }
            }
        },
    )
}

/// The catalog algebra named by `spec`, over `field`.
pub fn builtin(spec: &BuiltinSpec, field: FieldSpec) -> Result<StructureAlgebra> {
    match spec {
        BuiltinSpec::M2 => {
            let labels = M2_LABELS.iter().map(|s| s.to_string()).collect();
            StructureAlgebra::from_fn(field, labels, vec![0; 4], Some(m2_unit(field, 4)), |i, j| {
                unit_product(i, j).map(|k| vec![(k, field.one())]).unwrap_or_default()
            })
        }
        BuiltinSpec::B42 => m2_plus_cay(field, true),
        BuiltinSpec::CaySplitNull => m2_plus_cay(field, false),
        BuiltinSpec::B12 => {
            let labels = vec!["1".into(), "x".into(), "y".into()];
            let unit = vec![field.one(), field.zero(), field.zero()];
            StructureAlgebra::from_fn(field, labels, vec![0, 1, 1], Some(unit), |i, j| match (i, j) {
                (0, k) | (k, 0) => vec![(k, field.one())],
                (1, 2) => vec![(0, field.one())],
                (2, 1) => vec![(0, field.from_i64(-1))],
                _ => vec![],
            })
        }
        BuiltinSpec::OctonionSplit { v_squared } => octonion_split(field, v_squared),
        BuiltinSpec::Grassmann(k) => grassmann(field, *k),
        BuiltinSpec::Trunc(k) => trunc(field, *k),
    }
}

/// B(4,2) rewritten in the basis `e21 -> -e21, e12 -> -e12, m2 -> -m2`,
/// which flips the sign of every odd product.
pub fn b42_literature_presentation(field: FieldSpec) -> Result<StructureAlgebra> {
    let b = builtin(&BuiltinSpec::B42, field)?;
    let flips = [false, true, true, false, false, true];
    let basis: Vec<Vec<Scalar>> = flips
        .iter()
        .enumerate()
        .map(|(i, &neg)| {
            let mut v = b.zero_vector();
            v[i] = signed(field, neg);
            v
        })
        .collect();
    b.change_basis(&basis, b.labels().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        let q = FieldSpec::Rationals;
        assert_eq!(parse_builtin("b42", q).unwrap(), BuiltinSpec::B42);
        assert_eq!(parse_builtin("grassmann:3", q).unwrap(), BuiltinSpec::Grassmann(3));
        assert!(matches!(parse_builtin("grassmann", q), Err(Error::InvalidParams(_))));
        assert!(matches!(parse_builtin("sedenion", q), Err(Error::UnknownBuiltin(_))));
        assert_eq!(
            parse_builtin("octonion-split:2", q).unwrap().to_string(),
            "octonion-split:2"
        );
    }

    #[test]
    fn octonions_reject_zero_v_squared() {
        let q = FieldSpec::Rationals;
        let r = builtin(&BuiltinSpec::OctonionSplit { v_squared: q.zero() }, q);
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn grassmann_two_over_f3() {
        let g = builtin(&BuiltinSpec::Grassmann(2), FieldSpec::Prime(3)).unwrap();
        assert_eq!(g.dim(), 4);
        let even: Vec<_> = g.even_indices().iter().map(|&i| g.label(i).to_string()).collect();
        let odd: Vec<_> = g.odd_indices().iter().map(|&i| g.label(i).to_string()).collect();
        assert_eq!(even, ["1", "g1g2"]);
        assert_eq!(odd, ["g1", "g2"]);
        // g2 g1 = -g1g2
        let (i, j) = (g.index_of("g2").unwrap(), g.index_of("g1").unwrap());
        assert_eq!(g.basis_product(i, j), &vec![(3, FieldSpec::Prime(3).from_i64(-1))]);
    }

    #[test]
    fn b12_table() {
        let q = FieldSpec::Rationals;
        let b = builtin(&BuiltinSpec::B12, q).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.odd_indices().len(), 2);
        assert_eq!(b.basis_product(1, 2), &vec![(0, q.one())]);
        assert_eq!(b.basis_product(2, 1), &vec![(0, q.from_i64(-1))]);
        assert!(b.basis_product(1, 1).is_empty());
    }

    #[test]
    fn literature_presentation_negates_odd_products() {
        let q = FieldSpec::Rationals;
        let ours = builtin(&BuiltinSpec::B42, q).unwrap();
        let old = b42_literature_presentation(q).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let (a, b) = (ours.basis_product(i, j), old.basis_product(i, j));
                if i >= 4 && j >= 4 {
                    let neg: Vec<_> = a.iter().map(|(k, c)| (*k, -c)).collect();
                    assert_eq!(&neg, b, "odd product {i} {j}");
                } else {
                    assert_eq!(a, b, "even/mixed product {i} {j}");
                }
            }
        }
    }
}
