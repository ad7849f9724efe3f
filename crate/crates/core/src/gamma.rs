//! Gamma-algebras: graded algebras whose even part is unital, associative
//! and central, with skew odd products obeying the cyclic law
//! `(xy)z + (yz)x + (zx)y = 0`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::identities::Sweeper;
use crate::algebra::{check_identity, IdentityKind, IdentityOutcome, IdentityReport, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{signed, Scalar};

/// Outcome of one of the four defining conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// `"i"`, `"ii"`, `"iii"` or `"iv"`.
    pub condition: &'static str,
    pub description: String,
    pub outcome: IdentityOutcome,
    pub rendered_value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub conditions: Vec<ConditionReport>,
}

impl GammaReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.outcome.is_pass())
    }

    pub fn first_failure(&self) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| !c.outcome.is_pass())
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.condition == name)
    }
}

#[derive(Serialize)]
struct ConditionJson<'a> {
    condition: &'a str,
    result: &'a str,
    description: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a [String]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<&'a str>,
}

impl Serialize for ConditionReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (result, witness) = match &self.outcome {
            IdentityOutcome::Pass => ("pass", None),
            IdentityOutcome::Fail { witness, .. } => ("fail", Some(witness.as_slice())),
            IdentityOutcome::NotApplicable(_) => ("not-applicable", None),
        };
        ConditionJson {
            condition: self.condition,
            result,
            description: &self.description,
            witness,
            value: self.rendered_value.as_deref(),
        }
        .serialize(s)
    }
}

impl Serialize for GammaReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.conditions.serialize(s)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            IdentityOutcome::Pass => write!(f, "({}) {}: pass", self.condition, self.description),
            IdentityOutcome::Fail { witness, .. } => write!(
                f,
                "({}) {}: fail at ({}) with value {}",
                self.condition,
                self.description,
                witness.join(", "),
                self.rendered_value.as_deref().unwrap_or("?")
            ),
            IdentityOutcome::NotApplicable(why) => {
                write!(f, "({}) {}: not applicable ({why})", self.condition, self.description)
            }
        }
    }
}

impl fmt::Display for GammaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.conditions.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The even vector acting as a two-sided identity on the whole algebra:
/// the declared unit if it is even, otherwise solved for inside the even
/// part.
pub fn even_unit(alg: &StructureAlgebra) -> Option<Vec<Scalar>> {
    if let Some(u) = alg.unit() {
        return (alg.homogeneous_parity(u) == Some(0)).then(|| u.to_vec());
    }
    let field = alg.field();
    let even = alg.even_indices();
    let n = alg.dim();
    // unknowns: coefficients of the even basis vectors
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for b in 0..n {
        let target = alg.basis_vector(b);
        for left in [true, false] {
            let cols: Vec<Vec<Scalar>> = even
                .iter()
                .map(|&a| {
                    let (x, y) = if left { (a, b) } else { (b, a) };
                    alg.dense(alg.basis_product(x, y))
                })
                .collect();
            for r in 0..n {
                rows.push(cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>());
                rhs.push(target[r].clone());
            }
        }
    }
    let coeffs = linalg::solve(field, &rows, &rhs, even.len())?;
    let mut u = alg.zero_vector();
    for (c, &a) in coeffs.into_iter().zip(&even) {
        u[a] = c;
    }
    Some(u)
}

struct Checker<'a> {
    sw: Sweeper<'a>,
    alg: &'a StructureAlgebra,
}

impl<'a> Checker<'a> {
    fn report(&self, condition: &'static str, description: &str, outcome: IdentityOutcome) -> ConditionReport {
        let rendered_value = match &outcome {
            IdentityOutcome::Fail { value, .. } => Some(self.alg.format_vector(value)),
            _ => None,
        };
        ConditionReport {
            condition,
            description: description.to_string(),
            outcome,
            rendered_value,
        }
    }

    fn fail(&self, idx: &[usize], value: Vec<Scalar>) -> IdentityOutcome {
        IdentityOutcome::Fail {
            witness: idx.iter().map(|&i| self.alg.label(i).to_string()).collect(),
            value,
        }
    }

    fn nonzero(v: &[Scalar]) -> bool {
        v.iter().any(|c| !c.is_zero())
    }

    fn condition_i(&self) -> ConditionReport {
        let alg = self.alg;
        let one = alg.field().one();
        let even = alg.even_indices();
        let odd = alg.odd_indices();
        let n = alg.dim();
        if even_unit(alg).is_none() {
            return self.report(
                "i",
                "even part has no unit acting as identity",
                IdentityOutcome::Fail {
                    witness: vec![],
                    value: alg.zero_vector(),
                },
            );
        }
        for &a in &even {
            for &b in &even {
                for &c in &even {
                    let v = self.sw.assoc(a, b, c);
                    if Self::nonzero(&v) {
                        return self.report("i", "even part is associative", self.fail(&[a, b, c], v));
                    }
                }
            }
        }
        for &a in &even {
            for &x in &odd {
                let mut v = alg.zero_vector();
                self.sw.add_product(&mut v, &one, a, x);
                self.sw.add_product(&mut v, &-&one, x, a);
                if Self::nonzero(&v) {
                    return self.report("i", "[even, odd] = 0", self.fail(&[a, x], v));
                }
            }
        }
        for &a in &even {
            for b in 0..n {
                for c in 0..n {
                    let v = self.sw.assoc(a, b, c);
                    if Self::nonzero(&v) {
                        return self.report("i", "(even, A, A) = 0", self.fail(&[a, b, c], v));
                    }
                }
            }
        }
        self.report(
            "i",
            "even part unital associative, [even, odd] = 0, (even, A, A) = 0",
            IdentityOutcome::Pass,
        )
    }

    fn condition_ii(&self) -> ConditionReport {
        let alg = self.alg;
        let even = alg.even_indices();
        let odd = alg.odd_indices();
        let desc = "odd products are central in the even part";
        for &x in &odd {
            for &y in &odd {
                for &a in &even {
                    let mut v = alg.zero_vector();
                    for (k, c) in alg.basis_product(x, y) {
                        self.sw.add_product(&mut v, c, *k, a);
                        self.sw.add_product(&mut v, &-c, a, *k);
                    }
                    if Self::nonzero(&v) {
                        return self.report("ii", desc, self.fail(&[x, y, a], v));
                    }
                }
            }
        }
        self.report("ii", desc, IdentityOutcome::Pass)
    }

    fn condition_iii(&self) -> ConditionReport {
        let alg = self.alg;
        let one = alg.field().one();
        let odd = alg.odd_indices();
        let desc = "xy + yx = 0 for odd x, y";
        for (p, &x) in odd.iter().enumerate() {
            for &y in &odd[p..] {
                let mut v = alg.zero_vector();
                self.sw.add_product(&mut v, &one, x, y);
                self.sw.add_product(&mut v, &one, y, x);
                if Self::nonzero(&v) {
                    return self.report("iii", desc, self.fail(&[x, y], v));
                }
            }
        }
        self.report("iii", desc, IdentityOutcome::Pass)
    }

    fn condition_iv(&self) -> ConditionReport {
        let alg = self.alg;
        let odd = alg.odd_indices();
        let desc = "(xy)z + (yz)x + (zx)y = 0 for odd x, y, z";
        for &x in &odd {
            for &y in &odd {
                for &z in &odd {
                    let v = cyclic_sum(alg, x, y, z);
                    if Self::nonzero(&v) {
                        return self.report("iv", desc, self.fail(&[x, y, z], v));
                    }
                }
            }
        }
        self.report("iv", desc, IdentityOutcome::Pass)
    }
}

/// `(xy)z + (yz)x + (zx)y` on basis vectors.
pub fn cyclic_sum(alg: &StructureAlgebra, x: usize, y: usize, z: usize) -> Vec<Scalar> {
    let sw = Sweeper::new(alg);
    let mut v = alg.zero_vector();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        for (k, coeff) in alg.basis_product(a, b) {
            sw.add_product(&mut v, coeff, *k, c);
        }
    }
    v
}

/// Checks conditions (i)-(iv) exhaustively on basis tuples.
pub fn verify_gamma_conditions(alg: &StructureAlgebra) -> GammaReport {
    let c = Checker {
        sw: Sweeper::new(alg),
        alg,
    };
    GammaReport {
        conditions: vec![c.condition_i(), c.condition_ii(), c.condition_iii(), c.condition_iv()],
    }
}

/// A graded algebra known to satisfy the four conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaAlgebra {
    carrier: Arc<StructureAlgebra>,
    unit: Vec<Scalar>,
}

impl GammaAlgebra {
    pub fn new(alg: StructureAlgebra) -> Result<Self> {
        let report = verify_gamma_conditions(&alg);
        if let Some(c) = report.first_failure() {
            return Err(Error::GammaConditions(c.to_string()));
        }
        let unit = even_unit(&alg).expect("condition (i) guarantees a unit");
        Ok(GammaAlgebra {
            carrier: Arc::new(alg),
            unit,
        })
    }

    pub fn carrier(&self) -> &Arc<StructureAlgebra> {
        &self.carrier
    }

    pub fn even(&self) -> Vec<usize> {
        self.carrier.even_indices()
    }

    pub fn odd(&self) -> Vec<usize> {
        self.carrier.odd_indices()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
}

/// `Gamma(A) = A + A^2` with `a.(b,c) = (ab, ac)` and `(a,b)(c,d) = ad - bc`.
pub fn gamma_of_commutative(a: &StructureAlgebra) -> Result<GammaAlgebra> {
    if !a.odd_indices().is_empty() {
        return Err(Error::InvalidParams("input algebra must be purely even".into()));
    }
    if let IdentityOutcome::Fail { witness, .. } = check_identity(a, IdentityKind::SuperCommutative).outcome {
        return Err(Error::NotCommutative(witness.join(", ")));
    }
    if let IdentityOutcome::Fail { witness, .. } = check_identity(a, IdentityKind::Associative).outcome {
        return Err(Error::NotAssociative(witness.join(", ")));
    }
    let unit = a
        .unit()
        .ok_or_else(|| Error::NoUnit("input algebra declares no unit".into()))?;
    let n = a.dim();
    let field = a.field();
    let labels = a
        .labels()
        .iter()
        .cloned()
        .chain(a.labels().iter().map(|l| format!("({l},0)")))
        .chain(a.labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    let parity = (0..3 * n).map(|k| u8::from(k >= n)).collect();
    let mut u = unit.to_vec();
    u.extend(std::iter::repeat(field.zero()).take(2 * n));
    let carrier = StructureAlgebra::from_fn(field, labels, parity, Some(u), |i, j| {
        let shift = |s: &Vec<(usize, Scalar)>, by: usize, neg: bool| {
            s.iter()
                .map(|(k, c)| (k + by, c * &signed(field, neg)))
                .collect::<Vec<_>>()
        };
        let (bi, bj) = (i / n, j / n);
        let (ai, aj) = (i % n, j % n);
        let p = a.basis_product(ai, aj);
        match (bi, bj) {
            (0, 0) => shift(p, 0, false),
            (0, s) | (s, 0) => shift(p, s * n, false),
            (1, 2) => shift(p, 0, false),
            (2, 1) => shift(p, 0, true),
            _ => vec![],
        }
    })?;
    GammaAlgebra::new(carrier)
}

/// `G0 (x) S0 + G1 (x) S1` with `(g s)(h t) = (-1)^{|s||h|} gh (x) st`. The
/// result keeps the grading by `|g|`.
pub fn grassmann_envelope(g: &StructureAlgebra, s: &StructureAlgebra) -> Result<StructureAlgebra> {
    if g.field() != s.field() {
        return Err(Error::FieldMismatch(g.field(), s.field()));
    }
    if let IdentityOutcome::Fail { witness, .. } = check_identity(g, IdentityKind::SuperCommutative).outcome {
        return Err(Error::NotCommutative(format!(
            "Grassmann factor: {}",
            witness.join(", ")
        )));
    }
    let field = g.field();
    let pairs: Vec<(usize, usize)> = (0..g.dim())
        .flat_map(|a| {
            (0..s.dim())
                .filter(move |&b| g.parity(a) == s.parity(b))
                .map(move |b| (a, b))
        })
        .collect();
    if pairs.is_empty() {
        return Err(Error::InvalidParams("envelope is zero".into()));
    }
    let pos = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b));
    let labels = pairs
        .iter()
        .map(|&(a, b)| format!("{}⊗{}", g.label(a), s.label(b)))
        .collect();
    let parity = pairs.iter().map(|&(a, _)| g.parity(a)).collect();
    let unit = match (g.unit(), s.unit()) {
        (Some(gu), Some(su)) => {
            let mut u = vec![field.zero(); pairs.len()];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                u[k] = &gu[a] * &su[b];
            }
            // the unit must live on the even-even pairs to be representable
            let representable = (0..g.dim())
                .flat_map(|a| (0..s.dim()).map(move |b| (a, b)))
                .all(|(a, b)| pos(a, b).is_some() || (&gu[a] * &su[b]).is_zero());
            representable.then_some(u)
        }
        _ => None,
    };
    StructureAlgebra::from_fn(field, labels, parity, unit, |p, q| {
        let (ga, sa) = pairs[p];
        let (gb, sb) = pairs[q];
        let sign = signed(field, s.parity(sa) * g.parity(gb) == 1);
        let mut out = Vec::new();
        for (k1, c1) in g.basis_product(ga, gb) {
            for (k2, c2) in s.basis_product(sa, sb) {
                // gradings of both factors guarantee the parities match
                let idx = pos(*k1, *k2).expect("graded product stays in the envelope");
                out.push((idx, &(&sign * c1) * c2));
            }
        }
        out
    })
}

/// Result of the Jordan superalgebra checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanReport {
    pub super_commutative: IdentityReport,
    pub jordan: IdentityReport,
    /// Present only in characteristic 3.
    pub super_alternative: Option<IdentityReport>,
}

impl JordanReport {
    pub fn all_pass(&self) -> bool {
        self.super_commutative.passed()
            && self.jordan.passed()
            && self.super_alternative.as_ref().map_or(true, IdentityReport::passed)
    }
}

/// Supercommutativity and the super Jordan identity; in characteristic 3
/// also super-alternativity. The even part must be commutative.
pub fn check_jordan_super(g: &StructureAlgebra) -> Result<JordanReport> {
    let even = g.even_subalgebra()?;
    if let IdentityOutcome::Fail { witness, .. } = check_identity(&even, IdentityKind::SuperCommutative).outcome {
        return Err(Error::NotCommutative(witness.join(", ")));
    }
    Ok(JordanReport {
        super_commutative: check_identity(g, IdentityKind::SuperCommutative),
        jordan: check_identity(g, IdentityKind::JordanSuper),
        super_alternative: (g.field().characteristic() == 3).then(|| check_identity(g, IdentityKind::SuperAlternative)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, BuiltinSpec};
    use crate::scalar::FieldSpec;

    #[test]
    fn b12_and_grassmann_char_3() {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(3), FieldSpec::Prime(5)] {
            assert!(verify_gamma_conditions(&builtin(&BuiltinSpec::B12, f).unwrap()).all_pass());
        }
        let g3 = builtin(&BuiltinSpec::Grassmann(3), FieldSpec::Prime(3)).unwrap();
        assert!(verify_gamma_conditions(&g3).all_pass());
    }

    #[test]
    fn grassmann_over_q_fails_cyclic_law() {
        let g = builtin(&BuiltinSpec::Grassmann(3), FieldSpec::Rationals).unwrap();
        let r = verify_gamma_conditions(&g);
        let c = r.first_failure().unwrap();
        assert_eq!(c.condition, "iv");
        match &c.outcome {
            IdentityOutcome::Fail { witness, .. } => assert_eq!(witness, &["g1", "g2", "g3"]),
            o => panic!("{o:?}"),
        }
        assert_eq!(c.rendered_value.as_deref(), Some("3*g1g2g3"));
    }

    #[test]
    fn missing_unit_is_diagnosed() {
        let q = FieldSpec::Rationals;
        let z = StructureAlgebra::from_fn(q, vec!["a".into(), "x".into()], vec![0, 1], None, |_, _| vec![]).unwrap();
        let r = verify_gamma_conditions(&z);
        assert_eq!(r.first_failure().unwrap().condition, "i");
        assert!(r.first_failure().unwrap().description.contains("no unit"));
    }

    #[test]
    fn unit_is_solved_for_when_undeclared() {
        let q = FieldSpec::Rationals;
        let b = builtin(&BuiltinSpec::B12, q).unwrap();
        let stripped =
            StructureAlgebra::new(q, b.labels().to_vec(), b.parities().to_vec(), b.table().to_vec(), None).unwrap();
        assert_eq!(even_unit(&stripped).unwrap(), b.unit().unwrap());
    }

    #[test]
    fn gamma_of_field_is_b12() {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(7)] {
            let k = builtin(&BuiltinSpec::Trunc(1), f).unwrap();
            let g = gamma_of_commutative(&k).unwrap();
            let c = g.carrier();
            assert_eq!(c.labels(), ["1", "(1,0)", "(0,1)"]);
            let b12 = builtin(&BuiltinSpec::B12, f).unwrap();
            assert_eq!(c.table(), b12.table());
        }
    }

    #[test]
    fn gamma_of_truncated_polynomials() {
        let f = FieldSpec::Prime(7);
        let a = builtin(&BuiltinSpec::Trunc(3), f).unwrap();
        let g = gamma_of_commutative(&a).unwrap();
        assert_eq!(g.carrier().dim(), 9);
        assert!(check_jordan_super(g.carrier()).unwrap().all_pass());
    }

    #[test]
    fn gamma_of_noncommutative_input_is_rejected() {
        let m = builtin(&BuiltinSpec::M2, FieldSpec::Rationals).unwrap();
        assert!(matches!(gamma_of_commutative(&m), Err(Error::NotCommutative(_))));
    }

    #[test]
    fn envelope_dimensions() {
        let f = FieldSpec::Prime(3);
        let b42 = builtin(&BuiltinSpec::B42, f).unwrap();
        for (k, dim) in [(0, 4), (1, 6), (2, 12)] {
            let g = builtin(&BuiltinSpec::Grassmann(k), f).unwrap();
            let e = grassmann_envelope(&g, &b42).unwrap();
            assert_eq!(e.dim(), dim);
            assert!(check_identity(&e, IdentityKind::Alternative).passed(), "grassmann:{k}");
        }
    }

    #[test]
    fn corrupted_gamma_of_field_fails_jordan() {
        let q = FieldSpec::Rationals;
        let g = gamma_of_commutative(&builtin(&BuiltinSpec::Trunc(1), q).unwrap()).unwrap();
        let c = g.carrier();
        let mut table = c.table().to_vec();
        // (0,1)(1,0) = +1 instead of -1
        table[2][1] = vec![(0, q.one())];
        let bad = StructureAlgebra::new(
            q,
            c.labels().to_vec(),
            c.parities().to_vec(),
            table,
            c.unit().map(<[_]>::to_vec),
        )
        .unwrap();
        let r = check_jordan_super(&bad).unwrap();
        assert!(!r.super_commutative.passed());
    }
}
