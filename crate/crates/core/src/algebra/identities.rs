//! Exhaustive identity sweeps over basis tuples.
//!
//! Every identity is multilinear (after linearization), so checking it on
//! all basis tuples is a complete decision procedure. Quadratic laws such as
//! `(x,x,y) = 0` are checked as their full linearization on pairs `i < j`
//! plus the diagonal, which stays correct in characteristic 2.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{SparseVec, StructureAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{signed, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    LeftAlternative,
    RightAlternative,
    /// Left and right together.
    Alternative,
    Flexible,
    Associative,
    SuperLeftAlternative,
    SuperRightAlternative,
    /// Super-left and super-right together.
    SuperAlternative,
    SuperCommutative,
    JordanSuper,
    GammaConditions,
    CayleyBimodule,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 12] = [
        IdentityKind::LeftAlternative,
        IdentityKind::RightAlternative,
        IdentityKind::Alternative,
        IdentityKind::Flexible,
        IdentityKind::Associative,
        IdentityKind::SuperLeftAlternative,
        IdentityKind::SuperRightAlternative,
        IdentityKind::SuperAlternative,
        IdentityKind::SuperCommutative,
        IdentityKind::JordanSuper,
        IdentityKind::GammaConditions,
        IdentityKind::CayleyBimodule,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityKind::LeftAlternative => "left-alternative",
            IdentityKind::RightAlternative => "right-alternative",
            IdentityKind::Alternative => "alternative",
            IdentityKind::Flexible => "flexible",
            IdentityKind::Associative => "associative",
            IdentityKind::SuperLeftAlternative => "super-left-alternative",
            IdentityKind::SuperRightAlternative => "super-right-alternative",
            IdentityKind::SuperAlternative => "super-alternative",
            IdentityKind::SuperCommutative => "super-commutative",
            IdentityKind::JordanSuper => "jordan-super",
            IdentityKind::GammaConditions => "gamma-conditions",
            IdentityKind::CayleyBimodule => "cayley-bimodule-law",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .or(match s.as_str() {
                "super-alternativity" => Some(IdentityKind::SuperAlternative),
                "cayley-bimodule" => Some(IdentityKind::CayleyBimodule),
                "gamma" => Some(IdentityKind::GammaConditions),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Pass,
    /// A basis tuple (by label) on which the identity evaluates to `value`.
    Fail {
        witness: Vec<String>,
        value: Vec<Scalar>,
    },
    NotApplicable(String),
}

impl IdentityOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, IdentityOutcome::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub outcome: IdentityOutcome,
    /// Human-readable value of a failing witness.
    pub rendered_value: Option<String>,
    /// Extra context, e.g. which Gamma condition failed.
    pub detail: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.outcome.is_pass()
    }

    fn new(alg: &StructureAlgebra, kind: IdentityKind, outcome: IdentityOutcome) -> Self {
        let rendered_value = match &outcome {
            IdentityOutcome::Fail { value, .. } => Some(alg.format_vector(value)),
            _ => None,
        };
        IdentityReport {
            kind,
            outcome,
            rendered_value,
            detail: None,
        }
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    identity: &'a str,
    result: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a [String]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
}

impl Serialize for IdentityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (result, witness, detail) = match &self.outcome {
            IdentityOutcome::Pass => ("pass", None, self.detail.as_deref()),
            IdentityOutcome::Fail { witness, .. } => ("fail", Some(witness.as_slice()), self.detail.as_deref()),
            IdentityOutcome::NotApplicable(why) => ("not-applicable", None, Some(why.as_str())),
        };
        ReportJson {
            identity: self.kind.name(),
            result,
            witness,
            value: self.rendered_value.as_deref(),
            detail,
        }
        .serialize(s)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            IdentityOutcome::Pass => write!(f, "{}: pass", self.kind)?,
            IdentityOutcome::Fail { witness, .. } => write!(
                f,
                "{}: fail at ({}) with value {}",
                self.kind,
                witness.join(", "),
                self.rendered_value.as_deref().unwrap_or("?")
            )?,
            IdentityOutcome::NotApplicable(why) => write!(f, "{}: not applicable ({why})", self.kind)?,
        }
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

/// Products of basis vectors with the intermediate sparse results that the
/// sweeps need over and over.
pub(crate) struct Sweeper<'a> {
    pub alg: &'a StructureAlgebra,
}

impl<'a> Sweeper<'a> {
    pub fn new(alg: &'a StructureAlgebra) -> Self {
        Sweeper { alg }
    }

    fn zero(&self) -> Vec<Scalar> {
        self.alg.zero_vector()
    }

    /// `acc += c * (s * e_k)`
    fn add_sparse_times_basis(&self, acc: &mut [Scalar], c: &Scalar, s: &SparseVec, k: usize) {
        for (l, cl) in s {
            let f = c * cl;
            for (m, cm) in self.alg.basis_product(*l, k) {
                acc[*m] = &acc[*m] + &(&f * cm);
            }
        }
    }

    /// `acc += c * (e_i * s)`
    fn add_basis_times_sparse(&self, acc: &mut [Scalar], c: &Scalar, i: usize, s: &SparseVec) {
        for (l, cl) in s {
            let f = c * cl;
            for (m, cm) in self.alg.basis_product(i, *l) {
                acc[*m] = &acc[*m] + &(&f * cm);
            }
        }
    }

    /// `acc += c * (e_i, e_j, e_k)`
    pub fn add_assoc(&self, acc: &mut [Scalar], c: &Scalar, i: usize, j: usize, k: usize) {
        self.add_sparse_times_basis(acc, c, self.alg.basis_product(i, j), k);
        self.add_basis_times_sparse(acc, &-c, i, self.alg.basis_product(j, k));
    }

    pub fn assoc(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let mut acc = self.zero();
        self.add_assoc(&mut acc, &self.alg.field().one(), i, j, k);
        acc
    }

    /// `acc += c * e_i e_j`
    pub fn add_product(&self, acc: &mut [Scalar], c: &Scalar, i: usize, j: usize) {
        for (m, cm) in self.alg.basis_product(i, j) {
            acc[*m] = &acc[*m] + &(c * cm);
        }
    }

    /// `acc += c * ((e_i e_j), e_k, e_l)`
    fn add_assoc_of_product(&self, acc: &mut [Scalar], c: &Scalar, i: usize, j: usize, k: usize, l: usize) {
        for (m, cm) in self.alg.basis_product(i, j) {
            self.add_assoc(acc, &(c * cm), *m, k, l);
        }
    }

    fn sign(&self, exponent: u8) -> Scalar {
        signed(self.alg.field(), exponent % 2 == 1)
    }

    fn fail(&self, idx: &[usize], value: Vec<Scalar>) -> IdentityOutcome {
        IdentityOutcome::Fail {
            witness: idx.iter().map(|&i| self.alg.label(i).to_string()).collect(),
            value,
        }
    }

    /// Sweeps a trilinear expression built from the given evaluator over
    /// all basis triples, stopping at the first nonzero value.
    fn sweep3(&self, mut eval: impl FnMut(usize, usize, usize) -> Option<Vec<Scalar>>) -> IdentityOutcome {
        let n = self.alg.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if let Some(v) = eval(i, j, k) {
                        if v.iter().any(|c| !c.is_zero()) {
                            return self.fail(&[i, j, k], v);
                        }
                    }
                }
            }
        }
        IdentityOutcome::Pass
    }

    /// `(x,y,z) + s (y,x,z)` for `x <= y` in basis order; `s` is the Koszul
    /// sign in super mode and `+1` otherwise. On the diagonal only even `x`
    /// (or every `x`, in plain mode) is required to give zero.
    pub fn left_alternative(&self, graded: bool) -> IdentityOutcome {
        let one = self.alg.field().one();
        self.sweep3(|i, j, k| {
            let p = |a: usize| if graded { self.alg.parity(a) } else { 0 };
            if i > j {
                return None;
            }
            if i == j {
                if p(i) == 1 {
                    return None;
                }
                return Some(self.assoc(i, i, k));
            }
            let mut acc = self.zero();
            self.add_assoc(&mut acc, &one, i, j, k);
            self.add_assoc(&mut acc, &self.sign(p(i) * p(j)), j, i, k);
            Some(acc)
        })
    }

    /// `(z,x,y) + s (z,y,x)`, mirror image of [`Self::left_alternative`].
    pub fn right_alternative(&self, graded: bool) -> IdentityOutcome {
        let one = self.alg.field().one();
        self.sweep3(|k, i, j| {
            let p = |a: usize| if graded { self.alg.parity(a) } else { 0 };
            if i > j {
                return None;
            }
            if i == j {
                if p(i) == 1 {
                    return None;
                }
                return Some(self.assoc(k, i, i));
            }
            let mut acc = self.zero();
            self.add_assoc(&mut acc, &one, k, i, j);
            self.add_assoc(&mut acc, &self.sign(p(i) * p(j)), k, j, i);
            Some(acc)
        })
    }

    pub fn flexible(&self) -> IdentityOutcome {
        let one = self.alg.field().one();
        self.sweep3(|i, j, k| {
            if i > k {
                return None;
            }
            if i == k {
                return Some(self.assoc(i, j, i));
            }
            let mut acc = self.zero();
            self.add_assoc(&mut acc, &one, i, j, k);
            self.add_assoc(&mut acc, &one, k, j, i);
            Some(acc)
        })
    }

    pub fn associative(&self) -> IdentityOutcome {
        self.sweep3(|i, j, k| Some(self.assoc(i, j, k)))
    }

    /// `xy - (-1)^{|x||y|} yx`.
    pub fn super_commutative(&self) -> IdentityOutcome {
        let n = self.alg.dim();
        let one = self.alg.field().one();
        for i in 0..n {
            for j in i..n {
                let mut acc = self.zero();
                self.add_product(&mut acc, &one, i, j);
                let s = self.sign(self.alg.parity(i) * self.alg.parity(j));
                self.add_product(&mut acc, &-&s, j, i);
                if acc.iter().any(|c| !c.is_zero()) {
                    return self.fail(&[i, j], acc);
                }
            }
        }
        IdentityOutcome::Pass
    }

    /// `(xy,z,t) + (-1)^{yz+yt+zt} (xt,z,y) + (-1)^{x(y+z+t)+zt} (yt,z,x)`
    /// on every basis 4-tuple.
    pub fn jordan_super(&self) -> IdentityOutcome {
        let n = self.alg.dim();
        let one = self.alg.field().one();
        let p = |a: usize| self.alg.parity(a);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let mut acc = self.zero();
                        self.add_assoc_of_product(&mut acc, &one, x, y, z, t);
                        let s1 = self.sign(p(y) * p(z) + p(y) * p(t) + p(z) * p(t));
                        self.add_assoc_of_product(&mut acc, &s1, x, t, z, y);
                        let s2 = self.sign(p(x) * (p(y) + p(z) + p(t)) + p(z) * p(t));
                        self.add_assoc_of_product(&mut acc, &s2, y, t, z, x);
                        if acc.iter().any(|c| !c.is_zero()) {
                            return self.fail(&[x, y, z, t], acc);
                        }
                    }
                }
            }
        }
        IdentityOutcome::Pass
    }
}

/// `a v = v bar(a)` for `a` in the matrix-unit block labelled `e11..e22` and
/// every basis vector `v` outside it.
fn cayley_law(alg: &StructureAlgebra) -> IdentityOutcome {
    let Some(block): Option<Vec<usize>> = ["e11", "e12", "e21", "e22"].iter().map(|l| alg.index_of(l)).collect() else {
        return IdentityOutcome::NotApplicable("no basis vectors labelled e11, e12, e21, e22".into());
    };
    let sw = Sweeper::new(alg);
    let field = alg.field();
    for v in (0..alg.dim()).filter(|i| !block.contains(i)) {
        for (a_pos, &a) in block.iter().enumerate() {
            let (neg, bar_pos) = super::builtin::unit_bar(a_pos);
            let mut acc = alg.zero_vector();
            sw.add_product(&mut acc, &field.one(), a, v);
            sw.add_product(&mut acc, &-signed(field, neg), v, block[bar_pos]);
            if acc.iter().any(|c| !c.is_zero()) {
                return sw.fail(&[a, v], acc);
            }
        }
    }
    IdentityOutcome::Pass
}

fn first_failure(outcomes: [IdentityOutcome; 2]) -> IdentityOutcome {
    let [a, b] = outcomes;
    if a.is_pass() {
        b
    } else {
        a
    }
}

/// Runs one identity sweep. Graded kinds read the parities declared on the
/// algebra; for an all-even algebra they coincide with the plain kinds.
pub fn check_identity(alg: &StructureAlgebra, kind: IdentityKind) -> IdentityReport {
    let sw = Sweeper::new(alg);
    let outcome = match kind {
        IdentityKind::LeftAlternative => sw.left_alternative(false),
        IdentityKind::RightAlternative => sw.right_alternative(false),
        IdentityKind::Alternative => first_failure([sw.left_alternative(false), sw.right_alternative(false)]),
        IdentityKind::Flexible => sw.flexible(),
        IdentityKind::Associative => sw.associative(),
        IdentityKind::SuperLeftAlternative => sw.left_alternative(true),
        IdentityKind::SuperRightAlternative => sw.right_alternative(true),
        IdentityKind::SuperAlternative => first_failure([sw.left_alternative(true), sw.right_alternative(true)]),
        IdentityKind::SuperCommutative => sw.super_commutative(),
        IdentityKind::JordanSuper => sw.jordan_super(),
        IdentityKind::CayleyBimodule => cayley_law(alg),
        IdentityKind::GammaConditions => {
            let report = crate::gamma::verify_gamma_conditions(alg);
            let mut out = IdentityReport::new(alg, kind, IdentityOutcome::Pass);
            if let Some(c) = report.first_failure() {
                out = IdentityReport::new(alg, kind, c.outcome.clone());
                out.detail = Some(format!("condition ({}): {}", c.condition, c.description));
            }
            return out;
        }
    };
    IdentityReport::new(alg, kind, outcome)
}
