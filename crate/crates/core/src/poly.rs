//! Sparse commutative and noncommutative polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{FieldSpec, Scalar};

/// Exponent vector aligned with a polynomial's variable list.
pub type Exponents = Vec<u32>;

/// Commutative multivariate polynomial over a declared variable universe.
///
/// Invariant: no stored zero coefficients and every exponent vector has
/// exactly `variables.len()` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    variables: Arc<Vec<String>>,
    terms: BTreeMap<Exponents, Scalar>,
}

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.checked_mul(b)
}

impl Polynomial {
    pub fn zero(field: FieldSpec, variables: Arc<Vec<String>>) -> Self {
        Polynomial {
            field,
            variables,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, variables: Arc<Vec<String>>, c: Scalar) -> Self {
        let mut p = Self::zero(field, variables);
        let exps = vec![0; p.variables.len()];
        p.add_term(exps, c);
        p
    }

    pub fn one(field: FieldSpec, variables: Arc<Vec<String>>) -> Self {
        Self::constant(field, variables, field.one())
    }

    /// The variable at position `index`.
    pub fn var(field: FieldSpec, variables: Arc<Vec<String>>, index: usize) -> Self {
        let mut exps = vec![0; variables.len()];
        exps[index] = 1;
        Self::monomial(field, variables, exps, field.one())
    }

    pub fn var_named(field: FieldSpec, variables: Arc<Vec<String>>, name: &str) -> Result<Self> {
        let index = variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Self::var(field, variables, index))
    }

    pub fn monomial(field: FieldSpec, variables: Arc<Vec<String>>, exps: Exponents, c: Scalar) -> Self {
        assert_eq!(exps.len(), variables.len());
        let mut p = Self::zero(field, variables);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(
        field: FieldSpec,
        variables: Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Exponents, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(field, variables);
        for (e, c) in terms {
            assert_eq!(e.len(), p.variables.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn variables(&self) -> &Arc<Vec<String>> {
        &self.variables
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, exps: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if !Arc::ptr_eq(&self.variables, &other.variables) && self.variables != other.variables {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.variables.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.variables.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.variables.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Ring homomorphism into another variable universe: variable `i` is
    /// replaced by `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        let target = images.first().ok_or(Error::VariableMismatch)?;
        if images.len() != self.variables.len() {
            return Err(Error::VariableMismatch);
        }
        let mut out = Polynomial::zero(self.field, target.variables.clone());
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(self.field, target.variables.clone(), c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.checked_mul(&img.pow(k))?;
                }
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Exponents, Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }
}

pub fn leading_term(p: &Polynomial, order: &MonomialOrder) -> Result<(Exponents, Scalar)> {
    p.leading_term(order)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("compatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(&-rhs).expect("compatible polynomials")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("compatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.field.from_i64(-1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.variables[i].clone()
                    } else {
                        format!("{}^{}", self.variables[i], x)
                    }
                })
                .collect();
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Weighted degree first, then lexicographic along a variable ranking.
///
/// With all weights equal to one this is deg-lex. A weight of zero lets a
/// variable ride along without affecting the degree comparison, which is what
/// the substitution `x_k -> t*y_k` needs to stay degree-preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    /// Variable indices from the largest to the smallest.
    ranking: Vec<usize>,
    weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn deg_lex(ranking: Vec<usize>) -> Self {
        let weights = vec![1; ranking.len()];
        Self::weighted(ranking, weights)
    }

    pub fn weighted(ranking: Vec<usize>, weights: Vec<u32>) -> Self {
        let mut seen = ranking.clone();
        seen.sort_unstable();
        assert!(
            seen.iter().enumerate().all(|(i, &v)| i == v) && weights.len() == ranking.len(),
            "ranking must be a permutation of the variable indices"
        );
        MonomialOrder { ranking, weights }
    }

    /// Ranking given by variable names, largest first.
    pub fn by_names(variables: &[String], ranking: &[&str], weights: &[(&str, u32)]) -> Result<Self> {
        let idx = |name: &str| {
            variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
        };
        let ranking = ranking.iter().map(|n| idx(n)).collect::<Result<Vec<_>>>()?;
        if ranking.len() != variables.len() {
            return Err(Error::VariableMismatch);
        }
        let mut w = vec![1; variables.len()];
        for (name, weight) in weights {
            w[idx(name)?] = *weight;
        }
        Ok(Self::weighted(ranking, w))
    }

    /// `x_n > ... > x_1 > y_1 > ... > y_n` on [`a_n_variables`].
    pub fn a_n_preset(n: usize) -> Self {
        let ranking = (0..n).rev().chain(n..2 * n).collect();
        Self::deg_lex(ranking)
    }

    /// `x_n > ... > x_m > y_1 > ... > y_n > t` on [`e_variables`], with `t`
    /// carrying weight zero.
    pub fn e_preset(n: usize, m: usize) -> Self {
        let xs = n + 1 - m;
        let t = xs;
        let ranking: Vec<usize> = (0..xs).rev().chain(t + 1..t + 1 + n).chain([t]).collect();
        let mut weights = vec![1; xs + 1 + n];
        weights[t] = 0;
        Self::weighted(ranking, weights)
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        let deg = |e: &[u32]| -> u64 { e.iter().zip(&self.weights).map(|(&x, &w)| x as u64 * w as u64).sum() };
        deg(a).cmp(&deg(b)).then_with(|| {
            for &v in &self.ranking {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

/// `x1..xn, y1..yn`.
pub fn a_n_variables(n: usize) -> Arc<Vec<String>> {
    Arc::new(
        (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .collect(),
    )
}

/// `x_m..x_n, t, y1..yn`.
pub fn e_variables(n: usize, m: usize) -> Arc<Vec<String>> {
    Arc::new(
        (m..=n)
            .map(|i| format!("x{i}"))
            .chain(["t".to_string()])
            .chain((1..=n).map(|i| format!("y{i}")))
            .collect(),
    )
}

/// Noncommutative polynomial: words over a generator alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPolynomial {
    field: FieldSpec,
    generators: Arc<Vec<String>>,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl NcPolynomial {
    pub fn zero(field: FieldSpec, generators: Arc<Vec<String>>) -> Self {
        NcPolynomial {
            field,
            generators,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(field: FieldSpec, generators: Arc<Vec<String>>, word: Vec<usize>, c: Scalar) -> Self {
        let mut p = Self::zero(field, generators);
        assert!(word.iter().all(|&g| g < p.generators.len()));
        p.add_term(word, c);
        p
    }

    pub fn constant(field: FieldSpec, generators: Arc<Vec<String>>, c: Scalar) -> Self {
        Self::word(field, generators, Vec::new(), c)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &Arc<Vec<String>> {
        &self.generators
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, word: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    fn compatible(&self, other: &NcPolynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.generators != other.generators {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &NcPolynomial) -> Result<NcPolynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &NcPolynomial) -> Result<NcPolynomial> {
        self.compatible(other)?;
        let mut out = NcPolynomial::zero(self.field, self.generators.clone());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> NcPolynomial {
        let mut out = NcPolynomial::zero(self.field, self.generators.clone());
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }
}

impl Add for &NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.checked_add(rhs).expect("compatible polynomials")
    }
}

impl Sub for &NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.checked_add(&rhs.scale(&rhs.field.from_i64(-1)))
            .expect("compatible polynomials")
    }
}

impl Mul for &NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.checked_mul(rhs).expect("compatible polynomials")
    }
}

/// Image under the commutative quotient; generators are matched to
/// `target_vars` by name.
pub fn abelianize(f: &NcPolynomial, target_vars: &Arc<Vec<String>>) -> Result<Polynomial> {
    let map = f
        .generators
        .iter()
        .map(|g| {
            target_vars
                .iter()
                .position(|v| v == g)
                .ok_or_else(|| Error::UnknownGenerator(g.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Polynomial::zero(f.field, target_vars.clone());
    for (w, c) in &f.terms {
        let mut e = vec![0; target_vars.len()];
        for &g in w {
            e[map[g]] += 1;
        }
        out.add_term(e, c.clone());
    }
    Ok(out)
}

/// Dimension of the span of `vectors`, by exact elimination over their
/// joint monomial support.
pub fn rank_of_span(vectors: &[Polynomial]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    for v in vectors {
        first.compatible(v)?;
    }
    let maps: Vec<_> = vectors.iter().map(|p| p.terms.clone()).collect();
    Ok(linalg::rank_of_sparse(first.field, &maps))
}

/// Rank of a family of polynomial tuples, e.g. elements of `A_n^2`.
pub fn rank_of_tuples(vectors: &[Vec<Polynomial>]) -> Result<usize> {
    let Some(first) = vectors.first().and_then(|v| v.first()) else {
        return Ok(0);
    };
    let field = first.field;
    let mut maps = Vec::with_capacity(vectors.len());
    for tuple in vectors {
        let mut m = BTreeMap::new();
        for (i, p) in tuple.iter().enumerate() {
            first.compatible(p)?;
            for (e, c) in &p.terms {
                m.insert((i, e.clone()), c.clone());
            }
        }
        maps.push(m);
    }
    Ok(linalg::rank_of_sparse(field, &maps))
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    field: FieldSpec,
    variables: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson {
            field: self.field,
            variables: self.variables.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exps: e.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolynomialJson::deserialize(d)?;
        let vars = Arc::new(raw.variables);
        let mut terms = Vec::new();
        for t in raw.terms {
            if t.exps.len() != vars.len() {
                return Err(D::Error::custom("exponent vector length differs from variable count"));
            }
            let c = raw.field.parse_scalar(&t.coeff).map_err(D::Error::custom)?;
            terms.push((t.exps, c));
        }
        Ok(Polynomial::from_terms(raw.field, vars, terms))
    }
}
