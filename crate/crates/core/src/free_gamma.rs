//! Free Gamma-algebras on even generators `t1..tm` and odd generators
//! `v1..vn`, in the normal form
//!
//! ```text
//! even: F<t1..tm>  +  F[t1..tm] (x) S_n'      odd: F[t1..tm] (x) sum_j B_{n,j} v_j
//! ```
//!
//! where `S_n'` is spanned by standard monomials of positive degree. Words
//! in the `t`'s act on the ideal part through their commutative image.
//! Weights: `t` and `a(i,j)` count 2, `v` counts 1.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, StructureAlgebra};
use crate::coordinatization::{envelope_b42, GammaEnvelope};
use crate::error::{Error, Result};
use crate::gamma::GammaAlgebra;
use crate::grassmann::{
    add_into, enumerate_basis, enumerate_basis_filtered, expand, reduce_odd_unchecked, straighten_unchecked,
    write_term, StandardMonomial,
};
use crate::poly::{a_n_variables, NcPolynomial, Polynomial};
use crate::scalar::{FieldSpec, Scalar};

/// A free generator, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Even(usize),
    Odd(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Even(k) => write!(f, "t{k}"),
            Generator::Odd(k) => write!(f, "v{k}"),
        }
    }
}

/// The free Gamma-algebra with `m` even and `n` odd generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGamma {
    pub m: usize,
    pub n: usize,
    pub field: FieldSpec,
}

/// A basis monomial of the normal form. Commutative `t`-parts are exponent
/// vectors of length `m`; words are 0-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FgMonomial {
    Word(Vec<usize>),
    Even(Vec<u32>, StandardMonomial),
    Odd(Vec<u32>, StandardMonomial, usize),
}

fn t_weight(e: &[u32]) -> usize {
    e.iter().map(|&x| 2 * x as usize).sum()
}

fn format_tbar(e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(k, &x)| {
            if x == 1 {
                format!("t{}", k + 1)
            } else {
                format!("t{}^{x}", k + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl FgMonomial {
    pub fn weight(&self) -> usize {
        match self {
            FgMonomial::Word(w) => 2 * w.len(),
            FgMonomial::Even(e, u) => t_weight(e) + 2 * u.degree(),
            FgMonomial::Odd(e, u, _) => t_weight(e) + 2 * u.degree() + 1,
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, FgMonomial::Odd(..))
    }

    pub fn label(&self) -> String {
        match self {
            FgMonomial::Word(w) if w.is_empty() => "1".into(),
            FgMonomial::Word(w) => w.iter().map(|k| format!("t{}", k + 1)).collect(),
            FgMonomial::Even(e, u) => {
                let t = format_tbar(e);
                if t.is_empty() {
                    u.to_string()
                } else {
                    format!("{t}*{u}")
                }
            }
            FgMonomial::Odd(e, u, j) => {
                let t = format_tbar(e);
                let body = if u.degree() == 0 {
                    format!("v{j}")
                } else {
                    format!("{u}v{j}")
                };
                if t.is_empty() {
                    body
                } else {
                    format!("{t}*{body}")
                }
            }
        }
    }
}

impl fmt::Display for FgMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGammaElement {
    sig: FreeGamma,
    nc_part: NcPolynomial,
    even_ideal_part: BTreeMap<(Vec<u32>, StandardMonomial), Scalar>,
    odd_part: BTreeMap<(Vec<u32>, StandardMonomial, usize), Scalar>,
}

fn t_names(m: usize) -> Arc<Vec<String>> {
    Arc::new((1..=m).map(|k| format!("t{k}")).collect())
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The commutative image of a word.
fn abelian(word: &[usize], m: usize) -> Vec<u32> {
    let mut e = vec![0; m];
    for &g in word {
        e[g] += 1;
    }
    e
}

impl FreeGamma {
    pub fn new(m: usize, n: usize, field: FieldSpec) -> Self {
        FreeGamma { m, n, field }
    }

    pub fn zero(&self) -> FreeGammaElement {
        FreeGammaElement {
            sig: *self,
            nc_part: NcPolynomial::zero(self.field, t_names(self.m)),
            even_ideal_part: BTreeMap::new(),
            odd_part: BTreeMap::new(),
        }
    }

    pub fn scalar(&self, c: Scalar) -> FreeGammaElement {
        let mut out = self.zero();
        out.nc_part.add_term(Vec::new(), c);
        out
    }

    pub fn one(&self) -> FreeGammaElement {
        self.scalar(self.field.one())
    }

    pub fn generator(&self, g: Generator) -> Result<FreeGammaElement> {
        let mut out = self.zero();
        match g {
            Generator::Even(k) if (1..=self.m).contains(&k) => out.nc_part.add_term(vec![k - 1], self.field.one()),
            Generator::Odd(k) if (1..=self.n).contains(&k) => {
                out.odd_part
                    .insert((vec![0; self.m], StandardMonomial::one(), k), self.field.one());
            }
            _ => return Err(Error::UnknownGenerator(g.to_string())),
        }
        Ok(out)
    }

    pub fn monomial(&self, mono: &FgMonomial, c: Scalar) -> FreeGammaElement {
        let mut out = self.zero();
        out.add_monomial(mono.clone(), c);
        out
    }

    /// Normal-form basis of the given weight: words, then the even ideal
    /// part, then the odd part, each in a fixed order.
    pub fn basis(&self, weight: usize) -> Vec<FgMonomial> {
        let mut out = Vec::new();
        if weight % 2 == 0 {
            let len = weight / 2;
            if self.m > 0 || len == 0 {
                out.extend(words(self.m, len).into_iter().map(FgMonomial::Word));
            }
            for r in 1..=len {
                for e in exponent_vectors(self.m, len - r) {
                    for u in enumerate_basis(self.n, r) {
                        out.push(FgMonomial::Even(e.clone(), u));
                    }
                }
            }
        } else {
            let half = (weight - 1) / 2;
            for r in 0..=half {
                for e in exponent_vectors(self.m, half - r) {
                    for j in 1..=self.n {
                        for u in enumerate_basis_filtered(self.n, j, r) {
                            out.push(FgMonomial::Odd(e.clone(), u, j));
                        }
                    }
                }
            }
        }
        out
    }
}

fn words(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..m).map(move |g| {
                    let mut w = w.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
    }
    out
}

/// Exponent vectors of length `m` and total degree `d`, lexicographically
/// descending.
fn exponent_vectors(m: usize, d: usize) -> Vec<Vec<u32>> {
    if m == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if m == 1 {
        return vec![vec![d as u32]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(m - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn tbar_count(m: usize, d: usize) -> usize {
    if m == 0 {
        usize::from(d == 0)
    } else {
        binomial(m + d - 1, d)
    }
}

/// Dimension of the weight component, counted from the normal form.
pub fn fg_dimensions(m: usize, n: usize, weight: usize) -> usize {
    if weight % 2 == 0 {
        let len = weight / 2;
        let words = if len == 0 { 1 } else { m.pow(len as u32) };
        let ideal: usize = (1..=len)
            .map(|r| tbar_count(m, len - r) * enumerate_basis(n, r).len())
            .sum();
        words + ideal
    } else {
        let half = (weight - 1) / 2;
        (0..=half)
            .map(|r| {
                let odd: usize = (1..=n).map(|j| enumerate_basis_filtered(n, j, r).len()).sum();
                tbar_count(m, half - r) * odd
            })
            .sum()
    }
}

impl FreeGammaElement {
    pub fn signature(&self) -> FreeGamma {
        self.sig
    }

    pub fn nc_part(&self) -> &NcPolynomial {
        &self.nc_part
    }

    pub fn even_ideal_part(&self) -> &BTreeMap<(Vec<u32>, StandardMonomial), Scalar> {
        &self.even_ideal_part
    }

    pub fn odd_part(&self) -> &BTreeMap<(Vec<u32>, StandardMonomial, usize), Scalar> {
        &self.odd_part
    }

    pub fn is_zero(&self) -> bool {
        self.nc_part.is_zero() && self.even_ideal_part.is_empty() && self.odd_part.is_empty()
    }

    /// All terms, words first.
    /// All terms: words, then the even ideal part, then the odd part by
    /// generator index. Standard monomials run in descending order within
    /// each block, matching the straightening output.
    pub fn terms(&self) -> Vec<(FgMonomial, Scalar)> {
        let mut out: Vec<(FgMonomial, Scalar)> = self
            .nc_part
            .terms()
            .iter()
            .map(|(w, c)| (FgMonomial::Word(w.clone()), c.clone()))
            .collect();
        let mut even: Vec<_> = self.even_ideal_part.iter().collect();
        even.sort_by(|((e1, u1), _), ((e2, u2), _)| e2.cmp(e1).then_with(|| u2.cmp(u1)));
        out.extend(
            even.into_iter()
                .map(|((e, u), c)| (FgMonomial::Even(e.clone(), u.clone()), c.clone())),
        );
        let mut odd: Vec<_> = self.odd_part.iter().collect();
        odd.sort_by(|((e1, u1, j1), _), ((e2, u2, j2), _)| {
            e2.cmp(e1).then_with(|| j1.cmp(j2)).then_with(|| u2.cmp(u1))
        });
        out.extend(
            odd.into_iter()
                .map(|((e, u, j), c)| (FgMonomial::Odd(e.clone(), u.clone(), *j), c.clone())),
        );
        out
    }

    fn add_monomial(&mut self, mono: FgMonomial, c: Scalar) {
        match mono {
            FgMonomial::Word(w) => self.nc_part.add_term(w, c),
            FgMonomial::Even(e, u) => {
                debug_assert!(u.degree() >= 1);
                add_into(&mut self.even_ideal_part, (e, u), c);
            }
            FgMonomial::Odd(e, u, j) => {
                debug_assert!(u.in_filtered(j));
                add_into(&mut self.odd_part, (e, u, j), c);
            }
        }
    }

    pub fn add(&self, other: &FreeGammaElement) -> Result<FreeGammaElement> {
        same_signature(self, other)?;
        let mut out = self.clone();
        for (mono, c) in other.terms() {
            out.add_monomial(mono, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> FreeGammaElement {
        let mut out = self.sig.zero();
        for (mono, d) in self.terms() {
            out.add_monomial(mono, c * &d);
        }
        out
    }

    /// Weight-homogeneous components, keyed by weight.
    pub fn components(&self) -> BTreeMap<usize, FreeGammaElement> {
        let mut out: BTreeMap<usize, FreeGammaElement> = BTreeMap::new();
        for (mono, c) in self.terms() {
            out.entry(mono.weight())
                .or_insert_with(|| self.sig.zero())
                .add_monomial(mono, c);
        }
        out
    }
}

fn same_signature(a: &FreeGammaElement, b: &FreeGammaElement) -> Result<()> {
    if a.sig.field != b.sig.field {
        return Err(Error::FieldMismatch(a.sig.field, b.sig.field));
    }
    if (a.sig.m, a.sig.n) != (b.sig.m, b.sig.n) {
        return Err(Error::SignatureMismatch(a.sig.m, a.sig.n, b.sig.m, b.sig.n));
    }
    Ok(())
}

/// Product of two ideal-part monomials `(e, u[, i])` and `(f, w[, j])`.
fn ideal_product(
    out: &mut FreeGammaElement,
    (e, u, i): (&[u32], &StandardMonomial, Option<usize>),
    (f, w, j): (&[u32], &StandardMonomial, Option<usize>),
    c: &Scalar,
) {
    let sig = out.sig;
    let t = add_exps(e, f);
    let mut pairs = u.pairs().to_vec();
    pairs.extend_from_slice(w.pairs());
    match (i, j) {
        (None, None) => {
            for (s, d) in straighten_unchecked(&pairs, sig.n, sig.field).terms() {
                out.add_monomial(FgMonomial::Even(t.clone(), s.clone()), c * d);
            }
        }
        (Some(k), None) | (None, Some(k)) => {
            let s = straighten_unchecked(&pairs, sig.n, sig.field);
            for ((r, g), d) in reduce_odd_unchecked(&s, k).terms() {
                out.add_monomial(FgMonomial::Odd(t.clone(), r.clone(), *g), c * d);
            }
        }
        (Some(a), Some(b)) => {
            // (u v_a)(w v_b) = u w a(a,b)
            pairs.push((a, b));
            for (s, d) in straighten_unchecked(&pairs, sig.n, sig.field).terms() {
                out.add_monomial(FgMonomial::Even(t.clone(), s.clone()), c * d);
            }
        }
    }
}

pub fn fg_multiply(a: &FreeGammaElement, b: &FreeGammaElement) -> Result<FreeGammaElement> {
    same_signature(a, b)?;
    let m = a.sig.m;
    let mut out = a.sig.zero();
    out.nc_part = a.nc_part.checked_mul(&b.nc_part)?;
    let ideal = |x: &FreeGammaElement| -> Vec<(Vec<u32>, StandardMonomial, Option<usize>, Scalar)> {
        x.even_ideal_part
            .iter()
            .map(|((e, u), c)| (e.clone(), u.clone(), None, c.clone()))
            .chain(
                x.odd_part
                    .iter()
                    .map(|((e, u, j), c)| (e.clone(), u.clone(), Some(*j), c.clone())),
            )
            .collect()
    };
    let (ia, ib) = (ideal(a), ideal(b));
    // Words act on the ideal part through their commutative image, on
    // either side.
    for (words, ideal_terms) in [(&a.nc_part, &ib), (&b.nc_part, &ia)] {
        for (w, c) in words.terms() {
            let e = abelian(w, m);
            for (f, u, j, d) in ideal_terms {
                let t = add_exps(&e, f);
                let mono = match j {
                    None => FgMonomial::Even(t, u.clone()),
                    Some(j) => FgMonomial::Odd(t, u.clone(), *j),
                };
                out.add_monomial(mono, c * d);
            }
        }
    }
    for (e, u, i, c) in &ia {
        for (f, w, j, d) in &ib {
            ideal_product(&mut out, (e, u, *i), (f, w, *j), &(c * d));
        }
    }
    Ok(out)
}

impl fmt::Display for FreeGammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (mono, c) in self.terms() {
            write_term(&mut s, &c, &mono.label());
        }
        f.write_str(if s.is_empty() { "0" } else { &s })
    }
}

/// JSON form of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeGammaJson {
    pub field: FieldSpec,
    pub m: usize,
    pub n: usize,
    pub terms: Vec<FgTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FgTermJson {
    /// 1-based generator indices.
    Word { word: Vec<usize>, coeff: String },
    Even {
        t: Vec<u32>,
        pairs: Vec<[usize; 2]>,
        coeff: String,
    },
    Odd {
        t: Vec<u32>,
        pairs: Vec<[usize; 2]>,
        generator: usize,
        coeff: String,
    },
}

impl FreeGammaElement {
    pub fn to_json(&self) -> FreeGammaJson {
        let pairs = |u: &StandardMonomial| u.pairs().iter().map(|&(i, j)| [i, j]).collect();
        FreeGammaJson {
            field: self.sig.field,
            m: self.sig.m,
            n: self.sig.n,
            terms: self
                .terms()
                .into_iter()
                .map(|(mono, c)| {
                    let coeff = c.to_string();
                    match mono {
                        FgMonomial::Word(w) => FgTermJson::Word {
                            word: w.iter().map(|g| g + 1).collect(),
                            coeff,
                        },
                        FgMonomial::Even(t, u) => FgTermJson::Even {
                            t,
                            pairs: pairs(&u),
                            coeff,
                        },
                        FgMonomial::Odd(t, u, generator) => FgTermJson::Odd {
                            t,
                            pairs: pairs(&u),
                            generator,
                            coeff,
                        },
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(j: &FreeGammaJson) -> Result<Self> {
        let sig = FreeGamma::new(j.m, j.n, j.field);
        let mut out = sig.zero();
        let mono = |t: &[u32], p: &[[usize; 2]]| -> Result<(Vec<u32>, StandardMonomial)> {
            if t.len() != sig.m {
                return Err(Error::DimensionMismatch {
                    expected: sig.m,
                    got: t.len(),
                });
            }
            let pairs: Vec<(usize, usize)> = p.iter().map(|p| (p[0], p[1])).collect();
            if pairs.iter().any(|&(_, b)| b > sig.n) {
                return Err(Error::IndexOutOfRange(format!("pair index above n = {}", sig.n)));
            }
            Ok((t.to_vec(), StandardMonomial::new(pairs)?))
        };
        for term in &j.terms {
            match term {
                FgTermJson::Word { word, coeff } => {
                    if word.iter().any(|&g| g == 0 || g > sig.m) {
                        return Err(Error::IndexOutOfRange(format!("word {word:?} with m = {}", sig.m)));
                    }
                    out.add_monomial(
                        FgMonomial::Word(word.iter().map(|g| g - 1).collect()),
                        sig.field.parse_scalar(coeff)?,
                    );
                }
                FgTermJson::Even { t, pairs, coeff } => {
                    let (t, u) = mono(t, pairs)?;
                    if u.degree() == 0 {
                        return Err(Error::InvalidParams("even ideal terms need positive degree".into()));
                    }
                    out.add_monomial(FgMonomial::Even(t, u), sig.field.parse_scalar(coeff)?);
                }
                FgTermJson::Odd {
                    t,
                    pairs,
                    generator,
                    coeff,
                } => {
                    let (t, u) = mono(t, pairs)?;
                    if *generator == 0 || *generator > sig.n || !u.in_filtered(*generator) {
                        return Err(Error::InvalidParams(format!(
                            "{u}v{generator} is not a normal-form term"
                        )));
                    }
                    out.add_monomial(FgMonomial::Odd(t, u, *generator), sig.field.parse_scalar(coeff)?);
                }
            }
        }
        Ok(out)
    }
}

/// Binary product trees over the generators with scalar combinations.
/// Products are left-associated when written without parentheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FgExpr {
    Gen(Generator),
    /// A literal such as `3` or `-1/2`, read in the target field.
    Scalar(String),
    Add(Box<FgExpr>, Box<FgExpr>),
    Sub(Box<FgExpr>, Box<FgExpr>),
    Neg(Box<FgExpr>),
    Mul(Box<FgExpr>, Box<FgExpr>),
}

impl FgExpr {
    pub fn gen(g: Generator) -> Self {
        FgExpr::Gen(g)
    }

    pub fn mul(a: FgExpr, b: FgExpr) -> Self {
        FgExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn add(a: FgExpr, b: FgExpr) -> Self {
        FgExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: FgExpr, b: FgExpr) -> Self {
        FgExpr::Sub(Box::new(a), Box::new(b))
    }

    /// Grammar: `t1..tm`, `v1..vn`, `*` (or juxtaposition), `+`, `-`,
    /// integer or fraction literals, parentheses.
    pub fn parse(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("unexpected `{}` in `{s}`", p.tokens[p.pos])));
        }
        Ok(e)
    }

    /// `(m, n)`: the largest even and odd generator indices used.
    pub fn signature(&self) -> (usize, usize) {
        match self {
            FgExpr::Gen(Generator::Even(k)) => (*k, 0),
            FgExpr::Gen(Generator::Odd(k)) => (0, *k),
            FgExpr::Scalar(_) => (0, 0),
            FgExpr::Neg(a) => a.signature(),
            FgExpr::Add(a, b) | FgExpr::Sub(a, b) | FgExpr::Mul(a, b) => {
                let (x, y) = (a.signature(), b.signature());
                (x.0.max(y.0), x.1.max(y.1))
            }
        }
    }

    pub fn evaluate<T: GammaTarget>(&self, target: &T) -> Result<T::Elem> {
        Ok(match self {
            FgExpr::Gen(g) => target.generator(*g)?,
            FgExpr::Scalar(s) => target.scalar(&target.field().parse_scalar(s)?),
            FgExpr::Add(a, b) => target.add(&a.evaluate(target)?, &b.evaluate(target)?),
            FgExpr::Sub(a, b) => {
                let minus = -target.field().one();
                target.add(&a.evaluate(target)?, &target.scale(&minus, &b.evaluate(target)?))
            }
            FgExpr::Neg(a) => target.scale(&-target.field().one(), &a.evaluate(target)?),
            FgExpr::Mul(a, b) => target.mul(&a.evaluate(target)?, &b.evaluate(target)?),
        })
    }
}

impl fmt::Display for FgExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FgExpr::Gen(g) => write!(f, "{g}"),
            FgExpr::Scalar(s) => write!(f, "{s}"),
            FgExpr::Add(a, b) => write!(f, "({a} + {b})"),
            FgExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            FgExpr::Neg(a) => write!(f, "-{a}"),
            FgExpr::Mul(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Gen(Generator),
    Num(String),
    Sym(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Gen(g) => write!(f, "{g}"),
            Token::Num(s) => write!(f, "{s}"),
            Token::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' | '-' | '*' | '(' | ')' => {
                out.push(Token::Sym(c));
                i += 1;
            }
            't' | 'v' => {
                i += 1;
                let d = digits(&mut i);
                let k: usize = d
                    .parse()
                    .ok()
                    .filter(|&k| k > 0)
                    .ok_or_else(|| Error::Parse(format!("expected a positive index after `{c}` in `{s}`")))?;
                out.push(Token::Gen(if c == 't' {
                    Generator::Even(k)
                } else {
                    Generator::Odd(k)
                }));
            }
            _ if c.is_ascii_digit() => {
                let mut num = digits(&mut i);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let den = digits(&mut i);
                    if den.is_empty() {
                        return Err(Error::Parse(format!("bad fraction in `{s}`")));
                    }
                    num = format!("{num}/{den}");
                }
                out.push(Token::Num(num));
            }
            _ => return Err(Error::UnknownGenerator(c.to_string())),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<FgExpr> {
        let mut acc = self.product()?;
        while let Some(Token::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if c == '+' {
                FgExpr::add(acc, rhs)
            } else {
                FgExpr::sub(acc, rhs)
            };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<FgExpr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Sym('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = FgExpr::mul(acc, rhs);
                }
                Some(Token::Gen(_) | Token::Num(_) | Token::Sym('(')) => {
                    let rhs = self.unary()?;
                    acc = FgExpr::mul(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FgExpr> {
        if let Some(Token::Sym('-')) = self.peek() {
            self.pos += 1;
            return Ok(FgExpr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FgExpr> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Gen(g) => Ok(FgExpr::Gen(g)),
            Token::Num(s) => Ok(FgExpr::Scalar(s)),
            Token::Sym('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Token::Sym(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            t => Err(Error::Parse(format!("unexpected `{t}`"))),
        }
    }
}

/// Anything a product tree can be evaluated in.
pub trait GammaTarget {
    type Elem: Clone;
    fn field(&self) -> FieldSpec;
    fn generator(&self, g: Generator) -> Result<Self::Elem>;
    fn scalar(&self, c: &Scalar) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl GammaTarget for FreeGamma {
    type Elem = FreeGammaElement;
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn generator(&self, g: Generator) -> Result<FreeGammaElement> {
        FreeGamma::generator(self, g)
    }
    fn scalar(&self, c: &Scalar) -> FreeGammaElement {
        FreeGamma::scalar(self, c.clone())
    }
    fn add(&self, a: &FreeGammaElement, b: &FreeGammaElement) -> FreeGammaElement {
        a.add(b).expect("same signature")
    }
    fn scale(&self, c: &Scalar, a: &FreeGammaElement) -> FreeGammaElement {
        a.scale(c)
    }
    fn mul(&self, a: &FreeGammaElement, b: &FreeGammaElement) -> FreeGammaElement {
        fg_multiply(a, b).expect("same signature")
    }
}

pub fn fg_normal_form(expr: &FgExpr, sig: FreeGamma) -> Result<FreeGammaElement> {
    expr.evaluate(&sig)
}

/// Images of the generators in a target Gamma-algebra, as coordinate
/// vectors of its carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    pub even: Vec<Vec<Scalar>>,
    pub odd: Vec<Vec<Scalar>>,
}

impl GeneratorImages {
    /// Builds images from `v1=x,t1=e` style assignments; unassigned
    /// generators go to zero.
    pub fn parse(target: &GammaAlgebra, m: usize, n: usize, s: &str) -> Result<Self> {
        let alg = target.carrier();
        let mut out = GeneratorImages {
            even: vec![alg.zero_vector(); m],
            odd: vec![alg.zero_vector(); n],
        };
        for part in split_assignments(s)
            .into_iter()
            .map(str::trim)
            .filter(|p| !p.is_empty())
        {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `generator=element`, got `{part}`")))?;
            let toks = tokenize(name.trim())?;
            let [Token::Gen(g)] = toks.as_slice() else {
                return Err(Error::Parse(format!("`{name}` is not a generator")));
            };
            let v = alg.parse_element(value.trim())?;
            let slot = match *g {
                Generator::Even(k) if k <= m => &mut out.even[k - 1],
                Generator::Odd(k) if k <= n => &mut out.odd[k - 1],
                _ => return Err(Error::UnknownGenerator(g.to_string())),
            };
            *slot = v;
        }
        out.validate(target)?;
        Ok(out)
    }

    pub fn validate(&self, target: &GammaAlgebra) -> Result<()> {
        let alg = target.carrier();
        for (parity, images) in [(0u8, &self.even), (1, &self.odd)] {
            for (k, v) in images.iter().enumerate() {
                if v.len() != alg.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: alg.dim(),
                        got: v.len(),
                    });
                }
                let g = if parity == 0 {
                    Generator::Even(k + 1)
                } else {
                    Generator::Odd(k + 1)
                };
                if v.iter()
                    .enumerate()
                    .any(|(i, c)| !c.is_zero() && alg.parity(i) != parity)
                {
                    return Err(Error::ParityViolation(format!("{g} -> {}", alg.format_vector(v))));
                }
            }
        }
        Ok(())
    }
}

/// Splits at commas outside parentheses, so labels like `(s,0)` survive.
pub fn split_assignments(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Direct evaluation of product trees inside a target.
pub struct TargetEvaluation<'a> {
    target: &'a GammaAlgebra,
    images: &'a GeneratorImages,
}

impl<'a> TargetEvaluation<'a> {
    pub fn new(target: &'a GammaAlgebra, images: &'a GeneratorImages) -> Result<Self> {
        images.validate(target)?;
        Ok(TargetEvaluation { target, images })
    }
}

impl GammaTarget for TargetEvaluation<'_> {
    type Elem = Vec<Scalar>;
    fn field(&self) -> FieldSpec {
        self.target.carrier().field()
    }
    fn generator(&self, g: Generator) -> Result<Vec<Scalar>> {
        let v = match g {
            Generator::Even(k) => self.images.even.get(k.wrapping_sub(1)),
            Generator::Odd(k) => self.images.odd.get(k.wrapping_sub(1)),
        };
        v.cloned().ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }
    fn scalar(&self, c: &Scalar) -> Vec<Scalar> {
        crate::algebra::scale_vec(c, self.target.unit())
    }
    fn add(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        crate::algebra::add_vec(a, b)
    }
    fn scale(&self, c: &Scalar, a: &Vec<Scalar>) -> Vec<Scalar> {
        crate::algebra::scale_vec(c, a)
    }
    fn mul(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        self.target.carrier().mul_vec(a, b)
    }
}

/// The value of the homomorphism extending the generator assignment.
pub fn fg_evaluate(a: &FreeGammaElement, target: &GammaAlgebra, images: &GeneratorImages) -> Result<AlgebraElement> {
    images.validate(target)?;
    let sig = a.sig;
    if images.even.len() < sig.m || images.odd.len() < sig.n {
        return Err(Error::InvalidParams(format!(
            "need images for {} even and {} odd generators",
            sig.m, sig.n
        )));
    }
    let alg = target.carrier();
    let ev = TargetEvaluation { target, images };
    let unit = target.unit().to_vec();
    let t_part = |e: &[u32]| {
        let mut acc = unit.clone();
        for (k, &x) in e.iter().enumerate() {
            for _ in 0..x {
                acc = alg.mul_vec(&acc, &images.even[k]);
            }
        }
        acc
    };
    let a_part = |u: &StandardMonomial| {
        let mut acc = unit.clone();
        for &(i, j) in u.pairs() {
            acc = alg.mul_vec(&acc, &alg.mul_vec(&images.odd[i - 1], &images.odd[j - 1]));
        }
        acc
    };
    let mut total = alg.zero_vector();
    for (mono, c) in a.terms() {
        let v = match mono {
            FgMonomial::Word(w) => w
                .iter()
                .fold(unit.clone(), |acc, &g| alg.mul_vec(&acc, &images.even[g])),
            FgMonomial::Even(e, u) => alg.mul_vec(&t_part(&e), &a_part(&u)),
            FgMonomial::Odd(e, u, j) => alg.mul_vec(&t_part(&e), &alg.mul_vec(&a_part(&u), &images.odd[j - 1])),
        };
        total = ev.add(&total, &ev.scale(&c, &v));
    }
    AlgebraElement::new(alg.clone(), total)
}

/// `Gamma(A_n) = A_n + A_n^2` over `A_n = F[x1..xn, y1..yn]`.
#[derive(Clone, Debug)]
pub struct PolyGamma {
    n: usize,
    field: FieldSpec,
    vars: Arc<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyGammaElement {
    pub even: Polynomial,
    pub x: Polynomial,
    pub y: Polynomial,
}

impl PolyGammaElement {
    /// The three components as one tuple, for rank computations.
    pub fn tuple(&self) -> Vec<Polynomial> {
        vec![self.even.clone(), self.x.clone(), self.y.clone()]
    }
}

impl PolyGamma {
    pub fn new(n: usize, field: FieldSpec) -> Self {
        PolyGamma {
            n,
            field,
            vars: a_n_variables(n),
        }
    }

    fn zero_poly(&self) -> Polynomial {
        Polynomial::zero(self.field, self.vars.clone())
    }
}

impl GammaTarget for PolyGamma {
    type Elem = PolyGammaElement;
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn generator(&self, g: Generator) -> Result<PolyGammaElement> {
        match g {
            Generator::Even(_) => Err(Error::EvenGeneratorsPresent),
            Generator::Odd(k) if (1..=self.n).contains(&k) => Ok(PolyGammaElement {
                even: self.zero_poly(),
                x: Polynomial::var(self.field, self.vars.clone(), k - 1),
                y: Polynomial::var(self.field, self.vars.clone(), self.n + k - 1),
            }),
            Generator::Odd(_) => Err(Error::UnknownGenerator(g.to_string())),
        }
    }
    fn scalar(&self, c: &Scalar) -> PolyGammaElement {
        PolyGammaElement {
            even: Polynomial::constant(self.field, self.vars.clone(), c.clone()),
            x: self.zero_poly(),
            y: self.zero_poly(),
        }
    }
    fn add(&self, a: &PolyGammaElement, b: &PolyGammaElement) -> PolyGammaElement {
        PolyGammaElement {
            even: &a.even + &b.even,
            x: &a.x + &b.x,
            y: &a.y + &b.y,
        }
    }
    fn scale(&self, c: &Scalar, a: &PolyGammaElement) -> PolyGammaElement {
        PolyGammaElement {
            even: a.even.scale(c),
            x: a.x.scale(c),
            y: a.y.scale(c),
        }
    }
    /// `(a, (b1, b2)) (c, (d1, d2)) = (ac + b1 d2 - b2 d1, (a d1 + c b1, a d2 + c b2))`.
    fn mul(&self, a: &PolyGammaElement, b: &PolyGammaElement) -> PolyGammaElement {
        PolyGammaElement {
            even: &(&(&a.even * &b.even) + &(&a.x * &b.y)) - &(&a.y * &b.x),
            x: &(&a.even * &b.x) + &(&b.even * &a.x),
            y: &(&a.even * &b.y) + &(&b.even * &a.y),
        }
    }
}

/// Image of a normal form with no even generators under
/// `v_i -> (x_i, y_i)` in `Gamma(A_n)`.
pub fn embedding_oracle(a: &FreeGammaElement) -> Result<PolyGammaElement> {
    let sig = a.sig;
    if sig.m > 0 {
        return Err(Error::EvenGeneratorsPresent);
    }
    let pg = PolyGamma::new(sig.n, sig.field);
    let mut acc = pg.scalar(&sig.field.zero());
    for (mono, c) in a.terms() {
        let term = match mono {
            FgMonomial::Word(_) => pg.scalar(&sig.field.one()),
            FgMonomial::Even(_, u) => PolyGammaElement {
                even: expand(u.pairs(), sig.n, sig.field)?,
                x: pg.zero_poly(),
                y: pg.zero_poly(),
            },
            FgMonomial::Odd(_, u, j) => {
                let g = pg.generator(Generator::Odd(j))?;
                let e = expand(u.pairs(), sig.n, sig.field)?;
                PolyGammaElement {
                    even: pg.zero_poly(),
                    x: &e * &g.x,
                    y: &e * &g.y,
                }
            }
        };
        acc = pg.add(&acc, &pg.scale(&c, &term));
    }
    Ok(acc)
}

/// The free Gamma-algebra modulo everything of weight above `cap`, as a
/// structure-constant algebra on the normal-form basis (ordered by weight).
pub fn truncated_free_gamma(sig: FreeGamma, cap: usize) -> Result<(GammaAlgebra, Vec<FgMonomial>)> {
    let basis: Vec<FgMonomial> = (0..=cap).flat_map(|w| sig.basis(w)).collect();
    let index: BTreeMap<&FgMonomial, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let labels = basis.iter().map(FgMonomial::label).collect();
    let parity = basis.iter().map(|b| u8::from(b.is_odd())).collect();
    let mut unit = vec![sig.field.zero(); basis.len()];
    unit[0] = sig.field.one();
    let field = sig.field;
    let alg = StructureAlgebra::from_fn(field, labels, parity, Some(unit), |i, j| {
        if basis[i].weight() + basis[j].weight() > cap {
            return Vec::new();
        }
        let a = sig.monomial(&basis[i], field.one());
        let b = sig.monomial(&basis[j], field.one());
        fg_multiply(&a, &b)
            .expect("same signature")
            .terms()
            .into_iter()
            .map(|(mono, c)| (index[&mono], c))
            .collect()
    })?;
    Ok((GammaAlgebra::new(alg)?, basis))
}

#[derive(Clone, Debug)]
pub struct FreeEnvelope {
    pub gamma: GammaAlgebra,
    pub basis: Vec<FgMonomial>,
    pub envelope: GammaEnvelope,
    /// `graded_dims[w] = 4 dim(even part of weight w) + 2 dim(odd part of weight w)`.
    pub graded_dims: Vec<usize>,
}

/// The B(4,2)-envelope of the truncated free Gamma-algebra.
pub fn corollary1_envelope(m: usize, n: usize, cap: usize, field: FieldSpec) -> Result<FreeEnvelope> {
    let sig = FreeGamma::new(m, n, field);
    let (gamma, basis) = truncated_free_gamma(sig, cap)?;
    let envelope = envelope_b42(&gamma)?;
    let graded_dims = (0..=cap)
        .map(|w| {
            let d = fg_dimensions(m, n, w);
            if w % 2 == 0 {
                4 * d
            } else {
                2 * d
            }
        })
        .collect();
    Ok(FreeEnvelope {
        gamma,
        basis,
        envelope,
        graded_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn nf(s: &str, m: usize, n: usize) -> FreeGammaElement {
        fg_normal_form(&FgExpr::parse(s).unwrap(), FreeGamma::new(m, n, Q)).unwrap()
    }

    #[test]
    fn words_do_not_commute() {
        let e = nf("t1*t2 - t2*t1", 2, 1);
        assert_eq!(e.to_string(), "t1t2 - t2t1");
        assert!(nf("(t1*t2 - t2*t1)*v1", 2, 1).is_zero());
    }

    #[test]
    fn odd_products() {
        assert_eq!(nf("v1*v2", 0, 2).to_string(), "a(1,2)");
        assert_eq!(nf("v2*v1", 0, 2).to_string(), "-a(1,2)");
        assert!(nf("v1*v1", 0, 1).is_zero());
        assert_eq!(nf("(v1*v2)*v3", 0, 3).to_string(), "-a(2,3)v1 + a(1,3)v2");
        assert!(nf("t1*(v1*v2) - (v1*v2)*t1", 1, 2).is_zero());
        assert_eq!(nf("t1*(v1*v2)", 1, 2).to_string(), "t1*a(1,2)");
    }

    #[test]
    fn char_two_squares_vanish() {
        let sig = FreeGamma::new(0, 2, FieldSpec::Prime(2));
        assert!(fg_normal_form(&FgExpr::parse("v1 v1").unwrap(), sig).unwrap().is_zero());
    }

    #[test]
    fn parser() {
        assert_eq!(FgExpr::parse("v1v2v3").unwrap(), FgExpr::parse("(v1*v2)*v3").unwrap());
        assert_eq!(FgExpr::parse("2 t1 - 1/2").unwrap().signature(), (1, 0));
        assert!(matches!(FgExpr::parse("v1 + w2"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(FgExpr::parse("(v1"), Err(Error::Parse(_))));
        assert!(matches!(
            fg_normal_form(&FgExpr::parse("v3").unwrap(), FreeGamma::new(0, 2, Q)),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn dimensions() {
        assert_eq!(fg_dimensions(0, 3, 3), 8);
        assert_eq!(fg_dimensions(0, 4, 4), 20);
        assert_eq!(fg_dimensions(0, 4, 0), 1);
        for k in 0..5 {
            assert_eq!(fg_dimensions(1, 0, 2 * k), 1);
        }
        for (m, n) in [(0, 3), (1, 2), (2, 2), (2, 0)] {
            for w in 0..6 {
                let sig = FreeGamma::new(m, n, Q);
                assert_eq!(sig.basis(w).len(), fg_dimensions(m, n, w), "{m} {n} {w}");
            }
        }
    }

    #[test]
    fn oracle_images() {
        let v1 = nf("v1", 0, 2);
        let img = embedding_oracle(&v1).unwrap();
        assert!(img.even.is_zero());
        assert_eq!(
            (img.x.to_string(), img.y.to_string()),
            ("x1".to_string(), "y1".to_string())
        );
        let a12 = embedding_oracle(&nf("v1 v2", 0, 2)).unwrap();
        assert_eq!(a12.even, expand(&[(1, 2)], 2, Q).unwrap());
        assert!(a12.x.is_zero() && a12.y.is_zero());
        assert_eq!(embedding_oracle(&nf("t1", 1, 0)), Err(Error::EvenGeneratorsPresent));
    }

    #[test]
    fn json_round_trip() {
        let e = nf("3 t1 t2 + t2 (v1 v2) + (t1 v1 v2) v3 - 1/2", 2, 3);
        let j = serde_json::to_string(&e.to_json()).unwrap();
        let back: FreeGammaJson = serde_json::from_str(&j).unwrap();
        assert_eq!(FreeGammaElement::from_json(&back).unwrap(), e);
    }

    #[test]
    fn small_envelopes() {
        let c = corollary1_envelope(0, 1, 2, Q).unwrap();
        assert_eq!(c.envelope.algebra.dim(), 6);
        assert_eq!(c.graded_dims, vec![4, 2, 0]);
        let c = corollary1_envelope(0, 2, 2, Q).unwrap();
        assert_eq!(c.graded_dims, vec![4, 4, 4]);
        assert_eq!(c.envelope.algebra.dim(), 12);
        let c = corollary1_envelope(1, 0, 2, Q).unwrap();
        assert_eq!(c.graded_dims, vec![4, 0, 4]);
    }
}
