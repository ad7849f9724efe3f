//! Plucker coordinates `a(i,j) = x_i y_j - x_j y_i`, straightening to
//! standard monomials, and the odd module spanned by `a`-monomials times the
//! vectors `v_k = (x_k, y_k)`.
//!
//! Indices are 1-based throughout, as in the usual notation. The embedding
//! into `F[x_1..x_n, y_1..y_n]` (see [`expand`]) is the ground truth; the
//! rewriting here is certified against it by the test suite.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{a_n_variables, e_variables, rank_of_span, rank_of_tuples, Polynomial};
use crate::scalar::{FieldSpec, Scalar};

pub type Pair = (usize, usize);

/// A product of Plucker coordinates with both index rows weakly increasing
/// and `i_s < j_s`. The empty monomial is `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StandardMonomial(Vec<Pair>);

pub fn is_standard(pairs: &[Pair]) -> bool {
    pairs.iter().all(|&(i, j)| i < j) && pairs.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1)
}

impl StandardMonomial {
    pub fn new(pairs: Vec<Pair>) -> Result<Self> {
        if !is_standard(&pairs) {
            return Err(Error::InvalidParams(format!(
                "{} is not standard",
                format_pairs(&pairs)
            )));
        }
        Ok(StandardMonomial(pairs))
    }

    pub fn one() -> Self {
        StandardMonomial(Vec::new())
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `j_1`, the smallest second index; `None` for the empty monomial.
    pub fn first_column(&self) -> Option<usize> {
        self.0.first().map(|p| p.1)
    }

    /// Membership in `B_{n,m}`: `j_1 >= m` (vacuous for `1`).
    pub fn in_filtered(&self, m: usize) -> bool {
        self.first_column().map_or(true, |j| j >= m)
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|p| p.1).max().unwrap_or(0)
    }
}

fn format_pairs(pairs: &[Pair]) -> String {
    if pairs.is_empty() {
        return "1".into();
    }
    pairs.iter().map(|(i, j)| format!("a({i},{j})")).collect()
}

impl fmt::Display for StandardMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_pairs(&self.0))
    }
}

/// Parses `a(1,4)a(2,3)`; `1` or the empty string is the empty monomial.
/// Pairs need not be ordered or have `i < j`.
pub fn parse_monomial(s: &str) -> Result<Vec<Pair>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("a(")
            .or_else(|| rest.strip_prefix("*a("))
            .ok_or_else(|| Error::Parse(format!("expected `a(i,j)` at `{rest}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed `a(` in `{s}`")))?;
        let (i, j) = body[..close]
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected two indices in `a({}`", &body[..=close])))?;
        let idx =
            |t: &str| -> Result<usize> { t.parse().map_err(|_| Error::Parse(format!("bad index `{t}` in `{s}`"))) };
        out.push((idx(i)?, idx(j)?));
        rest = &body[close + 1..];
    }
    Ok(out)
}

fn check_indices(pairs: &[Pair], n: usize) -> Result<()> {
    for &(i, j) in pairs {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange(format!("a({i},{j}) with n = {n}")));
        }
    }
    Ok(())
}

/// `a(i,j) -> x_i y_j - x_j y_i` in `F[x_1..x_n, y_1..y_n]`, multiplied out.
pub fn expand(pairs: &[Pair], n: usize, field: FieldSpec) -> Result<Polynomial> {
    check_indices(pairs, n)?;
    let vars = a_n_variables(n);
    let mut acc = Polynomial::one(field, vars.clone());
    for &(i, j) in pairs {
        acc = &acc * &alpha(i, j, n, field);
    }
    Ok(acc)
}

fn alpha(i: usize, j: usize, n: usize, field: FieldSpec) -> Polynomial {
    let vars = a_n_variables(n);
    let x = |k: usize| Polynomial::var(field, vars.clone(), k - 1);
    let y = |k: usize| Polynomial::var(field, vars.clone(), n + k - 1);
    &(&x(i) * &y(j)) - &(&x(j) * &y(i))
}

/// Linear combination of standard monomials: an element of the coordinate
/// ring `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<StandardMonomial, Scalar>,
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl SElement {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        SElement {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, field: FieldSpec, m: StandardMonomial, c: Scalar) -> Self {
        let mut s = Self::zero(n, field);
        add_into(&mut s.terms, m, c);
        s
    }

    pub fn one(n: usize, field: FieldSpec) -> Self {
        Self::monomial(n, field, StandardMonomial::one(), field.one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<StandardMonomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: StandardMonomial, c: Scalar) {
        add_into(&mut self.terms, m, c);
    }

    pub fn add(&self, other: &SElement) -> SElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SElement {
        let mut out = SElement::zero(self.n, self.field);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), c * d);
        }
        out
    }

    pub fn mul(&self, other: &SElement) -> SElement {
        let mut out = SElement::zero(self.n, self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut pairs = a.0.clone();
                pairs.extend_from_slice(&b.0);
                let s = straighten_unchecked(&pairs, self.n, self.field);
                let c = ca * cb;
                for (m, d) in s.terms {
                    out.add_term(m, &c * &d);
                }
            }
        }
        out
    }

    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.field, a_n_variables(self.n));
        for (m, c) in &self.terms {
            let p = expand(&m.0, self.n, self.field).expect("indices checked on construction");
            acc = &acc + &p.scale(c);
        }
        acc
    }

    /// Terms in descending monomial order, e.g. `a(1,3)a(2,4) - a(1,2)a(3,4)`.
    pub fn descending(&self) -> impl Iterator<Item = (&StandardMonomial, &Scalar)> {
        self.terms.iter().rev()
    }
}

pub(crate) fn write_term(out: &mut String, c: &Scalar, body: &str) {
    let (neg, mag) = if c.is_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if body == "1" {
        out.push_str(&mag.to_string());
    } else {
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(body);
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (m, c) in self.descending() {
            write_term(&mut s, c, &m.to_string());
        }
        f.write_str(if s.is_empty() { "0" } else { &s })
    }
}

/// JSON: `{"field": .., "n": .., "terms": [{"pairs": [[i,j],..], "coeff": ".."}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SElementJson {
    pub field: FieldSpec,
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub pairs: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<usize>,
    pub coeff: String,
}

impl SElement {
    pub fn to_json(&self) -> SElementJson {
        SElementJson {
            field: self.field,
            n: self.n,
            terms: self
                .descending()
                .map(|(m, c)| TermJson {
                    pairs: m.0.iter().map(|&(i, j)| [i, j]).collect(),
                    generator: None,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SElementJson) -> Result<Self> {
        let mut out = SElement::zero(j.n, j.field);
        for t in &j.terms {
            let pairs: Vec<Pair> = t.pairs.iter().map(|p| (p[0], p[1])).collect();
            check_indices(&pairs, j.n)?;
            out.add_term(StandardMonomial::new(pairs)?, j.field.parse_scalar(&t.coeff)?);
        }
        Ok(out)
    }
}

/// Sorts each pair to `i < j` (a sign per swap), kills `a(i,i)`, and sorts
/// the pairs lexicographically.
fn normalize(pairs: &[Pair]) -> Option<(bool, Vec<Pair>)> {
    let mut neg = false;
    let mut out = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => out.push((i, j)),
            std::cmp::Ordering::Greater => {
                neg = !neg;
                out.push((j, i));
            }
        }
    }
    out.sort_unstable();
    Some((neg, out))
}

pub(crate) fn straighten_unchecked(pairs: &[Pair], n: usize, field: FieldSpec) -> SElement {
    let mut out = SElement::zero(n, field);
    let Some((neg, start)) = normalize(pairs) else {
        return out;
    };
    let mut pending: BTreeMap<Vec<Pair>, Scalar> = BTreeMap::new();
    pending.insert(start, if neg { -field.one() } else { field.one() });
    // Each rewrite produces lexicographically smaller sorted sequences, so
    // taking the largest pending monomial first sees every contribution to
    // it before it is processed.
    while let Some((mono, c)) = pending.pop_last() {
        let bad = mono.windows(2).position(|w| w[0].1 > w[1].1);
        let Some(p) = bad else {
            out.add_term(StandardMonomial(mono), c);
            continue;
        };
        // a(i,j) a(k,l) with i < k < l < j equals -a(i,k) a(l,j) + a(i,l) a(k,j)
        let ((i, j), (k, l)) = (mono[p], mono[p + 1]);
        for (replacement, negate) in [([(i, k), (l, j)], true), ([(i, l), (k, j)], false)] {
            let mut next = mono.clone();
            next[p] = replacement[0];
            next[p + 1] = replacement[1];
            next.sort_unstable();
            add_into(&mut pending, next, if negate { -&c } else { c.clone() });
        }
    }
    out
}

/// Rewrites an arbitrary product of Plucker coordinates in the standard
/// monomial basis.
pub fn straighten(pairs: &[Pair], n: usize, field: FieldSpec) -> Result<SElement> {
    check_indices(pairs, n)?;
    Ok(straighten_unchecked(pairs, n, field))
}

fn extend_standard(n: usize, r: usize, prefix: &mut Vec<Pair>, out: &mut Vec<StandardMonomial>) {
    if prefix.len() == r {
        out.push(StandardMonomial(prefix.clone()));
        return;
    }
    let (i0, j0) = prefix.last().copied().unwrap_or((1, 2));
    for i in i0..n {
        for j in j0.max(i + 1)..=n {
            prefix.push((i, j));
            extend_standard(n, r, prefix, out);
            prefix.pop();
        }
    }
}

/// Standard monomials of degree `r` in lexicographic order.
pub fn enumerate_basis(n: usize, r: usize) -> Vec<StandardMonomial> {
    let mut out = Vec::new();
    if r > 0 && n < 2 {
        return out;
    }
    extend_standard(n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// `B_{n,m}` in degree `r`: standard monomials with `j_1 >= m`.
pub fn enumerate_basis_filtered(n: usize, m: usize, r: usize) -> Vec<StandardMonomial> {
    enumerate_basis(n, r).into_iter().filter(|u| u.in_filtered(m)).collect()
}

/// `(l, p)`: the number of pairs with `j_s < m` and with `i_s < m`.
pub fn split_indices(u: &StandardMonomial, m: usize) -> (usize, usize) {
    let l = u.0.iter().filter(|p| p.1 < m).count();
    let p = u.0.iter().filter(|p| p.0 < m).count();
    (l, p)
}

/// Degree-`r` standard monomials with `r - p >= l >= 1`: a basis of the
/// intersection of `S_{n,m}` with the ideal generated by `a(i,j)`, `j < m`.
pub fn enumerate_im_basis(n: usize, m: usize, r: usize) -> Vec<StandardMonomial> {
    enumerate_basis(n, r)
        .into_iter()
        .filter(|u| {
            let (l, p) = split_indices(u, m);
            l >= 1 && r - p >= l
        })
        .collect()
}

/// Every multiset of `r` pairs `i < j` from `1..=n`, sorted: all degree-`r`
/// monomials in the Plucker coordinates, standard or not.
pub fn all_monomials(n: usize, r: usize, min_j: usize) -> Vec<Vec<Pair>> {
    let gens: Vec<Pair> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|p| p.1 >= min_j)
        .collect();
    let mut out = Vec::new();
    fn rec(gens: &[Pair], start: usize, r: usize, cur: &mut Vec<Pair>, out: &mut Vec<Vec<Pair>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for g in start..gens.len() {
            cur.push(gens[g]);
            rec(gens, g, r, cur, out);
            cur.pop();
        }
    }
    rec(&gens, 0, r, &mut Vec::new(), &mut out);
    out
}

/// The substitution `x_k -> t y_k` for `k < m` into
/// `F[x_m..x_n, t, y_1..y_n]`, applied to one Plucker coordinate.
pub fn filtered_image(pairs: &[Pair], n: usize, m: usize, field: FieldSpec) -> Result<Polynomial> {
    check_indices(pairs, n)?;
    if m == 0 || m > n {
        return Err(Error::InvalidParams(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    let vars = e_variables(n, m);
    let t = Polynomial::var(field, vars.clone(), n + 1 - m);
    let y = |k: usize| Polynomial::var(field, vars.clone(), n + 2 - m + k - 1);
    let x = |k: usize| {
        if k < m {
            &t * &y(k)
        } else {
            Polynomial::var(field, vars.clone(), k - m)
        }
    };
    let mut acc = Polynomial::one(field, vars.clone());
    for &(i, j) in pairs {
        let a = &(&x(i) * &y(j)) - &(&x(j) * &y(i));
        acc = &acc * &a;
    }
    Ok(acc)
}

/// Rank of the substituted images of `B_{n,m}` in degree `r`; equals
/// `|B_{n,m}|` exactly when those monomials are independent modulo the
/// ideal generated by the `a(i,j)` with `j < m`.
pub fn lemma2_oracle(n: usize, m: usize, r: usize, field: FieldSpec) -> Result<usize> {
    let images = enumerate_basis_filtered(n, m, r)
        .iter()
        .map(|u| filtered_image(&u.0, n, m, field))
        .collect::<Result<Vec<_>>>()?;
    rank_of_span(&images)
}

/// Dimension of the degree-`r` part of `S_{n,m} = F[a(i,j) : j >= m]`, by
/// the rank of all monomial expansions.
pub fn s_nm_dimension(n: usize, m: usize, r: usize, field: FieldSpec) -> Result<usize> {
    let images = all_monomials(n, r, m)
        .iter()
        .map(|p| expand(p, n, field))
        .collect::<Result<Vec<_>>>()?;
    if images.is_empty() {
        return Ok(0);
    }
    rank_of_span(&images)
}

/// Linear combination of `u v_j` with `u` in `B_{n,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddElement {
    n: usize,
    field: FieldSpec,
    /// Keyed by `(u, j)`.
    terms: BTreeMap<(StandardMonomial, usize), Scalar>,
}

impl OddElement {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        OddElement {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The generator `v_j`.
    pub fn generator(n: usize, field: FieldSpec, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange(format!("v{j} with n = {n}")));
        }
        let mut out = Self::zero(n, field);
        out.add_term(StandardMonomial::one(), j, field.one());
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<(StandardMonomial, usize), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, u: StandardMonomial, j: usize, c: Scalar) {
        debug_assert!(u.in_filtered(j));
        add_into(&mut self.terms, (u, j), c);
    }

    pub fn add(&self, other: &OddElement) -> OddElement {
        let mut out = self.clone();
        for ((u, j), c) in &other.terms {
            out.add_term(u.clone(), *j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> OddElement {
        let mut out = OddElement::zero(self.n, self.field);
        for ((u, j), d) in &self.terms {
            out.add_term(u.clone(), *j, c * d);
        }
        out
    }

    /// `s * self` for `s` in `S_n`.
    pub fn mul_s(&self, s: &SElement) -> OddElement {
        let mut out = OddElement::zero(self.n, self.field);
        for ((u, j), c) in &self.terms {
            let prod = s.mul(&SElement::monomial(self.n, self.field, u.clone(), c.clone()));
            let reduced = reduce_odd_unchecked(&prod, *j);
            out = out.add(&reduced);
        }
        out
    }

    /// Odd times odd: `(u v_i)(w v_j) = u w a(i,j)`.
    pub fn mul_odd(&self, other: &OddElement) -> SElement {
        let mut out = SElement::zero(self.n, self.field);
        for ((u, i), c) in &self.terms {
            for ((w, j), d) in &other.terms {
                let mut pairs = u.0.clone();
                pairs.extend_from_slice(&w.0);
                pairs.push((*i, *j));
                let s = straighten_unchecked(&pairs, self.n, self.field);
                out = out.add(&s.scale(&(c * d)));
            }
        }
        out
    }

    /// Image in `A_n^2` under `v_k -> (x_k, y_k)`.
    pub fn expand(&self) -> (Polynomial, Polynomial) {
        let vars = a_n_variables(self.n);
        let mut px = Polynomial::zero(self.field, vars.clone());
        let mut py = Polynomial::zero(self.field, vars.clone());
        for ((u, j), c) in &self.terms {
            let e = expand(&u.0, self.n, self.field).expect("checked").scale(c);
            px = &px + &(&e * &Polynomial::var(self.field, vars.clone(), j - 1));
            py = &py + &(&e * &Polynomial::var(self.field, vars.clone(), self.n + j - 1));
        }
        (px, py)
    }

    /// Terms ordered by generator index, then descending monomial.
    pub fn ordered(&self) -> Vec<(&StandardMonomial, usize, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|((u, j), c)| (u, *j, c)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)));
        v
    }

    pub fn to_json(&self) -> SElementJson {
        SElementJson {
            field: self.field,
            n: self.n,
            terms: self
                .ordered()
                .into_iter()
                .map(|(u, j, c)| TermJson {
                    pairs: u.0.iter().map(|&(a, b)| [a, b]).collect(),
                    generator: Some(j),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    /// Terms must carry a generator and lie in the filtered module.
    pub fn from_json(j: &SElementJson) -> Result<Self> {
        let mut out = OddElement::zero(j.n, j.field);
        for t in &j.terms {
            let g = t
                .generator
                .ok_or_else(|| Error::Parse("odd term without a generator".into()))?;
            if g == 0 || g > j.n {
                return Err(Error::IndexOutOfRange(format!("v{g} with n = {}", j.n)));
            }
            let pairs: Vec<Pair> = t.pairs.iter().map(|p| (p[0], p[1])).collect();
            check_indices(&pairs, j.n)?;
            let u = StandardMonomial::new(pairs)?;
            if !u.in_filtered(g) {
                return Err(Error::Parse(format!("{u}v{g} is not a normal-form term")));
            }
            out.add_term(u, g, j.field.parse_scalar(&t.coeff)?);
        }
        Ok(out)
    }
}

impl fmt::Display for OddElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (u, j, c) in self.ordered() {
            let body = if u.degree() == 0 {
                format!("v{j}")
            } else {
                format!("{u}v{j}")
            };
            write_term(&mut s, c, &body);
        }
        f.write_str(if s.is_empty() { "0" } else { &s })
    }
}

fn reduce_monomial(u: &StandardMonomial, j: usize, c: &Scalar, n: usize, field: FieldSpec, out: &mut OddElement) {
    let Some(&(i1, j1)) = u.0.first() else {
        out.add_term(u.clone(), j, c.clone());
        return;
    };
    if j1 >= j {
        out.add_term(u.clone(), j, c.clone());
        return;
    }
    // a(i1,j1) v_j = -a(j1,j) v_{i1} + a(i1,j) v_{j1}
    let rest = &u.0[1..];
    for ((a, b), gen, negate) in [((j1, j), i1, true), ((i1, j), j1, false)] {
        let mut pairs = rest.to_vec();
        pairs.push((a, b));
        let s = straighten_unchecked(&pairs, n, field);
        let coeff = if negate { -c } else { c.clone() };
        for (w, d) in s.terms {
            reduce_monomial(&w, gen, &(&coeff * &d), n, field, out);
        }
    }
}

pub(crate) fn reduce_odd_unchecked(u: &SElement, j: usize) -> OddElement {
    let mut out = OddElement::zero(u.n, u.field);
    for (m, c) in &u.terms {
        reduce_monomial(m, j, c, u.n, u.field, &mut out);
    }
    out
}

/// `u v_j` in the basis `u' v_i` with `u'` in `B_{n,i}`.
pub fn reduce_odd(u: &SElement, j: usize) -> Result<OddElement> {
    if j == 0 || j > u.n {
        return Err(Error::IndexOutOfRange(format!("v{j} with n = {}", u.n)));
    }
    Ok(reduce_odd_unchecked(u, j))
}

/// Dimension of the odd part in the given (odd) weight, where `a(i,j)` has
/// weight 2 and `v_k` weight 1.
pub fn odd_dimension(n: usize, weight: usize) -> Result<usize> {
    if weight % 2 == 0 {
        return Err(Error::EvenWeight(weight));
    }
    let r = (weight - 1) / 2;
    Ok((1..=n).map(|j| enumerate_basis_filtered(n, j, r).len()).sum())
}

/// The same dimension as the rank of all `(monomial) * (x_k, y_k)` in
/// `A_n^2`.
pub fn odd_dimension_oracle(n: usize, weight: usize, field: FieldSpec) -> Result<usize> {
    if weight % 2 == 0 {
        return Err(Error::EvenWeight(weight));
    }
    let r = (weight - 1) / 2;
    let vars = a_n_variables(n);
    let mut tuples = Vec::new();
    for m in all_monomials(n, r, 0) {
        let e = expand(&m, n, field)?;
        for k in 1..=n {
            tuples.push(vec![
                &e * &Polynomial::var(field, vars.clone(), k - 1),
                &e * &Polynomial::var(field, vars.clone(), n + k - 1),
            ]);
        }
    }
    rank_of_tuples(&tuples)
}
