//! Scalars, polynomials and linear algebra against independent oracles.

mod common;

use common::{fp, Q};
use gammalg_core::linalg;
use gammalg_core::poly::{a_n_variables, leading_term, rank_of_span};
use gammalg_core::{FieldSpec, MonomialOrder, Polynomial, Scalar};
use proptest::prelude::*;
use std::sync::Arc;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), Just(fp(2)), Just(fp(3)), Just(fp(7)), Just(fp(101))]
}

fn scalar(f: FieldSpec, (n, d): (i64, i64)) -> Scalar {
    let num = f.from_i64(n);
    match f.from_i64(d).inverse() {
        Some(inv) => &num * &inv,
        None => num,
    }
}

/// Small polynomial in `vars` from a list of (exponents, coefficient).
fn poly(f: FieldSpec, vars: &Arc<Vec<String>>, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let mut p = Polynomial::zero(f, vars.clone());
    for (e, c) in terms {
        p = &p + &Polynomial::monomial(f, vars.clone(), e.clone(), f.from_i64(*c));
    }
    p
}

fn terms_strategy(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -4i64..5), 0..5)
}

/// Leibniz determinant, independent of elimination.
fn det(m: &[Vec<Scalar>], f: FieldSpec) -> Scalar {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = f.zero();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    let mut perms = Vec::new();
    heap(n, &mut perm, &mut perms);
    for p in perms {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = if inversions % 2 == 0 { f.one() } else { -f.one() };
        for (row, &col) in p.iter().enumerate() {
            term = &term * &m[row][col];
        }
        total = &total + &term;
    }
    total
}

proptest! {
    #[test]
    fn field_axioms(f in field_strategy(), a in (-50i64..50, 1i64..20), b in (-50i64..50, 1i64..20), c in (-50i64..50, 1i64..20)) {
        let (a, b, c) = (scalar(f, a), scalar(f, b), scalar(f, c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trip(f in field_strategy(), a in (-500i64..500, 1i64..50)) {
        let a = scalar(f, a);
        prop_assert_eq!(f.parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn ring_laws(f in field_strategy(), p in terms_strategy(3), q in terms_strategy(3), r in terms_strategy(3)) {
        let vars = Arc::new(vec!["a".to_string(), "b".to_string(), "c".to_string()]);
        let (p, q, r) = (poly(f, &vars, &p), poly(f, &vars, &q), poly(f, &vars, &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn leading_terms_multiply(p in terms_strategy(4), q in terms_strategy(4)) {
        let vars = a_n_variables(2);
        let (p, q) = (poly(Q, &vars, &p), poly(Q, &vars, &q));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let ord = MonomialOrder::a_n_preset(2);
        let (ep, cp) = leading_term(&p, &ord).unwrap();
        let (eq, cq) = leading_term(&q, &ord).unwrap();
        let (e, c) = leading_term(&(&p * &q), &ord).unwrap();
        let sum: Vec<u32> = ep.iter().zip(&eq).map(|(x, y)| x + y).collect();
        prop_assert_eq!(e, sum);
        prop_assert_eq!(c, &cp * &cq);
    }

    #[test]
    fn substitution_is_a_ring_map(p in terms_strategy(2), q in terms_strategy(2), img in terms_strategy(2)) {
        let vars = Arc::new(vec!["u".to_string(), "w".to_string()]);
        let (p, q) = (poly(Q, &vars, &p), poly(Q, &vars, &q));
        let images = vec![poly(Q, &vars, &img), Polynomial::var(Q, vars.clone(), 0)];
        let lhs = (&p * &q).substitute(&images).unwrap();
        let rhs = &p.substitute(&images).unwrap() * &q.substitute(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_json_round_trip(f in field_strategy(), p in terms_strategy(3)) {
        let vars = Arc::new(vec!["x".to_string(), "y".to_string(), "z".to_string()]);
        let p = poly(f, &vars, &p);
        let back: Polynomial = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn full_rank_iff_nonzero_determinant(f in field_strategy(), entries in prop::collection::vec(-3i64..4, 9)) {
        let m: Vec<Vec<Scalar>> = entries.chunks(3).map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        prop_assert_eq!(linalg::rank(&m) == 3, !det(&m, f).is_zero());
    }
}

#[test]
fn freshmans_dream() {
    for p in [2u64, 3, 5, 7] {
        let f = fp(p);
        let vars = Arc::new(vec!["x".to_string(), "y".to_string()]);
        let x = Polynomial::var(f, vars.clone(), 0);
        let y = Polynomial::var(f, vars.clone(), 1);
        let lhs = (&x + &y).pow(p as u32);
        let rhs = &x.pow(p as u32) + &y.pow(p as u32);
        assert_eq!(lhs, rhs, "p = {p}");
    }
    let vars = Arc::new(vec!["x".to_string(), "y".to_string()]);
    let x = Polynomial::var(Q, vars.clone(), 0);
    let y = Polynomial::var(Q, vars.clone(), 1);
    assert_ne!((&x + &y).pow(3), &x.pow(3) + &y.pow(3));
}

#[test]
fn rank_of_span_matches_dense_rank() {
    let vars = a_n_variables(2);
    let x1 = Polynomial::var(Q, vars.clone(), 0);
    let y1 = Polynomial::var(Q, vars.clone(), 2);
    let polys = vec![&x1 + &y1, &x1 - &y1, x1.scale(&Q.from_i64(2)), &x1 * &y1];
    assert_eq!(rank_of_span(&polys).unwrap(), 3);
    let f3 = fp(3);
    let v3 = a_n_variables(2);
    let a = Polynomial::var(f3, v3.clone(), 0);
    let b = Polynomial::var(f3, v3, 1);
    assert_eq!(rank_of_span(&[&a + &b, &a - &(&b + &b)]).unwrap(), 1);
}

#[test]
fn incremental_basis_agrees_with_dense_elimination() {
    use std::collections::BTreeMap;
    let f = fp(5);
    let rows: Vec<Vec<Scalar>> = [[1, 2, 3, 4], [2, 4, 1, 3], [3, 1, 4, 2], [0, 0, 0, 0], [1, 1, 1, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
        .collect();
    let sparse: Vec<BTreeMap<usize, Scalar>> = rows
        .iter()
        .map(|r| r.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    assert_eq!(linalg::rank_of_sparse(f, &sparse), linalg::rank(&rows));
}
