//! Normal forms in free Gamma-algebras against the polynomial embedding and
//! against direct evaluation in finite targets.

mod common;

use common::{catalog, random_homogeneous, random_normal_form, small_scalar, Q};
use gammalg_core::free_gamma::{FgMonomial, FreeGammaJson, Generator, GeneratorImages, PolyGamma, TargetEvaluation};
use gammalg_core::{
    embedding_oracle, fg_evaluate, fg_multiply, fg_normal_form, Error, FgExpr, FreeGamma, FreeGammaElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random product tree with `leaves` generator leaves, occasionally
/// mixing in sums and scalars.
fn random_tree(rng: &mut ChaCha8Rng, m: usize, n: usize, leaves: usize) -> FgExpr {
    if leaves <= 1 {
        let use_even = m > 0 && (n == 0 || rng.gen_bool(0.3));
        return if use_even {
            FgExpr::gen(Generator::Even(rng.gen_range(1..=m)))
        } else {
            FgExpr::gen(Generator::Odd(rng.gen_range(1..=n)))
        };
    }
    let left = rng.gen_range(1..leaves);
    let a = random_tree(rng, m, n, left);
    let b = random_tree(rng, m, n, leaves - left);
    match rng.gen_range(0..6) {
        0 => FgExpr::add(a, b),
        1 => FgExpr::sub(a, b),
        2 => FgExpr::mul(FgExpr::Scalar(rng.gen_range(1..5).to_string()), FgExpr::mul(a, b)),
        _ => FgExpr::mul(a, b),
    }
}

fn odd_part(e: &FreeGammaElement) -> FreeGammaElement {
    let sig = e.signature();
    let mut out = sig.zero();
    for (mono, c) in e.terms() {
        if mono.is_odd() {
            out = out.add(&sig.monomial(&mono, c)).unwrap();
        }
    }
    out
}

fn even_part(e: &FreeGammaElement) -> FreeGammaElement {
    let sig = e.signature();
    let mut out = sig.zero();
    for (mono, c) in e.terms() {
        if !mono.is_odd() {
            out = out.add(&sig.monomial(&mono, c)).unwrap();
        }
    }
    out
}

fn mul(a: &FreeGammaElement, b: &FreeGammaElement) -> FreeGammaElement {
    fg_multiply(a, b).unwrap()
}

fn sub(a: &FreeGammaElement, b: &FreeGammaElement) -> FreeGammaElement {
    a.add(&b.scale(&-a.signature().field.one())).unwrap()
}

#[test]
fn normal_forms_agree_with_the_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let leaves = rng.gen_range(1..=6);
        let tree = random_tree(&mut rng, 0, n, leaves);
        let sig = FreeGamma::new(0, n, Q);
        let nf = fg_normal_form(&tree, sig).unwrap();
        let direct = tree.evaluate(&PolyGamma::new(n, Q)).unwrap();
        assert_eq!(embedding_oracle(&nf).unwrap(), direct, "{tree}");
    }
}

#[test]
fn equal_trees_have_equal_normal_forms() {
    let sig = FreeGamma::new(0, 3, Q);
    let nf = |s: &str| fg_normal_form(&FgExpr::parse(s).unwrap(), sig).unwrap();
    // condition (iv) and its consequences
    assert_eq!(nf("(v1 v2) v3"), nf("-(v2 v3) v1 - (v3 v1) v2"));
    assert_eq!(nf("v3 (v1 v2)"), nf("(v1 v2) v3"));
    assert_eq!(nf("(v1 v2)(v1 v3)"), nf("(v1 v3)(v1 v2)"));
}

#[test]
fn gamma_conditions_hold_formally() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for (m, n) in [(0, 3), (1, 2), (2, 2)] {
        let sig = FreeGamma::new(m, n, Q);
        for _ in 0..40 {
            let x = odd_part(&random_normal_form(&mut rng, sig, 5, 4));
            let y = odd_part(&random_normal_form(&mut rng, sig, 5, 4));
            let z = odd_part(&random_normal_form(&mut rng, sig, 5, 4));
            let a = even_part(&random_normal_form(&mut rng, sig, 4, 4));
            let b = even_part(&random_normal_form(&mut rng, sig, 4, 4));
            let cyc = mul(&mul(&x, &y), &z)
                .add(&mul(&mul(&y, &z), &x))
                .unwrap()
                .add(&mul(&mul(&z, &x), &y))
                .unwrap();
            assert!(cyc.is_zero(), "cyclic sum");
            assert!(mul(&x, &y).add(&mul(&y, &x)).unwrap().is_zero(), "xy + yx");
            assert!(sub(&mul(&a, &x), &mul(&x, &a)).is_zero(), "[even, odd]");
            let xy = mul(&x, &y);
            assert!(sub(&mul(&xy, &a), &mul(&a, &xy)).is_zero(), "odd products central");
            for (p, q) in [(&b, &x), (&x, &y), (&b, &a)] {
                assert!(
                    sub(&mul(&mul(&a, p), q), &mul(&a, &mul(p, q))).is_zero(),
                    "(even, A, A)"
                );
            }
        }
    }
}

#[test]
fn evaluation_matches_direct_tree_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (name, g) in catalog() {
        let sig = FreeGamma::new(1, 2, g.carrier().field());
        for _ in 0..60 {
            let images = GeneratorImages {
                even: vec![random_homogeneous(&mut rng, &g, 0)],
                odd: (0..2).map(|_| random_homogeneous(&mut rng, &g, 1)).collect(),
            };
            let leaves = rng.gen_range(1..=5);
            let tree = random_tree(&mut rng, 1, 2, leaves);
            let nf = fg_normal_form(&tree, sig).unwrap();
            let direct = tree.evaluate(&TargetEvaluation::new(&g, &images).unwrap()).unwrap();
            assert_eq!(
                fg_evaluate(&nf, &g, &images).unwrap().coords(),
                direct.as_slice(),
                "{name}: {tree}"
            );
        }
    }
}

#[test]
fn evaluation_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for (name, g) in catalog() {
        let sig = FreeGamma::new(2, 2, g.carrier().field());
        for _ in 0..50 {
            let images = GeneratorImages {
                even: (0..2).map(|_| random_homogeneous(&mut rng, &g, 0)).collect(),
                odd: (0..2).map(|_| random_homogeneous(&mut rng, &g, 1)).collect(),
            };
            let a = random_normal_form(&mut rng, sig, 4, 3);
            let b = random_normal_form(&mut rng, sig, 4, 3);
            let lhs = fg_evaluate(&mul(&a, &b), &g, &images).unwrap();
            let rhs = gammalg_core::multiply(
                &fg_evaluate(&a, &g, &images).unwrap(),
                &fg_evaluate(&b, &g, &images).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs, "{name}");
        }
    }
}

#[test]
fn zero_images_kill_words() {
    let (_, g) = catalog().remove(0);
    let mut images = GeneratorImages::parse(&g, 0, 3, "v1=x, v2=y, v3=x + y").unwrap();
    images.odd[1] = g.carrier().zero_vector();
    let sig = FreeGamma::new(0, 3, Q);
    for s in ["v2", "v1 v2", "(v2 v3) v1", "v3 (v1 v2)"] {
        let nf = fg_normal_form(&FgExpr::parse(s).unwrap(), sig).unwrap();
        assert!(fg_evaluate(&nf, &g, &images).unwrap().is_zero(), "{s}");
    }
}

#[test]
fn parity_violations_are_rejected() {
    let (_, g) = catalog().remove(0);
    assert!(matches!(
        GeneratorImages::parse(&g, 1, 1, "t1=x"),
        Err(Error::ParityViolation(_))
    ));
    assert!(matches!(
        GeneratorImages::parse(&g, 0, 1, "v1=1"),
        Err(Error::ParityViolation(_))
    ));
}

#[test]
fn expression_text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..100 {
        let leaves = rng.gen_range(1..=6);
        let tree = random_tree(&mut rng, 2, 3, leaves);
        assert_eq!(FgExpr::parse(&tree.to_string()).unwrap(), tree);
    }
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for (m, n) in [(0, 3), (2, 2)] {
        let sig = FreeGamma::new(m, n, Q);
        for _ in 0..30 {
            let e = random_normal_form(&mut rng, sig, 5, 5).scale(&small_scalar(&mut rng, Q));
            let text = serde_json::to_string(&e.to_json()).unwrap();
            let back: FreeGammaJson = serde_json::from_str(&text).unwrap();
            assert_eq!(FreeGammaElement::from_json(&back).unwrap(), e);
        }
    }
}

#[test]
fn basis_monomials_have_the_advertised_weight() {
    for (m, n) in [(0, 4), (1, 2), (2, 1)] {
        let sig = FreeGamma::new(m, n, Q);
        for w in 0..=6 {
            for b in sig.basis(w) {
                assert_eq!(b.weight(), w, "{b}");
                assert_eq!(b.is_odd(), w % 2 == 1);
                if let FgMonomial::Odd(_, u, j) = &b {
                    assert!(u.in_filtered(*j));
                }
            }
        }
    }
}

#[test]
fn weight_components_are_closed_under_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let sig = FreeGamma::new(1, 3, Q);
    for _ in 0..30 {
        let a = random_normal_form(&mut rng, sig, 3, 2);
        let b = random_normal_form(&mut rng, sig, 3, 2);
        for (wa, ca) in a.components() {
            for (wb, cb) in b.components() {
                let p = mul(&ca, &cb);
                assert!(p.terms().iter().all(|(mono, _)| mono.weight() == wa + wb));
            }
        }
    }
}
