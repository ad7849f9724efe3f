#![allow(dead_code)]

use gammalg_core::free_gamma::{FgMonomial, FreeGamma, FreeGammaElement};
use gammalg_core::grassmann::Pair;
use gammalg_core::{builtin, gamma_of_commutative, BuiltinSpec, FieldSpec, GammaAlgebra, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

pub fn gamma_of_trunc(field: FieldSpec, k: usize) -> GammaAlgebra {
    gamma_of_commutative(&builtin(&BuiltinSpec::Trunc(k), field).unwrap()).unwrap()
}

/// The Gamma-algebras used throughout: B(1,2) over three fields, F + Fx,
/// and two Gamma(A) for truncated polynomial rings.
pub fn catalog() -> Vec<(String, GammaAlgebra)> {
    let mut out = Vec::new();
    for f in [Q, fp(3), fp(5)] {
        out.push((
            format!("B(1,2) over {f}"),
            GammaAlgebra::new(builtin(&BuiltinSpec::B12, f).unwrap()).unwrap(),
        ));
    }
    out.push((
        "F+Fx over q".into(),
        GammaAlgebra::new(builtin(&BuiltinSpec::Grassmann(1), Q).unwrap()).unwrap(),
    ));
    out.push(("Gamma(F5[s]/(s^2))".into(), gamma_of_trunc(fp(5), 2)));
    out.push(("Gamma(F7[s]/(s^3))".into(), gamma_of_trunc(fp(7), 3)));
    out
}

pub fn small_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

/// A product of `deg` Plucker coordinates with arbitrary (possibly
/// reversed) index order, never `a(i,i)`.
pub fn random_alpha_monomial(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> Vec<Pair> {
    (0..deg)
        .map(|_| {
            let i = rng.gen_range(1..=n);
            let mut j = rng.gen_range(1..=n - 1);
            if j >= i {
                j += 1;
            }
            (i, j)
        })
        .collect()
}

/// A random combination of normal-form basis monomials of weight at most
/// `max_weight`.
pub fn random_normal_form(rng: &mut ChaCha8Rng, sig: FreeGamma, max_weight: usize, terms: usize) -> FreeGammaElement {
    let pool: Vec<FgMonomial> = (0..=max_weight).flat_map(|w| sig.basis(w)).collect();
    let mut out = sig.zero();
    for _ in 0..terms {
        let mono = &pool[rng.gen_range(0..pool.len())];
        out = out.add(&sig.monomial(mono, small_scalar(rng, sig.field))).unwrap();
    }
    out
}

/// A random element of the given parity in a Gamma-algebra.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, g: &GammaAlgebra, parity: u8) -> Vec<Scalar> {
    let alg = g.carrier();
    (0..alg.dim())
        .map(|i| {
            if alg.parity(i) == parity {
                small_scalar(rng, alg.field())
            } else {
                alg.field().zero()
            }
        })
        .collect()
}
