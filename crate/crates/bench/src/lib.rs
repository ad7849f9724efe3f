//! Inputs shared by the benchmarks. Everything is deterministic so runs are
//! comparable.

use gammalg_core::free_gamma::Generator;
use gammalg_core::grassmann::{all_monomials, is_standard, Pair};
use gammalg_core::{builtin, gamma_of_commutative, BuiltinSpec, FgExpr, FieldSpec, GammaAlgebra};

/// Every non-standard monomial of degree `r` in `a(i,j)`, `i < j <= n`.
pub fn nonstandard_monomials(n: usize, r: usize) -> Vec<Vec<Pair>> {
    all_monomials(n, r, 1).into_iter().filter(|m| !is_standard(m)).collect()
}

/// A left-nested product `(((v1 v2) v3) ...)` cycling through `n` odd
/// generators, with `leaves` factors.
pub fn left_nested(n: usize, leaves: usize) -> FgExpr {
    let v = |k: usize| FgExpr::gen(Generator::Odd(k % n + 1));
    (1..leaves).fold(v(0), |acc, k| FgExpr::mul(acc, v(k)))
}

/// Gamma(F[s]/(s^k)).
pub fn gamma_trunc(k: usize, field: FieldSpec) -> GammaAlgebra {
    gamma_of_commutative(&builtin(&BuiltinSpec::Trunc(k), field).expect("catalog")).expect("commutative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use gammalg_core::enumerate_basis;
    use gammalg_core::grassmann::all_monomials;

    #[test]
    fn fixtures_are_what_they_claim() {
        let all = all_monomials(5, 3, 1).len();
        assert_eq!(nonstandard_monomials(5, 3).len() + enumerate_basis(5, 3).len(), all);
        assert_eq!(left_nested(3, 4).to_string(), "(((v1*v2)*v3)*v1)");
        assert!(gamma_trunc(2, FieldSpec::Prime(5)).odd().len() == 4);
    }
}
