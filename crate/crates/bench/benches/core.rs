use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gammalg_bench::{gamma_trunc, left_nested, nonstandard_monomials};
use gammalg_core::{
    builtin, check_identity, enumerate_basis, fg_normal_form, phi_iso, straighten, BuiltinSpec, FieldSpec, FreeGamma,
    IdentityKind,
};

const Q: FieldSpec = FieldSpec::Rationals;

fn bench_straighten(c: &mut Criterion) {
    let mut group = c.benchmark_group("straighten");
    for (n, r) in [(4, 2), (5, 3), (6, 3)] {
        let inputs = nonstandard_monomials(n, r);
        group.bench_with_input(
            BenchmarkId::new("all-nonstandard", format!("n{n}r{r}")),
            &inputs,
            |b, inputs| {
                b.iter(|| {
                    for m in inputs {
                        black_box(straighten(m, n, Q).unwrap());
                    }
                })
            },
        );
    }
    group.bench_function("enumerate-basis-n6r4", |b| b.iter(|| black_box(enumerate_basis(6, 4))));
    group.finish();
}

fn bench_identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("identities");
    for (name, field) in [("q", Q), ("fp3", FieldSpec::Prime(3))] {
        let b42 = builtin(&BuiltinSpec::B42, field).unwrap();
        group.bench_function(BenchmarkId::new("b42-super-alternative", name), |b| {
            b.iter(|| black_box(check_identity(&b42, IdentityKind::SuperAlternative)))
        });
    }
    let oct = builtin(&BuiltinSpec::OctonionSplit { v_squared: Q.one() }, Q).unwrap();
    group.bench_function("split-octonions-alternative", |b| {
        b.iter(|| black_box(check_identity(&oct, IdentityKind::Alternative)))
    });
    group.finish();
}

fn bench_envelope(c: &mut Criterion) {
    let g = gamma_trunc(3, FieldSpec::Prime(7));
    c.bench_function("phi-iso-gamma-trunc3", |b| b.iter(|| black_box(phi_iso(&g).unwrap())));
}

fn bench_normal_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal-form");
    for leaves in [5, 7, 9] {
        let expr = left_nested(4, leaves);
        group.bench_with_input(BenchmarkId::new("left-nested-n4", leaves), &expr, |b, expr| {
            b.iter(|| black_box(fg_normal_form(expr, FreeGamma::new(0, 4, Q)).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_straighten,
    bench_identities,
    bench_envelope,
    bench_normal_form
);
criterion_main!(benches);
