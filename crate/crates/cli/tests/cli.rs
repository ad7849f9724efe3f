//! End-to-end runs of the `gammalg` binary.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use gammalg_core::coordinatization::{BracketModuleFile, GammaEnvelope};
use gammalg_core::free_gamma::FreeGammaJson;
use gammalg_core::grassmann::{parse_monomial, OddElement, SElementJson};
use gammalg_core::{
    builtin, envelope_b42, fg_normal_form, AlgebraElement, AlgebraFile, BracketModule, BuiltinSpec, ElementJson,
    FgExpr, FieldSpec, FreeGamma, FreeGammaElement, GammaAlgebra, SElement, StructureAlgebra,
};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Runs and insists on the given exit status.
fn expect(code: i32, args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(code),
        "{args:?}\nstdout: {}\nstderr: {}",
        stdout(&o),
        stderr(&o)
    );
    stdout(&o)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn b42_is_super_left_alternative_in_characteristic_three() {
    let out = expect(
        0,
        &[
            "check-identities",
            "--field",
            "fp:3",
            "--builtin",
            "B42",
            "--identity",
            "super-left-alternative",
        ],
    );
    assert_eq!(out.trim(), "super-left-alternative: pass");
}

#[test]
fn failing_identity_prints_a_witness_and_exits_one() {
    for field in ["q", "fp:5"] {
        let out = expect(
            1,
            &[
                "check-identities",
                "--field",
                field,
                "--builtin",
                "B42",
                "--identity",
                "super-alternative",
            ],
        );
        assert!(out.contains("fail at ("), "{out}");
        let json = expect(
            1,
            &[
                "check-identities",
                "--field",
                field,
                "--builtin",
                "B42",
                "--identity",
                "super-alternative",
                "--format",
                "json",
            ],
        );
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["result"], "fail");
        assert_eq!(v[0]["witness"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn basis_count_for_n4_degree2() {
    let out = expect(0, &["basis", "--n", "4", "--degree", "2"]);
    assert_eq!(out.lines().count(), 20);
    let json = expect(0, &["basis", "--n", "4", "--degree", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["count"], 20);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 20);
    let filtered = expect(0, &["basis", "--n", "4", "--degree", "2", "--filter-m", "3"]);
    assert_eq!(filtered.lines().count(), 14);
}

#[test]
fn straighten_example() {
    let out = expect(0, &["straighten", "a(1,4)a(2,3)"]);
    assert_eq!(out.trim(), "a(1,3)a(2,4) - a(1,2)a(3,4)");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: &[&[&str]] = &[
        &["check-identities", "--builtin", "B42"],
        &[
            "check-identities",
            "--builtin",
            "trunc:2",
            "--gamma-of",
            "--format",
            "json",
        ],
        &["basis", "--n", "5", "--degree", "3", "--format", "json"],
        &["straighten", "a(1,5)a(2,4)a(3,6)", "--format", "json"],
        &["straighten", "a(3,4)a(1,2)", "--odd", "1"],
        &[
            "envelope",
            "--builtin",
            "trunc:2",
            "--gamma-of",
            "--field",
            "fp:5",
            "--format",
            "json",
        ],
        &["iso-check", "--builtin", "B12", "--format", "json"],
        &["eval", "((v1 v2) v3)(v4 t1) - t1 (v1 v4)", "--format", "json"],
        &["decompose", "--builtin", "octonion-split:3"],
        &["dims", "--m", "2", "--n", "2", "--max-weight", "6"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert!(matches!(a.status.code(), Some(0 | 1)), "{args:?}: {}", stderr(&a));
        assert_eq!(a.status.code(), b.status.code());
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn straighten_json_round_trips_and_renders_as_text() {
    for (mono, field) in [
        ("a(1,4)a(2,3)", "q"),
        ("a(2,1)a(4,3)a(1,3)", "fp:3"),
        ("a(2,5)a(1,4)a(3,6)", "q"),
    ] {
        let json = expect(0, &["straighten", mono, "--field", field, "--format", "json"]);
        let j: SElementJson = serde_json::from_str(&json).unwrap();
        let s = SElement::from_json(&j).unwrap();
        let f: FieldSpec = field.parse().unwrap();
        let pairs = parse_monomial(mono).unwrap();
        let n = pairs.iter().map(|&(i, k)| i.max(k)).max().unwrap();
        assert_eq!(s, gammalg_core::straighten(&pairs, n, f).unwrap());
        let text = expect(0, &["straighten", mono, "--field", field]);
        assert_eq!(text.trim(), s.to_string());
    }
    let json = expect(0, &["straighten", "a(1,2)a(3,4)", "--odd", "1", "--format", "json"]);
    let odd = OddElement::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    let text = expect(0, &["straighten", "a(1,2)a(3,4)", "--odd", "1"]);
    assert_eq!(text.trim(), odd.to_string());
}

#[test]
fn envelope_json_is_a_structure_constant_file() {
    let json = expect(0, &["envelope", "--builtin", "B12", "--format", "json"]);
    let alg = AlgebraFile::from_json(&json).unwrap().to_algebra().unwrap();
    let g = GammaAlgebra::new(builtin(&BuiltinSpec::B12, FieldSpec::Rationals).unwrap()).unwrap();
    let GammaEnvelope { algebra, .. } = envelope_b42(&g).unwrap();
    assert_eq!(alg, algebra);
    // the file the CLI wrote is accepted back by the CLI
    let path = scratch("b12-envelope.json", &json);
    let p = path.to_str().unwrap();
    let again = expect(0, &["decompose", "--algebra", p, "--units", "1⊗e11,1⊗e12,1⊗e21,1⊗e22"]);
    assert!(again.contains("complementary: yes"), "{again}");
    // a Gamma-algebra given as a file behaves like the catalog entry
    let b12 = scratch(
        "b12.json",
        &builtin(&BuiltinSpec::B12, FieldSpec::Rationals).unwrap().to_json(),
    );
    assert_eq!(
        expect(0, &["envelope", "--algebra", b12.to_str().unwrap(), "--format", "json"]),
        json
    );
}

#[test]
fn grassmann_envelope_of_b12_is_alternative_only_in_characteristic_three() {
    for (field, code) in [("fp:3", 0), ("q", 1), ("fp:5", 1)] {
        let out = expect(
            0,
            &[
                "envelope",
                "--builtin",
                "B12",
                "--field",
                field,
                "--over",
                "grassmann:3",
                "--format",
                "json",
            ],
        );
        let path = scratch(&format!("b12-grassmann3-{field}.json"), &out);
        expect(
            code,
            &[
                "check-identities",
                "--algebra",
                path.to_str().unwrap(),
                "--identity",
                "alternative",
            ],
        );
    }
}

#[test]
fn iso_check_transcript() {
    let json = expect(
        0,
        &[
            "iso-check",
            "--builtin",
            "trunc:3",
            "--gamma-of",
            "--field",
            "fp:7",
            "--format",
            "json",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["isomorphism"], "isomorphism verified");
    assert_eq!(v["alternative"]["result"], "pass");
    let module: BracketModuleFile = serde_json::from_value(v["bracket_module"].clone()).unwrap();
    BracketModule::from_file(&module).unwrap().validate().unwrap();
    // B42 is not a Gamma-algebra: the failing conditions are the witness
    let out = expect(1, &["iso-check", "--builtin", "B42"]);
    assert!(out.contains("fail at"), "{out}");
}

#[test]
fn eval_normal_form_round_trips() {
    let expr = "(v1 v2) v3 + 2 (t1 v1)(v2 t1)";
    let json = expect(0, &["eval", expr, "--format", "json"]);
    let j: FreeGammaJson = serde_json::from_str(&json).unwrap();
    let back = FreeGammaElement::from_json(&j).unwrap();
    let direct = fg_normal_form(
        &FgExpr::parse(expr).unwrap(),
        FreeGamma::new(1, 3, FieldSpec::Rationals),
    )
    .unwrap();
    assert_eq!(back, direct);
    assert_eq!(expect(0, &["eval", expr]).trim(), direct.to_string());
}

#[test]
fn eval_in_a_target() {
    let json = expect(
        0,
        &[
            "eval",
            "--target-builtin",
            "B12",
            "--assign",
            "v1=x,v2=y",
            "v1 v2 - v2 v1",
            "--format",
            "json",
        ],
    );
    let alg = Arc::new(builtin(&BuiltinSpec::B12, FieldSpec::Rationals).unwrap());
    let j: ElementJson = serde_json::from_str(&json).unwrap();
    let e = AlgebraElement::from_json(&alg, &j).unwrap();
    assert_eq!(e, AlgebraElement::parse(&alg, "2*1").unwrap());
    // the cyclic sum vanishes under any odd assignment
    let out = expect(
        0,
        &[
            "eval",
            "--target-builtin",
            "trunc:2",
            "--gamma-of",
            "--field",
            "fp:5",
            "--assign",
            "v1=(s,0),v2=(0,1)+(1,0),v3=3*(0,s)",
            "(v1 v2) v3 + (v2 v3) v1 + (v3 v1) v2",
        ],
    );
    assert_eq!(out.trim(), "0");
}

#[test]
fn mul_json_round_trips() {
    let json = expect(0, &["mul", "--builtin", "M2", "e12", "e21", "--format", "json"]);
    let alg = Arc::new(builtin(&BuiltinSpec::M2, FieldSpec::Rationals).unwrap());
    let e = AlgebraElement::from_json(&alg, &serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(e, AlgebraElement::parse(&alg, "e11").unwrap());
}

#[test]
fn dims_agree_with_basis_counts() {
    let json = expect(
        0,
        &[
            "dims",
            "--m",
            "1",
            "--n",
            "3",
            "--max-weight",
            "6",
            "--check",
            "--format",
            "json",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for row in v["dims"].as_array().unwrap() {
        assert_eq!(row["dim"], row["basis_count"]);
    }
}

#[test]
fn usage_and_parse_errors_exit_two() {
    expect(2, &["no-such-command"]);
    expect(2, &["basis", "--n", "4"]);
    expect(2, &["straighten", "a(1,2"]);
    expect(2, &["mul", "--builtin", "B12", "2 x", "y"]);
    expect(
        2,
        &["check-identities", "--builtin", "B42", "--identity", "commutative-ish"],
    );
    expect(2, &["check-identities", "--builtin", "B42", "--field", "fp:4"]);
    let o = run(&["eval", "--target-builtin", "B12", "--assign", "v1=1", "v1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parity"), "{}", stderr(&o));
}

#[test]
fn malformed_files_report_locations() {
    let mut file = AlgebraFile::from_algebra(&builtin(&BuiltinSpec::B12, FieldSpec::Prime(5)).unwrap());
    file.table[2][1][0] = "1/0".into();
    let bad = scratch("bad-entry.json", &file.to_json());
    let o = run(&["mul", "--algebra", bad.to_str().unwrap(), "x", "y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("table[2][1][0]"), "{}", stderr(&o));

    let truncated = scratch("truncated.json", "{\"field\": \"q\",\n \"basis\": [");
    let o = run(&["mul", "--algebra", truncated.to_str().unwrap(), "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let missing = run(&["mul", "--algebra", "/nonexistent/algebra.json", "1", "1"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn non_gamma_inputs_are_mathematical_failures() {
    let m2: StructureAlgebra = builtin(&BuiltinSpec::M2, FieldSpec::Rationals).unwrap();
    let path = scratch("m2.json", &m2.to_json());
    // M2 is not commutative, so Gamma(M2) does not exist
    expect(1, &["envelope", "--algebra", path.to_str().unwrap(), "--gamma-of"]);
}
