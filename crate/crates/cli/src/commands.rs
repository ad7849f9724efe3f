use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use gammalg_core::algebra::{decompose_m2_bimodule, M2Embedding};
use gammalg_core::coordinatization::gamma_envelope;
use gammalg_core::free_gamma::{split_assignments, GeneratorImages};
use gammalg_core::gamma::GammaReport;
use gammalg_core::grassmann::parse_monomial;
use gammalg_core::{
    builtin, check_identity, enumerate_basis, enumerate_basis_filtered, envelope_b42, fg_dimensions, fg_evaluate,
    fg_normal_form, gamma_of_commutative, gamma_to_m2, multiply, parse_builtin, phi_iso, reduce_odd,
    verify_gamma_conditions, AlgebraElement, AlgebraFile, Error, FgExpr, FieldSpec, FreeGamma, GammaAlgebra,
    IdentityKind, IdentityReport, StructureAlgebra,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{GammaSource, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    InFile { path: String, source: Error },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 when the input was well formed but fails a mathematical property,
    /// 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::InFile { source: e, .. } if is_mathematical(e) => 1,
            _ => 2,
        }
    }
}

fn is_mathematical(e: &Error) -> bool {
    matches!(
        e,
        Error::GammaConditions(_)
            | Error::NotHomomorphism(_)
            | Error::NotGraded(_)
            | Error::NotBijective { .. }
            | Error::NotM2Fixing(_)
            | Error::ForcingViolation { .. }
            | Error::NotCommutative(_)
            | Error::NotAssociative(_)
            | Error::NoUnit(_)
            | Error::MatrixUnitRelations(_)
            | Error::BracketModule(_)
            | Error::OutsideM2
            | Error::Singular
    )
}

/// Both renderings of a result. `ok == false` means a check failed and the
/// process exits with 1 after printing.
pub struct Output {
    pub text: String,
    pub json: String,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: &impl Serialize, ok: bool) -> Self {
        Output {
            text,
            json: serde_json::to_string_pretty(json).expect("output types always serialize"),
            ok,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn field_of(flag: Option<&str>) -> CliResult<FieldSpec> {
    Ok(flag.unwrap_or("q").parse()?)
}

fn read_algebra(path: &Path, field: Option<&str>) -> CliResult<StructureAlgebra> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let in_file = |source| CliError::InFile {
        path: shown.clone(),
        source,
    };
    let file = AlgebraFile::from_json(&text).map_err(in_file)?;
    if let Some(f) = field {
        let f: FieldSpec = f.parse()?;
        if f != file.field {
            return Err(CliError::Usage(format!(
                "{shown}: file is over {}, but --field {f} was given",
                file.field
            )));
        }
    }
    file.to_algebra().map_err(in_file)
}

pub fn load(field: Option<&str>, src: &Source) -> CliResult<StructureAlgebra> {
    match (&src.algebra, &src.builtin) {
        (Some(path), _) => read_algebra(path, field),
        (None, Some(name)) => {
            let f = field_of(field)?;
            Ok(builtin(&parse_builtin(name, f)?, f)?)
        }
        (None, None) => Err(CliError::Usage(
            "an algebra is required (--algebra or --builtin)".into(),
        )),
    }
}

fn load_carrier(field: Option<&str>, src: &GammaSource) -> CliResult<StructureAlgebra> {
    let alg = load(field, &src.source)?;
    if src.gamma_of {
        Ok(gamma_of_commutative(&alg)?.carrier().as_ref().clone())
    } else {
        Ok(alg)
    }
}

fn load_gamma(field: Option<&str>, src: &GammaSource) -> CliResult<GammaAlgebra> {
    Ok(GammaAlgebra::new(load_carrier(field, src)?)?)
}

/// Human rendering of a structure-constant file: basis, unit and the
/// nonzero products.
fn render_algebra(alg: &StructureAlgebra) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}, dimension {}", alg.field(), alg.dim());
    let basis: Vec<String> = (0..alg.dim())
        .map(|i| format!("{}{}", alg.label(i), if alg.parity(i) == 1 { "'" } else { "" }))
        .collect();
    let _ = writeln!(s, "basis (odd marked '): {}", basis.join(" "));
    match alg.unit() {
        Some(u) => {
            let _ = writeln!(s, "unit: {}", alg.format_vector(u));
        }
        None => s.push_str("unit: none\n"),
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let p = alg.basis_product(i, j);
            if !p.is_empty() {
                let _ = writeln!(
                    s,
                    "{} * {} = {}",
                    alg.label(i),
                    alg.label(j),
                    alg.format_vector(&alg.dense(p))
                );
            }
        }
    }
    s
}

pub fn mul(field: Option<&str>, src: &Source, a: &str, b: &str) -> CliResult<Output> {
    let alg = Arc::new(load(field, src)?);
    let x = AlgebraElement::parse(&alg, a)?;
    let y = AlgebraElement::parse(&alg, b)?;
    let p = multiply(&x, &y)?;
    Ok(Output::new(alg.format_vector(p.coords()), &p.to_json(), true))
}

pub fn check_identities(field: Option<&str>, src: &GammaSource, names: &[String]) -> CliResult<Output> {
    let alg = load_carrier(field, src)?;
    let kinds: Vec<IdentityKind> = if names.is_empty() {
        IdentityKind::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?
    };
    let reports: Vec<IdentityReport> = kinds.into_iter().map(|k| check_identity(&alg, k)).collect();
    let ok = reports
        .iter()
        .all(|r| !matches!(r.outcome, gammalg_core::IdentityOutcome::Fail { .. }));
    let text = reports.iter().map(|r| format!("{r}\n")).collect();
    Ok(Output::new(text, &reports, ok))
}

#[derive(Serialize, Deserialize)]
pub struct BasisJson {
    pub n: usize,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter_m: Option<usize>,
    pub count: usize,
    pub monomials: Vec<Vec<[usize; 2]>>,
}

pub fn basis(n: usize, degree: usize, filter_m: Option<usize>) -> CliResult<Output> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let monos = match filter_m {
        Some(m) if m == 0 || m > n => return Err(CliError::Usage(format!("--filter-m must lie in 1..={n}"))),
        Some(m) => enumerate_basis_filtered(n, m, degree),
        None => enumerate_basis(n, degree),
    };
    let text = monos.iter().map(|u| format!("{u}\n")).collect();
    let json = BasisJson {
        n,
        degree,
        filter_m,
        count: monos.len(),
        monomials: monos
            .iter()
            .map(|u| u.pairs().iter().map(|&(i, j)| [i, j]).collect())
            .collect(),
    };
    Ok(Output::new(text, &json, true))
}

pub fn straighten(field: Option<&str>, monomial: &str, n: Option<usize>, odd: Option<usize>) -> CliResult<Output> {
    let f = field_of(field)?;
    let pairs = parse_monomial(monomial)?;
    let used = pairs.iter().map(|&(i, j)| i.max(j)).chain(odd).max().unwrap_or(1);
    let s = gammalg_core::straighten(&pairs, n.unwrap_or(used), f)?;
    Ok(match odd {
        None => Output::new(s.to_string(), &s.to_json(), true),
        Some(j) => {
            let r = reduce_odd(&s, j)?;
            Output::new(r.to_string(), &r.to_json(), true)
        }
    })
}

pub fn envelope(field: Option<&str>, src: &GammaSource, over: Option<&str>, coordinatized: bool) -> CliResult<Output> {
    let g = load_gamma(field, src)?;
    let alg = if coordinatized {
        gamma_to_m2(&g)?.1
    } else {
        match over {
            None => envelope_b42(&g)?.algebra,
            Some(name) => {
                let f = g.carrier().field();
                let s = if Path::new(name).exists() {
                    read_algebra(Path::new(name), Some(&f.to_string()))?
                } else {
                    builtin(&parse_builtin(name, f)?, f)?
                };
                gamma_envelope(g.carrier(), &s)?.algebra
            }
        }
    };
    Ok(Output::new(
        render_algebra(&alg),
        &AlgebraFile::from_algebra(&alg),
        true,
    ))
}

#[derive(Serialize)]
struct IsoTranscript<'a> {
    field: FieldSpec,
    gamma_conditions: &'a GammaReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    bracket_module: Option<gammalg_core::coordinatization::BracketModuleFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinatized_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alternative: Option<IdentityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    envelope_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    isomorphism: Option<String>,
}

pub fn iso_check(field: Option<&str>, src: &GammaSource) -> CliResult<Output> {
    let carrier = load_carrier(field, src)?;
    let report = verify_gamma_conditions(&carrier);
    let mut t = IsoTranscript {
        field: carrier.field(),
        gamma_conditions: &report,
        bracket_module: None,
        coordinatized_dim: None,
        alternative: None,
        envelope_dim: None,
        isomorphism: None,
    };
    let mut text = format!("{report}\n");
    if !report.all_pass() {
        return Ok(Output::new(text, &t, false));
    }
    let g = GammaAlgebra::new(carrier)?;
    let (module, coord) = gamma_to_m2(&g)?;
    let alt = check_identity(&coord, IdentityKind::Alternative);
    let _ = writeln!(text, "coordinatized algebra: dimension {}", coord.dim());
    let _ = writeln!(text, "{alt}");
    t.bracket_module = Some(module.to_file());
    t.coordinatized_dim = Some(coord.dim());
    let mut ok = alt.passed();
    t.alternative = Some(alt);
    let verdict = match phi_iso(&g) {
        Ok(iso) => {
            t.envelope_dim = Some(iso.target.algebra.dim());
            let _ = writeln!(text, "envelope G0*M2 + G1*Cay: dimension {}", iso.target.algebra.dim());
            "isomorphism verified".to_string()
        }
        Err(e) => {
            ok = false;
            format!("isomorphism fails: {e}")
        }
    };
    let _ = writeln!(text, "{verdict}");
    t.isomorphism = Some(verdict);
    Ok(Output::new(text, &t, ok))
}

/// Largest `t` and `v` indices named on the left of an assignment.
fn assigned_signature(assign: &str) -> (usize, usize) {
    let mut sig = (0, 0);
    for part in split_assignments(assign) {
        let name = part.split('=').next().unwrap_or("").trim();
        let idx = |rest: &str| rest.parse::<usize>().unwrap_or(0);
        if let Some(k) = name.strip_prefix('t') {
            sig.0 = sig.0.max(idx(k));
        } else if let Some(k) = name.strip_prefix('v') {
            sig.1 = sig.1.max(idx(k));
        }
    }
    sig
}

pub fn eval(
    field: Option<&str>,
    target: Option<&GammaSource>,
    assign: &str,
    m: Option<usize>,
    n: Option<usize>,
    expr: &str,
) -> CliResult<Output> {
    let e = FgExpr::parse(expr)?;
    let (em, en) = e.signature();
    let (am, an) = assigned_signature(assign);
    let (m0, n0) = (em.max(am), en.max(an));
    for (flag, given, needed) in [("--m", m, m0), ("--n", n, n0)] {
        if given.is_some_and(|g| g < needed) {
            return Err(CliError::Usage(format!(
                "{flag} is smaller than the generators in use ({needed})"
            )));
        }
    }
    let (m, n) = (m.unwrap_or(m0), n.unwrap_or(n0));
    match target {
        None => {
            if !assign.trim().is_empty() {
                return Err(CliError::Usage("--assign needs a target".into()));
            }
            let nf = fg_normal_form(&e, FreeGamma::new(m, n, field_of(field)?))?;
            Ok(Output::new(nf.to_string(), &nf.to_json(), true))
        }
        Some(src) => {
            let g = load_gamma(field, src)?;
            let nf = fg_normal_form(&e, FreeGamma::new(m, n, g.carrier().field()))?;
            let images = GeneratorImages::parse(&g, m, n, assign)?;
            let v = fg_evaluate(&nf, &g, &images)?;
            Ok(Output::new(g.carrier().format_vector(v.coords()), &v.to_json(), true))
        }
    }
}

#[derive(Serialize)]
struct DecompositionJson {
    field: FieldSpec,
    labels: Vec<String>,
    associative: Vec<Vec<String>>,
    cayley: Vec<Vec<String>>,
    complementary: bool,
}

pub fn decompose(field: Option<&str>, src: &Source, units: &str) -> CliResult<Output> {
    let alg = load(field, src)?;
    let parts: Vec<&str> = units.split(',').map(str::trim).collect();
    let [a, b, c, d] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--units needs four elements, got {}",
            parts.len()
        )));
    };
    let emb = M2Embedding {
        units: [
            alg.parse_element(a)?,
            alg.parse_element(b)?,
            alg.parse_element(c)?,
            alg.parse_element(d)?,
        ],
    };
    let d = decompose_m2_bimodule(&alg, &emb)?;
    let render = |vs: &[Vec<gammalg_core::Scalar>]| -> Vec<Vec<String>> {
        vs.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect()
    };
    let mut text = String::new();
    for (name, part) in [("associative", &d.associative), ("cayley", &d.cayley)] {
        let _ = writeln!(text, "{name} part: dimension {}", part.len());
        for v in part {
            let _ = writeln!(text, "  {}", alg.format_vector(v));
        }
    }
    let _ = writeln!(
        text,
        "{}",
        if d.complementary {
            "complementary: yes"
        } else {
            "complementary: no"
        }
    );
    let json = DecompositionJson {
        field: alg.field(),
        labels: alg.labels().to_vec(),
        associative: render(&d.associative),
        cayley: render(&d.cayley),
        complementary: d.complementary,
    };
    Ok(Output::new(text, &json, d.complementary))
}

#[derive(Serialize, Deserialize)]
pub struct DimsJson {
    pub m: usize,
    pub n: usize,
    pub dims: Vec<DimRow>,
}

#[derive(Serialize, Deserialize)]
pub struct DimRow {
    pub weight: usize,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_count: Option<usize>,
}

pub fn dims(field: Option<&str>, m: usize, n: usize, max_weight: usize, check: bool) -> CliResult<Output> {
    let sig = FreeGamma::new(m, n, field_of(field)?);
    let rows: Vec<DimRow> = (0..=max_weight)
        .map(|w| DimRow {
            weight: w,
            dim: fg_dimensions(m, n, w),
            basis_count: check.then(|| sig.basis(w).len()),
        })
        .collect();
    let ok = rows.iter().all(|r| r.basis_count.map_or(true, |c| c == r.dim));
    let mut text = String::new();
    for r in &rows {
        let _ = write!(text, "weight {}: {}", r.weight, r.dim);
        if let Some(c) = r.basis_count {
            let _ = write!(text, " (basis {c})");
        }
        text.push('\n');
    }
    Ok(Output::new(text, &DimsJson { m, n, dims: rows }, ok))
}
