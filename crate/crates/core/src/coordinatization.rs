//! Matrix coordinates for alternative algebras containing 2x2 matrix units.
//!
//! A Gamma-algebra `G = G0 + G1` yields a bracket module `(D, V, <,>)` with
//! `D = G0`, `V = G1` and `<u,v> = uv`. From it we build two algebras of the
//! same dimension: `M2(D) + V^2` with the coordinatized product, and the
//! envelope `G0 (x) M2 + G1 (x) Cay`. Bases are ordered so that the natural
//! isomorphism between them is the identity matrix.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::builtin::M2_LABELS;
use crate::algebra::{apply_map, builtin, AlgebraFile, BuiltinSpec, StructureAlgebra};
use crate::error::{Error, Result};
use crate::gamma::GammaAlgebra;
use crate::scalar::{FieldSpec, Scalar};

/// `(D, V, <,>)`: an associative unital `D`, a left `D`-module `V` killed by
/// `[D, D]`, and a skew `D`-bilinear bracket with central values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketModule {
    d: Arc<StructureAlgebra>,
    v_labels: Vec<String>,
    /// `action[a][v]`: coordinates of `a.v` in `V`.
    action: Vec<Vec<Vec<Scalar>>>,
    /// `bracket[u][v]`: coordinates of `<u,v>` in `D`.
    bracket: Vec<Vec<Vec<Scalar>>>,
}

fn dense_add(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

impl BracketModule {
    pub fn new(
        d: StructureAlgebra,
        v_labels: Vec<String>,
        action: Vec<Vec<Vec<Scalar>>>,
        bracket: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let (nd, nv) = (d.dim(), v_labels.len());
        let shape_ok = action.len() == nd
            && action.iter().all(|r| r.len() == nv && r.iter().all(|c| c.len() == nv))
            && bracket.len() == nv
            && bracket.iter().all(|r| r.len() == nv && r.iter().all(|c| c.len() == nd));
        if !shape_ok {
            return Err(Error::BracketModule(
                "action or bracket table has the wrong shape".into(),
            ));
        }
        let m = BracketModule {
            d: Arc::new(d),
            v_labels,
            action,
            bracket,
        };
        m.validate()?;
        Ok(m)
    }

    /// Reads off `D = G0`, `V = G1` and `<u,v> = uv`.
    pub fn from_gamma(g: &GammaAlgebra) -> Result<Self> {
        let c = g.carrier();
        let even = g.even();
        let odd = g.odd();
        let d = c.even_subalgebra()?;
        let pos_odd = |k: usize| odd.iter().position(|&o| o == k).expect("odd product");
        let pos_even = |k: usize| even.iter().position(|&e| e == k).expect("even product");
        let field = c.field();
        let action = even
            .iter()
            .map(|&a| {
                odd.iter()
                    .map(|&v| {
                        let mut out = vec![field.zero(); odd.len()];
                        for (k, s) in c.basis_product(a, v) {
                            out[pos_odd(*k)] = s.clone();
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let bracket = odd
            .iter()
            .map(|&u| {
                odd.iter()
                    .map(|&v| {
                        let mut out = vec![field.zero(); even.len()];
                        for (k, s) in c.basis_product(u, v) {
                            out[pos_even(*k)] = s.clone();
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let v_labels = odd.iter().map(|&i| c.label(i).to_string()).collect();
        BracketModule::new(d, v_labels, action, bracket)
    }

    pub fn field(&self) -> FieldSpec {
        self.d.field()
    }

    pub fn d(&self) -> &Arc<StructureAlgebra> {
        &self.d
    }

    pub fn v_dim(&self) -> usize {
        self.v_labels.len()
    }

    pub fn v_labels(&self) -> &[String] {
        &self.v_labels
    }

    /// `a.v` for arbitrary `a` in `D` and `v` in `V`.
    pub fn act(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.v_dim()];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cv) in v.iter().enumerate() {
                if !cv.is_zero() {
                    dense_add(&mut out, &(ca * cv), &self.action[i][j]);
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.d.zero_vector();
        for (i, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (j, cv) in v.iter().enumerate() {
                if !cv.is_zero() {
                    dense_add(&mut out, &(cu * cv), &self.bracket[i][j]);
                }
            }
        }
        out
    }

    fn v_basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.v_dim()];
        v[i] = self.field().one();
        v
    }

    /// Module axioms, `[D,D]V = 0`, skew symmetry, centrality,
    /// `D`-bilinearity and the cyclic law `<u,v>w + <v,w>u + <w,u>v = 0`.
    pub fn validate(&self) -> Result<()> {
        let d = &self.d;
        let nv = self.v_dim();
        let fail = |what: String| Err(Error::BracketModule(what));
        let unit = d.unit().ok_or_else(|| Error::BracketModule("D has no unit".into()))?;
        for v in 0..nv {
            let e = self.v_basis(v);
            if self.act(unit, &e) != e {
                return fail(format!("unit of D does not fix {}", self.v_labels[v]));
            }
        }
        for a in 0..d.dim() {
            for b in 0..d.dim() {
                let (ea, eb) = (d.basis_vector(a), d.basis_vector(b));
                for v in 0..nv {
                    let ev = self.v_basis(v);
                    let ab_v = self.act(&d.mul_vec(&ea, &eb), &ev);
                    if ab_v != self.act(&ea, &self.act(&eb, &ev)) {
                        return fail(format!(
                            "(ab)v != a(bv) at ({}, {}, {})",
                            d.label(a),
                            d.label(b),
                            self.v_labels[v]
                        ));
                    }
                    if ab_v != self.act(&d.mul_vec(&eb, &ea), &ev) {
                        return fail(format!(
                            "[{}, {}] acts nontrivially on {}",
                            d.label(a),
                            d.label(b),
                            self.v_labels[v]
                        ));
                    }
                }
            }
        }
        for u in 0..nv {
            for v in 0..nv {
                let (eu, ev) = (self.v_basis(u), self.v_basis(v));
                let uv = self.bracket(&eu, &ev);
                let vu = self.bracket(&ev, &eu);
                if uv.iter().zip(&vu).any(|(x, y)| !(x + y).is_zero()) {
                    return fail(format!(
                        "bracket not skew on ({}, {})",
                        self.v_labels[u], self.v_labels[v]
                    ));
                }
                for a in 0..d.dim() {
                    let ea = d.basis_vector(a);
                    if d.mul_vec(&ea, &uv) != d.mul_vec(&uv, &ea) {
                        return fail(format!(
                            "<{}, {}> does not commute with {}",
                            self.v_labels[u],
                            self.v_labels[v],
                            d.label(a)
                        ));
                    }
                    if self.bracket(&self.act(&ea, &eu), &ev) != d.mul_vec(&ea, &uv) {
                        return fail(format!(
                            "bracket not D-linear at ({}, {}, {})",
                            d.label(a),
                            self.v_labels[u],
                            self.v_labels[v]
                        ));
                    }
                }
                for w in 0..nv {
                    let ew = self.v_basis(w);
                    let mut total = self.act(&uv, &ew);
                    dense_add(&mut total, &self.field().one(), &self.act(&self.bracket(&ev, &ew), &eu));
                    dense_add(&mut total, &self.field().one(), &self.act(&self.bracket(&ew, &eu), &ev));
                    if total.iter().any(|c| !c.is_zero()) {
                        return fail(format!(
                            "cyclic law fails at ({}, {}, {})",
                            self.v_labels[u], self.v_labels[v], self.v_labels[w]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The unit of `M2(D) + V^2`.
    pub fn unit_element(self: &Arc<Self>) -> M2DElement {
        let u = self.d.unit().expect("validated").to_vec();
        let z = self.d.zero_vector();
        M2DElement {
            module: self.clone(),
            matrix: [u.clone(), z.clone(), z, u],
            x: vec![self.field().zero(); self.v_dim()],
            y: vec![self.field().zero(); self.v_dim()],
        }
    }

    /// `M2(D) + V^2` as a structure-constant algebra. Basis: `e_ij[d]` for
    /// each matrix slot and `D`-basis vector, then `x[v]`, then `y[v]`.
    pub fn to_algebra(self: &Arc<Self>) -> Result<StructureAlgebra> {
        let (nd, nv) = (self.d.dim(), self.v_dim());
        let dim = 4 * nd + 2 * nv;
        let mut labels = Vec::with_capacity(dim);
        for slot in M2_LABELS {
            for l in self.d.labels() {
                labels.push(format!("{slot}[{l}]"));
            }
        }
        for slot in ["x", "y"] {
            for l in &self.v_labels {
                labels.push(format!("{slot}[{l}]"));
            }
        }
        let parity = (0..dim).map(|k| u8::from(k >= 4 * nd)).collect();
        let basis = |k: usize| M2DElement::from_coords(self, &unit_vec(self.field(), dim, k));
        let unit = self.unit_element().coords();
        StructureAlgebra::from_fn(self.field(), labels, parity, Some(unit), |i, j| {
            let p = m2d_multiply(&basis(i), &basis(j)).expect("same module");
            p.coords()
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
    }
}

fn unit_vec(field: FieldSpec, dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[k] = field.one();
    v
}

/// Element `X_a + (x, y)` of `M2(D) + V^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2DElement {
    pub module: Arc<BracketModule>,
    /// `d11, d12, d21, d22` as `D`-coordinates.
    pub matrix: [Vec<Scalar>; 4],
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
}

impl M2DElement {
    /// From coordinates in the basis of [`BracketModule::to_algebra`].
    pub fn from_coords(module: &Arc<BracketModule>, c: &[Scalar]) -> Self {
        let (nd, nv) = (module.d.dim(), module.v_dim());
        let block = |k: usize| c[k * nd..(k + 1) * nd].to_vec();
        M2DElement {
            module: module.clone(),
            matrix: [block(0), block(1), block(2), block(3)],
            x: c[4 * nd..4 * nd + nv].to_vec(),
            y: c[4 * nd + nv..4 * nd + 2 * nv].to_vec(),
        }
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self.matrix.concat();
        out.extend(self.x.iter().cloned());
        out.extend(self.y.iter().cloned());
        out
    }
}

/// `XY = X_a Y_a + (-<x,t> -<y,t>; <x,z> <y,z>) + (z,t) X_a + (x,y) (Y_a)*`
/// where `(z,t) X = (z d11 + t d21, z d12 + t d22)` and
/// `(d11 d12; d21 d22)* = (d22 -d12; -d21 d11)`.
pub fn m2d_multiply(a: &M2DElement, b: &M2DElement) -> Result<M2DElement> {
    if !Arc::ptr_eq(&a.module, &b.module) && a.module != b.module {
        return Err(Error::AlgebraMismatch);
    }
    let m = &a.module;
    let d = &m.d;
    let add = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> { u.iter().zip(v).map(|(p, q)| p + q).collect() };
    let neg = |u: &[Scalar]| -> Vec<Scalar> { u.iter().map(|p| -p).collect() };
    let (xa, ya) = (&a.matrix, &b.matrix);
    // matrix part
    let mut matrix: [Vec<Scalar>; 4] = std::array::from_fn(|_| d.zero_vector());
    for i in 0..2 {
        for k in 0..2 {
            let mut acc = d.zero_vector();
            for j in 0..2 {
                acc = add(&acc, &d.mul_vec(&xa[2 * i + j], &ya[2 * j + k]));
            }
            matrix[2 * i + k] = acc;
        }
    }
    let (x, y, z, t) = (&a.x, &a.y, &b.x, &b.y);
    let brackets = [
        neg(&m.bracket(x, t)),
        neg(&m.bracket(y, t)),
        m.bracket(x, z),
        m.bracket(y, z),
    ];
    for (slot, br) in matrix.iter_mut().zip(&brackets) {
        *slot = add(slot, br);
    }
    // (z,t) X_a
    let row = |p: &[Scalar], q: &[Scalar], mx: &[Vec<Scalar>; 4]| {
        (
            add(&m.act(&mx[0], p), &m.act(&mx[2], q)),
            add(&m.act(&mx[1], p), &m.act(&mx[3], q)),
        )
    };
    let (z1, t1) = row(z, t, xa);
    let star = [ya[3].clone(), neg(&ya[1]), neg(&ya[2]), ya[0].clone()];
    let (x1, y1) = row(x, y, &star);
    Ok(M2DElement {
        module: m.clone(),
        matrix,
        x: add(&z1, &x1),
        y: add(&t1, &y1),
    })
}

/// `G0 (x) S0 + G1 (x) S1` with the untwisted product
/// `(g (x) a)(h (x) b) = gh (x) ab`. Basis pairs are ordered with the `S`
/// index outermost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaEnvelope {
    pub algebra: StructureAlgebra,
    /// `(Gamma index, S index)` of each basis vector.
    pub pairs: Vec<(usize, usize)>,
}

impl GammaEnvelope {
    pub fn index(&self, g: usize, s: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (g, s))
    }
}

pub fn gamma_envelope(g: &StructureAlgebra, s: &StructureAlgebra) -> Result<GammaEnvelope> {
    if g.field() != s.field() {
        return Err(Error::FieldMismatch(g.field(), s.field()));
    }
    let field = g.field();
    let pairs: Vec<(usize, usize)> = (0..s.dim())
        .flat_map(|b| {
            (0..g.dim())
                .filter(move |&a| g.parity(a) == s.parity(b))
                .map(move |a| (a, b))
        })
        .collect();
    let pos = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b));
    let labels = pairs
        .iter()
        .map(|&(a, b)| format!("{}⊗{}", g.label(a), s.label(b)))
        .collect();
    let parity = pairs.iter().map(|&(a, _)| g.parity(a)).collect();
    let unit = match (crate::gamma::even_unit(g), s.unit()) {
        (Some(gu), Some(su)) => {
            let mut u = vec![field.zero(); pairs.len()];
            let mut ok = true;
            for (a, ga) in gu.iter().enumerate() {
                for (b, sb) in su.iter().enumerate() {
                    let c = ga * sb;
                    match pos(a, b) {
                        Some(k) => u[k] = c,
                        None if c.is_zero() => {}
                        None => ok = false,
                    }
                }
            }
            ok.then_some(u)
        }
        _ => None,
    };
    let algebra = StructureAlgebra::from_fn(field, labels, parity, unit, |p, q| {
        let (ga, sa) = pairs[p];
        let (gb, sb) = pairs[q];
        let mut out = Vec::new();
        for (k1, c1) in g.basis_product(ga, gb) {
            for (k2, c2) in s.basis_product(sa, sb) {
                let idx = pos(*k1, *k2).expect("graded product stays in the envelope");
                out.push((idx, c1 * c2));
            }
        }
        out
    })?;
    Ok(GammaEnvelope { algebra, pairs })
}

/// `G0 (x) M2 + G1 (x) Cay`.
pub fn envelope_b42(g: &GammaAlgebra) -> Result<GammaEnvelope> {
    let b42 = builtin(&BuiltinSpec::B42, g.carrier().field())?;
    gamma_envelope(g.carrier(), &b42)
}

/// `M2(G0) + G1^2` for a Gamma-algebra.
pub fn gamma_to_m2(g: &GammaAlgebra) -> Result<(Arc<BracketModule>, StructureAlgebra)> {
    let module = Arc::new(BracketModule::from_gamma(g)?);
    let alg = module.to_algebra()?;
    Ok((module, alg))
}

/// The map `X + (x,y) -> X + x (x) m1 + y (x) m2` together with both
/// algebras, after checking it is a bijective homomorphism.
#[derive(Clone, Debug)]
pub struct PhiIso {
    pub source: StructureAlgebra,
    pub target: GammaEnvelope,
    /// `images[i]`: image of source basis vector `i` in target coordinates.
    pub images: Vec<Vec<Scalar>>,
}

pub fn phi_iso(g: &GammaAlgebra) -> Result<PhiIso> {
    let (module, source) = gamma_to_m2(g)?;
    let target = envelope_b42(g)?;
    let (nd, nv) = (module.d().dim(), module.v_dim());
    let even = g.even();
    let odd = g.odd();
    let field = source.field();
    let mut images = Vec::with_capacity(source.dim());
    for slot in 0..4 {
        for &e in even.iter().take(nd) {
            images.push(unit_vec(
                field,
                target.algebra.dim(),
                target.index(e, slot).expect("slot"),
            ));
        }
    }
    for cay in [4, 5] {
        for &o in odd.iter().take(nv) {
            images.push(unit_vec(
                field,
                target.algebra.dim(),
                target.index(o, cay).expect("slot"),
            ));
        }
    }
    source.verify_isomorphism(&target.algebra, &images)?;
    Ok(PhiIso { source, target, images })
}

/// An isomorphism from `M2(F) + B(1,2)_1^2` onto the split octonions with
/// parameter `v^2`: identity on matrix units and
/// `x[x] -> v e22`, `y[x] -> -v e12`, `x[y] -> c v e21`, `y[y] -> -c v e11`
/// with `c = 1/v^2`.
pub fn octonion_isomorphism(field: FieldSpec, v_squared: &Scalar) -> Result<Vec<Vec<Scalar>>> {
    let c = v_squared
        .inverse()
        .ok_or_else(|| Error::InvalidParams("v^2 must be nonzero".into()))?;
    let mut images: Vec<Vec<Scalar>> = (0..4).map(|k| unit_vec(field, 8, k)).collect();
    let scaled = |k: usize, s: &Scalar| {
        let mut v = vec![field.zero(); 8];
        v[k] = s.clone();
        v
    };
    let one = field.one();
    // source order: x[x], x[y], y[x], y[y]
    images.push(scaled(7, &one));
    images.push(scaled(6, &c));
    images.push(scaled(5, &-&one));
    images.push(scaled(4, &-&c));
    Ok(images)
}

/// `F(psi)(g (x) b) = psi(g) (x) b` on the B(4,2) envelopes, checked to be
/// a homomorphism. `psi[i]` is the image of basis vector `i` of `source`.
pub fn transport_morphism(
    source: &GammaAlgebra,
    target: &GammaAlgebra,
    psi: &[Vec<Scalar>],
) -> Result<Vec<Vec<Scalar>>> {
    source.carrier().verify_graded_homomorphism(target.carrier(), psi)?;
    let env_s = envelope_b42(source)?;
    let env_t = envelope_b42(target)?;
    let field = source.carrier().field();
    let images: Vec<Vec<Scalar>> = env_s
        .pairs
        .iter()
        .map(|&(g, b)| {
            let mut out = vec![field.zero(); env_t.algebra.dim()];
            for (h, c) in psi[g].iter().enumerate() {
                if !c.is_zero() {
                    let k = env_t.index(h, b).expect("graded psi keeps parity");
                    out[k] = c.clone();
                }
            }
            out
        })
        .collect();
    env_s.algebra.verify_homomorphism(&env_t.algebra, &images)?;
    Ok(images)
}

/// Recovers `psi` from an envelope map that fixes every `1 (x) e_ij`.
pub fn recover_morphism(source: &GammaAlgebra, target: &GammaAlgebra, phi: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let env_s = envelope_b42(source)?;
    let env_t = envelope_b42(target)?;
    let field = source.carrier().field();
    if phi.len() != env_s.algebra.dim() || phi.iter().any(|v| v.len() != env_t.algebra.dim()) {
        return Err(Error::DimensionMismatch {
            expected: env_s.algebra.dim(),
            got: phi.len(),
        });
    }
    let lift = |env: &GammaEnvelope, gv: &[Scalar], b: usize| {
        let mut out = vec![field.zero(); env.algebra.dim()];
        for (g, c) in gv.iter().enumerate() {
            if !c.is_zero() {
                out[env.index(g, b).expect("even unit")] = c.clone();
            }
        }
        out
    };
    for (slot, label) in M2_LABELS.iter().enumerate() {
        let src = lift(&env_s, source.unit(), slot);
        let expected = lift(&env_t, target.unit(), slot);
        if apply_map(phi, &src, &env_t.algebra) != expected {
            return Err(Error::NotM2Fixing(label.to_string()));
        }
    }
    let component = |v: &[Scalar], g: usize, b: usize| -> Scalar {
        env_t.index(g, b).map(|k| v[k].clone()).unwrap_or_else(|| field.zero())
    };
    let tc = target.carrier();
    let n_t = tc.dim();
    let mut psi = vec![vec![field.zero(); n_t]; source.carrier().dim()];
    for &g in &source.even() {
        let img = &phi[env_s.index(g, 0).expect("even slot")];
        for h in 0..n_t {
            psi[g][h] = component(img, h, 0);
        }
    }
    for &g in &source.odd() {
        let lbl = source.carrier().label(g);
        let img1 = &phi[env_s.index(g, 4).expect("odd slot")];
        let img2 = &phi[env_s.index(g, 5).expect("odd slot")];
        // (1 e11)(g m1) = g m1 kills any m2 part; (1 e22)(g m2) = g m2 kills any m1 part
        if (0..n_t).any(|h| !component(img1, h, 5).is_zero()) {
            return Err(Error::ForcingViolation {
                basis: format!("{lbl}⊗m1"),
                component: "m2".into(),
                unit: "e11".into(),
            });
        }
        if (0..n_t).any(|h| !component(img2, h, 4).is_zero()) {
            return Err(Error::ForcingViolation {
                basis: format!("{lbl}⊗m2"),
                component: "m1".into(),
                unit: "e22".into(),
            });
        }
        // (1 e12)(g m1) = g m2 forces the m1 coefficient of the first image to
        // equal the m2 coefficient of the second
        if (0..n_t).any(|h| component(img1, h, 4) != component(img2, h, 5)) {
            return Err(Error::NotHomomorphism(format!(
                "image of {lbl}⊗m2 is not (1⊗e12) times the image of {lbl}⊗m1"
            )));
        }
        for h in 0..n_t {
            psi[g][h] = component(img1, h, 4);
        }
    }
    env_s.algebra.verify_homomorphism(&env_t.algebra, phi)?;
    let induced = transport_morphism(source, target, &psi)?;
    if induced != phi {
        return Err(Error::NotHomomorphism(
            "envelope map is not induced by a Gamma-morphism".into(),
        ));
    }
    Ok(psi)
}

/// JSON form of a bracket module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketModuleFile {
    #[serde(rename = "D")]
    pub d: AlgebraFile,
    #[serde(rename = "V")]
    pub v: ModuleFile,
    pub bracket: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dim: usize,
    pub labels: Vec<String>,
    /// `action[a][v]`: coordinates of `a.v`.
    pub action: Vec<Vec<Vec<String>>>,
}

fn render(t: &[Vec<Vec<Scalar>>]) -> Vec<Vec<Vec<String>>> {
    t.iter()
        .map(|r| r.iter().map(|v| v.iter().map(Scalar::to_string).collect()).collect())
        .collect()
}

fn parse_table(field: FieldSpec, t: &[Vec<Vec<String>>], what: &str) -> Result<Vec<Vec<Vec<Scalar>>>> {
    t.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, v)| {
                    v.iter()
                        .enumerate()
                        .map(|(k, s)| {
                            field
                                .parse_scalar(s)
                                .map_err(|e| Error::Parse(format!("{what}[{i}][{j}][{k}]: {e}")))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl BracketModule {
    pub fn to_file(&self) -> BracketModuleFile {
        BracketModuleFile {
            d: AlgebraFile::from_algebra(&self.d),
            v: ModuleFile {
                dim: self.v_dim(),
                labels: self.v_labels.clone(),
                action: render(&self.action),
            },
            bracket: render(&self.bracket),
        }
    }

    pub fn from_file(f: &BracketModuleFile) -> Result<Self> {
        let d = f.d.to_algebra()?;
        if f.v.labels.len() != f.v.dim {
            return Err(Error::Parse("V.labels must have V.dim entries".into()));
        }
        let action = parse_table(d.field(), &f.v.action, "V.action")?;
        let bracket = parse_table(d.field(), &f.bracket, "bracket")?;
        BracketModule::new(d, f.v.labels.clone(), action, bracket)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_identity, IdentityKind};
    use crate::gamma::gamma_of_commutative;

    fn b12(f: FieldSpec) -> GammaAlgebra {
        GammaAlgebra::new(builtin(&BuiltinSpec::B12, f).unwrap()).unwrap()
    }

    #[test]
    fn odd_square_gives_e21() {
        let g = b12(FieldSpec::Rationals);
        let (module, alg) = gamma_to_m2(&g).unwrap();
        let (x1, x2) = (alg.index_of("x[x]").unwrap(), alg.index_of("x[y]").unwrap());
        let a = M2DElement::from_coords(&module, &alg.basis_vector(x1));
        let b = M2DElement::from_coords(&module, &alg.basis_vector(x2));
        let p = m2d_multiply(&a, &b).unwrap();
        assert_eq!(alg.format_vector(&p.coords()), "e21[1]");
    }

    #[test]
    fn unit_acts_trivially() {
        let g = gamma_of_commutative(&builtin(&BuiltinSpec::Trunc(2), FieldSpec::Prime(5)).unwrap()).unwrap();
        let (module, alg) = gamma_to_m2(&g).unwrap();
        let one = module.unit_element();
        for i in 0..alg.dim() {
            let y = M2DElement::from_coords(&module, &alg.basis_vector(i));
            assert_eq!(m2d_multiply(&one, &y).unwrap(), y);
            assert_eq!(m2d_multiply(&y, &one).unwrap(), y);
        }
    }

    #[test]
    fn b12_gives_split_octonions() {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(3), FieldSpec::Prime(5)] {
            let (_, alg) = gamma_to_m2(&b12(f)).unwrap();
            assert!(check_identity(&alg, IdentityKind::Alternative).passed());
            for v2 in [1, 2, -3] {
                let v2 = f.from_i64(v2);
                if v2.is_zero() {
                    continue;
                }
                let o = builtin(&BuiltinSpec::OctonionSplit { v_squared: v2.clone() }, f).unwrap();
                alg.verify_isomorphism(&o, &octonion_isomorphism(f, &v2).unwrap())
                    .unwrap();
            }
        }
    }

    #[test]
    fn phi_is_an_isomorphism() {
        let f = FieldSpec::Prime(7);
        let g = gamma_of_commutative(&builtin(&BuiltinSpec::Trunc(3), f).unwrap()).unwrap();
        let phi = phi_iso(&g).unwrap();
        assert_eq!(phi.source.dim(), 4 * 3 + 2 * 6);
        assert_eq!(phi.target.algebra.dim(), phi.source.dim());
    }

    #[test]
    fn envelope_of_one_odd_generator_is_split_null() {
        let q = FieldSpec::Rationals;
        let g = GammaAlgebra::new(builtin(&BuiltinSpec::Grassmann(1), q).unwrap()).unwrap();
        let env = envelope_b42(&g).unwrap();
        let s = builtin(&BuiltinSpec::CaySplitNull, q).unwrap();
        assert_eq!(env.algebra.table(), s.table());
        assert_eq!(env.algebra.unit(), s.unit());
    }

    #[test]
    fn identity_round_trip_and_forcing() {
        let q = FieldSpec::Rationals;
        let g = b12(q);
        let id: Vec<_> = (0..3).map(|i| g.carrier().basis_vector(i)).collect();
        let phi = transport_morphism(&g, &g, &id).unwrap();
        assert_eq!(recover_morphism(&g, &g, &phi).unwrap(), id);
        let env = envelope_b42(&g).unwrap();
        let mut bad = phi.clone();
        let k = env.index(1, 4).unwrap();
        bad[k][env.index(2, 5).unwrap()] = q.one();
        assert!(matches!(
            recover_morphism(&g, &g, &bad),
            Err(Error::ForcingViolation { .. })
        ));
    }

    #[test]
    fn bracket_module_json_round_trip() {
        let g = b12(FieldSpec::Prime(5));
        let m = BracketModule::from_gamma(&g).unwrap();
        let json = serde_json::to_string(&m.to_file()).unwrap();
        let back: BracketModuleFile = serde_json::from_str(&json).unwrap();
        assert_eq!(BracketModule::from_file(&back).unwrap(), m);
    }
}
