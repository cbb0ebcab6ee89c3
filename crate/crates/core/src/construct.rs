//! The plane model `φ(X/H)` for `φ = (f : g : 1)`, its certification, and
//! the quotient model `x^q + x = u^s` of `X/C_m`.
//!
//! `f = 1/t1^m` and `g = 1/t2^m` have pole divisors `Σ_{G1} σ(P2)` and
//! `Σ_{G2} τ(P1)`. The model is found by interpolation: degree-`d` forms
//! vanishing on the images of many non-rational points over an extension
//! `GF(q^(2k))`, with `d = (G1 : H) + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::criterion::{orbit_sum, Divisor};
use crate::ffield::{build_field, Embedding, Fe, FieldCtx, FieldError};
use crate::funcfield::{eval_poly, lift_poly, CurveFunction, FuncFieldError, FunctionField, WitnessCertificate, WitnessError};
use crate::groups::{self, GroupError};
use crate::instance::{HermitianInstance, InstanceError};
use crate::linalg::nullspace;
use crate::projective::{HermitianCurve, ProjPoint, ProjectiveError};
use crate::SCHEMA_VERSION;

/// Samples per unknown coefficient.
pub const OVERSAMPLING: usize = 3;
/// Highest tower level tried when raising the sampling level.
pub const MAX_SAMPLING_LEVEL: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelClause {
    /// `deg F = (G1 : H) + 1`.
    Degree,
    /// Both marked points are smooth points of `F = 0`.
    Smoothness,
    /// `F(X, Y, 0)` vanishes at the images of rational points with the
    /// multiplicities of `D/H`, totalling `d`.
    LineDivisor,
    /// Projection from each marked point has degree `(G_i : H)`.
    ProjectionDegree,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] ProjectiveError),
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("pole divisor of {which} does not match the orbit sum: {detail}")]
    PoleDivisor { which: &'static str, detail: String },
    #[error("interpolation at level {level}: nullspace has dimension {dim}, expected 1")]
    NullspaceDimension { level: u32, dim: usize },
    #[error("coefficient of X^{}Y^{}Z^{} is not in GF(q^2)", .0.0, .0.1, .0.2)]
    NotOverBase((usize, usize, usize)),
    #[error("only {found} distinct images of {needed} needed at sampling level {level}")]
    SamplingExhausted { level: u32, found: usize, needed: usize },
    #[error("model certification clause {clause:?} failed: {detail}")]
    Certification { clause: ModelClause, detail: String },
    #[error("quotient model needs m | q+1, got m = {m}, q + 1 = {q1}")]
    NotQuotientDivisor { m: u64, q1: u64 },
    #[error("quotient certification failed: {0}")]
    Quotient(String),
}

/// `f`, `g` with their certified pole divisors.
#[derive(Debug, Clone)]
pub struct FunctionPair {
    pub f: CurveFunction,
    pub g: CurveFunction,
    pub f_poles: Divisor,
    pub g_poles: Divisor,
    pub witnesses: [WitnessCertificate; 2],
}

/// Builds `f = 1/t1^m`, `g = 1/t2^m` and certifies
/// `(f)_∞ = Σ_{G1} σ(P2)`, `(g)_∞ = Σ_{G2} τ(P1)`.
pub fn build_f_g(inst: &HermitianInstance) -> Result<FunctionPair, ConstructError> {
    let ff = inst.function_field();
    let (w1, w2) = (inst.witness1(), inst.witness2());
    let c1 = ff.rationality_witness(&inst.g1, &w1.function, &w1.pole_point)?;
    let c2 = ff.rationality_witness(&inst.g2, &w2.function, &w2.pole_point)?;
    let f = ff.f_inv(&w1.function)?;
    let g = ff.f_inv(&w2.function)?;
    let check = |which: &'static str, h: &CurveFunction, expect: Divisor| -> Result<Divisor, ConstructError> {
        let (div, complete) = ff.rational_divisor(h)?;
        if !complete {
            return Err(ConstructError::PoleDivisor { which, detail: "zeros outside X(GF(q^2))".into() });
        }
        let poles = div.pole_part();
        if poles != expect {
            return Err(ConstructError::PoleDivisor { which, detail: format!("degree {} against {}", poles.degree(), expect.degree()) });
        }
        Ok(poles)
    };
    let f_poles = check("f", &f, orbit_sum(&inst.g1, &inst.curve.p2()))?;
    let g_poles = check("g", &g, orbit_sum(&inst.g2, &inst.curve.p1()))?;
    Ok(FunctionPair { f, g, f_poles, g_poles, witnesses: [c1, c2] })
}

/// Exponent triples of degree `d` in descending lexicographic order.
pub fn monomials(d: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity((d + 1) * (d + 2) / 2);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push((i, j, d - i - j));
        }
    }
    out
}

/// A plane curve `F = 0`, `F` homogeneous over `GF(q^2)`.
#[derive(Debug, Clone)]
pub struct PlaneModel {
    pub field: Arc<FieldCtx>,
    pub degree: usize,
    pub coeffs: BTreeMap<(usize, usize, usize), Fe>,
    pub marked_points: [ProjPoint; 2],
    pub instance: (u64, u32, u64),
    pub sampling_level: u32,
    pub samples: usize,
    pub nullspace_dim: usize,
}

impl PlaneModel {
    pub fn coeff(&self, e: (usize, usize, usize)) -> Fe {
        self.coeffs.get(&e).copied().unwrap_or(Fe::ZERO)
    }

    /// `F(v)` for coordinates in `ctx`, with coefficients mapped by `lift`.
    pub fn eval_with(&self, ctx: &FieldCtx, lift: impl Fn(Fe) -> Fe, v: [Fe; 3]) -> Fe {
        let mut acc = Fe::ZERO;
        for (&(i, j, k), &c) in &self.coeffs {
            let t = ctx.mul(ctx.mul(ctx.pow(v[0], i as u64), ctx.pow(v[1], j as u64)), ctx.pow(v[2], k as u64));
            acc = ctx.add(acc, ctx.mul(lift(c), t));
        }
        acc
    }

    pub fn eval(&self, v: [Fe; 3]) -> Fe {
        self.eval_with(&self.field, |c| c, v)
    }

    pub fn eval_lifted(&self, emb: &Embedding, v: [Fe; 3]) -> Fe {
        self.eval_with(emb.big(), |c| emb.apply(c), v)
    }

    /// `F` with the first two coordinates exchanged.
    pub fn swap_xy(&self) -> PlaneModel {
        let mut out = self.clone();
        out.coeffs = self.coeffs.iter().map(|(&(i, j, k), &c)| ((j, i, k), c)).collect();
        out.marked_points = [self.marked_points[1], self.marked_points[0]];
        out.normalize();
        out
    }

    /// Scales so that the lexicographically greatest monomial has
    /// coefficient 1.
    pub fn normalize(&mut self) {
        let Some((_, &lead)) = self.coeffs.iter().next_back() else {
            return;
        };
        let inv = self.field.inv(lead).expect("nonzero");
        for c in self.coeffs.values_mut() {
            *c = self.field.mul(*c, inv);
        }
    }

    pub fn polynomial_string(&self) -> String {
        let ctx = &self.field;
        let var = |name: &str, e: usize| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&(i, j, k), &c)| {
                let mono = [var("X", i), var("Y", j), var("Z", k)].concat();
                match (c == Fe::ONE, mono.is_empty()) {
                    (true, false) => mono,
                    (_, true) => format!("[{}]", ctx.render(c)),
                    (false, false) => format!("[{}]{}", ctx.render(c), mono),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn to_json(&self) -> Value {
        let ctx = &self.field;
        let (p, e, m) = self.instance;
        json!({
            "schema_version": SCHEMA_VERSION,
            "degree": self.degree,
            "monomials": self.coeffs.iter().rev().map(|(&(i, j, k), &c)| json!([i, j, k, ctx.to_json(c)])).collect::<Vec<_>>(),
            "marked_points": self.marked_points.iter().map(|p| p.to_json(ctx)).collect::<Vec<_>>(),
            "instance": { "p": p, "e": e, "m": m },
            "field": ctx.describe(),
            "sampling": { "level": self.sampling_level, "samples": self.samples, "nullspace_dim": self.nullspace_dim },
            "polynomial": self.polynomial_string(),
        })
    }
}

/// `φ(Q) = (f : g : 1)` at a rational point, from leading terms in a common
/// uniformizer.
pub fn image_of_rational_point(
    ff: &FunctionField,
    f: &CurveFunction,
    g: &CurveFunction,
    p: &ProjPoint,
) -> Result<ProjPoint, ConstructError> {
    let ctx = ff.ctx();
    let (vf, cf) = ff.leading_term(f, p)?;
    let (vg, cg) = ff.leading_term(g, p)?;
    let mu = vf.min(vg).min(0);
    let pick = |v: i64, c: Fe| if v == mu { c } else { Fe::ZERO };
    let z = if mu == 0 { Fe::ONE } else { Fe::ZERO };
    Ok(ProjPoint::new(ctx, [pick(vf, cf), pick(vg, cg), z])?)
}

/// Distinct images `φ(Q)` of non-rational affine points `Q` over
/// `GF(q^(2 level))`, in enumeration order, up to `limit`. Points are
/// evaluated through `(f_n g_d : g_n f_d : f_d g_d)`; points where all three
/// vanish are skipped.
pub fn sample_images(
    curve: &HermitianCurve,
    f: &CurveFunction,
    g: &CurveFunction,
    level: u32,
    limit: usize,
) -> Result<(Embedding, Vec<ProjPoint>), ConstructError> {
    let base = curve.field();
    let big = build_field(base.p(), base.degree() * level)?;
    let emb = Embedding::new(base, &big)?;
    let [fnum, fden, gnum, gden] = [&f.num, &f.den, &g.num, &g.den].map(|a| lift_poly(a, &emb));
    let base_deg = base.degree();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (x, y) in curve.affine_points(&big)? {
        if out.len() >= limit {
            break;
        }
        if big.in_subfield(y, base_deg) {
            continue;
        }
        let [a, b, c, d] = [&fnum, &fden, &gnum, &gden].map(|p| eval_poly(&big, p, x, y));
        let v = [big.mul(a, d), big.mul(c, b), big.mul(b, d)];
        let Ok(pt) = ProjPoint::new(&big, v) else {
            continue;
        };
        if seen.insert(pt) {
            out.push(pt);
        }
    }
    Ok((emb, out))
}

/// Interpolates the degree-`d` curve through `φ(X)` for `φ = (f : g : 1)`.
/// Starts at `level` (default 2) and raises it until enough distinct images
/// exist, unless `level` is given explicitly.
pub fn interpolate_model(
    curve: &HermitianCurve,
    f: &CurveFunction,
    g: &CurveFunction,
    d: usize,
    level: Option<u32>,
    instance: (u64, u32, u64),
) -> Result<PlaneModel, ConstructError> {
    let cols = monomials(d);
    let needed = OVERSAMPLING * cols.len();
    let mut k = level.unwrap_or(2);
    let (emb, images) = loop {
        let (emb, images) = sample_images(curve, f, g, k, needed)?;
        if images.len() >= needed {
            break (emb, images);
        }
        if level.is_some() || k >= MAX_SAMPLING_LEVEL {
            return Err(ConstructError::SamplingExhausted { level: k, found: images.len(), needed });
        }
        k += 1;
    };
    let big = emb.big().clone();
    let rows: Vec<Vec<Fe>> = images
        .iter()
        .map(|pt| {
            let pw: Vec<Vec<Fe>> = pt
                .coords()
                .iter()
                .map(|&c| {
                    let mut v = vec![Fe::ONE; d + 1];
                    for e in 1..=d {
                        v[e] = big.mul(v[e - 1], c);
                    }
                    v
                })
                .collect();
            cols.iter().map(|&(i, j, l)| big.mul(big.mul(pw[0][i], pw[1][j]), pw[2][l])).collect()
        })
        .collect();
    let ns = nullspace(&big, &rows, cols.len());
    if ns.len() != 1 {
        return Err(ConstructError::NullspaceDimension { level: k, dim: ns.len() });
    }
    let v = &ns[0];
    let lead = v.iter().find(|c| !c.is_zero()).copied().expect("nonzero kernel vector");
    let inv = big.inv(lead).expect("nonzero");
    let mut coeffs = BTreeMap::new();
    for (&e, &c) in cols.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let c = emb.preimage(big.mul(c, inv)).ok_or(ConstructError::NotOverBase(e))?;
        coeffs.insert(e, c);
    }
    let ff = FunctionField::new(curve);
    let marked_points = [image_of_rational_point(&ff, f, g, &curve.p1())?, image_of_rational_point(&ff, f, g, &curve.p2())?];
    Ok(PlaneModel {
        field: curve.field().clone(),
        degree: d,
        coeffs,
        marked_points,
        instance,
        sampling_level: k,
        samples: images.len(),
        nullspace_dim: ns.len(),
    })
}

/// The degree-`((G1 : H) + 1)` model of `X/H` for the instance.
pub fn plane_model(inst: &HermitianInstance, fg: &FunctionPair, level: Option<u32>) -> Result<PlaneModel, ConstructError> {
    let d = inst.g1.order() / inst.h.order() + 1;
    let c = &inst.curve;
    interpolate_model(c, &fg.f, &fg.g, d, level, (c.p(), c.e(), inst.m))
}

/// Per-clause evidence for a certified model.
#[derive(Debug, Clone)]
pub struct ModelCertificate {
    pub degree: usize,
    /// Linear parts at the marked points after dehomogenising.
    pub tangent_coefficients: [[Fe; 2]; 2],
    /// `(image point, root multiplicity of F(X,Y,0), expected)`.
    pub line_divisor: Vec<(ProjPoint, usize, usize)>,
    pub line_divisor_degree: usize,
    pub projection_degrees: [usize; 2],
}

impl ModelCertificate {
    pub fn to_json(&self, ctx: &FieldCtx) -> Value {
        json!({
            "degree": self.degree,
            "smooth_marked_points": true,
            "line_divisor": self.line_divisor.iter().map(|(p, m, _)| json!([p.to_json(ctx), m])).collect::<Vec<_>>(),
            "line_divisor_degree": self.line_divisor_degree,
            "projection_degrees": self.projection_degrees,
        })
    }
}

fn fail(clause: ModelClause, detail: String) -> ConstructError {
    ConstructError::Certification { clause, detail }
}

fn coordinate_index(p: &ProjPoint) -> Option<usize> {
    let c = p.coords();
    let nz: Vec<usize> = (0..3).filter(|&i| !c[i].is_zero()).collect();
    (nz.len() == 1).then(|| nz[0])
}

/// Exponent triple with `a` at slot `r` and `b`, `c` at the other two slots
/// in order.
fn place(r: usize, a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    match r {
        0 => (a, b, c),
        1 => (b, a, c),
        _ => (b, c, a),
    }
}

/// Multiplicity of `F` at the coordinate point `e_r`: the lowest total
/// degree in the other two variables after setting `X_r = 1`.
fn multiplicity_at_coordinate_point(m: &PlaneModel, r: usize) -> usize {
    m.coeffs.keys().map(|&(i, j, k)| m.degree - [i, j, k][r]).min().unwrap_or(0)
}

/// Root multiplicity of `F(X, Y, 0)` at `(a : b : 0)`.
fn line_multiplicity(m: &PlaneModel, pt: &ProjPoint) -> usize {
    let ctx = &m.field;
    let d = m.degree;
    // u(t) = F(t, 1, 0), coefficient of t^i is c_{i, d-i, 0}.
    let u: Vec<Fe> = (0..=d).map(|i| m.coeff((i, d - i, 0))).collect();
    let [a, b, _] = pt.coords();
    if b.is_zero() {
        // At (1:0:0): order of F(1, s, 0) at s = 0.
        return (0..=d).find(|&j| !m.coeff((d - j, j, 0)).is_zero()).unwrap_or(d + 1);
    }
    let t0 = ctx.div(a, b).expect("b nonzero");
    let mut poly = u;
    let mut mult = 0;
    loop {
        while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
            poly.pop();
        }
        if poly.iter().all(|c| c.is_zero()) {
            return d + 1;
        }
        // Synthetic division by (t - t0).
        let n = poly.len();
        let mut quot = vec![Fe::ZERO; n.saturating_sub(1)];
        let mut acc = Fe::ZERO;
        for i in (0..n).rev() {
            acc = ctx.add(ctx.mul(acc, t0), poly[i]);
            if i > 0 {
                quot[i - 1] = acc;
            }
        }
        if !acc.is_zero() {
            return mult;
        }
        mult += 1;
        poly = quot;
    }
}

/// Checks the four structural clauses of a plane model of the instance.
pub fn certify_model(model: &PlaneModel, inst: &HermitianInstance, fg: &FunctionPair) -> Result<ModelCertificate, ConstructError> {
    let h = inst.h.order();
    let index = [inst.g1.order() / h, inst.g2.order() / h];
    let d = index[0] + 1;

    // (i) degree
    let homogeneous = model.coeffs.keys().all(|&(i, j, k)| i + j + k == model.degree);
    if model.degree != d || !homogeneous || model.coeffs.is_empty() {
        return Err(fail(ModelClause::Degree, format!("degree {} (homogeneous: {homogeneous}), expected {d}", model.degree)));
    }

    // (ii) smoothness at the marked points
    let mut tangent = [[Fe::ZERO; 2]; 2];
    for (slot, p) in model.marked_points.iter().enumerate() {
        let r = coordinate_index(p).ok_or_else(|| fail(ModelClause::Smoothness, "marked point is not a coordinate point".into()))?;
        let constant = model.coeff(place(r, d, 0, 0));
        let lin = [model.coeff(place(r, d - 1, 1, 0)), model.coeff(place(r, d - 1, 0, 1))];
        if !constant.is_zero() {
            return Err(fail(ModelClause::Smoothness, format!("marked point {slot} is not on the curve")));
        }
        if lin.iter().all(|c| c.is_zero()) {
            return Err(fail(ModelClause::Smoothness, format!("marked point {slot} is singular")));
        }
        tangent[slot] = lin;
    }

    // (iii) the line Z = 0 through both marked points
    let ff = inst.function_field();
    let dsum = orbit_sum(&inst.h, &inst.curve.p1()).add(&orbit_sum(&inst.g1, &inst.curve.p2()));
    let mut expected: BTreeMap<ProjPoint, i64> = BTreeMap::new();
    for q in inst.curve.rational_points() {
        let r = image_of_rational_point(&ff, &fg.f, &fg.g, &q)?;
        *expected.entry(r).or_insert(0) += dsum.multiplicity(&q);
    }
    let mut line = Vec::new();
    let mut total = 0;
    for (r, e) in &expected {
        if !r.coords()[2].is_zero() || e % h as i64 != 0 {
            return Err(fail(ModelClause::LineDivisor, format!("image {r:?} off the line or multiplicity {e} not divisible by |H|")));
        }
        let want = (*e / h as i64) as usize;
        let got = line_multiplicity(model, r);
        if got != want {
            return Err(fail(ModelClause::LineDivisor, format!("multiplicity {got} at {r:?}, expected {want}")));
        }
        total += got;
        line.push((*r, got, want));
    }
    if total != d {
        return Err(fail(ModelClause::LineDivisor, format!("total multiplicity {total}, expected {d}")));
    }

    // (iv) projection degrees: d - mult(P) against deg (f)_∞ / |H|, deg (g)_∞ / |H|
    let mut proj = [0; 2];
    let pole_degrees = [fg.f_poles.degree(), fg.g_poles.degree()];
    for (slot, p) in model.marked_points.iter().enumerate() {
        let r = coordinate_index(p).expect("checked above");
        let deg = d - multiplicity_at_coordinate_point(model, r);
        // Projection from (0:1:0) is (X:Z) = f, from (1:0:0) it is (Y:Z) = g.
        let which = if r == 1 { 0 } else { 1 };
        let from_poles = (pole_degrees[which] / h as i64) as usize;
        if deg != from_poles || deg != index[which] {
            return Err(fail(
                ModelClause::ProjectionDegree,
                format!("projection from marked point {slot}: {deg}, pole degree gives {from_poles}, index {}", index[which]),
            ));
        }
        proj[slot] = deg;
    }

    Ok(ModelCertificate {
        degree: d,
        tangent_coefficients: tangent,
        line_divisor: line,
        line_divisor_degree: total,
        projection_degrees: proj,
    })
}

/// Plane model `x^q + x = u^s` of `X/C_m` with `u = y^m`, `ms = q + 1`.
#[derive(Debug, Clone)]
pub struct QuotientModel {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub m: u64,
    pub s: u64,
    /// Pole order of `x`, hence `[k(X) : k(x)]`.
    pub x_pole_order: i64,
    /// `[k(X) : k(x, u)]`, bounded above by `deg(T^m - u)` and below by
    /// `[k(X) : k(x)] / s`.
    pub extension_degree: u64,
}

impl QuotientModel {
    pub fn relation(&self) -> String {
        let u = if self.s == 1 { "u".to_string() } else { format!("u^{}", self.s) };
        format!("x^{} + x = {u}", self.q)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "instance": { "p": self.p, "e": self.e, "m": self.m },
            "q": self.q,
            "s": self.s,
            "relation": self.relation(),
            "generators": { "x": "x", "u": format!("y^{}", self.m) },
            "certificates": {
                "x_invariant": true,
                "u_invariant": true,
                "relation_reduces_to_zero": true,
                "x_pole_order": self.x_pole_order,
                "extension_degree": self.extension_degree,
                "minimal_polynomial": format!("T^{} - u", self.m),
            },
        })
    }
}

/// Certifies `k(X)^{C_m} = k(x, y^m)` with relation `x^q + x = (y^m)^s`.
pub fn quotient_plane_model(p: u64, e: u32, m: u64) -> Result<QuotientModel, ConstructError> {
    let curve = HermitianCurve::new(p, e)?;
    let q = curve.q();
    if m == 0 || (q + 1) % m != 0 {
        return Err(ConstructError::NotQuotientDivisor { m, q1: q + 1 });
    }
    let s = (q + 1) / m;
    let cm = groups::cyclic_subgroup(&curve, m)?;
    let ff = FunctionField::new(&curve);
    let x = ff.x();
    let u = ff.f_pow(&ff.y(), m);
    if !ff.is_invariant(&x, &cm)? {
        return Err(ConstructError::Quotient("x is not C_m-invariant".into()));
    }
    if !ff.is_invariant(&u, &cm)? {
        return Err(ConstructError::Quotient("y^m is not C_m-invariant".into()));
    }
    let lhs = ff.add(&ff.monomial(q, 0), &ff.monomial(1, 0));
    let rhs = ff.pow(&u.num, s);
    if !ff.sub(&lhs, &rhs).is_zero() {
        return Err(ConstructError::Quotient("x^q + x - u^s does not reduce to 0".into()));
    }
    // x is a polynomial, so its only pole is P1 and [k(X) : k(x)] = -v_{P1}(x).
    let x_pole_order = -ff.valuation_at_p1(&x)?;
    if x_pole_order != (q + 1) as i64 {
        return Err(ConstructError::Quotient(format!("pole order of x is {x_pole_order}")));
    }
    // [k(x,u) : k(x)] <= s and y is a root of T^m - u, so
    // m = (q+1)/s <= [k(X) : k(x,u)] <= m.
    let lower = x_pole_order as u64 / s;
    if lower != m {
        return Err(ConstructError::Quotient(format!("degree bounds {lower} and {m} disagree")));
    }
    Ok(QuotientModel { p, e, q, m, s, x_pole_order, extension_degree: m })
}
