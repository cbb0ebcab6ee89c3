//! The Hermitian function field `k(X) = k(x, y)`, `x^q + x = y^(q+1)`.
//!
//! Polynomials are kept in the canonical form `Σ c_ij x^i y^j` with
//! `0 <= j <= q`, obtained by rewriting `y^(q+1) -> x^q + x`. The pole order
//! at `P1 = (1:0:0)` of `x^i y^j` is `(q+1) i + q j` and its order of
//! vanishing at `P2 = (0:0:1)` is `(q+1) i + j`; both are injective on
//! canonical exponents, which makes valuations at these two points a
//! minimum/maximum over the support. Valuations at other affine rational
//! points are reduced to `P2` by translating with an element of `N1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::criterion::Divisor;
use crate::ffield::{Embedding, Fe, FieldCtx};
use crate::groups::{self, MatrixGroup};
use crate::projective::{HermitianCurve, ProjMatrix, ProjPoint};

/// Series precision cap for [`FunctionField::valuation_by_series`].
pub const SERIES_PRECISION_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuncFieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("valuation of the zero function")]
    ZeroFunction,
    #[error("matrix does not preserve the curve")]
    NotAutomorphism,
    #[error("point {0} is not a rational point of the curve")]
    NotRationalPoint(String),
    #[error("series precision exhausted at {0} terms")]
    PrecisionExhausted(usize),
}

/// Canonical polynomial `Σ c_ij x^i y^j`, `j <= q`, stored densely by `x`-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoly {
    width: usize,
    coeffs: Vec<Fe>,
}

impl CurvePoly {
    fn zeros(width: usize, rows: usize) -> Self {
        CurvePoly { width, coeffs: vec![Fe::ZERO; width * rows] }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.len() >= self.width && self.coeffs[self.coeffs.len() - self.width..].iter().all(|c| c.is_zero()) {
            let l = self.coeffs.len() - self.width;
            self.coeffs.truncate(l);
        }
        self
    }

    fn rows(&self) -> usize {
        self.coeffs.len() / self.width
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        if j >= self.width {
            return Fe::ZERO;
        }
        self.coeffs.get(i * self.width + j).copied().unwrap_or(Fe::ZERO)
    }

    /// Nonzero terms `(i, j, c)` in `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Fe)> + '_ {
        let w = self.width;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (k / w, k % w, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn total_degree(&self) -> usize {
        self.terms().map(|(i, j, _)| i + j).max().unwrap_or(0)
    }

    /// `-v_{P1}`: `max (q+1) i + q j` over the support.
    pub fn pole_order(&self) -> Option<i64> {
        let q = (self.width - 1) as i64;
        self.terms().map(|(i, j, _)| (q + 1) * i as i64 + q * j as i64).max()
    }

    /// `v_{P2}` with the leading coefficient with respect to the
    /// uniformizer `y`.
    pub fn origin_order(&self) -> Option<(i64, Fe)> {
        let q = (self.width - 1) as i64;
        self.terms().map(|(i, j, c)| ((q + 1) * i as i64 + j as i64, c)).min_by_key(|(v, _)| *v)
    }

    fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> CurvePoly {
        CurvePoly { width: self.width, coeffs: self.coeffs.iter().map(|&c| f(c)).collect() }
    }

    pub fn to_json(&self, ctx: &FieldCtx) -> Value {
        Value::Array(self.terms().map(|(i, j, c)| json!([i, j, ctx.coeffs(c)])).collect())
    }
}

/// Element of `k(X)` as a fraction of canonical polynomials.
#[derive(Clone, Debug)]
pub struct CurveFunction {
    pub num: CurvePoly,
    pub den: CurvePoly,
}

/// A truncated local expansion in the uniformizer at a point.
pub type Series = Vec<Fe>;

fn binomial_mod(ctx: &FieldCtx, mut n: u64, mut k: u64) -> Fe {
    // Lucas.
    let p = ctx.p();
    let mut acc = Fe::ONE;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return Fe::ZERO;
        }
        let mut c = Fe::ONE;
        for t in 0..b {
            c = ctx.mul(c, ctx.from_int((a - t) as i64));
            c = ctx.div(c, ctx.from_int((t + 1) as i64)).expect("t+1 < p");
        }
        acc = ctx.mul(acc, c);
        n /= p;
        k /= p;
    }
    acc
}

/// Arithmetic and geometry of the Hermitian function field over `GF(q^2)`.
#[derive(Clone, Debug)]
pub struct FunctionField {
    curve: HermitianCurve,
    q: usize,
}

impl FunctionField {
    pub fn new(curve: &HermitianCurve) -> Self {
        FunctionField { curve: curve.clone(), q: curve.q() as usize }
    }

    pub fn curve(&self) -> &HermitianCurve {
        &self.curve
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.curve.field()
    }

    fn width(&self) -> usize {
        self.q + 1
    }

    // -- polynomials ------------------------------------------------------

    pub fn zero(&self) -> CurvePoly {
        CurvePoly::zeros(self.width(), 0)
    }

    pub fn constant(&self, c: Fe) -> CurvePoly {
        self.reduce(&[(0, 0, c)])
    }

    pub fn monomial(&self, i: u64, j: u64) -> CurvePoly {
        self.reduce(&[(i, j, Fe::ONE)])
    }

    /// Canonical form of `Σ c x^i y^j` for arbitrary `j`, via
    /// `y^(a(q+1)+r) = y^r (x^q + x)^a`.
    pub fn reduce(&self, terms: &[(u64, u64, Fe)]) -> CurvePoly {
        let ctx = self.ctx();
        let q = self.q as u64;
        let w = self.width();
        let max_i = terms.iter().map(|&(i, j, _)| i + (j / (q + 1)) * q).max().unwrap_or(0) as usize;
        let mut out = CurvePoly::zeros(w, max_i + 1);
        for &(i, j, c) in terms {
            if c.is_zero() {
                continue;
            }
            let (a, r) = (j / (q + 1), (j % (q + 1)) as usize);
            for k in 0..=a {
                let b = binomial_mod(ctx, a, k);
                if b.is_zero() {
                    continue;
                }
                let ii = (i + q * k + (a - k)) as usize;
                let slot = &mut out.coeffs[ii * w + r];
                *slot = ctx.add(*slot, ctx.mul(c, b));
            }
        }
        out.trimmed()
    }

    pub fn add(&self, a: &CurvePoly, b: &CurvePoly) -> CurvePoly {
        let ctx = self.ctx();
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, s) in out.coeffs.iter_mut().zip(&short.coeffs) {
            *o = ctx.add(*o, *s);
        }
        out.trimmed()
    }

    pub fn neg(&self, a: &CurvePoly) -> CurvePoly {
        let ctx = self.ctx();
        a.map_coeffs(|c| ctx.neg(c))
    }

    pub fn sub(&self, a: &CurvePoly, b: &CurvePoly) -> CurvePoly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &CurvePoly, s: Fe) -> CurvePoly {
        let ctx = self.ctx();
        a.map_coeffs(|c| ctx.mul(c, s)).trimmed()
    }

    fn add_scaled_into(&self, acc: &mut CurvePoly, b: &CurvePoly, s: Fe) {
        let ctx = self.ctx();
        if acc.coeffs.len() < b.coeffs.len() {
            acc.coeffs.resize(b.coeffs.len(), Fe::ZERO);
        }
        for (o, &c) in acc.coeffs.iter_mut().zip(&b.coeffs) {
            if !c.is_zero() {
                *o = ctx.add(*o, ctx.mul(c, s));
            }
        }
    }

    pub fn mul(&self, a: &CurvePoly, b: &CurvePoly) -> CurvePoly {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let ctx = self.ctx();
        let q = self.q;
        let w = self.width();
        let mut out = CurvePoly::zeros(w, a.rows() + b.rows() + q);
        let bt: Vec<(usize, usize, Fe)> = b.terms().collect();
        for (i1, j1, c1) in a.terms() {
            for &(i2, j2, c2) in &bt {
                let c = ctx.mul(c1, c2);
                let (i, j) = (i1 + i2, j1 + j2);
                if j <= q {
                    let s = &mut out.coeffs[i * w + j];
                    *s = ctx.add(*s, c);
                } else {
                    let r = j - (q + 1);
                    let s = &mut out.coeffs[(i + q) * w + r];
                    *s = ctx.add(*s, c);
                    let s = &mut out.coeffs[(i + 1) * w + r];
                    *s = ctx.add(*s, c);
                }
            }
        }
        out.trimmed()
    }

    pub fn pow(&self, a: &CurvePoly, mut e: u64) -> CurvePoly {
        let mut acc = self.constant(Fe::ONE);
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluates at an affine point over the coefficient field.
    pub fn eval(&self, a: &CurvePoly, x: Fe, y: Fe) -> Fe {
        eval_poly(self.ctx(), a, x, y)
    }

    /// The linear form `r0 x + r1 y + r2`.
    fn linear(&self, r: [Fe; 3]) -> CurvePoly {
        self.reduce(&[(1, 0, r[0]), (0, 1, r[1]), (0, 0, r[2])])
    }

    // -- functions --------------------------------------------------------

    pub fn function(&self, num: CurvePoly, den: CurvePoly) -> Result<CurveFunction, FuncFieldError> {
        if den.is_zero() {
            return Err(FuncFieldError::ZeroDenominator);
        }
        Ok(CurveFunction { num, den })
    }

    pub fn from_poly(&self, num: CurvePoly) -> CurveFunction {
        CurveFunction { num, den: self.constant(Fe::ONE) }
    }

    pub fn x(&self) -> CurveFunction {
        self.from_poly(self.monomial(1, 0))
    }

    pub fn y(&self) -> CurveFunction {
        self.from_poly(self.monomial(0, 1))
    }

    pub fn f_mul(&self, a: &CurveFunction, b: &CurveFunction) -> CurveFunction {
        CurveFunction { num: self.mul(&a.num, &b.num), den: self.mul(&a.den, &b.den) }
    }

    pub fn f_div(&self, a: &CurveFunction, b: &CurveFunction) -> Result<CurveFunction, FuncFieldError> {
        self.function(self.mul(&a.num, &b.den), self.mul(&a.den, &b.num))
    }

    pub fn f_inv(&self, a: &CurveFunction) -> Result<CurveFunction, FuncFieldError> {
        self.function(a.den.clone(), a.num.clone())
    }

    pub fn f_add(&self, a: &CurveFunction, b: &CurveFunction) -> CurveFunction {
        if a.den == b.den {
            return CurveFunction { num: self.add(&a.num, &b.num), den: a.den.clone() };
        }
        CurveFunction { num: self.add(&self.mul(&a.num, &b.den), &self.mul(&b.num, &a.den)), den: self.mul(&a.den, &b.den) }
    }

    pub fn f_sub(&self, a: &CurveFunction, b: &CurveFunction) -> CurveFunction {
        let nb = CurveFunction { num: self.neg(&b.num), den: b.den.clone() };
        self.f_add(a, &nb)
    }

    pub fn f_pow(&self, a: &CurveFunction, e: u64) -> CurveFunction {
        CurveFunction { num: self.pow(&a.num, e), den: self.pow(&a.den, e) }
    }

    /// `a/b = c/d` iff `reduce(ad - cb) = 0`.
    pub fn f_eq(&self, a: &CurveFunction, b: &CurveFunction) -> bool {
        if a.den == b.den {
            return a.num == b.num;
        }
        self.mul(&a.num, &b.den) == self.mul(&b.num, &a.den)
    }

    pub fn f_is_zero(&self, a: &CurveFunction) -> bool {
        a.num.is_zero()
    }

    /// Value at an affine point, `None` at a zero of the denominator.
    pub fn f_eval(&self, a: &CurveFunction, x: Fe, y: Fe) -> Option<Fe> {
        let ctx = self.ctx();
        ctx.div(self.eval(&a.num, x, y), self.eval(&a.den, x, y))
    }

    /// `t1 = y^(q^2) - y`, invariant under `N1` with its only pole, of order
    /// `q^3`, at `P1`.
    pub fn t1(&self) -> CurveFunction {
        let q2 = (self.q * self.q) as u64;
        let ctx = self.ctx();
        self.from_poly(self.reduce(&[(0, q2, Fe::ONE), (0, 1, ctx.neg(Fe::ONE))]))
    }

    /// `t2 = (y/x)^(q^2) - y/x = (y^(q^2) - y x^(q^2-1)) / x^(q^2)`, the image
    /// of `t1` under `(X:Y:Z) ↦ (Z:Y:X)`.
    pub fn t2(&self) -> CurveFunction {
        let q2 = (self.q * self.q) as u64;
        let ctx = self.ctx();
        let num = self.reduce(&[(0, q2, Fe::ONE), (q2 - 1, 1, ctx.neg(Fe::ONE))]);
        CurveFunction { num, den: self.monomial(q2, 0) }
    }

    // -- pullbacks --------------------------------------------------------

    /// Whether `m` maps the curve into itself: the defining form composed
    /// with `m` reduces to zero on the curve.
    pub fn preserves_curve(&self, m: &ProjMatrix) -> bool {
        let q = self.q as u64;
        let [lx, ly, lz] = [0, 1, 2].map(|r| self.linear(m.row(r)));
        let a = self.mul(&self.pow(&lx, q), &lz);
        let b = self.mul(&lx, &self.pow(&lz, q));
        let c = self.pow(&ly, q + 1);
        self.sub(&self.add(&a, &b), &c).is_zero()
    }

    /// `σ^* F = F ∘ σ`. Contravariant: `(στ)^* = τ^* σ^*`.
    pub fn pullback(&self, m: &ProjMatrix, f: &CurveFunction) -> Result<CurveFunction, FuncFieldError> {
        if !self.preserves_curve(m) {
            return Err(FuncFieldError::NotAutomorphism);
        }
        Ok(self.pullback_unchecked(m, f))
    }

    fn pullback_unchecked(&self, m: &ProjMatrix, f: &CurveFunction) -> CurveFunction {
        let ctx = self.ctx();
        let r2 = m.row(2);
        if r2[0].is_zero() && r2[1].is_zero() {
            let s = ctx.inv(r2[2]).expect("invertible");
            let lx = self.linear(m.row(0).map(|c| ctx.mul(c, s)));
            let ly = self.linear(m.row(1).map(|c| ctx.mul(c, s)));
            return CurveFunction { num: self.subst_affine(&f.num, &lx, &ly), den: self.subst_affine(&f.den, &lx, &ly) };
        }
        let [lx, ly, lz] = [0, 1, 2].map(|r| self.linear(m.row(r)));
        let (dn, dd) = (f.num.total_degree(), f.den.total_degree());
        let e = dn.max(dd);
        let mut zpow = vec![self.constant(Fe::ONE)];
        for k in 1..=e {
            let next = self.mul(&zpow[k - 1], &lz);
            zpow.push(next);
        }
        let num = self.subst_homog(&f.num, dn, &lx, &ly, &zpow);
        let den = self.subst_homog(&f.den, dd, &lx, &ly, &zpow);
        CurveFunction { num: self.mul(&num, &zpow[e - dn]), den: self.mul(&den, &zpow[e - dd]) }
    }

    /// `P(X, Y)` for polynomials `X`, `Y`, by Horner in `x`.
    fn subst_affine(&self, p: &CurvePoly, lx: &CurvePoly, ly: &CurvePoly) -> CurvePoly {
        if p.is_zero() {
            return self.zero();
        }
        let mut ypow = vec![self.constant(Fe::ONE)];
        for j in 1..self.width() {
            let next = self.mul(&ypow[j - 1], ly);
            ypow.push(next);
        }
        let row = |i: usize| {
            let mut b = self.zero();
            for (j, yp) in ypow.iter().enumerate() {
                let c = p.get(i, j);
                if !c.is_zero() {
                    self.add_scaled_into(&mut b, yp, c);
                }
            }
            b.trimmed()
        };
        let mut acc = self.zero();
        for i in (0..p.rows()).rev() {
            acc = self.mul(&acc, lx);
            let b = row(i);
            self.add_scaled_into(&mut acc, &b, Fe::ONE);
            acc = acc.trimmed();
        }
        acc
    }

    /// `P_h(X, Y, Z)` for the degree-`d` homogenisation of `P`.
    fn subst_homog(&self, p: &CurvePoly, d: usize, lx: &CurvePoly, ly: &CurvePoly, zpow: &[CurvePoly]) -> CurvePoly {
        let mut total = self.zero();
        let mut ypow = self.constant(Fe::ONE);
        for j in 0..self.width() {
            if j > 0 {
                ypow = self.mul(&ypow, ly);
            }
            let Some(top) = (0..p.rows()).rev().find(|&i| !p.get(i, j).is_zero()) else {
                continue;
            };
            let k = d - j;
            let mut acc = self.scale(&zpow[k - top], p.get(top, j));
            for i in (0..top).rev() {
                acc = self.mul(&acc, lx);
                let c = p.get(i, j);
                if !c.is_zero() {
                    self.add_scaled_into(&mut acc, &zpow[k - i], c);
                }
                acc = acc.trimmed();
            }
            total = self.add(&total, &self.mul(&acc, &ypow));
        }
        total
    }

    /// `pullback(g, F) = F` for every generator `g` of `G`.
    pub fn is_invariant(&self, f: &CurveFunction, g: &MatrixGroup) -> Result<bool, FuncFieldError> {
        self.invariant_under(f, g.generators())
    }

    /// Invariance checked against every element, not only generators.
    pub fn is_invariant_all(&self, f: &CurveFunction, g: &MatrixGroup) -> Result<bool, FuncFieldError> {
        self.invariant_under(f, g.elements())
    }

    fn invariant_under(&self, f: &CurveFunction, ms: &[ProjMatrix]) -> Result<bool, FuncFieldError> {
        for m in ms {
            if !self.f_eq(&self.pullback(m, f)?, f) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // -- valuations -------------------------------------------------------

    /// `v_{P1}(F)` from monomial pole orders.
    pub fn valuation_at_p1(&self, f: &CurveFunction) -> Result<i64, FuncFieldError> {
        let n = f.num.pole_order().ok_or(FuncFieldError::ZeroFunction)?;
        let d = f.den.pole_order().ok_or(FuncFieldError::ZeroDenominator)?;
        Ok(d - n)
    }

    fn check_rational_affine(&self, p: &ProjPoint) -> Result<(Fe, Fe), FuncFieldError> {
        let ctx = self.ctx();
        match p.affine_coords(ctx) {
            Some((x, y)) if self.curve.on_curve(ctx, p) => Ok((x, y)),
            _ => Err(FuncFieldError::NotRationalPoint(p.render(ctx))),
        }
    }

    /// Order at an affine rational point `P = σ_{y0, x0}(P2)` with leading
    /// coefficient in the uniformizer `y - y0`.
    fn poly_local(&self, a: &CurvePoly, x0: Fe, y0: Fe) -> Option<(i64, Fe)> {
        if x0.is_zero() && y0.is_zero() {
            return a.origin_order();
        }
        let ctx = self.ctx();
        let q = self.q as u64;
        let lx = self.linear([Fe::ONE, ctx.pow(y0, q), x0]);
        let ly = self.linear([Fe::ZERO, Fe::ONE, y0]);
        self.subst_affine(a, &lx, &ly).origin_order()
    }

    /// `(v_P(F), leading coefficient)` at a rational point. At `P1` the
    /// uniformizer is the image of `y` under `(X:Y:Z) ↦ (Z:Y:X)`.
    pub fn leading_term(&self, f: &CurveFunction, p: &ProjPoint) -> Result<(i64, Fe), FuncFieldError> {
        let ctx = self.ctx();
        if f.num.is_zero() {
            return Err(FuncFieldError::ZeroFunction);
        }
        if *p == self.curve.p1() {
            let w = groups::swap_xz(&self.curve);
            return self.leading_term(&self.pullback_unchecked(&w, f), &self.curve.p2());
        }
        let (x0, y0) = self.check_rational_affine(p)?;
        let (vn, cn) = self.poly_local(&f.num, x0, y0).ok_or(FuncFieldError::ZeroFunction)?;
        let (vd, cd) = self.poly_local(&f.den, x0, y0).ok_or(FuncFieldError::ZeroDenominator)?;
        Ok((vn - vd, ctx.div(cn, cd).expect("nonzero")))
    }

    /// `v_P(F)` at an affine rational point.
    pub fn valuation_at_point(&self, f: &CurveFunction, p: &ProjPoint) -> Result<i64, FuncFieldError> {
        if f.num.is_zero() {
            return Err(FuncFieldError::ZeroFunction);
        }
        let (x0, y0) = self.check_rational_affine(p)?;
        let vn = self.poly_local(&f.num, x0, y0).ok_or(FuncFieldError::ZeroFunction)?.0;
        let vd = self.poly_local(&f.den, x0, y0).ok_or(FuncFieldError::ZeroDenominator)?.0;
        Ok(vn - vd)
    }

    /// `v_P(F)` at any rational point.
    pub fn valuation(&self, f: &CurveFunction, p: &ProjPoint) -> Result<i64, FuncFieldError> {
        if *p == self.curve.p1() {
            self.valuation_at_p1(f)
        } else {
            self.valuation_at_point(f, p)
        }
    }

    /// Local expansion of a polynomial at an affine rational point, to
    /// `precision` terms, in the uniformizer `t = y - y0`. Uses
    /// `x = x0 + y0^q t + x_0(t)` with `x_0 = t^(q+1) - x_0^q` at the origin.
    pub fn local_expansion(&self, a: &CurvePoly, p: &ProjPoint, precision: usize) -> Result<Series, FuncFieldError> {
        let ctx = self.ctx();
        let (x0, y0) = self.check_rational_affine(p)?;
        let q = self.q;
        let n = precision.max(1);
        // x_0(t) by fixed-point iteration; each round fixes at least one more term.
        let mut xo = vec![Fe::ZERO; n];
        loop {
            let mut next = vec![Fe::ZERO; n];
            if q + 1 < n {
                next[q + 1] = Fe::ONE;
            }
            for (k, &c) in xo.iter().enumerate() {
                if !c.is_zero() && k * q < n {
                    next[k * q] = ctx.sub(next[k * q], ctx.pow(c, q as u64));
                }
            }
            if next == xo {
                break;
            }
            xo = next;
        }
        let mut xs = xo;
        xs[0] = ctx.add(xs[0], x0);
        if n > 1 {
            xs[1] = ctx.add(xs[1], ctx.pow(y0, q as u64));
        }
        let mut ys = vec![Fe::ZERO; n];
        ys[0] = y0;
        if n > 1 {
            ys[1] = Fe::ONE;
        }
        let mut ypow = vec![series_one(n)];
        for j in 1..=q {
            let next = series_mul(ctx, &ypow[j - 1], &ys);
            ypow.push(next);
        }
        let mut acc = vec![Fe::ZERO; n];
        for i in (0..a.rows()).rev() {
            acc = series_mul(ctx, &acc, &xs);
            for (j, yp) in ypow.iter().enumerate() {
                let c = a.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for (o, &s) in acc.iter_mut().zip(yp) {
                    *o = ctx.add(*o, ctx.mul(c, s));
                }
            }
        }
        Ok(acc)
    }

    /// `v_P(F)` read off truncated series, doubling the precision from
    /// `4(q+1)` until a nonzero term appears (cap [`SERIES_PRECISION_CAP`]).
    pub fn valuation_by_series(&self, f: &CurveFunction, p: &ProjPoint) -> Result<i64, FuncFieldError> {
        let order = |a: &CurvePoly| -> Result<i64, FuncFieldError> {
            if a.is_zero() {
                return Err(FuncFieldError::ZeroFunction);
            }
            let mut prec = 4 * (self.q + 1);
            loop {
                let s = self.local_expansion(a, p, prec)?;
                if let Some(k) = s.iter().position(|c| !c.is_zero()) {
                    return Ok(k as i64);
                }
                if prec >= SERIES_PRECISION_CAP {
                    return Err(FuncFieldError::PrecisionExhausted(prec));
                }
                prec = (prec * 2).min(SERIES_PRECISION_CAP);
            }
        };
        Ok(order(&f.num)? - order(&f.den)?)
    }

    /// Divisor of `F` restricted to `X(GF(q^2))`, and whether that
    /// restriction is provably the whole divisor: every zero of the
    /// numerator and denominator polynomials is accounted for by rational
    /// points (their affine zero count equals their pole order at `P1`).
    pub fn rational_divisor(&self, f: &CurveFunction) -> Result<(Divisor, bool), FuncFieldError> {
        if f.num.is_zero() {
            return Err(FuncFieldError::ZeroFunction);
        }
        let ctx = self.ctx();
        let mut div = Divisor::zero();
        let mut zeros_num = 0i64;
        let mut zeros_den = 0i64;
        for p in self.curve.rational_points() {
            if p == self.curve.p1() {
                div.add_point(p, self.valuation_at_p1(f)?);
                continue;
            }
            let (x0, y0) = p.affine_coords(ctx).expect("affine");
            let vn = self.poly_local(&f.num, x0, y0).ok_or(FuncFieldError::ZeroFunction)?.0;
            let vd = self.poly_local(&f.den, x0, y0).ok_or(FuncFieldError::ZeroDenominator)?.0;
            zeros_num += vn;
            zeros_den += vd;
            div.add_point(p, vn - vd);
        }
        let complete = Some(zeros_num) == f.num.pole_order() && Some(zeros_den) == f.den.pole_order();
        Ok((div, complete))
    }

    /// Certifies `k(X)^G = k(F)` for a `G`-invariant `F` whose pole divisor
    /// is `|G| · pole_point`.
    pub fn rationality_witness(
        &self,
        g: &MatrixGroup,
        f: &CurveFunction,
        pole_point: &ProjPoint,
    ) -> Result<WitnessCertificate, WitnessError> {
        let n = g.order() as i64;
        if !self.is_invariant(f, g)? {
            return Err(WitnessError::Clause {
                clause: WitnessClause::Invariance,
                detail: "pullback by a generator changes the function".into(),
            });
        }
        let v = self.valuation(f, pole_point)?;
        if v != -n {
            return Err(WitnessError::Clause {
                clause: WitnessClause::PoleOrder,
                detail: format!("valuation {v} at the pole point, expected {}", -n),
            });
        }
        let (div, complete) = self.rational_divisor(f)?;
        let poles = div.pole_part();
        let total = poles.degree();
        if !complete {
            return Err(WitnessError::Clause {
                clause: WitnessClause::PoleDegree,
                detail: "zeros of numerator or denominator outside X(GF(q^2))".into(),
            });
        }
        if total != n {
            return Err(WitnessError::Clause {
                clause: WitnessClause::PoleDegree,
                detail: format!("total pole degree {total}, expected {n}"),
            });
        }
        Ok(WitnessCertificate { group_order: g.order(), pole_point: *pole_point, pole_order: -v, total_pole_degree: total, divisor: div })
    }

    pub fn function_to_json(&self, f: &CurveFunction) -> Value {
        let ctx = self.ctx();
        json!({ "num": f.num.to_json(ctx), "den": f.den.to_json(ctx), "field": ctx.describe() })
    }
}

/// Evaluates a canonical polynomial whose coefficients live in `ctx`.
pub fn eval_poly(ctx: &FieldCtx, a: &CurvePoly, x: Fe, y: Fe) -> Fe {
    let mut ypow = Vec::with_capacity(a.width);
    let mut cur = Fe::ONE;
    for _ in 0..a.width {
        ypow.push(cur);
        cur = ctx.mul(cur, y);
    }
    let mut acc = Fe::ZERO;
    for i in (0..a.rows()).rev() {
        acc = ctx.mul(acc, x);
        for (j, yp) in ypow.iter().enumerate() {
            let c = a.coeffs[i * a.width + j];
            if !c.is_zero() {
                acc = ctx.add(acc, ctx.mul(c, *yp));
            }
        }
    }
    acc
}

/// Copies a polynomial's coefficients into an extension field.
pub fn lift_poly(a: &CurvePoly, emb: &Embedding) -> CurvePoly {
    a.map_coeffs(|c| emb.apply(c))
}

fn series_one(n: usize) -> Series {
    let mut s = vec![Fe::ZERO; n];
    s[0] = Fe::ONE;
    s
}

fn series_mul(ctx: &FieldCtx, a: &[Fe], b: &[Fe]) -> Series {
    let n = a.len();
    let mut out = vec![Fe::ZERO; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            if !bj.is_zero() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessClause {
    /// The function is fixed by every generator.
    Invariance,
    /// Valuation `-|G|` at the designated pole.
    PoleOrder,
    /// Total pole degree `|G|`, with all poles rational.
    PoleDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("rationality clause {clause:?} failed: {detail}")]
    Clause { clause: WitnessClause, detail: String },
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
}

/// Evidence that `k(X)^G` is the rational field `k(F)`.
#[derive(Debug, Clone)]
pub struct WitnessCertificate {
    pub group_order: usize,
    pub pole_point: ProjPoint,
    pub pole_order: i64,
    pub total_pole_degree: i64,
    pub divisor: Divisor,
}

impl WitnessCertificate {
    pub fn to_json(&self, ctx: &FieldCtx) -> Value {
        json!({
            "group_order": self.group_order,
            "pole_point": self.pole_point.to_json(ctx),
            "pole_order": self.pole_order,
            "total_pole_degree": self.total_pole_degree,
        })
    }
}

/// Sparse `(i, j) -> c` view, mainly for tests and serialisation.
pub fn to_sparse(a: &CurvePoly) -> BTreeMap<(usize, usize), Fe> {
    a.terms().map(|(i, j, c)| ((i, j), c)).collect()
}
