//! Finite fields `GF(p^n)` in a fixed polynomial basis.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! where `c_i` are the coefficients of its representative polynomial modulo
//! the field modulus. This encoding doubles as the canonical total order used
//! wherever a deterministic choice is needed ("smallest" element).
//!
//! Fields up to [`TABLE_LIMIT`] elements carry log/exp tables (and Zech
//! logarithms in odd characteristic); larger fields fall back to schoolbook
//! polynomial arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

/// Largest supported absolute extension degree.
pub const MAX_DEGREE: u32 = 24;
/// Largest supported field order, as a power of two.
pub const MAX_ORDER_BITS: u32 = 48;
/// Fields with at most this many elements get lookup tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree {n} outside 1..={cap}")]
    DegreeOutOfRange { n: u32, cap: u32 },
    #[error("GF({p}^{n}) exceeds the supported field order 2^{MAX_ORDER_BITS}")]
    TooLarge { p: u64, n: u32 },
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("element is not in the subfield GF({0})")]
    NotInSubfield(u64),
    #[error("GF({p}^{small}) is not a subfield of GF({p}^{big})")]
    NoEmbedding { p: u64, small: u32, big: u32 },
    #[error("malformed element literal {0:?}")]
    Parse(String),
}

/// Encoded field element. Meaningful only together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    log: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(size-1)`.
    exp: Vec<Fe>,
    /// `zech[k] = log(1 + g^k)`, `u32::MAX` when `1 + g^k = 0`. Odd `p` only.
    zech: Vec<u32>,
}

/// The field `GF(p^n) = GF(p)[t]/(modulus)`.
pub struct FieldCtx {
    p: u64,
    n: u32,
    size: u64,
    modulus: Vec<u64>,
    pow_p: Vec<u64>,
    generator: Fe,
    tables: Option<Tables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx").field("p", &self.p).field("n", &self.n).field("modulus", &self.modulus).finish()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Builds `GF(p^n)` with the lexicographically smallest monic irreducible
/// modulus (little-endian coefficient list compared from the constant term).
pub fn build_field(p: u64, n: u32) -> Result<Arc<FieldCtx>, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if n == 0 || n > MAX_DEGREE {
        return Err(FieldError::DegreeOutOfRange { n, cap: MAX_DEGREE });
    }
    let size = p.checked_pow(n).filter(|s| *s <= 1u64 << MAX_ORDER_BITS).ok_or(FieldError::TooLarge { p, n })?;
    let modulus = smallest_irreducible(p, n as usize);
    let pow_p = (0..=n).map(|i| p.pow(i)).collect();
    let mut ctx = FieldCtx { p, n, size, modulus, pow_p, generator: Fe::ONE, tables: None };
    ctx.generator = ctx.find_generator();
    if size <= TABLE_LIMIT {
        ctx.tables = Some(ctx.build_tables());
    }
    Ok(Arc::new(ctx))
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Little-endian monic modulus, length `n + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Smallest multiplicative generator in encoding order.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn describe(&self) -> Value {
        json!({ "p": self.p, "n": self.n, "modulus": self.modulus })
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }

    pub fn contains(&self, x: Fe) -> bool {
        x.0 < self.size
    }

    /// Embeds a prime-field integer.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u64> {
        let mut v = x.0;
        (0..self.n)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe, FieldError> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::Parse(format!("{coeffs:?}")));
        }
        Ok(Fe(coeffs.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum()))
    }

    /// Renders an element as its little-endian digit string, e.g. `w` in
    /// `GF(4)` is `"01"`. Digits are `.`-separated when `p > 10`.
    pub fn render(&self, x: Fe) -> String {
        let c = self.coeffs(x);
        if self.p <= 10 {
            c.iter().map(|d| char::from(b'0' + *d as u8)).collect()
        } else {
            c.iter().map(u64::to_string).collect::<Vec<_>>().join(".")
        }
    }

    /// Inverse of [`FieldCtx::render`]; shorter strings are zero-padded.
    pub fn parse(&self, s: &str) -> Result<Fe, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Parse(s.to_string());
        let digits: Vec<u64> = if self.p <= 10 && !s.contains('.') {
            s.chars().map(|ch| ch.to_digit(10).map(u64::from).ok_or_else(bad)).collect::<Result<_, _>>()?
        } else {
            s.split('.').map(|t| t.parse::<u64>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        if digits.is_empty() {
            return Err(bad());
        }
        self.from_coeffs(&digits).map_err(|_| bad())
    }

    pub fn to_json(&self, x: Fe) -> Value {
        json!(self.coeffs(x))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match &self.tables {
            Some(t) => {
                if a.is_zero() {
                    return b;
                }
                if b.is_zero() {
                    return a;
                }
                let s = (self.size - 1) as usize;
                let la = t.log[a.0 as usize] as usize;
                let lb = t.log[b.0 as usize] as usize;
                let d = if lb >= la { lb - la } else { lb + s - la };
                match t.zech[d] {
                    u32::MAX => Fe::ZERO,
                    z => t.exp[la + z as usize],
                }
            }
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let half = ((self.size - 1) / 2) as usize;
                t.exp[t.log[a.0 as usize] as usize + half]
            }
            None => self.neg_digits(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize],
            None => self.mul_poly(a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let s = (self.size - 1) as usize;
                let l = t.log[a.0 as usize] as usize;
                Some(t.exp[(s - l) % s])
            }
            None => Some(self.pow(a, self.size - 2)),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        if let Some(t) = &self.tables {
            let s = (self.size - 1) as u128;
            let l = (t.log[a.0 as usize] as u128 * (e as u128 % s)) % s;
            return t.exp[l as usize];
        }
        self.pow_slow(a, e)
    }

    /// `x^(p^r)`.
    pub fn frobenius(&self, x: Fe, r: u32) -> Fe {
        let r = r % self.n;
        self.pow(x, self.pow_p[r as usize])
    }

    /// `x^(p^d) = x`, i.e. `x` lies in the subfield of order `p^d`.
    pub fn in_subfield(&self, x: Fe, d: u32) -> bool {
        d > 0 && self.n.is_multiple_of(d) && self.frobenius(x, d) == x
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Fe) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut ord = self.size - 1;
        for r in prime_factors(self.size - 1) {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == Fe::ONE {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// The `p^d - 1` nonzero elements of the subfield of order `p^d`, plus zero,
    /// in encoding order.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Fe>, FieldError> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(FieldError::NoEmbedding { p: self.p, small: d, big: self.n });
        }
        let sub = self.p.pow(d);
        let step = (self.size - 1) / (sub - 1);
        let g = self.pow(self.generator, step);
        let mut out = vec![Fe::ZERO];
        let mut cur = Fe::ONE;
        for _ in 0..sub - 1 {
            out.push(cur);
            cur = self.mul(cur, g);
        }
        out.sort();
        Ok(out)
    }

    fn digits(&self, x: Fe) -> [u64; MAX_DEGREE as usize] {
        let mut out = [0u64; MAX_DEGREE as usize];
        let mut v = x.0;
        for d in out.iter_mut().take(self.n as usize) {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u64]) -> Fe {
        Fe(d.iter().take(self.n as usize).zip(&self.pow_p).map(|(c, w)| c * w).sum())
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut r = [0u64; MAX_DEGREE as usize];
        for i in 0..self.n as usize {
            r[i] = (da[i] + db[i]) % self.p;
        }
        self.undigits(&r)
    }

    fn neg_digits(&self, a: Fe) -> Fe {
        let da = self.digits(a);
        let mut r = [0u64; MAX_DEGREE as usize];
        for i in 0..self.n as usize {
            r[i] = (self.p - da[i]) % self.p;
        }
        self.undigits(&r)
    }

    fn mul_poly(&self, a: Fe, b: Fe) -> Fe {
        let n = self.n as usize;
        let p = self.p as u128;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u128; 2 * MAX_DEGREE as usize];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] as u128 * db[j] as u128) % p;
            }
        }
        for top in (n..2 * n - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, &m) in self.modulus[..n].iter().enumerate() {
                let idx = top - n + k;
                prod[idx] = (prod[idx] + c * (p - m as u128)) % p;
            }
        }
        let out: Vec<u64> = prod[..n].iter().map(|&c| c as u64).collect();
        self.undigits(&out)
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> Fe {
        if self.size == 2 {
            return Fe::ONE;
        }
        let factors = prime_factors(self.size - 1);
        (1..self.size)
            .map(Fe)
            .find(|&g| factors.iter().all(|r| self.pow_slow(g, (self.size - 1) / r) != Fe::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let s = (self.size - 1) as usize;
        let mut exp = Vec::with_capacity(2 * s.max(1));
        let mut log = vec![0u32; self.size as usize];
        let mut cur = Fe::ONE;
        for i in 0..s.max(1) {
            exp.push(cur);
            log[cur.0 as usize] = i as u32;
            cur = self.mul_poly(cur, self.generator);
        }
        for i in 0..s.max(1) {
            exp.push(exp[i]);
        }
        let zech = if self.p == 2 {
            Vec::new()
        } else {
            (0..s)
                .map(|k| {
                    let v = self.add_digits(Fe::ONE, exp[k]);
                    if v.is_zero() {
                        u32::MAX
                    } else {
                        log[v.0 as usize]
                    }
                })
                .collect()
        };
        Tables { log, exp, zech }
    }
}

// ---------------------------------------------------------------------------
// Polynomials over GF(p), used only to pick and check moduli.

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let m = poly_trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (k, &mk) in m.iter().enumerate() {
                let idx = top - dm + k;
                r[idx] = (r[idx] + (p - c) * mk) % p;
            }
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a monic polynomial over `GF(p)`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 0..n / 2 {
        // xp <- xp^p mod m
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(m, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, n: usize) -> Vec<u64> {
    let total = p.pow(n as u32);
    (0..total)
        .map(|idx| {
            // c_0 is the most significant digit of idx.
            let mut m = vec![0u64; n + 1];
            let mut v = idx;
            for i in (0..n).rev() {
                m[i] = v % p;
                v /= p;
            }
            m[n] = 1;
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most `n/2`. Slow; meant for cross-checking small moduli.
pub fn irreducible_by_trial_division(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut f = vec![0u64; d + 1];
            let mut v = idx;
            for c in f.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            f[d] = 1;
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------

/// Context-carrying element with checked operations.
#[derive(Clone, Debug)]
pub struct FFElem {
    ctx: Arc<FieldCtx>,
    value: Fe,
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.ctx == other.ctx
    }
}

impl FFElem {
    pub fn new(ctx: &Arc<FieldCtx>, value: Fe) -> Result<Self, FieldError> {
        if !ctx.contains(value) {
            return Err(FieldError::Parse(format!("{value:?}")));
        }
        Ok(FFElem { ctx: ctx.clone(), value })
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    fn same(&self, other: &FFElem) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    fn wrap(&self, value: Fe) -> FFElem {
        FFElem { ctx: self.ctx.clone(), value }
    }

    pub fn add(&self, other: &FFElem) -> Result<FFElem, FieldError> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FFElem) -> Result<FFElem, FieldError> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FFElem) -> Result<FFElem, FieldError> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FFElem, FieldError> {
        self.ctx.inv(self.value).map(|v| self.wrap(v)).ok_or(FieldError::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> FFElem {
        self.wrap(self.ctx.pow(self.value, e))
    }

    pub fn frobenius(&self, r: u32) -> FFElem {
        self.wrap(self.ctx.frobenius(self.value, r))
    }
}

/// `b^q + b = a^(q+1)` for `a, b` in `GF(q^2)` inside `ctx`.
pub fn hermitian_pair_check(ctx: &FieldCtx, q: u64, a: Fe, b: Fe) -> Result<bool, FieldError> {
    let d = subfield_degree(ctx, q * q)?;
    if !ctx.in_subfield(a, d) || !ctx.in_subfield(b, d) {
        return Err(FieldError::NotInSubfield(q * q));
    }
    Ok(ctx.add(ctx.pow(b, q), b) == ctx.pow(a, q + 1))
}

/// Degree `d` over `GF(p)` of the subfield with `order` elements.
pub fn subfield_degree(ctx: &FieldCtx, order: u64) -> Result<u32, FieldError> {
    let mut d = 0u32;
    let mut v = 1u64;
    while v < order {
        v = v.saturating_mul(ctx.p);
        d += 1;
    }
    if v != order || d == 0 || !ctx.n.is_multiple_of(d) {
        return Err(FieldError::NoEmbedding { p: ctx.p, small: d, big: ctx.n });
    }
    Ok(d)
}

// ---------------------------------------------------------------------------

/// Solver for the `GF(p)`-linear equation `x^q + x = c`.
pub struct AdditiveSolver {
    ctx: Arc<FieldCtx>,
    /// Row transform `T` with `T A = R` in reduced row echelon form.
    transform: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    kernel: Vec<Vec<u64>>,
}

impl AdditiveSolver {
    pub fn new(ctx: &Arc<FieldCtx>, q: u64) -> Self {
        let n = ctx.n as usize;
        let p = ctx.p;
        // Column c holds the coordinates of L(t^c).
        let mut a = vec![vec![0u64; n]; n];
        for c in 0..n {
            let basis = Fe(ctx.pow_p[c]);
            let image = ctx.add(ctx.pow(basis, q), basis);
            for (r, v) in ctx.coeffs(image).into_iter().enumerate() {
                a[r][c] = v;
            }
        }
        let mut t: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(row, pr);
            t.swap(row, pr);
            let inv = inv_mod(a[row][col], p);
            for v in a[row].iter_mut() {
                *v = *v * inv % p;
            }
            for v in t[row].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..n {
                if r != row && a[r][col] != 0 {
                    let f = a[r][col];
                    for k in 0..n {
                        a[r][k] = (a[r][k] + (p - f) * a[row][k]) % p;
                        t[r][k] = (t[r][k] + (p - f) * t[row][k]) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u64; n];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[r][fc]) % p;
                }
                v
            })
            .collect();
        AdditiveSolver { ctx: ctx.clone(), transform: t, pivots, kernel }
    }

    /// All `x` with `x^q + x = c`, sorted by encoding; empty if `c` is not in
    /// the image.
    pub fn solve(&self, c: Fe) -> Vec<Fe> {
        let ctx = &self.ctx;
        let n = ctx.n as usize;
        let p = ctx.p;
        let cv = ctx.coeffs(c);
        let v: Vec<u64> = self.transform.iter().map(|row| row.iter().zip(&cv).map(|(a, b)| a * b % p).sum::<u64>() % p).collect();
        if v[self.pivots.len()..].iter().any(|&x| x != 0) {
            return Vec::new();
        }
        let mut base = vec![0u64; n];
        for (r, &pc) in self.pivots.iter().enumerate() {
            base[pc] = v[r];
        }
        let dim = self.kernel.len();
        let mut out = Vec::with_capacity(p.pow(dim as u32) as usize);
        for idx in 0..p.pow(dim as u32) {
            let mut x = base.clone();
            let mut k = idx;
            for kv in &self.kernel {
                let s = k % p;
                k /= p;
                for i in 0..n {
                    x[i] = (x[i] + s * kv[i]) % p;
                }
            }
            out.push(ctx.undigits(&x));
        }
        out.sort();
        out
    }
}

/// `solve_additive` as a free function over a fresh solver.
pub fn solve_additive(ctx: &Arc<FieldCtx>, q: u64, c: Fe) -> Vec<Fe> {
    AdditiveSolver::new(ctx, q).solve(c)
}

// ---------------------------------------------------------------------------

/// Field embedding `small ↪ big` sending the generator `t` of `small` to the
/// smallest root (encoding order) of the small modulus inside `big`.
pub struct Embedding {
    small: Arc<FieldCtx>,
    big: Arc<FieldCtx>,
    basis_images: Vec<Fe>,
    inverse: HashMap<Fe, Fe>,
}

impl Embedding {
    pub fn new(small: &Arc<FieldCtx>, big: &Arc<FieldCtx>) -> Result<Self, FieldError> {
        if small.p != big.p || !big.n.is_multiple_of(small.n) {
            return Err(FieldError::NoEmbedding { p: small.p, small: small.n, big: big.n });
        }
        let candidates = big.subfield_elements(small.n)?;
        let root = candidates
            .into_iter()
            .find(|&r| {
                let mut acc = Fe::ZERO;
                for &c in small.modulus.iter().rev() {
                    acc = big.add(big.mul(acc, r), Fe(c));
                }
                acc.is_zero()
            })
            .ok_or(FieldError::NoEmbedding { p: small.p, small: small.n, big: big.n })?;
        let mut basis_images = Vec::with_capacity(small.n as usize);
        let mut cur = Fe::ONE;
        for _ in 0..small.n {
            basis_images.push(cur);
            cur = big.mul(cur, root);
        }
        let mut emb = Embedding { small: small.clone(), big: big.clone(), basis_images, inverse: HashMap::new() };
        let inverse = small.elements().map(|x| (emb.apply(x), x)).collect();
        emb.inverse = inverse;
        Ok(emb)
    }

    pub fn small(&self) -> &Arc<FieldCtx> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldCtx> {
        &self.big
    }

    pub fn apply(&self, x: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for (c, &b) in self.small.coeffs(x).into_iter().zip(&self.basis_images) {
            if c != 0 {
                acc = self.big.add(acc, self.big.mul(Fe(c), b));
            }
        }
        acc
    }

    /// Preimage of a big-field element, if it lies in the image.
    pub fn preimage(&self, y: Fe) -> Option<Fe> {
        self.inverse.get(&y).copied()
    }
}

/// The `k`-th tower level `GF(q^(2k))` over a base `GF(q^2)`.
pub struct Tower {
    pub level: u32,
    pub field: Arc<FieldCtx>,
    pub embedding: Embedding,
}

impl Tower {
    pub fn new(base: &Arc<FieldCtx>, level: u32) -> Result<Self, FieldError> {
        let field = build_field(base.p, base.n * level)?;
        let embedding = Embedding::new(base, &field)?;
        Ok(Tower { level, field, embedding })
    }
}
