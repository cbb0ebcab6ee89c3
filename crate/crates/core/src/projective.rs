//! The projective plane over a finite field, `PGL_3`, and the Hermitian curve.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::ffield::{build_field, subfield_degree, AdditiveSolver, Embedding, Fe, FieldCtx, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectiveError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("field of order {size} does not contain GF({q2})")]
    FieldTooSmall { size: u64, q2: u64 },
    #[error("malformed point literal {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of `P^2`, normalised so that its first nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Fe; 3],
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.coords;
        write!(f, "({}:{}:{})", x.0, y.0, z.0)
    }
}

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, v: [Fe; 3]) -> Result<Self, ProjectiveError> {
        let lead = v.iter().find(|c| !c.is_zero()).ok_or(ProjectiveError::ZeroVector)?;
        let inv = ctx.inv(*lead).expect("nonzero");
        Ok(ProjPoint { coords: v.map(|c| ctx.mul(c, inv)) })
    }

    /// The affine point `(x : y : 1)`, normalised.
    pub fn affine(ctx: &FieldCtx, x: Fe, y: Fe) -> Self {
        Self::new(ctx, [x, y, Fe::ONE]).expect("Z = 1")
    }

    pub fn coords(&self) -> [Fe; 3] {
        self.coords
    }

    /// `(X/Z, Y/Z)` when `Z != 0`.
    pub fn affine_coords(&self, ctx: &FieldCtx) -> Option<(Fe, Fe)> {
        let [x, y, z] = self.coords;
        let zi = ctx.inv(z)?;
        Some((ctx.mul(x, zi), ctx.mul(y, zi)))
    }

    pub fn is_affine(&self) -> bool {
        !self.coords[2].is_zero()
    }

    pub fn lift(&self, emb: &Embedding) -> ProjPoint {
        // The embedding fixes 1, so normalisation is preserved.
        ProjPoint { coords: self.coords.map(|c| emb.apply(c)) }
    }

    pub fn to_json(&self, ctx: &FieldCtx) -> Value {
        Value::Array(self.coords.iter().map(|&c| ctx.to_json(c)).collect())
    }

    pub fn render(&self, ctx: &FieldCtx) -> String {
        let [x, y, z] = self.coords.map(|c| ctx.render(c));
        format!("({x}:{y}:{z})")
    }

    /// Parses `X,Y,Z` where each coordinate is a digit string as accepted by
    /// [`FieldCtx::parse`].
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self, ProjectiveError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(ProjectiveError::Parse(s.to_string()));
        }
        let mut v = [Fe::ZERO; 3];
        for (slot, part) in v.iter_mut().zip(parts) {
            *slot = ctx.parse(part)?;
        }
        ProjPoint::new(ctx, v)
    }
}

/// An element of `PGL_3`, normalised so that the first nonzero entry in
/// row-major order is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMatrix {
    entries: [Fe; 9],
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<u64> = self.entries.iter().map(|c| c.0).collect();
        write!(f, "[{:?} {:?} {:?}]", &e[0..3], &e[3..6], &e[6..9])
    }
}

fn det3(ctx: &FieldCtx, m: &[Fe; 9]) -> Fe {
    let t = |a: usize, b: usize, c: usize, d: usize| ctx.sub(ctx.mul(m[a], m[b]), ctx.mul(m[c], m[d]));
    let r0 = ctx.mul(m[0], t(4, 8, 5, 7));
    let r1 = ctx.mul(m[1], t(3, 8, 5, 6));
    let r2 = ctx.mul(m[2], t(3, 7, 4, 6));
    ctx.add(ctx.sub(r0, r1), r2)
}

impl ProjMatrix {
    pub fn new(ctx: &FieldCtx, entries: [Fe; 9]) -> Result<Self, ProjectiveError> {
        if det3(ctx, &entries).is_zero() {
            return Err(ProjectiveError::Singular);
        }
        Ok(Self::normalized(ctx, entries))
    }

    fn normalized(ctx: &FieldCtx, entries: [Fe; 9]) -> Self {
        let lead = *entries.iter().find(|c| !c.is_zero()).expect("invertible");
        let inv = ctx.inv(lead).expect("nonzero");
        ProjMatrix { entries: entries.map(|c| ctx.mul(c, inv)) }
    }

    pub fn identity() -> Self {
        let mut e = [Fe::ZERO; 9];
        e[0] = Fe::ONE;
        e[4] = Fe::ONE;
        e[8] = Fe::ONE;
        ProjMatrix { entries: e }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn entries(&self) -> &[Fe; 9] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> [Fe; 3] {
        [self.entries[3 * i], self.entries[3 * i + 1], self.entries[3 * i + 2]]
    }

    /// Product `self · other`; acting on points, `other` is applied first.
    pub fn mul(&self, ctx: &FieldCtx, other: &ProjMatrix) -> ProjMatrix {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = [Fe::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Fe::ZERO;
                for k in 0..3 {
                    s = ctx.add(s, ctx.mul(a[3 * i + k], b[3 * k + j]));
                }
                out[3 * i + j] = s;
            }
        }
        Self::normalized(ctx, out)
    }

    /// Inverse via the adjugate, which is proportional to it.
    pub fn inverse(&self, ctx: &FieldCtx) -> ProjMatrix {
        let m = &self.entries;
        let c = |a: usize, b: usize, c: usize, d: usize| ctx.sub(ctx.mul(m[a], m[b]), ctx.mul(m[c], m[d]));
        let adj = [
            c(4, 8, 5, 7),
            c(2, 7, 1, 8),
            c(1, 5, 2, 4),
            c(5, 6, 3, 8),
            c(0, 8, 2, 6),
            c(2, 3, 0, 5),
            c(3, 7, 4, 6),
            c(1, 6, 0, 7),
            c(0, 4, 1, 3),
        ];
        Self::normalized(ctx, adj)
    }

    pub fn conjugate(&self, ctx: &FieldCtx, by: &ProjMatrix) -> ProjMatrix {
        by.mul(ctx, self).mul(ctx, &by.inverse(ctx))
    }

    pub fn apply_vec(&self, ctx: &FieldCtx, v: [Fe; 3]) -> [Fe; 3] {
        let m = &self.entries;
        let mut out = [Fe::ZERO; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let mut s = Fe::ZERO;
            for k in 0..3 {
                s = ctx.add(s, ctx.mul(m[3 * i + k], v[k]));
            }
            *o = s;
        }
        out
    }

    pub fn apply(&self, ctx: &FieldCtx, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(ctx, self.apply_vec(ctx, p.coords)).expect("invertible map")
    }

    pub fn lift(&self, emb: &Embedding) -> ProjMatrix {
        ProjMatrix { entries: self.entries.map(|c| emb.apply(c)) }
    }

    pub fn to_json(&self, ctx: &FieldCtx) -> Value {
        Value::Array(self.entries.iter().map(|&c| ctx.to_json(c)).collect())
    }
}

/// The Hermitian curve `X^q Z + X Z^q - Y^(q+1) = 0` over `GF(q^2)`.
#[derive(Clone, Debug)]
pub struct HermitianCurve {
    p: u64,
    e: u32,
    q: u64,
    field: Arc<FieldCtx>,
}

impl HermitianCurve {
    pub fn new(p: u64, e: u32) -> Result<Self, ProjectiveError> {
        if e == 0 {
            return Err(FieldError::DegreeOutOfRange { n: 0, cap: crate::ffield::MAX_DEGREE }.into());
        }
        let field = build_field(p, 2 * e)?;
        Ok(HermitianCurve { p, e, q: p.pow(e), field })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `GF(q^2)`.
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// `P1 = (1:0:0)`.
    pub fn p1(&self) -> ProjPoint {
        ProjPoint { coords: [Fe::ONE, Fe::ZERO, Fe::ZERO] }
    }

    /// `P2 = (0:0:1)`.
    pub fn p2(&self) -> ProjPoint {
        ProjPoint { coords: [Fe::ZERO, Fe::ZERO, Fe::ONE] }
    }

    /// Evaluates the defining form. Its coefficients are `±1`, so any field
    /// of characteristic `p` works.
    pub fn form(&self, ctx: &FieldCtx, v: [Fe; 3]) -> Fe {
        let [x, y, z] = v;
        let t1 = ctx.mul(ctx.pow(x, self.q), z);
        let t2 = ctx.mul(x, ctx.pow(z, self.q));
        ctx.sub(ctx.add(t1, t2), ctx.pow(y, self.q + 1))
    }

    pub fn on_curve(&self, ctx: &FieldCtx, p: &ProjPoint) -> bool {
        self.form(ctx, p.coords).is_zero()
    }

    /// Whether all coordinates of `p` lie in `GF(q^2)` inside `ctx`.
    pub fn is_rational_in(&self, ctx: &FieldCtx, p: &ProjPoint) -> bool {
        p.coords.iter().all(|&c| ctx.in_subfield(c, 2 * self.e))
    }

    /// `X(GF(q^2))`: `P1` first, then affine points ordered by `(y, x)`.
    pub fn rational_points(&self) -> Vec<ProjPoint> {
        self.points_over(&self.field).expect("GF(q^2) contains itself")
    }

    /// All points over a field containing `GF(q^2)`, in the same order.
    pub fn points_over(&self, ctx: &Arc<FieldCtx>) -> Result<Vec<ProjPoint>, ProjectiveError> {
        let mut out = vec![self.p1()];
        out.extend(self.affine_points(ctx)?.map(|(x, y)| ProjPoint::affine(ctx, x, y)));
        Ok(out)
    }

    /// Lazily enumerates affine points `(x, y)` over `ctx`, `y` in encoding
    /// order and `x` sorted within each fibre.
    pub fn affine_points<'a>(&'a self, ctx: &'a Arc<FieldCtx>) -> Result<impl Iterator<Item = (Fe, Fe)> + 'a, ProjectiveError> {
        if subfield_degree(ctx, self.q * self.q).is_err() {
            return Err(ProjectiveError::FieldTooSmall { size: ctx.size(), q2: self.q * self.q });
        }
        let solver = AdditiveSolver::new(ctx, self.q);
        let q = self.q;
        Ok(ctx.elements().flat_map(move |y| {
            let c = ctx.pow(y, q + 1);
            solver.solve(c).into_iter().map(move |x| (x, y))
        }))
    }

    pub fn describe(&self) -> Value {
        json!({ "p": self.p, "e": self.e, "q": self.q, "field": self.field.describe() })
    }
}
