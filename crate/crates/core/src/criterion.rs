//! Divisors on rational points and the five-condition tuple checker.
//!
//! The checker takes `(N1, N2, H, G1, G2, P1, P2)` with `N_i ⊆ H ⊆ G_i`,
//! `N_i ⊲ G_i`, and a rationality witness for each `G_i`. With
//! `N1 = N2 = 1` this is the unnormalised five-condition form.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::ffield::FieldCtx;
use crate::funcfield::{CurveFunction, FuncFieldError, FunctionField, WitnessCertificate, WitnessError};
use crate::groups::{check_semidirect, normal_subgroups_between, GroupError, MatrixGroup};
use crate::projective::{HermitianCurve, ProjPoint};
use crate::SCHEMA_VERSION;

/// Finite formal sum of points with nonzero integer multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<ProjPoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(p: ProjPoint, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_point(p, n);
        d
    }

    pub fn add_point(&mut self, p: ProjPoint, n: i64) {
        let v = self.support.entry(p).or_insert(0);
        *v += n;
        if *v == 0 {
            self.support.remove(&p);
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, n) in &other.support {
            out.add_point(*p, *n);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor { support: self.support.iter().map(|(p, n)| (*p, n * k)).collect() }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn multiplicity(&self, p: &ProjPoint) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&ProjPoint, &i64)> {
        self.support.iter()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `(F)_∞` for `self = (F)`.
    pub fn pole_part(&self) -> Divisor {
        Divisor { support: self.support.iter().filter(|(_, n)| **n < 0).map(|(p, n)| (*p, -n)).collect() }
    }

    /// `(F)_0` for `self = (F)`.
    pub fn zero_part(&self) -> Divisor {
        Divisor { support: self.support.iter().filter(|(_, n)| **n > 0).map(|(p, n)| (*p, *n)).collect() }
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|n| *n > 0)
    }

    pub fn to_json(&self, ctx: &FieldCtx) -> Value {
        Value::Array(self.support.iter().map(|(p, n)| json!([p.to_json(ctx), n])).collect())
    }
}

/// `Σ_{σ ∈ G} σ(P)`: each orbit point with multiplicity `|Stab_G(P)|`.
pub fn orbit_sum(g: &MatrixGroup, p: &ProjPoint) -> Divisor {
    let orbit = g.orbit(p);
    let stab = (g.order() / orbit.len()) as i64;
    let mut d = Divisor::zero();
    for q in orbit {
        d.add_point(q, stab);
    }
    d
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("precondition: {what} is not a subset of {of}")]
    NotSubset { what: String, of: String },
    #[error("precondition: {what} is not normal in {of}")]
    NotNormal { what: String, of: String },
    #[error("precondition: a generator of {0} does not preserve the curve")]
    NotAutomorphism(String),
    #[error("precondition: point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("precondition: point {0} is not rational over the coefficient field")]
    PointNotRational(String),
    #[error("precondition: objects live over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
}

/// A verdict with the evidence it was decided on.
#[derive(Debug, Clone)]
pub struct Verdict<E> {
    pub holds: bool,
    pub evidence: E,
}

/// An invariant function claimed to generate `k(X)^G`, with its pole.
#[derive(Debug, Clone)]
pub struct Witness {
    pub name: String,
    pub function: CurveFunction,
    pub pole_point: ProjPoint,
}

fn subset(a: &MatrixGroup, b: &MatrixGroup, an: &str, bn: &str) -> Result<(), CriterionError> {
    if a.is_subset_of(b) {
        Ok(())
    } else {
        Err(CriterionError::NotSubset { what: an.into(), of: bn.into() })
    }
}

/// (a) for one group: the witness certifies `k(X)^G = k(w)`.
pub fn condition_a(
    ff: &FunctionField,
    g: &MatrixGroup,
    w: &Witness,
) -> Result<Verdict<Result<WitnessCertificate, WitnessError>>, CriterionError> {
    if !ff.ctx().as_ref().eq(g.ctx().as_ref()) {
        return Err(CriterionError::FieldMismatch);
    }
    match ff.rationality_witness(g, &w.function, &w.pole_point) {
        Ok(cert) => Ok(Verdict { holds: true, evidence: Ok(cert) }),
        Err(WitnessError::FuncField(e)) => Err(e.into()),
        Err(e) => Ok(Verdict { holds: false, evidence: Err(e) }),
    }
}

/// (b) `G1 ∩ G2 = H`; evidence is the intersection.
pub fn condition_b(g1: &MatrixGroup, g2: &MatrixGroup, h: &MatrixGroup) -> Result<Verdict<MatrixGroup>, CriterionError> {
    subset(h, g1, "H", "G1")?;
    subset(h, g2, "H", "G2")?;
    let i = g1.intersect(g2);
    Ok(Verdict { holds: i == *h, evidence: i })
}

/// (c) for one side: the only `H'` with `N ⊆ H' ⊆ H`, `H' ⊲ G` is `N`.
/// Evidence is the list of such `H'`.
pub fn condition_c(n: &MatrixGroup, h: &MatrixGroup, g: &MatrixGroup) -> Result<Verdict<Vec<MatrixGroup>>, CriterionError> {
    subset(n, h, "N", "H")?;
    let list = normal_subgroups_between(n, h, g)?;
    Ok(Verdict { holds: list.len() == 1 && list[0] == *n, evidence: list })
}

fn check_point(curve: &HermitianCurve, ctx: &FieldCtx, p: &ProjPoint) -> Result<(), CriterionError> {
    if curve.on_curve(ctx, p) {
        Ok(())
    } else {
        Err(CriterionError::PointNotOnCurve(p.render(ctx)))
    }
}

/// (d) `Σ_H h(P1) + Σ_{G1} σ(P2) = Σ_H h(P2) + Σ_{G2} τ(P1)`; evidence is
/// both sides. Groups and points may live over any field containing
/// `GF(q^2)`.
pub fn condition_d(
    curve: &HermitianCurve,
    h: &MatrixGroup,
    g1: &MatrixGroup,
    g2: &MatrixGroup,
    p1: &ProjPoint,
    p2: &ProjPoint,
) -> Result<Verdict<(Divisor, Divisor)>, CriterionError> {
    let ctx = g1.ctx();
    if ctx != g2.ctx() || ctx != h.ctx() {
        return Err(CriterionError::FieldMismatch);
    }
    check_point(curve, ctx, p1)?;
    check_point(curve, ctx, p2)?;
    let lhs = orbit_sum(h, p1).add(&orbit_sum(g1, p2));
    let rhs = orbit_sum(h, p2).add(&orbit_sum(g2, p1));
    Ok(Verdict { holds: lhs == rhs, evidence: (lhs, rhs) })
}

/// (e) `H P1 ≠ H P2`; evidence is both orbits.
pub fn condition_e(h: &MatrixGroup, p1: &ProjPoint, p2: &ProjPoint) -> Verdict<(Vec<ProjPoint>, Vec<ProjPoint>)> {
    let (a, b) = (h.orbit(p1), h.orbit(p2));
    Verdict { holds: a != b, evidence: (a, b) }
}

/// `Σ_{G1} σ(Q) = Σ_{G2} τ(Q)`.
pub fn check_outer_point(
    curve: &HermitianCurve,
    g1: &MatrixGroup,
    g2: &MatrixGroup,
    q: &ProjPoint,
) -> Result<Verdict<(Divisor, Divisor)>, CriterionError> {
    if g1.ctx() != g2.ctx() {
        return Err(CriterionError::FieldMismatch);
    }
    check_point(curve, g1.ctx(), q)?;
    let (a, b) = (orbit_sum(g1, q), orbit_sum(g2, q));
    Ok(Verdict { holds: a == b, evidence: (a, b) })
}

/// Input to [`verify_tuple`]. `sylow`, when given, holds complements `K_i`
/// with `G_i = K_i ⋊ H`, recorded in the certified data.
#[derive(Debug, Clone)]
pub struct CriterionTuple {
    pub curve: HermitianCurve,
    pub n: [MatrixGroup; 2],
    pub h: MatrixGroup,
    pub g: [MatrixGroup; 2],
    pub p: [ProjPoint; 2],
    pub witnesses: [Witness; 2],
    pub sylow: Option<[MatrixGroup; 2]>,
}

impl CriterionTuple {
    /// Exchanges the roles of the two sides.
    pub fn swapped(&self) -> CriterionTuple {
        let sw = |[a, b]: [MatrixGroup; 2]| [b, a];
        CriterionTuple {
            curve: self.curve.clone(),
            n: sw(self.n.clone()),
            h: self.h.clone(),
            g: sw(self.g.clone()),
            p: [self.p[1], self.p[0]],
            witnesses: [self.witnesses[1].clone(), self.witnesses[0].clone()],
            sylow: self.sylow.clone().map(sw),
        }
    }
}

/// Galois data certified once all five conditions hold.
#[derive(Debug, Clone)]
pub struct CertifiedData {
    /// `(G1 : H) + 1`.
    pub degree: usize,
    /// `(G_i : H)`, the degree of the projection from each marked point.
    pub projection_degrees: [usize; 2],
    /// `|G_i / N_i|`, the order of the Galois group of each projection.
    pub galois_group_orders: [usize; 2],
    /// `G_i = K_i ⋊ H` for the supplied complements.
    pub semidirect: Option<[bool; 2]>,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub a: [Verdict<Result<WitnessCertificate, WitnessError>>; 2],
    pub b: Verdict<MatrixGroup>,
    pub c: [Verdict<Vec<MatrixGroup>>; 2],
    pub d: Verdict<(Divisor, Divisor)>,
    pub e: Verdict<(Vec<ProjPoint>, Vec<ProjPoint>)>,
    pub overall: bool,
    pub certified: Option<CertifiedData>,
    pub witness_names: [String; 2],
    pub group_orders: [usize; 5],
}

impl CriterionReport {
    pub fn verdicts(&self) -> [(char, bool); 5] {
        [
            ('a', self.a[0].holds && self.a[1].holds),
            ('b', self.b.holds),
            ('c', self.c[0].holds && self.c[1].holds),
            ('d', self.d.holds),
            ('e', self.e.holds),
        ]
    }

    pub fn to_json(&self, ctx: &FieldCtx, dump_elements: bool) -> Value {
        let cert = |v: &Verdict<Result<WitnessCertificate, WitnessError>>, name: &str| match &v.evidence {
            Ok(c) => json!({ "witness": name, "certificate": c.to_json(ctx) }),
            Err(e) => json!({ "witness": name, "failure": e.to_string() }),
        };
        let orders = |l: &Vec<MatrixGroup>| l.iter().map(MatrixGroup::order).collect::<Vec<_>>();
        let pts = |l: &Vec<ProjPoint>| l.iter().map(|p| p.to_json(ctx)).collect::<Vec<_>>();
        json!({
            "schema_version": SCHEMA_VERSION,
            "overall": self.overall,
            "group_orders": {
                "N1": self.group_orders[0], "N2": self.group_orders[1], "H": self.group_orders[2],
                "G1": self.group_orders[3], "G2": self.group_orders[4],
            },
            "conditions": {
                "a": {
                    "holds": self.a[0].holds && self.a[1].holds,
                    "evidence": [cert(&self.a[0], &self.witness_names[0]), cert(&self.a[1], &self.witness_names[1])],
                },
                "b": { "holds": self.b.holds, "evidence": { "intersection": self.b.evidence.to_json(dump_elements) } },
                "c": {
                    "holds": self.c[0].holds && self.c[1].holds,
                    "evidence": { "surviving_orders": [orders(&self.c[0].evidence), orders(&self.c[1].evidence)] },
                },
                "d": {
                    "holds": self.d.holds,
                    "evidence": { "lhs": self.d.evidence.0.to_json(ctx), "rhs": self.d.evidence.1.to_json(ctx) },
                },
                "e": {
                    "holds": self.e.holds,
                    "evidence": { "orbit_p1": pts(&self.e.evidence.0), "orbit_p2": pts(&self.e.evidence.1) },
                },
            },
            "certified": self.certified.as_ref().map(|c| json!({
                "degree": c.degree,
                "projection_degrees": c.projection_degrees,
                "galois_group_orders": c.galois_group_orders,
                "semidirect": c.semidirect,
            })),
        })
    }
}

fn check_preconditions(t: &CriterionTuple, ff: &FunctionField) -> Result<(), CriterionError> {
    let ctx = t.curve.field();
    let all = [&t.n[0], &t.n[1], &t.h, &t.g[0], &t.g[1]];
    if all.iter().any(|g| g.ctx() != ctx) {
        return Err(CriterionError::FieldMismatch);
    }
    for (k, name) in [(0, "1"), (1, "2")] {
        subset(&t.n[k], &t.h, &format!("N{name}"), "H")?;
        subset(&t.h, &t.g[k], "H", &format!("G{name}"))?;
        if !t.n[k].is_normal_in(&t.g[k])? {
            return Err(CriterionError::NotNormal { what: format!("N{name}"), of: format!("G{name}") });
        }
        if t.g[k].generators().iter().any(|m| !ff.preserves_curve(m)) {
            return Err(CriterionError::NotAutomorphism(format!("G{name}")));
        }
        check_point(&t.curve, ctx, &t.p[k])?;
    }
    Ok(())
}

/// Runs all five conditions. Structural precondition failures are errors,
/// not verdicts.
pub fn verify_tuple(t: &CriterionTuple) -> Result<CriterionReport, CriterionError> {
    let ff = FunctionField::new(&t.curve);
    check_preconditions(t, &ff)?;
    let a = [condition_a(&ff, &t.g[0], &t.witnesses[0])?, condition_a(&ff, &t.g[1], &t.witnesses[1])?];
    let b = condition_b(&t.g[0], &t.g[1], &t.h)?;
    let c = [condition_c(&t.n[0], &t.h, &t.g[0])?, condition_c(&t.n[1], &t.h, &t.g[1])?];
    let d = condition_d(&t.curve, &t.h, &t.g[0], &t.g[1], &t.p[0], &t.p[1])?;
    let e = condition_e(&t.h, &t.p[0], &t.p[1]);
    let overall = a.iter().all(|v| v.holds) && b.holds && c.iter().all(|v| v.holds) && d.holds && e.holds;
    let certified = overall.then(|| {
        let idx = |k: usize| t.g[k].order() / t.h.order();
        CertifiedData {
            degree: idx(0) + 1,
            projection_degrees: [idx(0), idx(1)],
            galois_group_orders: [t.g[0].order() / t.n[0].order(), t.g[1].order() / t.n[1].order()],
            semidirect: t.sylow.as_ref().map(|s| [check_semidirect(&t.g[0], &s[0], &t.h), check_semidirect(&t.g[1], &s[1], &t.h)]),
        }
    });
    Ok(CriterionReport {
        a,
        b,
        c,
        d,
        e,
        overall,
        certified,
        witness_names: [t.witnesses[0].name.clone(), t.witnesses[1].name.clone()],
        group_orders: [t.n[0].order(), t.n[1].order(), t.h.order(), t.g[0].order(), t.g[1].order()],
    })
}
