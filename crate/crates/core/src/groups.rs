//! Finite subgroups of `PGL_3(F)` stored as explicit element sets, and the
//! subgroups of the Hermitian automorphism group used by the checker.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::ffield::{prime_factors, Embedding, Fe, FieldCtx};
use crate::projective::{HermitianCurve, ProjMatrix, ProjPoint};

/// Default bound on closure size.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;
/// Largest `H` whose subgroup lattice is enumerated.
pub const SUBGROUP_ENUMERATION_CAP: usize = 10_000;
/// Largest non-cyclic `H` handled by the generic lattice walk.
pub const NONCYCLIC_ENUMERATION_CAP: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the closure cap {cap}")]
    CapExceeded { cap: usize },
    #[error("{what} is not a subset of {of}")]
    NotSubset { what: &'static str, of: &'static str },
    #[error("{m} does not divide {modulus}")]
    NotDivisor { m: u64, modulus: u64 },
    #[error("subgroup enumeration of a group of order {order} exceeds cap {cap}")]
    EnumerationCap { order: usize, cap: usize },
}

/// Closure cap, overridable through `GPK_MAX_GROUP_ORDER`.
pub fn closure_cap() -> usize {
    std::env::var("GPK_MAX_GROUP_ORDER").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CLOSURE_CAP)
}

/// A finite subgroup of `PGL_3`, closed under products and inverses.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    ctx: Arc<FieldCtx>,
    elements: Vec<ProjMatrix>,
    index: HashSet<ProjMatrix>,
    generators: Vec<ProjMatrix>,
}

impl PartialEq for MatrixGroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for MatrixGroup {}

impl MatrixGroup {
    pub fn trivial(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_sorted(ctx, vec![ProjMatrix::identity()], Vec::new())
    }

    fn from_sorted(ctx: &Arc<FieldCtx>, mut elements: Vec<ProjMatrix>, generators: Vec<ProjMatrix>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().copied().collect();
        MatrixGroup { ctx: ctx.clone(), elements, index, generators }
    }

    /// Smallest subgroup containing `gens`, by breadth-first saturation.
    pub fn closure(ctx: &Arc<FieldCtx>, gens: &[ProjMatrix], cap: usize) -> Result<Self, GroupError> {
        let gens: Vec<ProjMatrix> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
        let id = ProjMatrix::identity();
        let mut seen: HashSet<ProjMatrix> = HashSet::from([id]);
        let mut order = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in &gens {
                let h = e.mul(ctx, g);
                if seen.insert(h) {
                    if seen.len() > cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    order.push(h);
                    queue.push_back(h);
                }
            }
        }
        Ok(Self::from_sorted(ctx, order, gens))
    }

    /// Group from a known element set, with a small generating set chosen
    /// greedily in element order.
    pub fn from_elements(ctx: &Arc<FieldCtx>, elements: Vec<ProjMatrix>) -> Result<Self, GroupError> {
        let mut g = Self::from_sorted(ctx, elements, Vec::new());
        g.generators = greedy_generators(ctx, &g.elements)?;
        Ok(g)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[ProjMatrix] {
        &self.generators
    }

    pub fn contains(&self, m: &ProjMatrix) -> bool {
        self.index.contains(m)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset_of(&self, other: &MatrixGroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Checks closure under products of generators and inverses.
    pub fn is_closed(&self) -> bool {
        self.contains(&ProjMatrix::identity())
            && self
                .elements
                .iter()
                .all(|e| self.contains(&e.inverse(&self.ctx)) && self.generators.iter().all(|g| self.contains(&e.mul(&self.ctx, g))))
            && self.generators.iter().all(|g| self.contains(g))
    }

    /// Exact set intersection.
    pub fn intersect(&self, other: &MatrixGroup) -> MatrixGroup {
        let common: Vec<ProjMatrix> = self.elements.iter().copied().filter(|e| other.contains(e)).collect();
        Self::from_elements(&self.ctx, common).expect("subgroup of a finite group")
    }

    /// `self ⊲ g`, tested on the generators of `g`.
    pub fn is_normal_in(&self, g: &MatrixGroup) -> Result<bool, GroupError> {
        if !self.is_subset_of(g) {
            return Err(GroupError::NotSubset { what: "N", of: "G" });
        }
        Ok(g.generators.iter().all(|x| self.generators.iter().all(|n| self.contains(&n.conjugate(&self.ctx, x)))))
    }

    /// Order of an element (smallest `k > 0` with `m^k = 1`).
    pub fn element_order(&self, m: &ProjMatrix) -> usize {
        let mut k = 1;
        let mut cur = *m;
        while !cur.is_identity() {
            cur = cur.mul(&self.ctx, m);
            k += 1;
        }
        k
    }

    fn power(&self, m: &ProjMatrix, mut e: usize) -> ProjMatrix {
        let mut base = *m;
        let mut acc = ProjMatrix::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&self.ctx, &base);
            }
            base = base.mul(&self.ctx, &base);
            e >>= 1;
        }
        acc
    }

    /// An element generating the whole group, if it is cyclic.
    pub fn cyclic_generator(&self) -> Option<ProjMatrix> {
        let n = self.order();
        if n == 1 {
            return Some(ProjMatrix::identity());
        }
        let primes = prime_factors(n as u64);
        self.elements.iter().find(|g| primes.iter().all(|&r| !self.power(g, n / r as usize).is_identity())).copied()
    }

    /// Every subgroup `K` with `lower ⊆ K ⊆ self`, ordered by size.
    pub fn subgroups_containing(&self, lower: &MatrixGroup) -> Result<Vec<MatrixGroup>, GroupError> {
        if !lower.is_subset_of(self) {
            return Err(GroupError::NotSubset { what: "N", of: "H" });
        }
        let n = self.order();
        if n > SUBGROUP_ENUMERATION_CAP {
            return Err(GroupError::EnumerationCap { order: n, cap: SUBGROUP_ENUMERATION_CAP });
        }
        let mut out = Vec::new();
        if let Some(g) = self.cyclic_generator() {
            for d in 1..=n {
                if !n.is_multiple_of(d) {
                    continue;
                }
                let sub = MatrixGroup::closure(&self.ctx, &[self.power(&g, n / d)], n)?;
                if lower.is_subset_of(&sub) {
                    out.push(sub);
                }
            }
            return Ok(out);
        }
        if n > NONCYCLIC_ENUMERATION_CAP {
            return Err(GroupError::EnumerationCap { order: n, cap: NONCYCLIC_ENUMERATION_CAP });
        }
        let mut seen: BTreeSet<Vec<ProjMatrix>> = BTreeSet::new();
        let mut queue = VecDeque::from([lower.clone()]);
        seen.insert(lower.elements.clone());
        while let Some(k) = queue.pop_front() {
            for x in &self.elements {
                if k.contains(x) {
                    continue;
                }
                let mut gens = k.generators.clone();
                gens.push(*x);
                let bigger = MatrixGroup::closure(&self.ctx, &gens, n)?;
                if seen.insert(bigger.elements.clone()) {
                    queue.push_back(bigger);
                }
            }
            out.push(k);
        }
        out.sort_by_key(MatrixGroup::order);
        Ok(out)
    }

    /// Orbit of a point, sorted.
    pub fn orbit(&self, p: &ProjPoint) -> Vec<ProjPoint> {
        let mut seen: BTreeSet<ProjPoint> = BTreeSet::from([*p]);
        let mut queue = VecDeque::from([*p]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(&self.ctx, &x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn stabilizer(&self, p: &ProjPoint) -> MatrixGroup {
        let fix: Vec<ProjMatrix> = self.elements.iter().copied().filter(|g| g.apply(&self.ctx, p) == *p).collect();
        Self::from_elements(&self.ctx, fix).expect("subgroup of a finite group")
    }

    /// The same group over an extension field.
    pub fn lift(&self, emb: &Embedding) -> MatrixGroup {
        let elements = self.elements.iter().map(|m| m.lift(emb)).collect();
        let generators = self.generators.iter().map(|m| m.lift(emb)).collect();
        Self::from_sorted(emb.big(), elements, generators)
    }

    pub fn to_json(&self, dump_elements: bool) -> Value {
        let ctx = &self.ctx;
        let mut v = json!({
            "order": self.order(),
            "generators": self.generators.iter().map(|g| g.to_json(ctx)).collect::<Vec<_>>(),
        });
        if dump_elements {
            v["elements"] = Value::Array(self.elements.iter().map(|g| g.to_json(ctx)).collect());
        }
        v
    }
}

fn greedy_generators(ctx: &Arc<FieldCtx>, elements: &[ProjMatrix]) -> Result<Vec<ProjMatrix>, GroupError> {
    let mut gens = Vec::new();
    let mut current = MatrixGroup::trivial(ctx);
    for e in elements {
        if !current.contains(e) {
            gens.push(*e);
            current = MatrixGroup::closure(ctx, &gens, elements.len())?;
        }
    }
    Ok(gens)
}

/// `N ⊆ H ⊆ G` subgroups `H'` with `N ⊆ H' ⊆ H` that are normal in `G`.
pub fn normal_subgroups_between(n: &MatrixGroup, h: &MatrixGroup, g: &MatrixGroup) -> Result<Vec<MatrixGroup>, GroupError> {
    if !h.is_subset_of(g) {
        return Err(GroupError::NotSubset { what: "H", of: "G" });
    }
    let mut out = Vec::new();
    for k in h.subgroups_containing(n)? {
        if k.is_normal_in(g)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// `G = N ⋊ H`: `N ⊲ G`, `N ∩ H = 1` and `|N| |H| = |G|`.
pub fn check_semidirect(g: &MatrixGroup, n: &MatrixGroup, h: &MatrixGroup) -> bool {
    if !n.is_subset_of(g) || !h.is_subset_of(g) {
        return false;
    }
    n.is_normal_in(g).unwrap_or(false) && n.intersect(h).is_trivial() && n.order() * h.order() == g.order()
}

// ---------------------------------------------------------------------------
// The explicit subgroups of Aut(X).

/// `σ_{a,b} : (X:Y:Z) ↦ (X + a^q Y + b Z : Y + a Z : Z)`.
pub fn sigma(curve: &HermitianCurve, a: Fe, b: Fe) -> ProjMatrix {
    let ctx = curve.field();
    let aq = ctx.pow(a, curve.q());
    let e = [Fe::ONE, aq, b, Fe::ZERO, Fe::ONE, a, Fe::ZERO, Fe::ZERO, Fe::ONE];
    ProjMatrix::new(ctx, e).expect("unipotent")
}

/// `(X:Y:Z) ↦ (X : a X + Y : b X + a^q Y + Z)`.
pub fn sigma_dual(curve: &HermitianCurve, a: Fe, b: Fe) -> ProjMatrix {
    let ctx = curve.field();
    let aq = ctx.pow(a, curve.q());
    let e = [Fe::ONE, Fe::ZERO, Fe::ZERO, a, Fe::ONE, Fe::ZERO, b, aq, Fe::ONE];
    ProjMatrix::new(ctx, e).expect("unipotent")
}

/// `η_c : (X:Y:Z) ↦ (c^(q+1) X : c Y : Z)`.
pub fn eta(curve: &HermitianCurve, c: Fe) -> ProjMatrix {
    let ctx = curve.field();
    let e = [ctx.pow(c, curve.q() + 1), Fe::ZERO, Fe::ZERO, Fe::ZERO, c, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE];
    ProjMatrix::new(ctx, e).expect("c is nonzero")
}

/// `(X:Y:Z) ↦ (Z:Y:X)`, exchanging `P1` and `P2`.
pub fn swap_xz(curve: &HermitianCurve) -> ProjMatrix {
    let e = [Fe::ZERO, Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO];
    ProjMatrix::new(curve.field(), e).expect("permutation")
}

/// Pairs `(a, b)` in `GF(q^2)^2` with `b^q + b = a^(q+1)`, in encoding order.
pub fn hermitian_pairs(curve: &HermitianCurve) -> Vec<(Fe, Fe)> {
    let ctx = curve.field();
    let q = curve.q();
    let mut out = Vec::new();
    for a in ctx.elements() {
        for b in ctx.elements() {
            if crate::ffield::hermitian_pair_check(ctx, q, a, b).expect("in GF(q^2)") {
                out.push((a, b));
            }
        }
    }
    out
}

/// The Sylow `p`-subgroup fixing `P1`.
pub fn n1_subgroup(curve: &HermitianCurve) -> MatrixGroup {
    let els = hermitian_pairs(curve).into_iter().map(|(a, b)| sigma(curve, a, b)).collect();
    MatrixGroup::from_elements(curve.field(), els).expect("N1 is a group")
}

/// The Sylow `p`-subgroup fixing `P2`.
pub fn n2_subgroup(curve: &HermitianCurve) -> MatrixGroup {
    let els = hermitian_pairs(curve).into_iter().map(|(a, b)| sigma_dual(curve, a, b)).collect();
    MatrixGroup::from_elements(curve.field(), els).expect("N2 is a group")
}

/// `c0 = c^((q^2-1)/m)` for the smallest generator `c` of `GF(q^2)^*`.
pub fn cyclic_root(curve: &HermitianCurve, m: u64) -> Result<Fe, GroupError> {
    let order = curve.q() * curve.q() - 1;
    if m == 0 || !order.is_multiple_of(m) {
        return Err(GroupError::NotDivisor { m, modulus: order });
    }
    let ctx = curve.field();
    Ok(ctx.pow(ctx.generator(), order / m))
}

/// `C_m = <η_{c0}>`, of order `m`.
pub fn cyclic_subgroup(curve: &HermitianCurve, m: u64) -> Result<MatrixGroup, GroupError> {
    let c0 = cyclic_root(curve, m)?;
    MatrixGroup::closure(curve.field(), &[eta(curve, c0)], closure_cap())
}
