//! Invariants over exhaustive enumerations and random samples.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use gpk_core::criterion::{orbit_sum, verify_tuple, Divisor};
use gpk_core::ffield::{build_field, Embedding, Fe, FieldCtx};
use gpk_core::funcfield::{CurveFunction, CurvePoly, FunctionField};
use gpk_core::groups::{self, closure_cap, MatrixGroup};
use gpk_core::instance::HermitianInstance;
use gpk_core::projective::{HermitianCurve, ProjMatrix, ProjPoint};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 100, ..ProptestConfig::default() }
}

// -- fields -----------------------------------------------------------------

fn check_axioms_exhaustive(f: &FieldCtx) {
    let els: Vec<Fe> = f.elements().collect();
    for &a in &els {
        assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
        assert_eq!(f.frobenius(a, f.degree()), a);
        for &b in &els {
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
            assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
            let ab = f.mul(a, b);
            let apb = f.add(a, b);
            for &c in &els {
                assert_eq!(f.mul(ab, c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(apb, c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(apb, c), f.add(f.mul(a, c), f.mul(b, c)));
            }
        }
    }
}

#[test]
fn field_axioms_by_exhaustion() {
    for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (2, 8), (3, 1), (3, 2), (3, 4), (3, 5), (5, 2), (7, 2), (13, 2)] {
        let f = build_field(p, n).unwrap();
        assert!(f.size() <= 256);
        check_axioms_exhaustive(&f);
    }
}

fn big_fields() -> &'static Vec<Arc<FieldCtx>> {
    static F: OnceLock<Vec<Arc<FieldCtx>>> = OnceLock::new();
    // Table-backed and schoolbook sizes, in both characteristics.
    F.get_or_init(|| [(2, 12), (3, 8), (2, 21), (3, 13), (5, 9)].iter().map(|&(p, n)| build_field(p, n).unwrap()).collect())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms_sampled(k in 0usize..5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), e in 0u64..1000) {
        let f = &big_fields()[k];
        let [a, b, c] = [a, b, c].map(|v| Fe(v % f.size()));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.pow(a, e + 1), f.mul(f.pow(a, e), a));
        prop_assert_eq!(f.frobenius(a, f.degree()), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            prop_assert_eq!(f.pow(a, f.size() - 1), Fe::ONE);
        }
    }
}

#[test]
fn trace_like_map_has_kernel_and_image_q() {
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let c = HermitianCurve::new(p, e).unwrap();
        let (f, q) = (c.field(), c.q());
        let img: std::collections::BTreeSet<Fe> = f.elements().map(|x| f.add(f.pow(x, q), x)).collect();
        let ker = f.elements().filter(|&x| f.add(f.pow(x, q), x).is_zero()).count();
        assert_eq!((img.len() as u64, ker as u64), (q, q));
    }
}

#[test]
fn embeddings_are_injective_homomorphisms() {
    for (p, e) in [(2u64, 1u32), (3, 1)] {
        let small = build_field(p, 2 * e).unwrap();
        for k in [2, 3] {
            let big = build_field(p, 2 * e * k).unwrap();
            let emb = Embedding::new(&small, &big).unwrap();
            let images: std::collections::BTreeSet<Fe> = small.elements().map(|x| emb.apply(x)).collect();
            assert_eq!(images.len() as u64, small.size());
            for a in small.elements() {
                assert_eq!(emb.preimage(emb.apply(a)), Some(a));
                for b in small.elements() {
                    assert_eq!(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
                    assert_eq!(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
                }
            }
        }
    }
}

// -- projective -------------------------------------------------------------

fn gf9() -> &'static HermitianCurve {
    static C: OnceLock<HermitianCurve> = OnceLock::new();
    C.get_or_init(|| HermitianCurve::new(3, 1).unwrap())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn normalisation_is_canonical(v in prop::array::uniform3(0u64..9), m in prop::array::uniform9(0u64..9), s in 1u64..9) {
        let f = gf9().field();
        let v = v.map(Fe);
        let s = Fe(s);
        if let Ok(p) = ProjPoint::new(f, v) {
            prop_assert_eq!(ProjPoint::new(f, p.coords()).unwrap(), p);
            prop_assert_eq!(ProjPoint::new(f, v.map(|c| f.mul(c, s))).unwrap(), p);
            if let Ok(a) = ProjMatrix::new(f, m.map(Fe)) {
                prop_assert_eq!(ProjMatrix::new(f, *a.entries()).unwrap(), a);
                let scaled = ProjMatrix::new(f, m.map(|c| f.mul(Fe(c), s))).unwrap();
                prop_assert_eq!(scaled.apply(f, &p), a.apply(f, &p));
            }
        }
    }
}

#[test]
fn explicit_subgroups_permute_rational_points() {
    for (p, e) in [(2, 1), (3, 1)] {
        let c = HermitianCurve::new(p, e).unwrap();
        let f = c.field();
        let pts = c.rational_points();
        let mut sorted = pts.clone();
        sorted.sort();
        let q2 = c.q() * c.q();
        let groups = [groups::n1_subgroup(&c), groups::n2_subgroup(&c), groups::cyclic_subgroup(&c, q2 - 1).unwrap()];
        for g in &groups {
            for s in g.elements() {
                let mut img: Vec<ProjPoint> = pts.iter().map(|x| s.apply(f, x)).collect();
                img.sort();
                assert_eq!(img, sorted);
            }
        }
    }
}

// -- groups -----------------------------------------------------------------

#[test]
fn semidirect_orders_and_structure() {
    for (p, e) in [(2u64, 1u32), (3, 1)] {
        let q = p.pow(e);
        for m in (1..q * q).filter(|m| (q * q - 1) % m == 0) {
            let inst = HermitianInstance::new(p, e, m).unwrap();
            for (g, n) in [(&inst.g1, &inst.n1), (&inst.g2, &inst.n2)] {
                assert_eq!(g.order() as u64, q * q * q * m);
                assert!(groups::check_semidirect(g, n, &inst.h));
            }
        }
    }
}

#[test]
fn closure_ignores_generator_order() {
    let inst = HermitianInstance::new(3, 1, 4).unwrap();
    let f = inst.curve.field();
    let mut gens: Vec<ProjMatrix> = inst.n1.generators().iter().chain(inst.h.generators()).copied().collect();
    let a = MatrixGroup::closure(f, &gens, closure_cap()).unwrap();
    gens.reverse();
    let b = MatrixGroup::closure(f, &gens, closure_cap()).unwrap();
    gens.rotate_left(1);
    let c = MatrixGroup::closure(f, &gens, closure_cap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
    assert!(a.is_closed());
}

#[test]
fn intersection_is_symmetric_and_idempotent() {
    let inst = HermitianInstance::new(3, 1, 8).unwrap();
    let gs = [&inst.n1, &inst.n2, &inst.h, &inst.g1, &inst.g2];
    for a in gs {
        assert_eq!(a.intersect(a), *a);
        for b in gs {
            assert_eq!(a.intersect(b), b.intersect(a));
        }
    }
}

#[test]
fn orbit_stabilizer_on_all_rational_points() {
    for (p, e, m) in [(2u64, 1u32, 3u64), (3, 1, 2), (3, 1, 8)] {
        let inst = HermitianInstance::new(p, e, m).unwrap();
        for g in [&inst.n1, &inst.n2, &inst.h, &inst.g1, &inst.g2] {
            for pt in inst.curve.rational_points() {
                let orbit = g.orbit(&pt);
                let stab = g.stabilizer(&pt);
                assert_eq!(orbit.len() * stab.order(), g.order());
                assert_eq!(orbit_sum(g, &pt).degree(), g.order() as i64);
            }
        }
    }
}

// -- criterion --------------------------------------------------------------

proptest! {
    #![proptest_config(config())]

    #[test]
    fn divisor_group_laws(a in prop::collection::vec((0usize..9, -5i64..5), 0..8),
                          b in prop::collection::vec((0usize..9, -5i64..5), 0..8),
                          c in prop::collection::vec((0usize..9, -5i64..5), 0..8)) {
        let pts = q2_instance().curve.rational_points();
        let mk = |v: &Vec<(usize, i64)>| v.iter().fold(Divisor::zero(), |d, &(i, n)| d.add(&Divisor::point(pts[i], n)));
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b).degree(), a.degree() + b.degree());
        prop_assert!(a.sub(&a).is_empty());
        prop_assert!(a.support().all(|(_, n)| *n != 0));
    }
}

#[test]
fn verify_tuple_is_symmetric() {
    for (p, e, m) in [(2u64, 1u32, 3u64), (3, 1, 4)] {
        let inst = HermitianInstance::new(p, e, m).unwrap();
        let t = inst.tuple();
        let a = verify_tuple(&t).unwrap();
        let b = verify_tuple(&t.swapped()).unwrap();
        assert!(a.overall && b.overall);
        assert_eq!(a.verdicts(), b.verdicts());
        assert_eq!(a.d.evidence.0, b.d.evidence.1);
        assert_eq!(a.certified.unwrap().degree, b.certified.unwrap().degree);
    }
}

// -- funcfield --------------------------------------------------------------

fn q2_instance() -> &'static HermitianInstance {
    static I: OnceLock<HermitianInstance> = OnceLock::new();
    I.get_or_init(|| HermitianInstance::new(2, 1, 3).unwrap())
}

/// `Aut(X)` at `q = 2`, generated by `N1`, `C_3` and `(X:Y:Z) ↦ (Z:Y:X)`.
fn full_group() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| {
        let inst = q2_instance();
        let mut gens: Vec<ProjMatrix> = inst.g1.generators().to_vec();
        gens.push(groups::swap_xz(&inst.curve));
        MatrixGroup::closure(inst.curve.field(), &gens, closure_cap()).unwrap()
    })
}

fn ff() -> FunctionField {
    q2_instance().function_field()
}

type Terms = Vec<(u64, u64, u64)>;

fn terms_strategy() -> impl Strategy<Value = Terms> {
    prop::collection::vec((0u64..5, 0u64..7, 1u64..4), 1..5)
}

fn poly(ff: &FunctionField, t: &Terms) -> CurvePoly {
    ff.reduce(&t.iter().map(|&(i, j, c)| (i, j, Fe(c))).collect::<Vec<_>>())
}

fn function(ff: &FunctionField, n: &Terms, d: &Terms) -> Option<CurveFunction> {
    let (n, d) = (poly(ff, n), poly(ff, d));
    if n.is_zero() || d.is_zero() {
        return None;
    }
    ff.function(n, d).ok()
}

#[test]
fn full_group_order_at_q2() {
    // q^3 (q^3 + 1) (q^2 - 1)
    assert_eq!(full_group().order(), 216);
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn reduce_is_a_ring_homomorphism(a in terms_strategy(), b in terms_strategy()) {
        let ff = ff();
        let raw: Vec<(u64, u64, Fe)> = a.iter().flat_map(|&(i1, j1, c1)| b.iter().map(move |&(i2, j2, c2)| (i1 + i2, j1 + j2, (c1, c2))))
            .map(|(i, j, (c1, c2))| (i, j, ff.ctx().mul(Fe(c1), Fe(c2))))
            .collect();
        prop_assert_eq!(ff.reduce(&raw), ff.mul(&poly(&ff, &a), &poly(&ff, &b)));
    }

    #[test]
    fn canonical_zero_test_is_sound(a in terms_strategy()) {
        // A nonzero canonical polynomial of bounded degree is nonzero at
        // some point over GF(4^3).
        let ff = ff();
        let p = poly(&ff, &a);
        let curve = &q2_instance().curve;
        let big = build_field(2, 6).unwrap();
        let emb = Embedding::new(curve.field(), &big).unwrap();
        let lifted = gpk_core::funcfield::lift_poly(&p, &emb);
        let vanishes = curve.affine_points(&big).unwrap().all(|(x, y)| gpk_core::funcfield::eval_poly(&big, &lifted, x, y).is_zero());
        prop_assert_eq!(vanishes, p.is_zero());
    }

    #[test]
    fn valuation_is_additive(a in terms_strategy(), b in terms_strategy(), c in terms_strategy(), d in terms_strategy(), k in 0usize..9) {
        let ff = ff();
        let (Some(f), Some(g)) = (function(&ff, &a, &b), function(&ff, &c, &d)) else { return Ok(()); };
        let p = q2_instance().curve.rational_points()[k];
        let fg = ff.f_mul(&f, &g);
        prop_assert_eq!(ff.valuation(&fg, &p).unwrap(), ff.valuation(&f, &p).unwrap() + ff.valuation(&g, &p).unwrap());
        if p.is_affine() {
            prop_assert_eq!(ff.valuation_at_point(&f, &p).unwrap(), ff.valuation_by_series(&f, &p).unwrap());
        }
    }

    #[test]
    fn pullback_is_a_contravariant_field_automorphism(a in terms_strategy(), b in terms_strategy(), c in terms_strategy(),
                                                      d in terms_strategy(), s in 0usize..216, t in 0usize..216) {
        let ff = ff();
        let (Some(f), Some(g)) = (function(&ff, &a, &b), function(&ff, &c, &d)) else { return Ok(()); };
        let ctx = ff.ctx();
        let (s, t) = (full_group().elements()[s], full_group().elements()[t]);
        let pb = |m: &ProjMatrix, h: &CurveFunction| ff.pullback(m, h).unwrap();
        prop_assert!(ff.f_eq(&pb(&s, &ff.f_add(&f, &g)), &ff.f_add(&pb(&s, &f), &pb(&s, &g))));
        prop_assert!(ff.f_eq(&pb(&s, &ff.f_mul(&f, &g)), &ff.f_mul(&pb(&s, &f), &pb(&s, &g))));
        prop_assert!(ff.f_eq(&pb(&s.mul(ctx, &t), &f), &pb(&t, &pb(&s, &f))));
        prop_assert!(ff.f_eq(&pb(&s.inverse(ctx), &pb(&s, &f)), &f));
    }
}

#[test]
fn principal_divisors_have_degree_zero() {
    for (p, e) in [(2, 1), (3, 1)] {
        let c = HermitianCurve::new(p, e).unwrap();
        let ff = FunctionField::new(&c);
        for f in [ff.t1(), ff.t2(), ff.f_div(&ff.t1(), &ff.t2()).unwrap()] {
            let (div, complete) = ff.rational_divisor(&f).unwrap();
            assert!(complete);
            assert_eq!(div.degree(), 0);
        }
    }
}
