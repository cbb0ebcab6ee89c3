//! Example values checked against independent brute-force computations.

use gpk_core::construct::quotient_plane_model;
use gpk_core::criterion::{check_outer_point, condition_a, condition_c, condition_d, orbit_sum, Divisor, Witness};
use gpk_core::ffield::{build_field, hermitian_pair_check, solve_additive, Fe, FieldCtx};
use gpk_core::funcfield::{CurveFunction, FuncFieldError, FunctionField, WitnessClause, WitnessError};
use gpk_core::groups::{self, check_semidirect, normal_subgroups_between, MatrixGroup};
use gpk_core::instance::HermitianInstance;
use gpk_core::projective::{HermitianCurve, ProjMatrix, ProjPoint};

// -- oracle helpers ---------------------------------------------------------

/// Remainder of `a` modulo monic `b` over `GF(p)`, low degree first.
fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    while a.len() > db {
        let lead = a.pop().unwrap();
        let shift = a.len() - db;
        for (i, &c) in b[..db].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p * p - lead * c % p) % p;
        }
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Irreducible iff no monic factor of degree `1..=n/2` divides it.
fn brute_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut f: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
            f.push(1);
            if rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `n`, `c_0` compared first.
fn brute_modulus(p: u64, n: usize) -> Vec<u64> {
    for idx in 0..p.pow(n as u32) {
        let mut m: Vec<u64> = (0..n).map(|i| idx / p.pow((n - 1 - i) as u32) % p).collect();
        m.push(1);
        if brute_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!()
}

fn digits(x: Fe, p: u64, n: usize) -> Vec<u64> {
    (0..n).map(|i| x.0 / p.pow(i as u32) % p).collect()
}

/// Product in `GF(p)[t]/(modulus)` on digit vectors.
fn schoolbook_mul(ctx: &FieldCtx, a: Fe, b: Fe) -> Fe {
    let (p, n) = (ctx.p(), ctx.degree() as usize);
    let (da, db) = (digits(a, p, n), digits(b, p, n));
    let mut prod = vec![0u64; 2 * n];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    let r = rem(&prod, ctx.modulus(), p);
    Fe(r.iter().enumerate().map(|(i, c)| c * p.pow(i as u32)).sum())
}

fn gf4() -> HermitianCurve {
    HermitianCurve::new(2, 1).unwrap()
}

// -- ffield -----------------------------------------------------------------

#[test]
fn moduli_match_brute_force_scan() {
    assert_eq!(build_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    for (p, n) in [(2, 2), (2, 3), (2, 4), (2, 8), (3, 2), (3, 4), (5, 2), (7, 3)] {
        let ctx = build_field(p, n).unwrap();
        assert_eq!(ctx.modulus(), brute_modulus(p, n as usize).as_slice(), "GF({p}^{n})");
    }
}

#[test]
fn gf4_multiplication_table() {
    let ctx = build_field(2, 2).unwrap();
    let w = Fe(2);
    assert_eq!(ctx.mul(w, w), Fe(3)); // w^2 = w + 1
    assert_eq!(ctx.frobenius(w, 1), Fe(3));
    for a in ctx.elements() {
        for b in ctx.elements() {
            assert_eq!(ctx.mul(a, b), schoolbook_mul(&ctx, a, b));
        }
    }
}

#[test]
fn gf9_generator_has_order_eight() {
    let ctx = build_field(3, 2).unwrap();
    let g = ctx.generator();
    let powers: Vec<Fe> = (1..=8).map(|k| ctx.pow(g, k)).collect();
    assert_eq!(powers[7], Fe::ONE);
    assert!(powers[..7].iter().all(|&x| x != Fe::ONE));
}

#[test]
fn hermitian_pair_counts() {
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let c = HermitianCurve::new(p, e).unwrap();
        let ctx = c.field();
        let q = c.q();
        let mut total = 0;
        for a in ctx.elements() {
            let per_a = ctx.elements().filter(|&b| hermitian_pair_check(ctx, q, a, b).unwrap()).count();
            assert_eq!(per_a as u64, q);
            total += per_a;
        }
        assert_eq!(total as u64, q * q * q);
    }
    let c = gf4();
    assert!(hermitian_pair_check(c.field(), 2, Fe::ZERO, Fe::ZERO).unwrap());
}

#[test]
fn additive_solver_against_enumeration() {
    let c = gf4();
    assert_eq!(solve_additive(c.field(), 2, Fe::ZERO), vec![Fe(0), Fe(1)]);
    for (p, e) in [(2, 1), (3, 1)] {
        let c = HermitianCurve::new(p, e).unwrap();
        let (ctx, q) = (c.field(), c.q());
        for y in ctx.elements() {
            let rhs = ctx.pow(y, q + 1);
            let mut brute: Vec<Fe> = ctx.elements().filter(|&x| ctx.add(ctx.pow(x, q), x) == rhs).collect();
            brute.sort();
            assert_eq!(solve_additive(ctx, q, rhs), brute);
            assert_eq!(brute.len() as u64, q);
        }
    }
}

// -- projective -------------------------------------------------------------

#[test]
fn hermitian_point_and_translation() {
    let c = gf4();
    let ctx = c.field();
    let w = Fe(2);
    let p = ProjPoint::new(ctx, [w, Fe::ONE, Fe::ONE]).unwrap();
    assert!(c.on_curve(ctx, &p));
    let s = groups::sigma(&c, Fe::ONE, w);
    assert_eq!(s.apply(ctx, &c.p2()), p);
    assert_eq!(s.apply(ctx, &c.p1()), c.p1());
}

/// `#X(GF(q^(2k))) = q^(2k) + 1 - (-1)^k 2 g q^k`, `g = q(q-1)/2`, against
/// a scan over all pairs `(x, y)`.
#[test]
fn point_counts_over_extensions() {
    let c = gf4();
    let q: i64 = 2;
    let genus = q * (q - 1) / 2;
    for k in 1..=4u32 {
        let big = build_field(2, 2 * k).unwrap();
        let mut brute = 1; // P1
        for x in big.elements() {
            let lhs = big.add(big.pow(x, 2), x);
            brute += big.elements().filter(|&y| big.pow(y, 3) == lhs).count() as i64;
        }
        let qk = q.pow(k);
        let sign = if k % 2 == 0 { -1 } else { 1 };
        assert_eq!(brute, qk * qk + 1 + sign * 2 * genus * qk, "k = {k}");
        assert_eq!(c.points_over(&big).unwrap().len() as i64, brute);
    }
}

// -- groups -----------------------------------------------------------------

#[test]
fn group_examples_at_q2() {
    let inst = HermitianInstance::new(2, 1, 3).unwrap();
    let c = &inst.curve;
    let ctx = c.field();
    assert_eq!(inst.n1.order(), 8);
    assert!(inst.n1.contains(&ProjMatrix::identity()));
    assert!(inst.n1.elements().iter().all(|s| s.apply(ctx, &c.p1()) == c.p1()));
    assert_eq!(inst.h.order(), 3);
    assert_eq!(inst.h, groups::cyclic_subgroup(c, 3).unwrap());
    assert!(inst.h.elements().iter().all(|h| h.apply(ctx, &c.p1()) == c.p1() && h.apply(ctx, &c.p2()) == c.p2()));
    assert_eq!(groups::cyclic_subgroup(c, 1).unwrap().order(), 1);
    assert!(inst.n1.intersect(&inst.n2).is_trivial());
    assert_eq!(inst.g1.intersect(&inst.g2), inst.h);
    assert_eq!(inst.g1.intersect(&inst.g1), inst.g1);
    assert!(inst.n1.is_normal_in(&inst.g1).unwrap());
    assert!(inst.g1.is_normal_in(&inst.g1).unwrap());
    assert!(!inst.h.is_normal_in(&inst.g1).unwrap());
    assert_eq!(inst.g1.stabilizer(&c.p2()), inst.h);
    let affine: Vec<ProjPoint> = c.rational_points().into_iter().filter(|p| *p != c.p1()).collect();
    let mut orbit = inst.n1.orbit(&c.p2());
    orbit.sort();
    let mut expect = affine.clone();
    expect.sort();
    assert_eq!(orbit, expect);
    assert!(check_semidirect(&inst.g1, &inst.n1, &inst.h));
    assert!(!check_semidirect(&inst.g1, &inst.h, &inst.n1));
    let trivial = MatrixGroup::trivial(ctx);
    assert!(check_semidirect(&inst.g1, &inst.g1, &trivial));
}

#[test]
fn closure_of_explicit_cyclic_generator() {
    let c = HermitianCurve::new(3, 1).unwrap();
    let ctx = c.field();
    for m in [1u64, 2, 4, 8] {
        let c0 = groups::cyclic_root(&c, m).unwrap();
        assert_eq!(ctx.order(c0), Some(m));
        // Powers enumerated directly.
        let mut powers = std::collections::BTreeSet::new();
        let mut x = Fe::ONE;
        for _ in 0..m {
            powers.insert(groups::eta(&c, x));
            x = ctx.mul(x, c0);
        }
        let g = MatrixGroup::closure(ctx, &[groups::eta(&c, c0)], 100).unwrap();
        assert_eq!(g.elements().iter().copied().collect::<std::collections::BTreeSet<_>>(), powers);
    }
}

#[test]
fn normal_subgroups_between_examples() {
    let inst = HermitianInstance::new(2, 1, 3).unwrap();
    let ctx = inst.curve.field();
    let one = MatrixGroup::trivial(ctx);
    let found = normal_subgroups_between(&one, &inst.h, &inst.g1).unwrap();
    assert_eq!(found, vec![one.clone()]);
    assert_eq!(normal_subgroups_between(&one, &one, &inst.g1).unwrap(), vec![one.clone()]);
    assert_eq!(normal_subgroups_between(&inst.n1, &inst.n1, &inst.g1).unwrap(), vec![inst.n1.clone()]);
    assert!(condition_c(&one, &inst.h, &inst.g1).unwrap().holds);
}

// -- criterion --------------------------------------------------------------

#[test]
fn orbit_sum_examples() {
    let inst = HermitianInstance::new(2, 1, 3).unwrap();
    let c = &inst.curve;
    let affine: Vec<ProjPoint> = c.rational_points().into_iter().filter(|p| *p != c.p1()).collect();
    let unit = affine.iter().fold(Divisor::zero(), |d, p| d.add(&Divisor::point(*p, 1)));
    assert_eq!(orbit_sum(&inst.n1, &c.p2()), unit);
    assert_eq!(orbit_sum(&inst.g1, &c.p2()), unit.scale(3));
    assert_eq!(orbit_sum(&inst.g1, &c.p2()).degree(), 24);
}

#[test]
fn condition_d_sides_are_m_times_all_points() {
    for (p, e) in [(2u64, 1u32), (3, 1)] {
        let q = p.pow(e);
        for m in (1..q * q).filter(|m| (q * q - 1) % m == 0) {
            let inst = HermitianInstance::new(p, e, m).unwrap();
            let c = &inst.curve;
            let all = c.rational_points().iter().fold(Divisor::zero(), |d, p| d.add(&Divisor::point(*p, 1)));
            let v = condition_d(c, &inst.h, &inst.g1, &inst.g2, &c.p1(), &c.p2()).unwrap();
            assert!(v.holds);
            assert_eq!(v.evidence.0, all.scale(m as i64));
            assert_eq!(v.evidence.1, all.scale(m as i64));
        }
    }
}

/// The `G1`- and `G2`-orbit sums of a rational point differ at the Hermitian
/// instance: `G1` moves `P2` over the affine points, `G2` moves `P1` over
/// all points but `P2`.
#[test]
fn outer_point_examples() {
    let inst = HermitianInstance::new(2, 1, 3).unwrap();
    let c = &inst.curve;
    for q in c.rational_points() {
        assert!(check_outer_point(c, &inst.g1, &inst.g1, &q).unwrap().holds);
        let v = check_outer_point(c, &inst.g1, &inst.g2, &q).unwrap();
        assert!(!v.holds, "{q:?}");
        assert_eq!(v.evidence.0.degree(), 24);
        assert_eq!(v.evidence.1.degree(), 24);
    }
    let off = ProjPoint::new(c.field(), [Fe(1), Fe(1), Fe(1)]).unwrap();
    assert!(check_outer_point(c, &inst.g1, &inst.g2, &off).is_err());
}

#[test]
fn condition_a_examples() {
    let inst = HermitianInstance::new(2, 1, 3).unwrap();
    let c = &inst.curve;
    let ff = inst.function_field();
    let w = |name: &str, f, p| Witness { name: name.into(), function: f, pole_point: p };
    let a = condition_a(&ff, &inst.n1, &w("t1", ff.t1(), c.p1())).unwrap();
    assert!(a.holds);
    let a = condition_a(&ff, &inst.g1, &inst.witness1()).unwrap();
    assert!(a.holds);
    assert_eq!(a.evidence.as_ref().unwrap().pole_order, 24);
    let trivial = MatrixGroup::trivial(c.field());
    let a = condition_a(&ff, &trivial, &w("y", ff.y(), c.p1())).unwrap();
    assert!(!a.holds);
    assert!(matches!(a.evidence, Err(WitnessError::Clause { clause: WitnessClause::PoleOrder, .. })));
    // t1 is not C_3-invariant.
    let a = condition_a(&ff, &inst.g1, &w("t1", ff.t1(), c.p1())).unwrap();
    assert!(matches!(a.evidence, Err(WitnessError::Clause { clause: WitnessClause::Invariance, .. })));
}

// -- funcfield --------------------------------------------------------------

#[test]
fn reduction_examples_by_evaluation() {
    let c = gf4();
    let ctx = c.field();
    let ff = FunctionField::new(&c);
    let lhs = ff.monomial(0, 3);
    let rhs = ff.add(&ff.monomial(2, 0), &ff.monomial(1, 0));
    assert_eq!(lhs, rhs);
    assert_eq!(ff.monomial(3, 0).num_terms(), 1);
    let y4 = ff.monomial(0, 4);
    let expect = ff.add(&ff.monomial(2, 1), &ff.monomial(1, 1));
    assert_eq!(y4, expect);
    for p in c.rational_points().into_iter().skip(1) {
        let (x, y) = p.affine_coords(ctx).unwrap();
        assert_eq!(ff.eval(&y4, x, y), ctx.pow(y, 4));
    }
}

#[test]
fn pullback_examples() {
    let c = HermitianCurve::new(3, 1).unwrap();
    let ctx = c.field();
    let ff = FunctionField::new(&c);
    let y = ff.y();
    assert!(ff.f_eq(&ff.pullback(&ProjMatrix::identity(), &y).unwrap(), &y));
    let g = ctx.generator();
    let cy = ff.from_poly(ff.scale(&y.num, g));
    assert!(ff.f_eq(&ff.pullback(&groups::eta(&c, g), &y).unwrap(), &cy));
    for (a, b) in groups::hermitian_pairs(&c).into_iter().take(12) {
        let s = groups::sigma(&c, a, b);
        let ya = ff.from_poly(ff.add(&y.num, &ff.constant(a)));
        assert!(ff.f_eq(&ff.pullback(&s, &y).unwrap(), &ya));
        // (σ^-1 η_c σ)^* y = c y + a (c - 1)
        let conj = s.inverse(ctx).mul(ctx, &groups::eta(&c, g).mul(ctx, &s));
        let want = ff.reduce(&[(0, 1, g), (0, 0, ctx.mul(a, ctx.sub(g, Fe::ONE)))]);
        assert!(ff.f_eq(&ff.pullback(&conj, &y).unwrap(), &ff.from_poly(want)));
    }
}

#[test]
fn valuations_agree_with_series_oracle() {
    for (p, e) in [(2, 1), (3, 1)] {
        let c = HermitianCurve::new(p, e).unwrap();
        let ff = FunctionField::new(&c);
        let q = c.q() as i64;
        let w = groups::swap_xz(&c);
        let at_p1 = |f: &CurveFunction| -> i64 { ff.valuation_by_series(&ff.pullback(&w, f).unwrap(), &c.p2()).unwrap() };
        assert_eq!(ff.valuation_at_p1(&ff.x()).unwrap(), -(q + 1));
        assert_eq!(at_p1(&ff.x()), -(q + 1));
        assert_eq!(at_p1(&ff.y()), -q);
        assert_eq!(at_p1(&ff.t1()), -q * q * q);
        let p2 = c.p2();
        let yx = ff.f_div(&ff.y(), &ff.x()).unwrap();
        assert_eq!(ff.valuation_by_series(&ff.y(), &p2).unwrap(), 1);
        assert_eq!(ff.valuation_by_series(&ff.x(), &p2).unwrap(), q + 1);
        assert_eq!(ff.valuation_by_series(&yx, &p2).unwrap(), -q);
        for pt in c.rational_points().into_iter().skip(1) {
            for f in [ff.x(), ff.y(), ff.t1(), ff.t2(), yx.clone()] {
                assert_eq!(ff.valuation_at_point(&f, &pt).unwrap(), ff.valuation_by_series(&f, &pt).unwrap());
            }
        }
    }
}

#[test]
fn t1_divisor_is_all_affine_points_minus_q3_p1() {
    for (p, e) in [(2, 1), (3, 1)] {
        let c = HermitianCurve::new(p, e).unwrap();
        let ff = FunctionField::new(&c);
        let q = c.q() as i64;
        let (div, complete) = ff.rational_divisor(&ff.t1()).unwrap();
        assert!(complete);
        assert_eq!(div.degree(), 0);
        assert_eq!(div.multiplicity(&c.p1()), -q * q * q);
        assert!(c.rational_points().iter().skip(1).all(|p| div.multiplicity(p) == 1));
    }
}

#[test]
fn invariance_examples() {
    let c = HermitianCurve::new(3, 1).unwrap();
    let ff = FunctionField::new(&c);
    let n1 = groups::n1_subgroup(&c);
    assert!(ff.is_invariant_all(&ff.t1(), &n1).unwrap());
    for m in [2u64, 4] {
        let cm = groups::cyclic_subgroup(&c, m).unwrap();
        assert!(ff.is_invariant(&ff.x(), &cm).unwrap());
        assert!(!ff.is_invariant(&ff.t1(), &cm).unwrap());
    }
    let c8 = groups::cyclic_subgroup(&c, 8).unwrap();
    assert!(!ff.is_invariant(&ff.x(), &c8).unwrap());
}

#[test]
fn witness_certificates_for_builtins() {
    let c = HermitianCurve::new(2, 1).unwrap();
    let ff = FunctionField::new(&c);
    let n2 = groups::n2_subgroup(&c);
    let cert = ff.rationality_witness(&n2, &ff.t2(), &c.p2()).unwrap();
    assert_eq!(cert.pole_order, 8);
    assert_eq!(cert.total_pole_degree, 8);
    let off = ProjPoint::new(c.field(), [Fe(1), Fe(1), Fe(1)]).unwrap();
    assert!(matches!(ff.rationality_witness(&n2, &ff.t2(), &off), Err(WitnessError::FuncField(FuncFieldError::NotRationalPoint(_)))));
}

#[test]
fn quotient_examples() {
    let q = quotient_plane_model(3, 1, 2).unwrap();
    assert_eq!(q.relation(), "x^3 + x = u^2");
    let q = quotient_plane_model(2, 1, 3).unwrap();
    assert_eq!(q.relation(), "x^2 + x = u");
}
