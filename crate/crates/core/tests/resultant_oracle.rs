//! Independent elimination for `q = 2`, `m = 3`.
//!
//! Here `H = C_3` and `k(X)^H = k(x)`, with `f = 1/((x^2+x)(x^2+x+1)^3)` and
//! `g = x^8/((x+1)(x^2+x+1)^3)`. So `φ(X/H)` is parametrised by
//! `(1 : t^9 : h(t))`, `h = t(t+1)(t^2+t+1)^3`, and its affine equation in
//! the chart `X = 1` is `Res_t(t^9 - Y, h(t) - Z)`. The resultant is
//! evaluated on a grid over `GF(16)` by Sylvester determinants and
//! interpolated back to a bivariate polynomial.

use std::collections::BTreeMap;

use gpk_core::construct::{build_f_g, plane_model};
use gpk_core::ffield::{build_field, Fe, FieldCtx};
use gpk_core::instance::HermitianInstance;

mod common;
use common::Q2M3_MODEL as FIXTURE;

fn poly_mul_gf2(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= x & y;
        }
    }
    out
}

/// `h(t)` over `GF(2)`, low degree first.
fn h_poly() -> Vec<u64> {
    let t = [0, 1];
    let t1 = [1, 1];
    let q = [1, 1, 1];
    let mut h = poly_mul_gf2(&t, &t1);
    for _ in 0..3 {
        h = poly_mul_gf2(&h, &q);
    }
    h
}

fn det(k: &FieldCtx, mut a: Vec<Vec<Fe>>) -> Fe {
    let n = a.len();
    let mut d = Fe::ONE;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Fe::ZERO;
        };
        if r != c {
            a.swap(r, c);
            d = k.neg(d);
        }
        d = k.mul(d, a[c][c]);
        let inv = k.inv(a[c][c]).unwrap();
        for r in c + 1..n {
            let f = k.mul(a[r][c], inv);
            if f.is_zero() {
                continue;
            }
            for cc in c..n {
                let t = k.mul(f, a[c][cc]);
                a[r][cc] = k.sub(a[r][cc], t);
            }
        }
    }
    d
}

/// Sylvester resultant of `u`, `v` (low degree first, nonzero leading terms).
fn resultant(k: &FieldCtx, u: &[Fe], v: &[Fe]) -> Fe {
    let (du, dv) = (u.len() - 1, v.len() - 1);
    let n = du + dv;
    let mut rows = Vec::with_capacity(n);
    for s in 0..dv {
        let mut r = vec![Fe::ZERO; n];
        for (i, &c) in u.iter().rev().enumerate() {
            r[s + i] = c;
        }
        rows.push(r);
    }
    for s in 0..du {
        let mut r = vec![Fe::ZERO; n];
        for (i, &c) in v.iter().rev().enumerate() {
            r[s + i] = c;
        }
        rows.push(r);
    }
    det(k, rows)
}

/// Coefficients `c_0..c_{n-1}` of the polynomial through `(xs[i], ys[i])`.
fn interpolate(k: &FieldCtx, xs: &[Fe], ys: &[Fe]) -> Vec<Fe> {
    let n = xs.len();
    let mut out = vec![Fe::ZERO; n];
    for i in 0..n {
        // basis = Π_{j≠i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![Fe::ONE];
        let mut denom = Fe::ONE;
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![Fe::ZERO; basis.len() + 1];
            for (d, &c) in basis.iter().enumerate() {
                next[d + 1] = k.add(next[d + 1], c);
                next[d] = k.sub(next[d], k.mul(c, xs[j]));
            }
            basis = next;
            denom = k.mul(denom, k.sub(xs[i], xs[j]));
        }
        let s = k.div(ys[i], denom).unwrap();
        for (o, c) in out.iter_mut().zip(&basis) {
            *o = k.add(*o, k.mul(s, *c));
        }
    }
    out
}

/// The normalised degree-9 equation `F(X, Y, Z)` with `GF(2)` coefficients.
fn resultant_model() -> BTreeMap<(usize, usize, usize), u64> {
    let k = build_field(2, 4).unwrap();
    let h: Vec<Fe> = h_poly().into_iter().map(Fe).collect();
    let d = 9;
    let grid: Vec<Fe> = (0..=d as u64).map(Fe).collect();
    // vals[a][b] = R(Y = grid[a], Z = grid[b])
    let vals: Vec<Vec<Fe>> = grid
        .iter()
        .map(|&ya| {
            grid.iter()
                .map(|&zb| {
                    let mut u = vec![Fe::ZERO; 10];
                    u[0] = k.neg(ya);
                    u[9] = Fe::ONE;
                    let mut v = h.clone();
                    v[0] = k.sub(v[0], zb);
                    resultant(&k, &u, &v)
                })
                .collect()
        })
        .collect();
    // Interpolate in Z for each Y, then in Y for each Z-degree.
    let by_z: Vec<Vec<Fe>> = vals.iter().map(|row| interpolate(&k, &grid, row)).collect();
    let mut coeffs = BTreeMap::new();
    for j in 0..=d {
        let col: Vec<Fe> = by_z.iter().map(|r| r[j]).collect();
        let cy = interpolate(&k, &grid, &col);
        for (i, &c) in cy.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            assert!(i + j <= d, "resultant has total degree above {d}");
            coeffs.insert((d - i - j, i, j), c);
        }
    }
    let lead = *coeffs.values().next_back().unwrap();
    let inv = k.inv(lead).unwrap();
    coeffs
        .into_iter()
        .map(|(e, c)| {
            let c = k.mul(c, inv);
            assert!(c.0 <= 1, "coefficient outside GF(2)");
            (e, c.0)
        })
        .collect()
}

#[test]
fn h_has_degree_eight() {
    assert_eq!(h_poly().len(), 9);
}

#[test]
fn oracle_matches_frozen_fixture() {
    let oracle = resultant_model();
    let fixture: BTreeMap<_, _> = FIXTURE.iter().map(|&(i, j, k, c)| ((i, j, k), c)).collect();
    assert_eq!(oracle, fixture);
}

#[test]
fn interpolated_model_matches_fixture() {
    let inst = HermitianInstance::new(2, 1, 3).unwrap();
    let fg = build_f_g(&inst).unwrap();
    let model = plane_model(&inst, &fg, None).unwrap();
    // GF(2) sits in GF(4) as {0, 1} with the same encodings.
    let got: BTreeMap<_, _> = model.coeffs.iter().map(|(&e, c)| (e, c.0)).collect();
    let fixture: BTreeMap<_, _> = FIXTURE.iter().map(|&(i, j, k, c)| ((i, j, k), c)).collect();
    assert_eq!(got, fixture);
}
