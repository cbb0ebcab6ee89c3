//! Dense linear algebra over a [`FieldCtx`].

use crate::ffield::{Fe, FieldCtx};

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref(ctx: &FieldCtx, rows: &mut [Vec<Fe>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ctx.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r][c..].iter_mut() {
            *v = ctx.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = ctx.neg(row[c]);
            for k in c..ncols {
                if !pivot_row[k].is_zero() {
                    row[k] = ctx.add(row[k], ctx.mul(f, pivot_row[k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace `{v : A v = 0}` of an `m × ncols` matrix.
pub fn nullspace(ctx: &FieldCtx, rows: &[Vec<Fe>], ncols: usize) -> Vec<Vec<Fe>> {
    let mut work: Vec<Vec<Fe>> = rows.to_vec();
    let pivots = rref(ctx, &mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Fe::ZERO; ncols];
            v[fc] = Fe::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(work[r][fc]);
            }
            v
        })
        .collect()
}

/// Determinant by elimination.
pub fn determinant(ctx: &FieldCtx, rows: &[Vec<Fe>]) -> Fe {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = Fe::ONE;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Fe::ZERO;
        };
        if pr != c {
            a.swap(pr, c);
            det = ctx.neg(det);
        }
        det = ctx.mul(det, a[c][c]);
        let inv = ctx.inv(a[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = ctx.neg(ctx.mul(a[i][c], inv));
            for k in c..n {
                let t = ctx.mul(f, a[c][k]);
                a[i][k] = ctx.add(a[i][k], t);
            }
        }
    }
    det
}
