//! Reduced bases of relation modules
//! `{ p in F_p[x]^r : p . F[:, k] = 0 mod V_k for every column k }`
//! where each modulus `V_k` is a product of powers of linear factors.
//!
//! The modulus is split in two halves: a basis `P1` for the first half is
//! found, the residual `P1 F / V_first` is solved against the second half to
//! give `P2`, and `P2 P1` is returned. Leaves run the one-factor-at-a-time
//! elimination that pivots on the row of least shifted degree. Shifted
//! reducedness survives the composition when the second call is shifted by
//! the row degrees of `P1`, so the result is a shift-reduced basis.

use crate::algebra::{
    matrix_mul, poly_div_linear, poly_eval, poly_mul_linear, poly_pow, poly_product, poly_sub, poly_scale, Fe,
    FieldConfig, Poly, PolyDivisor, PolyMatrix,
};
use crate::error::{Error, Result};

/// Linear factors processed by the quadratic leaf routine.
const LEAF_ORDER: usize = 32;

/// Requires `p . F[:, column]` to vanish to order `multiplicity` at `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointConstraint {
    pub column: usize,
    pub point: Fe,
    pub multiplicity: usize,
}

/// Shifted row degrees `max_j (deg P[i][j] + shift[j])`.
pub fn row_degrees(basis: &[Vec<Poly>], shift: &[i64]) -> Vec<i64> {
    basis
        .iter()
        .map(|row| {
            row.iter()
                .zip(shift)
                .filter_map(|(e, &s)| e.degree().map(|d| d as i64 + s))
                .max()
                .unwrap_or(i64::MIN)
        })
        .collect()
}

/// A `shift`-reduced basis of the relation module of `system` (rows x
/// columns) under `constraints`.
pub fn relation_basis(
    f: &FieldConfig,
    system: &[Vec<Poly>],
    constraints: &[PointConstraint],
    shift: &[i64],
) -> Result<PolyMatrix> {
    let rows = system.len();
    if shift.len() != rows {
        return Err(Error::ShapeMismatch);
    }
    let cols = system.first().map_or(0, Vec::len);
    if system.iter().any(|r| r.len() != cols) || constraints.iter().any(|c| c.column >= cols) {
        return Err(Error::ShapeMismatch);
    }
    let (g, cons, _) = restrict(system, constraints);
    let moduli = column_moduli(f, &cons, g.first().map_or(0, Vec::len));
    let g = reduce_columns(f, &g, moduli);
    Ok(solve(f, g, &cons, shift))
}

fn identity(n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect()
}

/// Drops columns that carry no constraint and renumbers the rest. Also
/// returns the original index of each kept column.
fn restrict(g: &[Vec<Poly>], cons: &[PointConstraint]) -> (PolyMatrix, Vec<PointConstraint>, Vec<usize>) {
    let cols = g.first().map_or(0, Vec::len);
    let mut map = vec![usize::MAX; cols];
    let mut kept = Vec::new();
    for c in cons.iter().filter(|c| c.multiplicity > 0) {
        if map[c.column] == usize::MAX {
            map[c.column] = kept.len();
            kept.push(c.column);
        }
    }
    let g = g.iter().map(|row| kept.iter().map(|&k| row[k].clone()).collect()).collect();
    let cons = cons
        .iter()
        .filter(|c| c.multiplicity > 0)
        .map(|c| PointConstraint { column: map[c.column], ..*c })
        .collect();
    (g, cons, kept)
}

fn column_moduli(f: &FieldConfig, cons: &[PointConstraint], cols: usize) -> Vec<Poly> {
    (0..cols)
        .map(|k| {
            let factors: Vec<Poly> = cons
                .iter()
                .filter(|c| c.column == k)
                .map(|c| poly_pow(f, &Poly::linear(f, c.point), c.multiplicity as u64))
                .collect();
            poly_product(f, &factors)
        })
        .collect()
}

/// One prepared divisor per column, sized for the longest entry of that
/// column in `g`.
fn divisors(f: &FieldConfig, g: &[Vec<Poly>], moduli: Vec<Poly>) -> Vec<PolyDivisor> {
    moduli
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let longest = g.iter().map(|row| row[k].len()).max().unwrap_or(0);
            PolyDivisor::new(f, m, longest).expect("nonzero modulus")
        })
        .collect()
}

fn reduce_columns(f: &FieldConfig, g: &[Vec<Poly>], moduli: Vec<Poly>) -> PolyMatrix {
    let divs = divisors(f, g, moduli);
    g.iter().map(|row| row.iter().zip(&divs).map(|(e, d)| d.rem(f, e)).collect()).collect()
}

fn order(cons: &[PointConstraint]) -> usize {
    cons.iter().map(|c| c.multiplicity).sum()
}

/// Splits the constraint list so the first part has `at` linear factors.
fn split(cons: &[PointConstraint], at: usize) -> (Vec<PointConstraint>, Vec<PointConstraint>) {
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut taken = 0;
    for c in cons {
        if taken >= at {
            second.push(*c);
        } else if taken + c.multiplicity <= at {
            taken += c.multiplicity;
            first.push(*c);
        } else {
            let k = at - taken;
            taken = at;
            first.push(PointConstraint { multiplicity: k, ..*c });
            second.push(PointConstraint { multiplicity: c.multiplicity - k, ..*c });
        }
    }
    (first, second)
}

/// `g` is already reduced modulo the column moduli of `cons`.
fn solve(f: &FieldConfig, g: PolyMatrix, cons: &[PointConstraint], shift: &[i64]) -> PolyMatrix {
    let total = order(cons);
    if total == 0 {
        return identity(g.len());
    }
    if total <= LEAF_ORDER {
        return leaf(f, g, cons, shift);
    }
    let (first, second) = split(cons, total / 2);

    let (g1, c1, _) = restrict(&g, &first);
    let m1 = column_moduli(f, &c1, g1.first().map_or(0, Vec::len));
    let p1 = solve(f, reduce_columns(f, &g1, m1), &c1, shift);
    let s1 = row_degrees(&p1, shift);

    // Residual for the second half: (P1 g) / W1 mod W2, column by column,
    // where W1 is the first-half modulus of that column.
    let (g2, c2, kept) = restrict(&g, &second);
    let m2 = column_moduli(f, &c2, kept.len());
    let w1: Vec<Poly> = kept
        .iter()
        .map(|&col| {
            let local: Vec<PointConstraint> =
                first.iter().filter(|c| c.column == col).map(|c| PointConstraint { column: 0, ..*c }).collect();
            column_moduli(f, &local, 1).pop().unwrap()
        })
        .collect();
    let product = matrix_mul(f, &p1, &g2);
    let w1 = divisors(f, &product, w1);
    let mut residual: PolyMatrix =
        product.iter().map(|row| row.iter().zip(&w1).map(|(e, w)| w.div_exact(f, e)).collect()).collect();
    let m2 = divisors(f, &residual, m2);
    for row in residual.iter_mut() {
        for (e, m) in row.iter_mut().zip(&m2) {
            *e = m.rem(f, e);
        }
    }
    let p2 = solve(f, residual, &c2, &s1);
    matrix_mul(f, &p2, &p1)
}

/// One linear factor at a time.
fn leaf(f: &FieldConfig, mut g: PolyMatrix, cons: &[PointConstraint], shift: &[i64]) -> PolyMatrix {
    let rows = g.len();
    let cols = g.first().map_or(0, Vec::len);
    let mut p = identity(rows);
    let mut degs = shift.to_vec();
    for c in cons {
        let (k, a) = (c.column, c.point);
        for _ in 0..c.multiplicity {
            let vals: Vec<Fe> = g.iter().map(|row| poly_eval(f, &row[k], a)).collect();
            let pivot = (0..rows).filter(|&i| !vals[i].is_zero()).min_by_key(|&i| degs[i]);
            let Some(pi) = pivot else {
                for row in g.iter_mut() {
                    row[k] = poly_div_linear(f, &row[k], a);
                }
                continue;
            };
            let inv = f.inv(vals[pi]).expect("nonzero pivot value");
            let (p_pivot, g_pivot) = (p[pi].clone(), g[pi].clone());
            for i in 0..rows {
                if i == pi || vals[i].is_zero() {
                    continue;
                }
                let lambda = f.mul(vals[i], inv);
                for (dst, src) in p[i].iter_mut().zip(&p_pivot) {
                    *dst = poly_sub(f, dst, &poly_scale(f, src, lambda));
                }
                for (dst, src) in g[i].iter_mut().zip(&g_pivot) {
                    *dst = poly_sub(f, dst, &poly_scale(f, src, lambda));
                }
            }
            for e in p[pi].iter_mut() {
                *e = poly_mul_linear(f, e, a);
            }
            for j in 0..cols {
                if j != k {
                    g[pi][j] = poly_mul_linear(f, &g[pi][j], a);
                }
            }
            for (i, row) in g.iter_mut().enumerate() {
                if i != pi {
                    row[k] = poly_div_linear(f, &row[k], a);
                }
            }
            degs[pi] += 1;
        }
    }
    p
}
