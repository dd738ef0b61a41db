//! Solving the functional equation `Q(x, f(x), f(gamma x), ..., f(gamma^m x)) = 0`
//! modulo a power of `x`.
//!
//! Coefficient `i` of the equation reads
//! `Q~_i + sum_{u <= i} c_(i,u) f_u = 0` with diagonal `c_(i,i) = P(gamma^i)`,
//! where `P(z) = sum_j Q_j(0) z^j` is the symbol. Rows where the symbol
//! vanishes leave `f_i` free. The solver halves the precision recursively,
//! pinning at most one free coefficient to 1 and the rest to 0.
//!
//! A vanishing row is also a linear condition on the earlier coefficients.
//! The recursion records how far each such row is from holding (its defect);
//! [`func_solve`] then picks the combinations of pinned solutions whose
//! defects cancel. For generic operators every defect is zero and the result
//! is the full span of the pinned solutions.

use crate::affine::AffineSpace;
use crate::algebra::*;
use crate::error::{Error, Result};
use crate::odesolve::Split;
use crate::operators::{folded_spectrum, AffineOperator};

const LEAF_PRECISION: usize = 16;

/// `Q~ + sum_j Q_j g(gamma^j x) mod x^k`.
fn apply_folded_trunc(f: &FieldConfig, q: &AffineOperator, g: &Poly, gamma: Fe, k: usize) -> Poly {
    let mut acc = q.tilde().truncated(k);
    let mut gj = Fe::ONE;
    let g = g.truncated(k);
    for c in q.coeffs() {
        if !c.is_zero() {
            acc = poly_add(f, &acc, &poly_mul_trunc(f, c, &poly_dilate(f, &g, gj), k));
        }
        gj = f.mul(gj, gamma);
    }
    acc
}

fn check_folded(f: &FieldConfig, q: &AffineOperator, k: usize, gamma: Fe) -> Result<()> {
    if q.coeffs().iter().all(|c| c.constant_term().is_zero()) {
        return Err(Error::NotNormalized);
    }
    let order = if gamma.is_zero() { 0 } else { f.order(gamma) };
    if order < k as u64 {
        return Err(Error::OrderTooSmall { order, needed: k as u64 });
    }
    Ok(())
}

/// Solution pinned at one free index, plus the defects of the vanishing rows.
struct Pinned {
    sol: Poly,
    defects: Vec<(usize, Fe)>,
}

struct FoldedSolver<'a> {
    f: &'a FieldConfig,
    gamma: Fe,
    split: Split,
}

impl FoldedSolver<'_> {
    fn run(&self, q: &AffineOperator, k: usize, pin: Option<usize>) -> Pinned {
        let q = q.map_parts(|p| p.truncated(k));
        let mut defects = Vec::new();
        let sol = self.solve(&q, k, pin, 0, &mut defects);
        Pinned { sol, defects }
    }

    fn solve(&self, q: &AffineOperator, k: usize, pin: Option<usize>, base: usize, defects: &mut Vec<(usize, Fe)>) -> Poly {
        let f = self.f;
        let (leaf, l) = match self.split {
            Split::Halve => (LEAF_PRECISION, k / 2),
            Split::PeelOne => (1, 1),
        };
        if k <= leaf {
            return self.leaf(q, k, pin, base, defects);
        }
        let (pin_low, pin_high) = match pin {
            Some(t) if t < l => (Some(t), None),
            Some(t) => (None, Some(t - l)),
            None => (None, None),
        };
        let low = q.map_parts(|p| p.truncated(l));
        let h = self.solve(&low, l, pin_low, base, defects);
        let residual = apply_folded_trunc(f, q, &h, self.gamma, k).shifted_down(l);
        let step = f.pow(self.gamma, l as u64);
        let mut scale = Fe::ONE;
        let coeffs = q
            .coeffs()
            .iter()
            .map(|c| {
                let out = poly_scale(f, &c.truncated(k - l), scale);
                scale = f.mul(scale, step);
                out
            })
            .collect();
        let shifted = AffineOperator::new(residual, coeffs);
        #[cfg(debug_assertions)]
        {
            let outer = folded_spectrum(f, q, self.gamma, k).zeros;
            let inner = folded_spectrum(f, &shifted, self.gamma, k - l).zeros;
            let expected: Vec<usize> = outer.iter().filter(|&&i| i >= l).map(|&i| i - l).collect();
            debug_assert_eq!(inner, expected, "shifted operator moved the spectrum");
        }
        let g = self.solve(&shifted, k - l, pin_high, base + l, defects);
        poly_add(f, &h, &g.shifted_up(l))
    }

    /// Forward substitution over rows `0..k`.
    fn leaf(&self, q: &AffineOperator, k: usize, pin: Option<usize>, base: usize, defects: &mut Vec<(usize, Fe)>) -> Poly {
        let f = self.f;
        let m = q.order();
        // powers[j][u] = gamma^(j u)
        let powers: Vec<Vec<Fe>> = (0..=m)
            .map(|j| {
                let g = f.pow(self.gamma, j as u64);
                let mut v = Vec::with_capacity(k);
                let mut cur = Fe::ONE;
                for _ in 0..k {
                    v.push(cur);
                    cur = f.mul(cur, g);
                }
                v
            })
            .collect();
        let mut sol = vec![Fe::ZERO; k];
        for i in 0..k {
            let mut acc = q.tilde().coeff(i);
            let mut diag = Fe::ZERO;
            for (j, c) in q.coeffs().iter().enumerate() {
                for u in (i + 1).saturating_sub(c.len())..=i {
                    let coef = c.coeff(i - u);
                    if coef.is_zero() {
                        continue;
                    }
                    let w = f.mul(coef, powers[j][u]);
                    if u == i {
                        diag = f.add(diag, w);
                    } else {
                        acc = f.mul_add(w, sol[u], acc);
                    }
                }
            }
            if diag.is_zero() {
                if !acc.is_zero() {
                    defects.push((base + i, acc));
                }
                sol[i] = if pin == Some(i) { Fe::ONE } else { Fe::ZERO };
            } else {
                sol[i] = f.neg(f.div(acc, diag).expect("nonzero diagonal"));
            }
        }
        Poly::from_coeffs(sol)
    }
}

fn check_pin(f: &FieldConfig, q: &AffineOperator, k: usize, t: i64, gamma: Fe) -> Result<Option<usize>> {
    if t == -1 {
        return Ok(None);
    }
    let zeros = folded_spectrum(f, q, gamma, k).zeros;
    match usize::try_from(t) {
        Ok(tu) if zeros.contains(&tu) => Ok(Some(tu)),
        _ => Err(Error::InvalidPin(t)),
    }
}

/// The unique `f` of degree `< k` solving the equation modulo `x^k`, with
/// coefficient 1 at the free index `t` and 0 at every other free index
/// (`t = -1` pins all free coefficients to 0).
///
/// Fails with [`Error::NoSolution`] when no such `f` exists, which can only
/// happen at rows where the symbol vanishes.
pub fn func_rsolve(f: &FieldConfig, q: &AffineOperator, k: usize, t: i64, gamma: Fe) -> Result<Poly> {
    func_rsolve_with(f, q, k, t, gamma, Split::Halve)
}

pub fn func_rsolve_with(f: &FieldConfig, q: &AffineOperator, k: usize, t: i64, gamma: Fe, split: Split) -> Result<Poly> {
    check_folded(f, q, k, gamma)?;
    let pin = check_pin(f, q, k, t, gamma)?;
    let out = FoldedSolver { f, gamma, split }.run(q, k, pin);
    if out.defects.is_empty() {
        Ok(out.sol)
    } else {
        Err(Error::NoSolution)
    }
}

/// All `f` of degree `<= d` with `Q(x, f(x), ..., f(gamma^m x)) = 0 mod x^(d+1)`.
/// The dimension is at most the number of free rows, hence at most `m`.
pub fn func_solve(f: &FieldConfig, q: &AffineOperator, d: usize, gamma: Fe) -> Result<AffineSpace> {
    let k = d + 1;
    check_folded(f, q, k, gamma)?;
    let zeros = folded_spectrum(f, q, gamma, k).zeros;
    let solver = FoldedSolver { f, gamma, split: Split::Halve };
    let base = solver.run(q, k, None);
    let pinned: Vec<Pinned> = zeros.iter().map(|&t| solver.run(q, k, Some(t))).collect();
    if base.defects.is_empty() && pinned.iter().all(|p| p.defects.is_empty()) {
        let dirs = pinned.iter().map(|p| poly_sub(f, &p.sol, &base.sol)).collect();
        return Ok(AffineSpace::from_parts(f, base.sol, dirs));
    }
    // Combination base + sum_t v_t (f_t - base) is a solution iff the defects,
    // which are affine in v, all vanish.
    let defect_at = |p: &Pinned, row: usize| p.defects.iter().find(|(r, _)| *r == row).map_or(Fe::ZERO, |&(_, v)| v);
    let rows: Vec<Vec<Fe>> = zeros
        .iter()
        .map(|&row| {
            let b = defect_at(&base, row);
            pinned.iter().map(|p| f.sub(defect_at(p, row), b)).collect()
        })
        .collect();
    let rhs = zeros.iter().map(|&row| f.neg(defect_at(&base, row))).collect();
    let system = solve_linear(f, rows, rhs, zeros.len()).ok_or(Error::NoSolution)?;
    let combine = |v: &[Fe], with_base: bool| {
        let start = if with_base { base.sol.clone() } else { Poly::zero() };
        pinned.iter().zip(v).fold(start, |acc, (p, &c)| {
            poly_add(f, &acc, &poly_scale(f, &poly_sub(f, &p.sol, &base.sol), c))
        })
    };
    let offset = combine(&system.particular, true);
    let dirs = system.kernel.iter().map(|w| combine(w, false)).collect();
    Ok(AffineSpace::from_parts(f, offset, dirs))
}

/// Reference solver: dense elimination on the `k x k` coefficient system.
/// Asserts that the system is lower triangular with diagonal `P(gamma^i)`.
pub fn gw_func_triangular_solve(f: &FieldConfig, q: &AffineOperator, k: usize, gamma: Fe) -> Result<AffineSpace> {
    check_folded(f, q, k, gamma)?;
    let symbol = Poly::from_coeffs(q.coeffs().iter().map(Poly::constant_term).collect());
    // rows[i][u]: coefficient of f_u in [x^i] Q(x, f(x), ..., f(gamma^m x)).
    let mut rows = vec![vec![Fe::ZERO; k]; k];
    for (j, c) in q.coeffs().iter().enumerate() {
        let gj = f.pow(gamma, j as u64);
        for u in 0..k {
            let w = f.pow(gj, u as u64);
            for i in u..k {
                let coef = c.coeff(i - u);
                if !coef.is_zero() {
                    rows[i][u] = f.mul_add(coef, w, rows[i][u]);
                }
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        let expected = poly_eval(f, &symbol, f.pow(gamma, i as u64));
        assert_eq!(row[i], expected, "diagonal of row {i}");
        assert!(row[i + 1..].iter().all(|c| c.is_zero()), "row {i} above the diagonal");
    }
    let rhs = (0..k).map(|i| f.neg(q.tilde().coeff(i))).collect();
    let sol = solve_linear(f, rows, rhs, k).ok_or(Error::NoSolution)?;
    let dirs = sol.kernel.into_iter().map(Poly::from_coeffs).collect();
    Ok(AffineSpace::from_parts(f, Poly::from_coeffs(sol.particular), dirs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::apply_folded;

    fn op(f: &FieldConfig, tilde: &[i64], coeffs: &[&[i64]]) -> AffineOperator {
        AffineOperator::new(Poly::from_i64s(f, tilde), coeffs.iter().map(|c| Poly::from_i64s(f, c)).collect())
    }

    #[test]
    fn pinned_dilation_eigenvector() {
        let f = FieldConfig::new(7).unwrap();
        let q = op(&f, &[], &[&[-3], &[1]]);
        let g = f.elem(3);
        assert_eq!(func_rsolve(&f, &q, 4, 1, g).unwrap(), Poly::x());
        assert_eq!(func_rsolve(&f, &q, 4, -1, g).unwrap(), Poly::zero());
        assert_eq!(func_rsolve(&f, &q, 4, 2, g), Err(Error::InvalidPin(2)));
        let space = func_solve(&f, &q, 4, g).unwrap();
        assert_eq!(space.dim(), 1);
        assert!(space.contains(&f, &poly_scale(&f, &Poly::x(), f.elem(5))));
    }

    #[test]
    fn constant_equation() {
        let f = FieldConfig::new(7).unwrap();
        let q = op(&f, &[-1], &[&[1]]);
        assert_eq!(func_rsolve(&f, &q, 3, -1, f.elem(3)).unwrap(), Poly::one());
        assert_eq!(func_solve(&f, &q, 2, f.elem(3)).unwrap().dim(), 0);
    }

    #[test]
    fn dilation_invariant_functions_are_constants() {
        let f = FieldConfig::new(101).unwrap();
        let q = op(&f, &[], &[&[1], &[-1]]);
        let g = f.gamma();
        let space = func_solve(&f, &q, 30, g).unwrap();
        assert_eq!(space.dim(), 1);
        assert!(space.contains(&f, &Poly::constant(f.elem(42))));
        assert!(gw_func_triangular_solve(&f, &q, 31, g).unwrap().same_space(&f, &space));
    }

    #[test]
    fn small_order_rejected() {
        let f = FieldConfig::new(7).unwrap();
        let q = op(&f, &[], &[&[1], &[1]]);
        assert!(matches!(func_solve(&f, &q, 6, f.elem(3)), Err(Error::OrderTooSmall { .. })));
        assert_eq!(func_solve(&f, &op(&f, &[], &[&[0, 1]]), 2, f.elem(3)), Err(Error::NotNormalized));
    }

    #[test]
    fn linked_free_rows() {
        // Symbol vanishes at gamma^1 and gamma^2; row 2 then constrains f_1.
        let f = FieldConfig::new(101).unwrap();
        let g = f.gamma();
        let (r1, r2) = (g, f.mul(g, g));
        // (z - r1)(z - r2) = r1 r2 - (r1 + r2) z + z^2
        let c0 = f.mul(r1, r2).value() as i64;
        let c1 = f.neg(f.add(r1, r2)).value() as i64;
        let q = op(&f, &[], &[&[c0], &[c1, 1], &[1]]);
        let fast = func_solve(&f, &q, 10, g).unwrap();
        let slow = gw_func_triangular_solve(&f, &q, 11, g).unwrap();
        assert!(fast.same_space(&f, &slow));
        for p in fast.points() {
            assert!(apply_folded(&f, &q, p, g).truncated(11).is_zero());
        }
    }
}
