//! Solving the linear differential equation `Q(x, f, f', ..., f^(m)) = 0`
//! modulo a power of `x`.
//!
//! The solver works on the conjugate operator: writing `f = x^i + x^m g`
//! turns the equation into `B + Q^dagger_m(x, g, g', ...) = 0` whose
//! coefficient system is lower triangular with nonzero diagonal
//! `m! C(n + t, m) Q_m(0)`. Each half of the unknowns is solved recursively;
//! the second half sees the residual of the first, divided by `x^l`, with the
//! conjugate index advanced by `l`.

use crate::affine::AffineSpace;
use crate::algebra::ntt::NttPlan;
use crate::algebra::*;
use crate::error::{Error, Result};
use crate::operators::{apply_derivative, conjugate_part, AffineOperator};

/// Below this precision the triangular system is solved coefficient by
/// coefficient.
const LEAF_PRECISION: usize = 24;

/// How the precision is split in the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    /// `l = floor(k / 2)`, the quasi-linear schedule.
    Halve,
    /// `l = 1`, peeling one coefficient at a time.
    PeelOne,
}

fn check_dagger(f: &FieldConfig, q: &AffineOperator, n: u64, k: usize) -> Result<()> {
    if q.coeffs()[q.order()].constant_term().is_zero() {
        return Err(Error::NotNormalized);
    }
    // The diagonal carries C(n + t, m), which vanishes for n < m.
    if n < q.order() as u64 {
        return Err(Error::InvalidParameter(format!("shift {n} is below the order {}", q.order())));
    }
    let needed = n + k as u64;
    if f.p() <= needed {
        return Err(Error::CharacteristicTooSmall { p: f.p(), needed });
    }
    Ok(())
}

/// The unique `g` of degree `< k` with `B + Q^dagger_n(x, g, g', ...) = 0 mod x^k`.
pub fn solve_q_dagger(f: &FieldConfig, q: &AffineOperator, b: &Poly, n: u64, k: usize) -> Result<Poly> {
    solve_q_dagger_with(f, q, b, n, k, Split::Halve)
}

pub fn solve_q_dagger_with(
    f: &FieldConfig,
    q: &AffineOperator,
    b: &Poly,
    n: u64,
    k: usize,
    split: Split,
) -> Result<Poly> {
    check_dagger(f, q, n, k)?;
    if k == 0 {
        return Ok(Poly::zero());
    }
    let solver = DaggerSolver { f, q, split };
    Ok(solver.solve(vec![b.truncated(k)], n, k).pop().unwrap())
}

/// Several right-hand sides against one operator, sharing the recursion.
pub fn solve_q_dagger_many(f: &FieldConfig, q: &AffineOperator, bs: &[Poly], n: u64, k: usize) -> Result<Vec<Poly>> {
    check_dagger(f, q, n, k)?;
    if k == 0 {
        return Ok(vec![Poly::zero(); bs.len()]);
    }
    let solver = DaggerSolver { f, q, split: Split::Halve };
    Ok(solver.solve(bs.iter().map(|b| b.truncated(k)).collect(), n, k))
}

struct DaggerSolver<'a> {
    f: &'a FieldConfig,
    q: &'a AffineOperator,
    split: Split,
}

impl DaggerSolver<'_> {
    fn solve(&self, bs: Vec<Poly>, n: u64, k: usize) -> Vec<Poly> {
        let leaf = match self.split {
            Split::Halve => LEAF_PRECISION,
            Split::PeelOne => 1,
        };
        if k <= leaf {
            return bs.iter().map(|b| self.leaf(b, n, k)).collect();
        }
        let l = match self.split {
            Split::Halve => k / 2,
            Split::PeelOne => 1,
        };
        let hs = self.solve(bs.iter().map(|b| b.truncated(l)).collect(), n, l);
        let applied = self.apply_conjugate(&hs, n, k);
        let next: Vec<Poly> = bs
            .iter()
            .zip(&applied)
            .map(|(b, a)| {
                let r = poly_add(self.f, b, a);
                debug_assert!(r.truncated(l).is_zero(), "first half left a residual below x^l");
                r.shifted_down(l)
            })
            .collect();
        let gs = self.solve(next, n + l as u64, k - l);
        hs.iter().zip(&gs).map(|(h, g)| poly_add(self.f, h, &g.shifted_up(l))).collect()
    }

    /// `Q^dagger_n(x, h, h', ...) mod x^k` for every `h`, computed as
    /// `sum_j x^(m-j) Q_j T_j` with `T_j = sum_{i <= j} n^(j-i) C(j,i) x^i h^(i)`.
    fn apply_conjugate(&self, hs: &[Poly], n: u64, k: usize) -> Vec<Poly> {
        let f = self.f;
        let m = self.q.order();
        let weights: Vec<Vec<Fe>> = (0..=m)
            .map(|j| (0..=j).map(|i| f.mul(f.falling_factorial(n as i64, j - i), f.binomial(j as u64, i as u64))).collect())
            .collect();
        let shifted_q: Vec<Poly> = (0..=m).map(|j| self.q.coeffs()[j].truncated(k.saturating_sub(m - j)).shifted_up(m - j)).collect();
        let hlen = hs.iter().map(Poly::len).max().unwrap_or(0);
        let plan = (k > 64 && hlen > 16).then(|| NttPlan::for_len(f, k + hlen));
        let q_spectra: Option<Vec<_>> = plan.as_ref().map(|pl| shifted_q.iter().map(|p| pl.forward(p.coeffs())).collect());
        hs.iter()
            .map(|h| {
                let euler: Vec<Poly> = (0..=m).map(|i| euler_derivative(f, h, i)).collect();
                let t: Vec<Poly> = (0..=m)
                    .map(|j| (0..=j).fold(Poly::zero(), |acc, i| poly_add(f, &acc, &poly_scale(f, &euler[i], weights[j][i]))))
                    .collect();
                match (&plan, &q_spectra) {
                    (Some(pl), Some(qs)) => {
                        let mut acc = pl.zero();
                        for (qj, tj) in qs.iter().zip(&t) {
                            if !tj.is_zero() {
                                pl.mul_acc(&mut acc, qj, &pl.forward(tj.coeffs()));
                            }
                        }
                        Poly::from_coeffs(pl.inverse(acc, k))
                    }
                    _ => shifted_q
                        .iter()
                        .zip(&t)
                        .fold(Poly::zero(), |acc, (qj, tj)| poly_add(f, &acc, &poly_mul_trunc(f, qj, tj, k))),
                }
            })
            .collect()
    }

    /// Forward substitution on the triangular coefficient system.
    fn leaf(&self, b: &Poly, n: u64, k: usize) -> Poly {
        let f = self.f;
        let m = self.q.order();
        let low = self.q.map_parts(|p| p.truncated(k));
        let parts: Vec<Poly> = (0..=m).map(|i| conjugate_part(f, &low, n, i).truncated(k)).collect();
        let mut sol = vec![Fe::ZERO; k];
        for t in 0..k {
            let mut acc = b.coeff(t);
            let mut diag = Fe::ZERO;
            for (i, part) in parts.iter().enumerate() {
                for u in 0..=t {
                    let c = part.coeff(t - u);
                    if c.is_zero() || u < i {
                        continue;
                    }
                    let w = f.mul(c, f.falling_factorial(u as i64, i));
                    if u == t {
                        diag = f.add(diag, w);
                    } else {
                        acc = f.mul_add(w, sol[u], acc);
                    }
                }
            }
            sol[t] = f.neg(f.div(acc, diag).expect("diagonal is nonzero when p > n + k"));
        }
        Poly::from_coeffs(sol)
    }
}

/// The affine space of `f` with `deg f <= d` solving `Q(x, f, ..., f^(m)) = 0`
/// modulo `x^(d - m + 1)`, given by the points `x^i + x^m g_i`, `i = 0..=m`.
pub fn solve_q(f: &FieldConfig, q: &AffineOperator, d: usize) -> Result<AffineSpace> {
    let m = q.order();
    if q.coeffs()[m].constant_term().is_zero() {
        return Err(Error::NotNormalized);
    }
    if d < m {
        return Err(Error::DegreeTooSmall { d, m });
    }
    let k = d - m + 1;
    let rhs: Vec<Poly> =
        (0..=m).map(|i| apply_derivative(f, q, &Poly::monomial(Fe::ONE, i)).truncated(k)).collect();
    let gs = solve_q_dagger_many(f, q, &rhs, m as u64, k)?;
    let points = gs
        .iter()
        .enumerate()
        .map(|(i, g)| poly_add(f, &Poly::monomial(Fe::ONE, i), &g.shifted_up(m)))
        .collect();
    Ok(AffineSpace::from_points(f, points))
}

/// Reference solver: all `f` of degree `< k + m` with
/// `Q(x, f, ..., f^(m)) = 0 mod x^k`, by forward substitution on the
/// coefficients with `f_0..f_(m-1)` free.
pub fn gw_triangular_solve(f: &FieldConfig, q: &AffineOperator, k: usize) -> Result<AffineSpace> {
    let m = q.order();
    let qm0 = q.coeffs()[m].constant_term();
    if qm0.is_zero() {
        return Err(Error::NotNormalized);
    }
    if f.p() < (k + m) as u64 {
        return Err(Error::CharacteristicTooSmall { p: f.p(), needed: (k + m) as u64 });
    }
    let unknowns = k + m;
    // rows[t][u]: coefficient of f_u in [x^t] Q(x, f, f', ...).
    let rows: Vec<Vec<Fe>> = (0..k)
        .map(|t| {
            let mut row = vec![Fe::ZERO; unknowns];
            for (i, qi) in q.coeffs().iter().enumerate() {
                for w in 0..=t {
                    let u = w + i;
                    let c = qi.coeff(t - w);
                    if !c.is_zero() {
                        let mut ff = Fe::ONE;
                        for r in 0..i {
                            ff = f.mul(ff, f.elem((u - r) as u64));
                        }
                        row[u] = f.add(row[u], f.mul(c, ff));
                    }
                }
            }
            let expected = f.mul(f.mul(f.falling_factorial(m as i64, m), f.binomial((t + m) as u64, m as u64)), qm0);
            assert_eq!(row[t + m], expected, "triangular diagonal at row {t}");
            row
        })
        .collect();
    let solve_with = |free: &[Fe], homogeneous: bool| -> Poly {
        let mut sol = vec![Fe::ZERO; unknowns];
        sol[..m].copy_from_slice(free);
        for t in 0..k {
            let mut acc = if homogeneous { Fe::ZERO } else { q.tilde().coeff(t) };
            for u in 0..t + m {
                acc = f.mul_add(rows[t][u], sol[u], acc);
            }
            sol[t + m] = f.neg(f.div(acc, rows[t][t + m]).unwrap());
        }
        Poly::from_coeffs(sol)
    };
    let offset = solve_with(&vec![Fe::ZERO; m], false);
    let directions = (0..m)
        .map(|j| {
            let mut free = vec![Fe::ZERO; m];
            free[j] = Fe::ONE;
            solve_with(&free, true)
        })
        .collect();
    Ok(AffineSpace::from_parts(f, offset, directions))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(f: &FieldConfig, tilde: &[i64], coeffs: &[&[i64]]) -> AffineOperator {
        AffineOperator::new(Poly::from_i64s(f, tilde), coeffs.iter().map(|c| Poly::from_i64s(f, c)).collect())
    }

    #[test]
    fn first_order_base_case() {
        let f = FieldConfig::new(101).unwrap();
        let q = op(&f, &[], &[&[], &[1]]);
        let g = solve_q_dagger(&f, &q, &Poly::from_i64s(&f, &[-1]), 1, 2).unwrap();
        assert_eq!(g, Poly::one());
    }

    #[test]
    fn geometric_series() {
        let f = FieldConfig::new(101).unwrap();
        let q = op(&f, &[], &[&[1, -1]]);
        let g = solve_q_dagger(&f, &q, &Poly::from_i64s(&f, &[-1]), 0, 3).unwrap();
        assert_eq!(g, Poly::from_u64s(&f, &[1, 1, 1]));
    }

    #[test]
    fn solve_q_example() {
        let f = FieldConfig::new(101).unwrap();
        let q = op(&f, &[-1], &[&[], &[1]]);
        let space = solve_q(&f, &q, 2).unwrap();
        assert_eq!(space.points(), &[Poly::from_u64s(&f, &[1, 1]), Poly::x()]);
        assert_eq!(space.dim(), 1);
    }

    #[test]
    fn rejects_unnormalized_and_small_degree() {
        let f = FieldConfig::new(101).unwrap();
        let q = op(&f, &[], &[&[1], &[0, 1]]);
        assert_eq!(solve_q(&f, &q, 5), Err(Error::NotNormalized));
        let q = op(&f, &[], &[&[1], &[1], &[1]]);
        assert_eq!(solve_q(&f, &q, 1), Err(Error::DegreeTooSmall { d: 1, m: 2 }));
        assert!(matches!(solve_q_dagger(&f, &q, &Poly::one(), 90, 20), Err(Error::CharacteristicTooSmall { .. })));
    }
}
