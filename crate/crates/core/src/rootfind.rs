//! Roots `y = f(x)` of bivariate polynomials, found coefficient by
//! coefficient (Roth-Ruckenstein).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::*;
use crate::error::{Error, Result};
use crate::interpolation::BivariateQ;

/// Below this characteristic the split step scans the field.
const SCAN_LIMIT: u64 = 1 << 16;

/// Distinct roots in `F_p`, ascending.
pub fn univariate_roots(f: &FieldConfig, q: &Poly) -> Result<Vec<Fe>> {
    let deg = q.degree().ok_or(Error::ZeroPolynomial)?;
    let mut roots = match deg {
        0 => Vec::new(),
        1 => vec![f.neg(f.div(q.coeff(0), q.coeff(1))?)],
        _ => {
            let q = make_monic(f, q);
            let xp = poly_powmod(f, &Poly::x(), f.p(), &q)?;
            let split = poly_gcd(f, &q, &poly_sub(f, &xp, &Poly::x()));
            let mut out = Vec::new();
            if f.p() < SCAN_LIMIT && split.degree().unwrap_or(0) > 2 {
                out.extend((0..f.p()).map(|v| f.elem(v)).filter(|&a| poly_eval(f, &split, a).is_zero()));
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(f.p());
                split_linear(f, &split, &mut rng, &mut out);
            }
            out
        }
    };
    roots.sort_unstable_by_key(|r| r.value());
    roots.dedup();
    Ok(roots)
}

/// Roots of a monic squarefree product of distinct linear factors, by
/// random splits `gcd((x + a)^((p - 1) / 2) - 1, g)`.
fn split_linear(f: &FieldConfig, g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Fe>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.div(g.coeff(0), g.coeff(1)).expect("monic"))),
        Some(2) if f.p() == 3 => out.extend((0..3).map(|v| f.elem(v)).filter(|&a| poly_eval(f, g, a).is_zero())),
        Some(_) => loop {
            let shift = Poly::linear(f, f.elem(rng.gen_range(0..f.p())));
            let h = poly_powmod(f, &shift, (f.p() - 1) / 2, g).expect("nonzero modulus");
            let part = poly_gcd(f, g, &poly_sub(f, &h, &Poly::one()));
            let dp = part.degree().unwrap_or(0);
            if dp > 0 && dp < g.degree().unwrap() {
                let rest = poly_div_exact(f, g, &part).expect("factor divides");
                split_linear(f, &part, rng, out);
                split_linear(f, &make_monic(f, &rest), rng, out);
                return;
            }
        },
    }
}

/// Every `f` of degree at most `d` with `Q(x, f(x)) = 0`, ascending by
/// coefficients. At most `deg_y Q` of them exist.
pub fn rr_roots(f: &FieldConfig, q: &BivariateQ, d: usize) -> Result<Vec<Poly>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut found = Vec::new();
    let mut prefix = Vec::with_capacity(d + 1);
    descend(f, q.y_coeffs().to_vec(), d + 1, &mut prefix, &mut found)?;
    let mut roots: Vec<Poly> =
        found.into_iter().map(Poly::from_coeffs).filter(|g| q.substitute(f, g).is_zero()).collect();
    roots.sort_by(|a, b| a.coeffs().iter().map(|c| c.value()).cmp(b.coeffs().iter().map(|c| c.value())));
    roots.dedup();
    Ok(roots)
}

/// `rows[j]` is the coefficient of `y^j`; `remaining` coefficients of the
/// root are still to be found.
fn descend(f: &FieldConfig, rows: Vec<Poly>, remaining: usize, prefix: &mut Vec<Fe>, out: &mut Vec<Vec<Fe>>) -> Result<()> {
    if remaining == 0 {
        out.push(prefix.clone());
        return Ok(());
    }
    let v = rows.iter().filter_map(Poly::valuation).min().expect("nonzero polynomial");
    let rows: Vec<Poly> = rows.iter().map(|r| r.shifted_down(v)).collect();
    let at_zero = Poly::from_coeffs(rows.iter().map(Poly::constant_term).collect());
    if at_zero.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    for rho in univariate_roots(f, &at_zero)? {
        // Q(x, x y + rho): shift in y, then scale y^j by x^j.
        let shifted = shift_in_y(f, &rows, rho);
        let next = shifted.into_iter().enumerate().map(|(j, r)| r.shifted_up(j)).collect();
        prefix.push(rho);
        descend(f, next, remaining - 1, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Coefficients in `y` of `Q(x, y + rho)`.
fn shift_in_y(f: &FieldConfig, rows: &[Poly], rho: Fe) -> Vec<Poly> {
    let mut out = rows.to_vec();
    if rho.is_zero() {
        return out;
    }
    // Repeated synthetic division by (y - rho), Horner style.
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let carry = poly_scale(f, &out[j + 1], rho);
            out[j] = poly_add(f, &out[j], &carry);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn biv(f: &FieldConfig, rows: &[&[i64]]) -> BivariateQ {
        BivariateQ::new(rows.iter().map(|r| Poly::from_i64s(f, r)).collect())
    }

    #[test]
    fn univariate_examples() {
        let f = FieldConfig::new(7).unwrap();
        assert_eq!(univariate_roots(&f, &Poly::from_i64s(&f, &[-1, 0, 1])).unwrap(), vec![f.elem(1), f.elem(6)]);
        assert!(univariate_roots(&f, &Poly::from_i64s(&f, &[1, 0, 1])).unwrap().is_empty());
        assert!(univariate_roots(&f, &Poly::constant(f.elem(3))).unwrap().is_empty());
        assert_eq!(univariate_roots(&f, &Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn large_field_splitting() {
        let f = FieldConfig::new(2013265921).unwrap();
        let roots: Vec<Fe> = [5u64, 17, 99991, 123456789, 2000000000].iter().map(|&r| f.elem(r)).collect();
        let q = poly_product(&f, &roots.iter().map(|&r| Poly::linear(&f, r)).collect::<Vec<_>>());
        let q = poly_mul(&f, &q, &Poly::from_i64s(&f, &[1, 0, 1, 0, 1]));
        let mut expected = roots.clone();
        expected.sort_unstable_by_key(|r| r.value());
        let mut got = univariate_roots(&f, &q).unwrap();
        got.retain(|r| !poly_eval(&f, &Poly::from_i64s(&f, &[1, 0, 1, 0, 1]), *r).is_zero());
        assert_eq!(got, expected);
    }

    #[test]
    fn bivariate_examples() {
        let f = FieldConfig::new(101).unwrap();
        // (y - x)(y - 2x) = y^2 - 3x y + 2x^2
        let q = biv(&f, &[&[0, 0, 2], &[0, -3], &[1]]);
        assert_eq!(rr_roots(&f, &q, 1).unwrap(), vec![Poly::x(), Poly::from_u64s(&f, &[0, 2])]);
        assert_eq!(rr_roots(&f, &biv(&f, &[&[-1], &[1]]), 0).unwrap(), vec![Poly::one()]);
        let f7 = FieldConfig::new(7).unwrap();
        let q = biv(&f7, &[&[0, 0, -1], &[], &[1]]);
        assert_eq!(rr_roots(&f7, &q, 1).unwrap(), vec![Poly::x(), Poly::from_u64s(&f7, &[0, 6])]);
        assert_eq!(rr_roots(&f, &BivariateQ::default(), 2), Err(Error::ZeroPolynomial));
    }
}
