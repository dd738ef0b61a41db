//! Dense univariate polynomials over `F_p`.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and structural equality is polynomial
//! equality. Arithmetic needs the field and is provided as free functions.

use std::fmt;

use super::field::{Fe, FieldConfig};
use super::ntt::{convolve, NttPlan};
use crate::error::{Error, Result};

/// Below this operand length products and divisions use the classical loops.
const SCHOOLBOOK_CUTOFF: usize = 48;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Fe::ONE] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Fe, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Takes ownership of a coefficient vector, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Fe>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from integer coefficients, reducing each mod `p`.
    pub fn from_u64s(field: &FieldConfig, values: &[u64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| field.elem(v)).collect())
    }

    pub fn from_i64s(field: &FieldConfig, values: &[i64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| field.elem_i64(v)).collect())
    }

    /// `(x - a)`
    pub fn linear(field: &FieldConfig, a: Fe) -> Self {
        Poly { coeffs: vec![field.neg(a), Fe::ONE] }
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&Fe::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients, `deg + 1` (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Value at zero.
    pub fn constant_term(&self) -> Fe {
        self.coeff(0)
    }

    /// Largest `v` with `x^v | self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `self mod x^k`
    pub fn truncated(&self, k: usize) -> Poly {
        Self::from_coeffs(self.coeffs[..k.min(self.coeffs.len())].to_vec())
    }

    /// `self * x^k`
    pub fn shifted_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// `floor(self / x^k)`
    pub fn shifted_down(&self, k: usize) -> Poly {
        Poly { coeffs: self.coeffs.get(k..).map(<[Fe]>::to_vec).unwrap_or_default() }
    }

    /// `x^(len-1) * self(1/x)`, for `len > deg`.
    pub fn reversed(&self, len: usize) -> Poly {
        assert!(self.coeffs.len() <= len);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, Fe::ZERO);
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

pub fn poly_add(f: &FieldConfig, a: &Poly, b: &Poly) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut coeffs = long.coeffs.clone();
    for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
        *c = f.add(*c, s);
    }
    Poly::from_coeffs(coeffs)
}

pub fn poly_sub(f: &FieldConfig, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let coeffs = (0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect();
    Poly::from_coeffs(coeffs)
}

pub fn poly_neg(f: &FieldConfig, a: &Poly) -> Poly {
    Poly { coeffs: a.coeffs.iter().map(|&c| f.neg(c)).collect() }
}

/// `c * a`
pub fn poly_scale(f: &FieldConfig, a: &Poly, c: Fe) -> Poly {
    if c.is_zero() {
        return Poly::zero();
    }
    Poly { coeffs: a.coeffs.iter().map(|&v| f.mul(v, c)).collect() }
}

/// `acc += c * x^shift * a`, in place.
pub fn poly_axpy(f: &FieldConfig, acc: &mut Poly, c: Fe, shift: usize, a: &Poly) {
    if c.is_zero() || a.is_zero() {
        return;
    }
    if acc.coeffs.len() < a.len() + shift {
        acc.coeffs.resize(a.len() + shift, Fe::ZERO);
    }
    for (dst, &v) in acc.coeffs[shift..].iter_mut().zip(&a.coeffs) {
        *dst = f.mul_add(c, v, *dst);
    }
    acc.normalize();
}

fn schoolbook(f: &FieldConfig, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (slot, &y) in acc[i..].iter_mut().zip(b) {
            *slot += x.0 as u128 * y.0 as u128;
        }
    }
    let p = f.p() as u128;
    acc.into_iter().map(|v| Fe((v % p) as u32)).collect()
}

pub fn poly_mul(f: &FieldConfig, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let coeffs = if a.len().min(b.len()) <= SCHOOLBOOK_CUTOFF {
        schoolbook(f, &a.coeffs, &b.coeffs)
    } else {
        convolve(f, &a.coeffs, &b.coeffs)
    };
    Poly::from_coeffs(coeffs)
}

/// `a * b mod x^k`
pub fn poly_mul_trunc(f: &FieldConfig, a: &Poly, b: &Poly, k: usize) -> Poly {
    poly_mul(f, &a.truncated(k), &b.truncated(k)).truncated(k)
}

/// Product of many polynomials by balanced pairing.
pub fn poly_product(f: &FieldConfig, factors: &[Poly]) -> Poly {
    match factors.len() {
        0 => Poly::one(),
        1 => factors[0].clone(),
        n => {
            let (l, r) = factors.split_at(n / 2);
            poly_mul(f, &poly_product(f, l), &poly_product(f, r))
        }
    }
}

pub fn poly_pow(f: &FieldConfig, a: &Poly, mut e: u64) -> Poly {
    let mut base = a.clone();
    let mut acc = Poly::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(f, &base, &base);
        }
    }
    acc
}

/// Inverse of `a` modulo `x^k` by Newton iteration.
pub fn inv_mod_xk(f: &FieldConfig, a: &Poly, k: usize) -> Result<Poly> {
    let c0 = a.constant_term();
    if c0.is_zero() {
        return Err(Error::NotInvertible);
    }
    let mut g = Poly::constant(f.inv(c0)?);
    let mut prec = 1;
    while prec < k {
        prec = (2 * prec).min(k);
        // g <- g + g (1 - a g)
        let ag = poly_mul_trunc(f, a, &g, prec);
        let err = poly_sub(f, &Poly::one(), &ag);
        let corr = poly_mul_trunc(f, &g, &err, prec);
        g = poly_add(f, &g, &corr);
    }
    Ok(g.truncated(k))
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn poly_divmod(f: &FieldConfig, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let da = match a.degree() {
        Some(d) if d >= db => d,
        _ => return Ok((Poly::zero(), a.clone())),
    };
    let qlen = da - db + 1;
    if db <= SCHOOLBOOK_CUTOFF || qlen <= SCHOOLBOOK_CUTOFF {
        return Ok(long_division(f, a, b));
    }
    let rb_inv = inv_mod_xk(f, &b.reversed(db + 1), qlen)?;
    let q = poly_mul_trunc(f, &a.reversed(da + 1).truncated(qlen), &rb_inv, qlen).reversed(qlen);
    let r = poly_sub(f, a, &poly_mul(f, &q, b)).truncated(db);
    Ok((q, r))
}

fn long_division(f: &FieldConfig, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.len() - 1;
    let lead_inv = f.inv(b.leading_coeff()).expect("nonzero leading coefficient");
    let mut rem = a.coeffs.clone();
    let qlen = rem.len() - db;
    let mut q = vec![Fe::ZERO; qlen];
    for i in (0..qlen).rev() {
        let c = f.mul(rem[i + db], lead_inv);
        q[i] = c;
        if c.is_zero() {
            continue;
        }
        let nc = f.neg(c);
        for (j, &bj) in b.coeffs.iter().enumerate() {
            rem[i + j] = f.mul_add(nc, bj, rem[i + j]);
        }
    }
    rem.truncate(db);
    (Poly::from_coeffs(q), Poly::from_coeffs(rem))
}

pub fn poly_rem(f: &FieldConfig, a: &Poly, b: &Poly) -> Result<Poly> {
    Ok(poly_divmod(f, a, b)?.1)
}

/// Exact division; panics in debug builds if `b` does not divide `a`.
pub fn poly_div_exact(f: &FieldConfig, a: &Poly, b: &Poly) -> Result<Poly> {
    let (q, r) = poly_divmod(f, a, b)?;
    debug_assert!(r.is_zero(), "inexact division");
    Ok(q)
}

/// Quotient of `a` by `(x - t)`; the remainder `a(t)` is discarded.
pub fn poly_div_linear(f: &FieldConfig, a: &Poly, t: Fe) -> Poly {
    if a.len() <= 1 {
        return Poly::zero();
    }
    let n = a.len();
    let mut q = vec![Fe::ZERO; n - 1];
    let mut carry = Fe::ZERO;
    for i in (1..n).rev() {
        carry = f.mul_add(carry, t, a.coeffs[i]);
        q[i - 1] = carry;
    }
    Poly::from_coeffs(q)
}

/// `a * (x - t)`
pub fn poly_mul_linear(f: &FieldConfig, a: &Poly, t: Fe) -> Poly {
    if a.is_zero() {
        return Poly::zero();
    }
    let nt = f.neg(t);
    let mut out = vec![Fe::ZERO; a.len() + 1];
    for (i, &c) in a.coeffs.iter().enumerate() {
        out[i + 1] = f.add(out[i + 1], c);
        out[i] = f.mul_add(nt, c, out[i]);
    }
    Poly::from_coeffs(out)
}

pub fn poly_eval(f: &FieldConfig, a: &Poly, x: Fe) -> Fe {
    a.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.mul_add(acc, x, c))
}

pub fn poly_derivative(f: &FieldConfig, a: &Poly) -> Poly {
    let coeffs = a.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, f.elem(i as u64)));
    Poly::from_coeffs(coeffs.collect())
}

/// `[a, a', a'', ..., a^(s-1)]` with standard derivatives.
pub fn derivative_batch(f: &FieldConfig, a: &Poly, s: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(s);
    let mut cur = a.clone();
    for _ in 0..s {
        let next = poly_derivative(f, &cur);
        out.push(cur);
        cur = next;
    }
    out
}

/// `x^i * a^(i)`, the operator `x^i d^i/dx^i` applied coefficientwise.
pub fn euler_derivative(f: &FieldConfig, a: &Poly, i: usize) -> Poly {
    if i == 0 {
        return a.clone();
    }
    let coeffs = a
        .coeffs
        .iter()
        .enumerate()
        .map(|(u, &c)| if u < i { Fe::ZERO } else { f.mul(c, f.falling_factorial(u as i64, i)) });
    Poly::from_coeffs(coeffs.collect())
}

/// `a(c x)`
pub fn poly_dilate(f: &FieldConfig, a: &Poly, c: Fe) -> Poly {
    let mut pw = Fe::ONE;
    let coeffs = a
        .coeffs
        .iter()
        .map(|&v| {
            let out = f.mul(v, pw);
            pw = f.mul(pw, c);
            out
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// `a(x + t)`
pub fn taylor_shift(f: &FieldConfig, a: &Poly, t: Fe) -> Poly {
    if t.is_zero() || a.len() <= 1 {
        return a.clone();
    }
    let n = a.len();
    if n <= SCHOOLBOOK_CUTOFF || n as u64 > f.p() {
        // Horner in the shifted variable.
        let mut acc: Vec<Fe> = Vec::with_capacity(n);
        for &c in a.coeffs.iter().rev() {
            acc.push(Fe::ZERO);
            for i in (1..acc.len()).rev() {
                acc[i] = f.mul_add(acc[i], t, acc[i - 1]);
            }
            acc[0] = f.mul_add(acc[0], t, c);
        }
        return Poly::from_coeffs(acc);
    }
    // b_k = (1/k!) sum_i (a_i i!) t^(i-k) / (i-k)!
    let fact = f.factorials(n - 1);
    let inv_fact = f.inv_factorials(n - 1).expect("n <= p");
    let scaled: Vec<Fe> = (0..n).map(|i| f.mul(a.coeffs[n - 1 - i], fact[n - 1 - i])).collect();
    let mut pw = Fe::ONE;
    let powers: Vec<Fe> = (0..n)
        .map(|j| {
            let v = f.mul(pw, inv_fact[j]);
            pw = f.mul(pw, t);
            v
        })
        .collect();
    let conv = convolve(f, &scaled, &powers);
    let coeffs = (0..n).map(|k| f.mul(conv[n - 1 - k], inv_fact[k])).collect();
    Poly::from_coeffs(coeffs)
}

/// Monic greatest common divisor.
pub fn poly_gcd(f: &FieldConfig, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = poly_rem(f, &x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

pub fn make_monic(f: &FieldConfig, a: &Poly) -> Poly {
    if a.is_zero() {
        return Poly::zero();
    }
    poly_scale(f, a, f.inv(a.leading_coeff()).expect("nonzero"))
}

/// `base^e mod modulus`
pub fn poly_powmod(f: &FieldConfig, base: &Poly, mut e: u64, modulus: &Poly) -> Result<Poly> {
    let mut b = poly_rem(f, base, modulus)?;
    let mut acc = poly_rem(f, &Poly::one(), modulus)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &b), modulus)?;
        }
        e >>= 1;
        if e > 0 {
            b = poly_rem(f, &poly_mul(f, &b, &b), modulus)?;
        }
    }
    Ok(acc)
}

/// Multiplies many operands against one fixed operand, reusing its transform.
pub(crate) struct FixedMultiplier {
    plan: Option<NttPlan>,
    spectrum: Option<super::ntt::Spectrum>,
    operand: Poly,
    out_len: usize,
}

impl FixedMultiplier {
    /// Prepares products `operand * b` truncated to `out_len` coefficients
    /// for any `b` with fewer than `max_other` coefficients.
    pub fn new(f: &FieldConfig, operand: Poly, max_other: usize, out_len: usize) -> Self {
        let full = operand.len() + max_other;
        if operand.len() <= SCHOOLBOOK_CUTOFF || max_other <= SCHOOLBOOK_CUTOFF {
            return FixedMultiplier { plan: None, spectrum: None, operand, out_len };
        }
        let plan = NttPlan::for_len(f, full);
        let spectrum = plan.forward(operand.coeffs());
        FixedMultiplier { plan: Some(plan), spectrum: Some(spectrum), operand, out_len }
    }

    pub fn mul(&self, f: &FieldConfig, b: &Poly) -> Poly {
        match (&self.plan, &self.spectrum) {
            (Some(plan), Some(spec)) if !b.is_zero() => {
                let fb = plan.forward(b.coeffs());
                Poly::from_coeffs(plan.inverse(plan.mul(spec, &fb), self.out_len))
            }
            _ => poly_mul(f, &self.operand, b).truncated(self.out_len),
        }
    }
}

/// Division by one fixed nonzero divisor, reusing its reversed inverse and
/// transforms across many dividends.
pub struct PolyDivisor {
    divisor: Poly,
    max_len: usize,
    quotient: Option<(FixedMultiplier, FixedMultiplier)>,
}

impl PolyDivisor {
    /// Prepares division of any dividend with at most `max_len` coefficients.
    pub fn new(f: &FieldConfig, divisor: Poly, max_len: usize) -> Result<Self> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let qlen = max_len.saturating_sub(db);
        if db <= SCHOOLBOOK_CUTOFF || qlen <= SCHOOLBOOK_CUTOFF {
            return Ok(PolyDivisor { divisor, max_len, quotient: None });
        }
        let rb_inv = inv_mod_xk(f, &divisor.reversed(db + 1), qlen)?;
        let by_inv = FixedMultiplier::new(f, rb_inv, qlen + 1, qlen);
        let by_divisor = FixedMultiplier::new(f, divisor.clone(), qlen + 1, db);
        Ok(PolyDivisor { divisor, max_len, quotient: Some((by_inv, by_divisor)) })
    }

    pub fn divisor(&self) -> &Poly {
        &self.divisor
    }

    /// Quotient and remainder of `a`.
    pub fn divmod(&self, f: &FieldConfig, a: &Poly) -> (Poly, Poly) {
        let db = self.divisor.len() - 1;
        let da = match a.degree() {
            Some(d) if d >= db => d,
            _ => return (Poly::zero(), a.clone()),
        };
        let Some((by_inv, by_divisor)) = self.quotient.as_ref().filter(|_| a.len() <= self.max_len) else {
            return poly_divmod(f, a, &self.divisor).expect("nonzero divisor");
        };
        let qlen = da - db + 1;
        // The stored inverse is longer than needed; its extra terms only
        // touch coefficients past qlen.
        let q = by_inv.mul(f, &a.reversed(da + 1).truncated(qlen)).truncated(qlen).reversed(qlen);
        let r = poly_sub(f, &a.truncated(db), &by_divisor.mul(f, &q));
        (q, r)
    }

    pub fn rem(&self, f: &FieldConfig, a: &Poly) -> Poly {
        self.divmod(f, a).1
    }

    /// Exact quotient; panics in debug builds on a nonzero remainder.
    pub fn div_exact(&self, f: &FieldConfig, a: &Poly) -> Poly {
        let (q, r) = self.divmod(f, a);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldConfig {
        FieldConfig::new(7).unwrap()
    }

    #[test]
    fn product_of_linear_factors() {
        let f = f7();
        let a = Poly::from_i64s(&f, &[-1, 1]);
        let b = Poly::from_i64s(&f, &[-2, 1]);
        assert_eq!(poly_mul(&f, &a, &b), Poly::from_u64s(&f, &[2, 4, 1]));
    }

    #[test]
    fn exact_division() {
        let f = FieldConfig::new(101).unwrap();
        let a = Poly::from_i64s(&f, &[1, 0, 0, 1]);
        let b = Poly::from_i64s(&f, &[1, 1]);
        let (q, r) = poly_divmod(&f, &a, &b).unwrap();
        assert_eq!(q, Poly::from_i64s(&f, &[1, -1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_coeffs(vec![Fe::ZERO; 4]), Poly::zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f7();
        assert_eq!(poly_divmod(&f, &Poly::one(), &Poly::zero()), Err(Error::DivisionByZero));
        assert_eq!(inv_mod_xk(&f, &Poly::x(), 3), Err(Error::NotInvertible));
    }

    #[test]
    fn taylor_shift_both_paths() {
        let f = FieldConfig::new(7919).unwrap();
        let a = Poly::from_u64s(&f, &(0..200u64).map(|i| i * i + 5).collect::<Vec<_>>());
        let t = f.elem(1234);
        let fast = taylor_shift(&f, &a, t);
        let x = f.elem(77);
        assert_eq!(poly_eval(&f, &fast, x), poly_eval(&f, &a, f.add(x, t)));
        let back = taylor_shift(&f, &fast, f.neg(t));
        assert_eq!(back, a);
        // small characteristic falls back to Horner
        let g = f7();
        let b = Poly::from_u64s(&g, &[1, 2, 3, 4, 5, 6, 1, 2, 3]);
        let sb = taylor_shift(&g, &b, g.elem(3));
        assert_eq!(poly_eval(&g, &sb, g.elem(2)), poly_eval(&g, &b, g.elem(5)));
    }

    #[test]
    fn euler_derivative_matches_repeated_derivative() {
        let f = FieldConfig::new(101).unwrap();
        let a = Poly::from_u64s(&f, &[3, 1, 4, 1, 5, 9, 2, 6]);
        let d = derivative_batch(&f, &a, 4);
        assert_eq!(euler_derivative(&f, &a, 3), d[3].shifted_up(3));
    }

    #[test]
    fn fixed_multiplier_matches_plain_product() {
        let f = FieldConfig::new(7919).unwrap();
        let a = Poly::from_u64s(&f, &(0..150u64).map(|i| 3 * i + 1).collect::<Vec<_>>());
        let b = Poly::from_u64s(&f, &(0..90u64).map(|i| i * i).collect::<Vec<_>>());
        let m = FixedMultiplier::new(&f, a.clone(), 100, 120);
        assert_eq!(m.mul(&f, &b), poly_mul(&f, &a, &b).truncated(120));
    }

    #[test]
    fn prepared_divisor_matches_divmod() {
        let f = FieldConfig::new(7919).unwrap();
        let b = Poly::from_u64s(&f, &(0..70u64).map(|i| (i * 31 + 5) % 7919).collect::<Vec<_>>());
        let div = PolyDivisor::new(&f, b.clone(), 300).unwrap();
        for len in [0usize, 40, 70, 71, 150, 300, 400] {
            let a = Poly::from_u64s(&f, &(0..len as u64).map(|i| (i * i * 7 + 3) % 7919).collect::<Vec<_>>());
            assert_eq!(div.divmod(&f, &a), poly_divmod(&f, &a, &b).unwrap(), "dividend length {len}");
        }
        let exact = poly_mul(&f, &b, &Poly::from_u64s(&f, &[1, 2, 3]));
        assert_eq!(div.div_exact(&f, &exact), Poly::from_u64s(&f, &[1, 2, 3]));
    }
}
