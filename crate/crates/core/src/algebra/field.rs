//! Prime fields `F_p` with a runtime modulus.
//!
//! Elements are canonical residues stored in a `u32`. All arithmetic goes
//! through a [`FieldConfig`], which also carries a distinguished primitive
//! element `gamma` used by the folded codes.

use std::fmt;

use crate::error::{Error, Result};

/// An element of `F_p`, always held as its canonical residue in `[0, p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// The canonical residue.
    #[inline]
    pub fn value(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Runtime description of a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    p: u64,
    gamma: Fe,
    gamma_order: u64,
    two_adicity: u32,
    root_of_unity: Fe,
    factors: Vec<u64>,
}

impl FieldConfig {
    /// Largest supported modulus (exclusive). Products of two residues fit in
    /// a `u64` with headroom for Montgomery reduction.
    pub const MAX_MODULUS: u64 = 1 << 31;

    /// Builds `F_p` with `gamma` set to the smallest primitive root.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= Self::MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let factors = distinct_prime_factors(p - 1);
        let mut field = FieldConfig {
            p,
            gamma: Fe::ONE,
            gamma_order: 1,
            two_adicity: (p - 1).trailing_zeros(),
            root_of_unity: Fe::ONE,
            factors,
        };
        let g = (2..p)
            .find(|&g| field.is_primitive(Fe(g as u32)))
            .expect("every prime field has a primitive root");
        field.gamma = Fe(g as u32);
        field.gamma_order = p - 1;
        field.root_of_unity = field.pow(field.gamma, (p - 1) >> field.two_adicity);
        Ok(field)
    }

    /// Builds `F_p` with a caller-chosen distinguished element.
    pub fn with_gamma(p: u64, gamma: u64) -> Result<Self> {
        let mut field = Self::new(p)?;
        let g = field.elem(gamma);
        if g.is_zero() {
            return Err(Error::InvalidParameter("gamma must be nonzero".into()));
        }
        field.gamma_order = field.order(g);
        field.gamma = g;
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn gamma(&self) -> Fe {
        self.gamma
    }

    #[inline]
    pub fn gamma_order(&self) -> u64 {
        self.gamma_order
    }

    /// Largest `k` with `2^k | p - 1`.
    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// A primitive `2^two_adicity`-th root of unity.
    pub fn root_of_unity(&self) -> Fe {
        self.root_of_unity
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe((v % self.p) as u32)
    }

    pub fn elem_i64(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    /// Maps a residue to the symmetric range `(-p/2, p/2]`.
    pub fn centered(&self, a: Fe) -> i64 {
        let v = a.0 as i64;
        if v > (self.p as i64) / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = a.0 as u64 + b.0 as u64;
        Fe(if s >= self.p { s - self.p } else { s } as u32)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if a.0 >= b.0 {
            Fe(a.0 - b.0)
        } else {
            Fe((a.0 as u64 + self.p - b.0 as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            a
        } else {
            Fe((self.p - a.0 as u64) as u32)
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(((a.0 as u64 * b.0 as u64) % self.p) as u32)
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(&self, a: Fe, b: Fe, c: Fe) -> Fe {
        Fe(((a.0 as u64 * b.0 as u64 + c.0 as u64) % self.p) as u32)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.elem_i64(t0))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut ord = self.p - 1;
        for &q in &self.factors {
            while ord % q == 0 && self.pow(a, ord / q) == Fe::ONE {
                ord /= q;
            }
        }
        ord
    }

    pub fn is_primitive(&self, a: Fe) -> bool {
        !a.is_zero()
            && self
                .factors
                .iter()
                .all(|&q| self.pow(a, (self.p - 1) / q) != Fe::ONE)
    }

    /// `[0!, 1!, ..., n!]`.
    pub fn factorials(&self, n: usize) -> Vec<Fe> {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = Fe::ONE;
        out.push(acc);
        for i in 1..=n {
            acc = self.mul(acc, self.elem(i as u64));
            out.push(acc);
        }
        out
    }

    /// `[1/0!, ..., 1/n!]`; requires `n < p`.
    pub fn inv_factorials(&self, n: usize) -> Result<Vec<Fe>> {
        if n as u64 >= self.p {
            return Err(Error::CharacteristicTooSmall { p: self.p, needed: n as u64 });
        }
        let fact = self.factorials(n);
        let mut out = vec![Fe::ZERO; n + 1];
        out[n] = self.inv(fact[n])?;
        for i in (1..=n).rev() {
            out[i - 1] = self.mul(out[i], self.elem(i as u64));
        }
        Ok(out)
    }

    /// Falling factorial `n (n-1) ... (n-k+1)` reduced mod `p`.
    pub fn falling_factorial(&self, n: i64, k: usize) -> Fe {
        let mut acc = Fe::ONE;
        for i in 0..k as i64 {
            acc = self.mul(acc, self.elem_i64(n - i));
        }
        acc
    }

    /// Binomial coefficient `C(n, k)` for `k <= n < p`.
    pub fn binomial(&self, n: u64, k: u64) -> Fe {
        if k > n {
            return Fe::ZERO;
        }
        let k = k.min(n - k);
        let mut num = Fe::ONE;
        let mut den = Fe::ONE;
        for i in 0..k {
            num = self.mul(num, self.elem(n - i));
            den = self.mul(den, self.elem(i + 1));
        }
        self.mul(num, self.inv(den).expect("k < p"))
    }

    /// Inverses of all entries of `values` with a single field inversion.
    pub fn batch_inv(&self, values: &[Fe]) -> Result<Vec<Fe>> {
        let mut prefix = Vec::with_capacity(values.len());
        let mut acc = Fe::ONE;
        for &v in values {
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            prefix.push(acc);
            acc = self.mul(acc, v);
        }
        let mut inv = self.inv(acc)?;
        let mut out = vec![Fe::ZERO; values.len()];
        for i in (0..values.len()).rev() {
            out[i] = self.mul(inv, prefix[i]);
            inv = self.mul(inv, values[i]);
        }
        Ok(out)
    }
}

/// Deterministic primality test by trial division; moduli are below `2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
