//! Number-theoretic transforms over word-sized primes.
//!
//! A field whose multiplicative group has enough 2-power torsion is
//! transformed directly. Any other field goes through two or three fixed NTT
//! primes and Garner reconstruction, enough that their product exceeds every
//! exact coefficient of the result.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::field::{Fe, FieldConfig};

/// `(prime, generator of the multiplicative group)`
const CRT_PRIMES: [(u32, u32); 3] = [(2013265921, 31), (1811939329, 13), (469762049, 3)];

/// Longest transform the three-prime path supports (2-adicity of 469762049).
const CRT_MAX_LOG: u32 = 26;

/// Transform chunk, in words, that stays resident in a typical L1/L2 cache.
const CACHE_BLOCK: usize = 1 << 12;

struct PrimeTables {
    p: u32,
    /// `-p^{-1} mod 2^32`
    neg_inv: u32,
    /// `tw[h + j] = w_{2h}^j * 2^32 mod p` for each power of two `h < size`.
    tw: Vec<u32>,
    itw: Vec<u32>,
    /// `size^{-1} * 2^64 mod p`, undoes both the transform scale and one
    /// Montgomery factor from the pointwise product.
    scale: u32,
}

impl PrimeTables {
    fn new(p: u32, root: u64, root_log: u32, log_size: u32) -> Self {
        let pm = p as u64;
        let mut neg_inv: u32 = 1;
        for _ in 0..5 {
            neg_inv = neg_inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(neg_inv)));
        }
        neg_inv = neg_inv.wrapping_neg();
        let size = 1usize << log_size;
        let r = (1u64 << 32) % pm;
        let mut tw = vec![0u32; size.max(2)];
        let mut itw = vec![0u32; size.max(2)];
        let mut h = 1usize;
        while h < size {
            // primitive (2h)-th root of unity
            let w = pow_mod(root, 1u64 << (root_log - (h.trailing_zeros() + 1)), pm);
            let wi = pow_mod(w, pm - 2, pm);
            let (mut a, mut b) = (r, r);
            for j in 0..h {
                tw[h + j] = a as u32;
                itw[h + j] = b as u32;
                a = a * w % pm;
                b = b * wi % pm;
            }
            h <<= 1;
        }
        let r2 = r * r % pm;
        let size_inv = pow_mod(size as u64 % pm, pm - 2, pm);
        let scale = (size_inv * r2 % pm) as u32;
        PrimeTables { p, neg_inv, tw, itw, scale }
    }

    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        mont_mul(a, b, self.p, self.neg_inv)
    }

    /// Decimation in frequency, natural order in, bit-reversed order out.
    fn forward(&self, a: &mut [u32]) {
        let mut half = a.len() / 2;
        // Large stages sweep the whole array; once chunks fit in cache each
        // one is finished before moving on.
        while half >= 1 && 2 * half > CACHE_BLOCK {
            self.forward_stage(a, half);
            half >>= 1;
        }
        if half >= 1 {
            for block in a.chunks_exact_mut(2 * half) {
                let mut h = half;
                while h >= 1 {
                    self.forward_stage(block, h);
                    h >>= 1;
                }
            }
        }
    }

    #[inline(always)]
    fn forward_stage(&self, a: &mut [u32], half: usize) {
        let p = self.p;
        let tw = &self.tw[half..2 * half];
        for chunk in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let (u, v) = (*x, *y);
                let s = u.wrapping_add(v);
                *x = if s >= p { s.wrapping_sub(p) } else { s };
                let d = if u >= v { u.wrapping_sub(v) } else { u.wrapping_add(p).wrapping_sub(v) };
                *y = self.mul(d, w);
            }
        }
    }

    /// Decimation in time, bit-reversed order in, natural order out, scaled.
    fn inverse(&self, a: &mut [u32]) {
        let n = a.len();
        let block = n.min(CACHE_BLOCK);
        for chunk in a.chunks_exact_mut(block) {
            let mut half = 1;
            while half < block {
                self.inverse_stage(chunk, half);
                half <<= 1;
            }
        }
        let mut half = block;
        while half < n {
            self.inverse_stage(a, half);
            half <<= 1;
        }
        for x in a.iter_mut() {
            *x = self.mul(*x, self.scale);
        }
    }

    #[inline(always)]
    fn inverse_stage(&self, a: &mut [u32], half: usize) {
        let p = self.p;
        let tw = &self.itw[half..2 * half];
        for chunk in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let u = *x;
                let v = self.mul(*y, w);
                let s = u.wrapping_add(v);
                *x = if s >= p { s.wrapping_sub(p) } else { s };
                *y = if u >= v { u.wrapping_sub(v) } else { u.wrapping_add(p).wrapping_sub(v) };
            }
        }
    }
}

#[inline(always)]
fn mont_mul(a: u32, b: u32, p: u32, neg_inv: u32) -> u32 {
    // Inputs below p < 2^31 keep every step in range; wrapping ops only
    // spare the overflow checks.
    let t = (a as u64).wrapping_mul(b as u64);
    let m = (t as u32).wrapping_mul(neg_inv);
    let u = (t.wrapping_add((m as u64).wrapping_mul(p as u64)) >> 32) as u32;
    if u >= p {
        u.wrapping_sub(p)
    } else {
        u
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

thread_local! {
    static TABLES: RefCell<HashMap<(u32, u32), Rc<PrimeTables>>> = RefCell::new(HashMap::new());
}

fn tables(p: u32, root: u64, root_log: u32, log_size: u32) -> Rc<PrimeTables> {
    TABLES.with(|cache| {
        cache
            .borrow_mut()
            .entry((p, log_size))
            .or_insert_with(|| Rc::new(PrimeTables::new(p, root, root_log, log_size)))
            .clone()
    })
}

/// Transformed operand: one residue vector per working prime.
#[derive(Clone)]
pub(crate) struct Spectrum(Vec<Vec<u32>>);

/// Fixed-size transform plan for one field.
pub(crate) struct NttPlan {
    size: usize,
    primes: Vec<Rc<PrimeTables>>,
    target: u64,
    direct: bool,
}

impl NttPlan {
    /// Plan for products whose result has fewer than `len` coefficients.
    pub fn for_len(field: &FieldConfig, len: usize) -> NttPlan {
        Self::for_sum(field, len, 1)
    }

    /// Plan for sums of up to `terms` such products.
    pub fn for_sum(field: &FieldConfig, len: usize, terms: usize) -> NttPlan {
        let size = len.max(2).next_power_of_two();
        let log = size.trailing_zeros();
        let p = field.p();
        if log <= field.two_adicity() {
            let t = tables(p as u32, field.root_of_unity().value(), field.two_adicity(), log);
            return NttPlan { size, primes: vec![t], target: p, direct: true };
        }
        assert!(log <= CRT_MAX_LOG, "transform length 2^{log} unsupported");
        // Two primes suffice when every exact coefficient stays below their
        // product, which covers small fields.
        let bound = (terms as u128) * (size as u128) * ((p - 1) as u128).pow(2);
        let two = CRT_PRIMES[0].0 as u128 * CRT_PRIMES[1].0 as u128;
        let count = if bound < two { 2 } else { 3 };
        debug_assert!(bound < two * CRT_PRIMES[2].0 as u128, "coefficients overflow the CRT primes");
        let primes = CRT_PRIMES[..count]
            .iter()
            .map(|&(q, g)| {
                let adic = (q - 1).trailing_zeros();
                let root = pow_mod(g as u64, ((q - 1) >> adic) as u64, q as u64);
                tables(q, root, adic, log)
            })
            .collect();
        NttPlan { size, primes, target: p, direct: false }
    }

    pub fn forward(&self, coeffs: &[Fe]) -> Spectrum {
        assert!(coeffs.len() <= self.size);
        Spectrum(
            self.primes
                .iter()
                .map(|t| {
                    let mut v = vec![0u32; self.size];
                    for (dst, c) in v.iter_mut().zip(coeffs) {
                        *dst = if self.direct { c.0 } else { c.0 % t.p };
                    }
                    t.forward(&mut v);
                    v
                })
                .collect(),
        )
    }

    pub fn zero(&self) -> Spectrum {
        Spectrum(vec![vec![0u32; self.size]; self.primes.len()])
    }

    /// `acc += a * b` pointwise.
    pub fn mul_acc(&self, acc: &mut Spectrum, a: &Spectrum, b: &Spectrum) {
        for (k, t) in self.primes.iter().enumerate() {
            let p = t.p;
            for ((x, &u), &v) in acc.0[k].iter_mut().zip(&a.0[k]).zip(&b.0[k]) {
                let s = x.wrapping_add(t.mul(u, v));
                *x = if s >= p { s.wrapping_sub(p) } else { s };
            }
        }
    }

    pub fn mul(&self, a: &Spectrum, b: &Spectrum) -> Spectrum {
        let mut out = self.zero();
        self.mul_acc(&mut out, a, b);
        out
    }

    /// Inverse transform of a sum of pointwise products, truncated to `len`.
    pub fn inverse(&self, mut s: Spectrum, len: usize) -> Vec<Fe> {
        for (k, t) in self.primes.iter().enumerate() {
            t.inverse(&mut s.0[k]);
        }
        let len = len.min(self.size);
        if self.direct {
            return s.0[0][..len].iter().map(|&v| Fe(v)).collect();
        }
        let [(q1, _), (q2, _), (q3, _)] = CRT_PRIMES;
        let (q1, q2, q3) = (q1 as u64, q2 as u64, q3 as u64);
        let inv_q1_mod_q2 = pow_mod(q1, q2 - 2, q2);
        let p = self.target;
        if self.primes.len() == 2 {
            let q1_mod_p = q1 % p;
            return (0..len)
                .map(|i| {
                    let r1 = s.0[0][i] as u64;
                    let r2 = s.0[1][i] as u64;
                    let x2 = (r2 + q2 - r1 % q2) % q2 * inv_q1_mod_q2 % q2;
                    Fe(((r1 % p + x2 % p * q1_mod_p) % p) as u32)
                })
                .collect();
        }
        let inv_q1q2_mod_q3 = pow_mod(q1 * q2 % q3, q3 - 2, q3);
        let q1_mod_p = q1 % p;
        let q1q2_mod_p = (q1 % p) * (q2 % p) % p;
        (0..len)
            .map(|i| {
                let r1 = s.0[0][i] as u64;
                let r2 = s.0[1][i] as u64;
                let r3 = s.0[2][i] as u64;
                let x2 = (r2 + q2 - r1 % q2) % q2 * inv_q1_mod_q2 % q2;
                let t = (r1 + x2 * (q1 % q3)) % q3;
                let x3 = (r3 + q3 - t) % q3 * inv_q1q2_mod_q3 % q3;
                let v = (r1 % p + x2 % p * q1_mod_p + x3 % p * q1q2_mod_p) % p;
                Fe(v as u32)
            })
            .collect()
    }
}

/// Full product of two coefficient vectors by transform.
pub(crate) fn convolve(field: &FieldConfig, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let len = a.len() + b.len() - 1;
    let plan = NttPlan::for_len(field, len);
    let fa = plan.forward(a);
    let fb = plan.forward(b);
    plan.inverse(plan.mul(&fa, &fb), len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schoolbook(f: &FieldConfig, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.mul_add(x, y, out[i + j]);
            }
        }
        out
    }

    #[test]
    fn crt_primes_have_stated_generators() {
        for &(q, g) in &CRT_PRIMES {
            let f = FieldConfig::new(q as u64).unwrap();
            assert!(f.is_primitive(f.elem(g as u64)));
            assert!((q - 1).trailing_zeros() >= CRT_MAX_LOG);
        }
    }

    #[test]
    fn direct_and_crt_paths_match_schoolbook() {
        for &p in &[2013265921u64, 7919, 101, 3, 2147483647] {
            let f = FieldConfig::new(p).unwrap();
            let a: Vec<Fe> = (0..300u64).map(|i| f.elem(i * i * 7919 + 3 * i + p - 1)).collect();
            let b: Vec<Fe> = (0..177i64).map(|i| f.elem_i64(-1 - 13 * i)).collect();
            assert_eq!(convolve(&f, &a, &b), schoolbook(&f, &a, &b), "p = {p}");
        }
    }

    #[test]
    fn long_transforms_match_schoolbook() {
        // Lengths past the cache block exercise the fused and blocked stages.
        for &p in &[2013265921u64, 7919] {
            let f = FieldConfig::new(p).unwrap();
            for &(la, lb) in &[(5000usize, 3000usize), (9000, 7500), (30000, 20)] {
                let a: Vec<Fe> = (0..la as u64).map(|i| f.elem(i.wrapping_mul(2654435761) % p)).collect();
                let b: Vec<Fe> = (0..lb as u64).map(|i| f.elem((i * i + 17) % p)).collect();
                assert_eq!(convolve(&f, &a, &b), schoolbook(&f, &a, &b), "p = {p}, {la} x {lb}");
            }
        }
    }

    #[test]
    fn accumulated_products() {
        let f = FieldConfig::new(7919).unwrap();
        let a: Vec<Fe> = (0..40u64).map(|i| f.elem(i + 1)).collect();
        let b: Vec<Fe> = (0..40u64).map(|i| f.elem(3 * i + 2)).collect();
        let plan = NttPlan::for_len(&f, 79);
        let (fa, fb) = (plan.forward(&a), plan.forward(&b));
        let mut acc = plan.zero();
        plan.mul_acc(&mut acc, &fa, &fb);
        plan.mul_acc(&mut acc, &fb, &fa);
        let twice: Vec<Fe> = schoolbook(&f, &a, &b).iter().map(|&v| f.add(v, v)).collect();
        assert_eq!(plan.inverse(acc, 79), twice);
    }
}
