//! Reduced-size oracle and invariant suites, plus the random instance
//! generators they share with the integration tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::AffineSpace;
use crate::algebra::*;
use crate::codes::{agreement, corrupt, CodeKind, CodeParams};
use crate::decode::{decode_capacity, decode_johnson, CapacityOptions};
use crate::funcsolve::{func_solve, gw_func_triangular_solve};
use crate::interpolation::{interpolate_frs, interpolate_mult, satisfies_constraints, BivariateQ};
use crate::odesolve::{gw_triangular_solve, solve_q};
use crate::operators::{apply_derivative, apply_folded, AffineOperator};
use crate::rootfind::rr_roots;

pub fn random_poly<R: Rng + ?Sized>(f: &FieldConfig, rng: &mut R, len: usize) -> Poly {
    Poly::from_u64s(f, &(0..len).map(|_| rng.gen_range(0..f.p())).collect::<Vec<_>>())
}

/// Random length in `0..=max_len`.
pub fn random_poly_upto<R: Rng + ?Sized>(f: &FieldConfig, rng: &mut R, max_len: usize) -> Poly {
    let len = rng.gen_range(0..=max_len);
    random_poly(f, rng, len)
}

pub fn nonzero<R: Rng + ?Sized>(f: &FieldConfig, rng: &mut R) -> Fe {
    f.elem(rng.gen_range(1..f.p()))
}

/// Replaces the constant term of `c`.
fn with_constant(c: &Poly, v: Fe) -> Poly {
    let mut coeffs = c.coeffs().to_vec();
    if coeffs.is_empty() {
        coeffs.push(Fe::ZERO);
    }
    coeffs[0] = v;
    Poly::from_coeffs(coeffs)
}

/// A derivative operator of order 1..=3 with `Q_m(0) != 0`, coefficient
/// degrees at most 20, and a target degree `m <= d <= 30`. Half of the
/// instances have a planted exact solution.
pub fn ode_instance<R: Rng + ?Sized>(f: &FieldConfig, rng: &mut R) -> (AffineOperator, usize) {
    let m = rng.gen_range(1..=3);
    let d = rng.gen_range(m..=30);
    let mut coeffs: Vec<Poly> = (0..=m).map(|_| random_poly_upto(f, rng, 21)).collect();
    coeffs[m] = with_constant(&coeffs[m], nonzero(f, rng));
    let tilde = if rng.gen_bool(0.5) {
        let planted = random_poly(f, rng, d + 1);
        poly_neg(f, &apply_derivative(f, &AffineOperator::new(Poly::zero(), coeffs.clone()), &planted))
    } else {
        random_poly_upto(f, rng, 21)
    };
    (AffineOperator::new(tilde, coeffs), d)
}

/// A folded operator of order 1..=3 with some `Q_i(0) != 0` and a target
/// degree `d <= 30`. The symbol sometimes gets roots at chosen powers of
/// `gamma`, and half of the instances have a planted exact solution.
pub fn func_instance<R: Rng + ?Sized>(f: &FieldConfig, gamma: Fe, rng: &mut R) -> (AffineOperator, usize) {
    let m = rng.gen_range(1..=3);
    let d = rng.gen_range(0..=30);
    let mut coeffs: Vec<Poly> = (0..=m).map(|_| random_poly_upto(f, rng, 21)).collect();
    let symbol = if rng.gen_bool(0.5) {
        let roots = rng.gen_range(1..=m);
        let factors: Vec<Poly> =
            (0..roots).map(|_| Poly::linear(f, f.pow(gamma, rng.gen_range(0..=d) as u64))).collect();
        poly_scale(f, &poly_product(f, &factors), nonzero(f, rng))
    } else {
        let s = random_poly(f, rng, m + 1);
        if s.is_zero() {
            Poly::one()
        } else {
            s
        }
    };
    for (i, c) in coeffs.iter_mut().enumerate() {
        *c = with_constant(c, symbol.coeff(i));
    }
    let tilde = if rng.gen_bool(0.5) {
        let planted = random_poly(f, rng, d + 1);
        poly_neg(f, &apply_folded(f, &AffineOperator::new(Poly::zero(), coeffs.clone()), &planted, gamma))
    } else {
        random_poly_upto(f, rng, 21)
    };
    (AffineOperator::new(tilde, coeffs), d)
}

/// Row coefficients of `Q(x, y) (y - r(x))`.
pub fn times_y_minus(f: &FieldConfig, rows: &[Poly], r: &Poly) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); rows.len() + 1];
    for (j, c) in rows.iter().enumerate() {
        out[j + 1] = poly_add(f, &out[j + 1], c);
        out[j] = poly_sub(f, &out[j], &poly_mul(f, c, r));
    }
    out
}

/// A bivariate polynomial that usually has planted roots of degree at most
/// `d`, with `y`-degree at most 4.
pub fn bivariate_instance<R: Rng + ?Sized>(f: &FieldConfig, d: usize, rng: &mut R) -> BivariateQ {
    if rng.gen_bool(0.6) {
        let mut rows = vec![Poly::one()];
        for _ in 0..rng.gen_range(1..=3) {
            let r = random_poly_upto(f, rng, d + 1);
            rows = times_y_minus(f, &rows, &r);
        }
        if rng.gen_bool(0.5) {
            rows = times_y_minus(f, &rows, &random_poly(f, rng, 6));
        }
        BivariateQ::new(rows)
    } else {
        let y_deg = rng.gen_range(0..=4);
        let mut rows: Vec<Poly> = (0..=y_deg).map(|_| random_poly_upto(f, rng, 6)).collect();
        if rows.iter().all(Poly::is_zero) {
            rows[0] = Poly::one();
        }
        BivariateQ::new(rows)
    }
}

/// Every polynomial of degree at most `d` over a tiny field, in ascending
/// coefficient order.
pub fn all_polys(f: &FieldConfig, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let p = f.p();
    (0..p.pow(d as u32 + 1)).map(move |mut code| {
        let coeffs: Vec<u64> = (0..=d)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect();
        Poly::from_u64s(f, &coeffs)
    })
}

/// Roots of `q` of degree at most `d` by exhaustive search.
pub fn brute_roots(f: &FieldConfig, q: &BivariateQ, d: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = all_polys(f, d).filter(|g| q.substitute(f, g).is_zero()).collect();
    out.sort_by(|a, b| a.coeffs().iter().map(|c| c.value()).cmp(b.coeffs().iter().map(|c| c.value())));
    out
}

#[derive(Clone, Copy, Debug)]
pub struct SelftestOptions {
    /// Instances per randomized suite.
    pub trials: usize,
    pub seed: u64,
    /// Flips the top coefficient of the first differential-solver output,
    /// which the first suite must catch.
    pub inject_fault: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { trials: 50, seed: 1, inject_fault: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

/// Runs every suite in a fixed order.
pub fn run_selftest(options: &SelftestOptions) -> SelftestReport {
    let suites: [(&'static str, fn(&SelftestOptions, &mut ChaCha8Rng) -> (usize, usize)); 7] = [
        ("differential solver vs oracle", ode_suite),
        ("functional solver vs oracle", func_suite),
        ("solver plug-back", plug_back_suite),
        ("interpolation constraints", interpolation_suite),
        ("root finder vs exhaustive search", rootfind_suite),
        ("code distance and injectivity", codes_suite),
        ("decoder round trips", round_trip_suite),
    ];
    let suites = suites
        .into_iter()
        .enumerate()
        .map(|(i, (name, run))| {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(i as u64));
            let (passed, total) = run(options, &mut rng);
            SuiteResult { name, passed, total }
        })
        .collect();
    SelftestReport { suites }
}

fn small_field(i: usize) -> FieldConfig {
    FieldConfig::new(if i % 2 == 0 { 101 } else { 7919 }).expect("prime")
}

fn ode_suite(options: &SelftestOptions, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let mut passed = 0;
    for i in 0..options.trials {
        let f = small_field(i);
        let (q, d) = ode_instance(&f, rng);
        let m = q.order();
        let (Ok(mut fast), Ok(slow)) = (solve_q(&f, &q, d), gw_triangular_solve(&f, &q, d - m + 1)) else {
            continue;
        };
        if options.inject_fault && i == 0 {
            let mut offset = fast.offset().coeffs().to_vec();
            offset.resize(d + 1, Fe::ZERO);
            offset[d] = f.add(offset[d], Fe::ONE);
            fast = AffineSpace::from_parts(&f, Poly::from_coeffs(offset), fast.directions().to_vec());
        }
        passed += usize::from(fast.same_space(&f, &slow) && fast.dim() == m);
    }
    (passed, options.trials)
}

fn func_suite(options: &SelftestOptions, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let mut passed = 0;
    for i in 0..options.trials {
        let f = small_field(i);
        let gamma = f.gamma();
        let (q, d) = func_instance(&f, gamma, rng);
        let same = match (func_solve(&f, &q, d, gamma), gw_func_triangular_solve(&f, &q, d + 1, gamma)) {
            (Ok(a), Ok(b)) => a.same_space(&f, &b),
            (Err(a), Err(b)) => a == b,
            _ => false,
        };
        passed += usize::from(same);
    }
    (passed, options.trials)
}

fn plug_back_suite(options: &SelftestOptions, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let (mut passed, mut total) = (0, 0);
    for i in 0..options.trials {
        let f = small_field(i);
        let (q, d) = ode_instance(&f, rng);
        let k = d - q.order() + 1;
        if let Ok(space) = solve_q(&f, &q, d) {
            for p in space.points() {
                total += 1;
                passed += usize::from(apply_derivative(&f, &q, p).truncated(k).is_zero());
            }
        }
        let gamma = f.gamma();
        let (q, d) = func_instance(&f, gamma, rng);
        if let Ok(space) = func_solve(&f, &q, d, gamma) {
            for p in space.points() {
                total += 1;
                passed += usize::from(apply_folded(&f, &q, p, gamma).truncated(d + 1).is_zero());
            }
        }
    }
    (passed, total)
}

fn interpolation_suite(options: &SelftestOptions, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let f = FieldConfig::new(7919).expect("prime");
    let mut passed = 0;
    for i in 0..options.trials {
        let n = rng.gen_range(1..=24);
        let s = rng.gen_range(2..=10);
        let m = rng.gen_range(1..=4.min(s - 1));
        let columns: Vec<Vec<Fe>> = (0..n).map(|_| (0..s).map(|_| f.elem(rng.gen_range(0..f.p()))).collect()).collect();
        let kind = if i % 2 == 0 { CodeKind::Mult } else { CodeKind::Frs };
        let code = match kind {
            CodeKind::Mult => CodeParams::mult(f.clone(), n, s, 1),
            CodeKind::Frs => CodeParams::frs(f.clone(), n, s, 1),
        };
        let Ok(word) = code.and_then(|c| c.received(columns)) else { continue };
        let q = match kind {
            CodeKind::Mult => interpolate_mult(&f, &word, m),
            CodeKind::Frs => interpolate_frs(&f, &word, m),
        };
        let bound = (n * (s - m)).div_ceil(m);
        passed += usize::from(q.is_ok_and(|q| {
            q.x_degree().is_some_and(|deg| deg <= bound) && satisfies_constraints(&f, &word, &q)
        }));
    }
    (passed, options.trials)
}

fn rootfind_suite(options: &SelftestOptions, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let primes = [3u64, 5, 7];
    let d = 2;
    let mut passed = 0;
    for i in 0..options.trials {
        let f = FieldConfig::new(primes[i % primes.len()]).expect("prime");
        let q = bivariate_instance(&f, d, rng);
        passed += usize::from(rr_roots(&f, &q, d).is_ok_and(|fast| fast == brute_roots(&f, &q, d)));
    }
    (passed, options.trials)
}

/// Both codes are linear, so the minimum distance is the minimum weight:
/// every nonzero message must agree with the zero word on at most `d / s`
/// columns, and only the zero message may encode to zero.
fn codes_suite(_: &SelftestOptions, _: &mut ChaCha8Rng) -> (usize, usize) {
    let f5 = FieldConfig::new(5).expect("prime");
    let f7 = FieldConfig::new(7).expect("prime");
    let codes = [
        CodeParams::mult(f5.clone(), 3, 2, 3),
        CodeParams::mult(f5, 4, 3, 4),
        CodeParams::frs(f7.clone(), 3, 2, 3),
        CodeParams::frs(f7, 2, 3, 2),
    ];
    let mut passed = 0;
    let total = codes.len();
    for code in codes {
        let Ok(code) = code else { continue };
        let f = code.field().clone();
        let zero = vec![vec![Fe::ZERO; code.s()]; code.n()];
        let ok = all_polys(&f, code.d()).skip(1).all(|g| {
            code.encode(&g)
                .and_then(|c| agreement(c.columns(), &zero))
                .is_ok_and(|a| a <= code.d() / code.s() && a < code.n())
        });
        passed += usize::from(ok);
    }
    (passed, total)
}

fn round_trip_suite(options: &SelftestOptions, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let trials = options.trials.div_ceil(10).max(1);
    let big = FieldConfig::new(2013265921).expect("prime");
    let small = FieldConfig::new(7919).expect("prime");
    let mut passed = 0;
    for _ in 0..trials {
        for (code, errors) in [
            (CodeParams::mult(big.clone(), 16, 25, 100), 3),
            (CodeParams::frs(big.clone(), 16, 25, 100), 3),
        ] {
            let code = code.expect("valid parameters");
            let msg = random_poly(&big, rng, code.d() + 1);
            let found = code
                .encode(&msg)
                .and_then(|c| corrupt(&code, &c, errors, rng))
                .and_then(|w| decode_capacity(&w, &code, &CapacityOptions::new(0.5), rng))
                .is_ok_and(|r| r.messages.contains(&msg));
            passed += usize::from(found);
        }
        let code = CodeParams::mult(small.clone(), 32, 2, 16).expect("valid parameters");
        let msg = random_poly(&small, rng, 17);
        let found = code
            .encode(&msg)
            .and_then(|c| corrupt(&code, &c, 10, rng))
            .and_then(|w| decode_johnson(&w, &code, 0.25))
            .is_ok_and(|out| out.contains(&msg));
        passed += usize::from(found);
    }
    (passed, 3 * trials)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes_and_fault_is_caught() {
        let options = SelftestOptions { trials: 6, seed: 3, inject_fault: false };
        let report = run_selftest(&options);
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.suites.len(), 7);
        let faulty = run_selftest(&SelftestOptions { inject_fault: true, ..options });
        assert!(!faulty.ok());
        assert!(!faulty.suites[0].ok());
    }
}
