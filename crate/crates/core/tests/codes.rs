mod common;

use common::*;
use mercode::algebra::*;
use mercode::codes::{agreement, corrupt, CodeParams};
use mercode::interpolation::{
    build_mult_lattice, interpolate_frs, interpolate_johnson, interpolate_mult, satisfies_constraints, BivariateQ,
};
use mercode::polylattice::{det_degree, shortest_vector};
use mercode::rootfind::{rr_roots, univariate_roots};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> FieldConfig {
    FieldConfig::new(7919).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mult_columns_are_derivatives(seed in any::<u64>(), n in 1usize..12, s in 1usize..6, d in 0usize..40) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = CodeParams::mult(f.clone(), n, s, d).unwrap();
        let g = random_poly(&f, &mut rng, d + 1);
        let word = code.encode(&g).unwrap();
        let derivs = derivative_batch(&f, &g, s);
        for (col, &a) in word.columns().iter().zip(code.alphas()) {
            let want: Vec<Fe> = derivs.iter().map(|h| poly_eval(&f, h, a)).collect();
            prop_assert_eq!(col, &want);
        }
    }

    #[test]
    fn frs_columns_are_folded_evaluations(seed in any::<u64>(), n in 1usize..12, s in 1usize..6) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = n * s - 1;
        let code = CodeParams::frs(f.clone(), n, s, d).unwrap();
        let g = random_poly(&f, &mut rng, d + 1);
        let word = code.encode(&g).unwrap();
        for (col, &a) in word.columns().iter().zip(code.alphas()) {
            let mut x = a;
            for &v in col {
                prop_assert_eq!(v, poly_eval(&f, &g, x));
                x = f.mul(x, code.gamma());
            }
        }
    }

    #[test]
    fn encoding_is_linear(seed in any::<u64>(), frs in any::<bool>()) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = if frs { CodeParams::frs(f.clone(), 8, 3, 20) } else { CodeParams::mult(f.clone(), 8, 3, 20) }.unwrap();
        let (a, b) = (random_poly(&f, &mut rng, 21), random_poly(&f, &mut rng, 21));
        let c = nonzero(&f, &mut rng);
        let lhs = code.encode(&poly_add(&f, &a, &poly_scale(&f, &b, c))).unwrap();
        let (ea, eb) = (code.encode(&a).unwrap(), code.encode(&b).unwrap());
        for ((l, x), y) in lhs.columns().iter().zip(ea.columns()).zip(eb.columns()) {
            let want: Vec<Fe> = x.iter().zip(y).map(|(&u, &v)| f.mul_add(c, v, u)).collect();
            prop_assert_eq!(l, &want);
        }
    }

    #[test]
    fn distinct_messages_agree_on_few_columns(seed in any::<u64>(), frs in any::<bool>()) {
        let f = FieldConfig::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, s, d) = (10, 4, 13);
        let code = if frs { CodeParams::frs(f.clone(), n, s, d) } else { CodeParams::mult(f.clone(), n, s, d) }.unwrap();
        let a = random_poly(&f, &mut rng, d + 1);
        let mut b = random_poly(&f, &mut rng, d + 1);
        if a == b {
            b = poly_add(&f, &b, &Poly::one());
        }
        let agree = agreement(code.encode(&a).unwrap().columns(), code.encode(&b).unwrap().columns()).unwrap();
        prop_assert!(agree <= d / s);
    }

    #[test]
    fn corruption_changes_exactly_the_requested_columns(seed in any::<u64>(), errors in 0usize..=16) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = CodeParams::mult(f.clone(), 16, 2, 10).unwrap();
        let word = code.encode(&random_poly(&f, &mut rng, 11)).unwrap();
        let received = corrupt(&code, &word, errors, &mut rng).unwrap();
        prop_assert_eq!(agreement(word.columns(), received.columns()).unwrap(), 16 - errors);
    }

    #[test]
    fn planted_roots_are_found(seed in any::<u64>(), roots in 1usize..4, d in 0usize..8) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let planted: Vec<Poly> = (0..roots).map(|_| random_poly(&f, &mut rng, d + 1)).collect();
        let mut rows = vec![random_poly(&f, &mut rng, 3)];
        if rows[0].is_zero() {
            rows[0] = Poly::one();
        }
        for r in &planted {
            rows = times_y_minus(&f, &rows, r);
        }
        let q = BivariateQ::new(rows);
        let found = rr_roots(&f, &q, d).unwrap();
        for r in &planted {
            prop_assert!(found.contains(r));
        }
        for g in &found {
            prop_assert!(q.substitute(&f, g).is_zero());
            prop_assert!(g.degree().unwrap_or(0) <= d);
        }
    }

    #[test]
    fn univariate_roots_split_products(seed in any::<u64>(), k in 1usize..8) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut roots: Vec<Fe> = (0..k).map(|_| f.elem(rand::Rng::gen_range(&mut rng, 0..f.p()))).collect();
        let q = poly_product(&f, &roots.iter().map(|&r| Poly::linear(&f, r)).collect::<Vec<_>>());
        roots.sort_unstable_by_key(|r| r.value());
        roots.dedup();
        prop_assert_eq!(univariate_roots(&f, &q).unwrap(), roots);
    }

    #[test]
    fn interpolants_meet_constraints(seed in any::<u64>(), n in 1usize..20, s in 2usize..8, frs in any::<bool>()) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 1 + (seed as usize) % (s - 1).min(3);
        let columns: Vec<Vec<Fe>> = (0..n).map(|_| random_poly(&f, &mut rng, s).coeffs().iter().copied().chain(std::iter::repeat(Fe::ZERO)).take(s).collect()).collect();
        let code = if frs { CodeParams::frs(f.clone(), n, s, 1) } else { CodeParams::mult(f.clone(), n, s, 1) }.unwrap();
        let word = code.received(columns).unwrap();
        let q = if frs { interpolate_frs(&f, &word, m) } else { interpolate_mult(&f, &word, m) }.unwrap();
        prop_assert!(satisfies_constraints(&f, &word, &q));
        prop_assert!(q.x_degree().unwrap() <= (n * (s - m)) / (m + 1));
    }
}

#[test]
fn fast_interpolation_matches_explicit_lattice() {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for trial in 0..10 {
        let (n, s, m) = (3 + trial, 4 + trial % 3, 1 + trial % 3);
        let code = CodeParams::mult(f.clone(), n, s, 1).unwrap();
        let columns: Vec<Vec<Fe>> = (0..n).map(|_| (0..s).map(|_| nonzero(&f, &mut rng)).collect()).collect();
        let word = code.received(columns).unwrap();
        let lattice = build_mult_lattice(&f, &word, m).unwrap();
        assert_eq!(det_degree(&f, &lattice).unwrap(), n * (s - m));
        let q = interpolate_mult(&f, &word, m).unwrap();
        assert_eq!(q.to_vector().degree(), shortest_vector(&f, &lattice).unwrap().degree());
    }
}

#[test]
fn johnson_interpolant_vanishes_on_the_codeword() {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let code = CodeParams::mult(f.clone(), 24, 2, 12).unwrap();
    let msg = random_poly(&f, &mut rng, 13);
    let word = corrupt(&code, &code.encode(&msg).unwrap(), 6, &mut rng).unwrap();
    let (r, u) = (2, 5);
    let q = interpolate_johnson(&f, &word, r, u, code.d()).unwrap();
    let bound = (24 * 2 * r * (r + 1) + 12 * u * (u + 1)) / (2 * (u + 1));
    let degree = q.weighted_degree(code.d()).unwrap();
    assert!(degree <= bound);
    // 18 agreeing columns, each a zero of order s r = 4, outweigh the degree.
    assert!(18 * 4 > degree);
    assert!(q.substitute(&f, &msg).is_zero());
    assert!(rr_roots(&f, &q, code.d()).unwrap().contains(&msg));
}
