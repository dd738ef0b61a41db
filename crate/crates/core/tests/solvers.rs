mod common;

use common::*;
use mercode::algebra::*;
use mercode::Error;
use mercode::funcsolve::{func_rsolve_with, func_solve, gw_func_triangular_solve};
use mercode::odesolve::{gw_triangular_solve, solve_q, solve_q_dagger_with, Split};
use mercode::operators::{apply_derivative, apply_folded, conjugate, folded_spectrum, psi, tau, AffineOperator};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> FieldConfig {
    FieldConfig::new(7919).unwrap()
}

/// Operator of order `m` without a `y`-free part and with `Q_m(0) != 0`.
fn normalized(f: &FieldConfig, rng: &mut ChaCha8Rng, m: usize, len: usize) -> AffineOperator {
    let mut coeffs: Vec<Poly> = (0..=m).map(|_| random_poly(f, rng, len)).collect();
    let mut top = coeffs[m].coeffs().to_vec();
    top.resize(len.max(1), Fe::ZERO);
    top[0] = nonzero(f, rng);
    coeffs[m] = Poly::from_coeffs(top);
    AffineOperator::new(Poly::zero(), coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dagger_splits_agree(seed in any::<u64>(), m in 1usize..4, k in 1usize..80, extra in 0u64..50) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = normalized(&f, &mut rng, m, 12);
        let b = random_poly(&f, &mut rng, k + 3);
        let n = m as u64 + extra;
        let halve = solve_q_dagger_with(&f, &q, &b, n, k, Split::Halve).unwrap();
        let peel = solve_q_dagger_with(&f, &q, &b, n, k, Split::PeelOne).unwrap();
        prop_assert_eq!(&halve, &peel);
        prop_assert!(halve.len() <= k);
        let residual = poly_add(&f, &b, &apply_derivative(&f, &conjugate(&f, &q, n), &halve));
        prop_assert!(residual.truncated(k).is_zero());
    }

    #[test]
    fn conjugate_identity(seed in any::<u64>(), m in 1usize..4, extra in 0u64..20) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = normalized(&f, &mut rng, m, 8);
        let n = m as u64 + extra;
        let g = random_poly(&f, &mut rng, 15);
        let lhs = apply_derivative(&f, &q, &g.shifted_up(n as usize));
        let rhs = apply_derivative(&f, &conjugate(&f, &q, n), &g).shifted_up(n as usize - m);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_differentiates_along_solutions(seed in any::<u64>(), m in 0usize..4) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = AffineOperator::new(random_poly(&f, &mut rng, 10), (0..=m).map(|_| random_poly(&f, &mut rng, 10)).collect());
        let g = random_poly(&f, &mut rng, 20);
        prop_assert_eq!(apply_derivative(&f, &tau(&f, &q), &g), poly_derivative(&f, &apply_derivative(&f, &q, &g)));
    }

    #[test]
    fn psi_dilates_along_solutions(seed in any::<u64>(), m in 0usize..4) {
        let f = field();
        let gamma = f.gamma();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = AffineOperator::new(random_poly(&f, &mut rng, 10), (0..=m).map(|_| random_poly(&f, &mut rng, 10)).collect());
        let g = random_poly(&f, &mut rng, 20);
        prop_assert_eq!(
            apply_folded(&f, &psi(&f, &q, gamma), &g, gamma),
            poly_dilate(&f, &apply_folded(&f, &q, &g, gamma), gamma)
        );
    }

    #[test]
    fn differential_solver_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if seed % 2 == 0 { FieldConfig::new(101).unwrap() } else { field() };
        let (q, d) = ode_instance(&f, &mut rng);
        let m = q.order();
        let fast = solve_q(&f, &q, d).unwrap();
        let slow = gw_triangular_solve(&f, &q, d - m + 1).unwrap();
        prop_assert!(fast.same_space(&f, &slow));
        prop_assert_eq!(fast.dim(), m);
    }

    #[test]
    fn folded_splits_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field();
        let gamma = f.gamma();
        let (q, d) = func_instance(&f, gamma, &mut rng);
        let k = d + 1;
        // Unpinned, and pinned at each folded-spectrum zero.
        let mut pins = vec![-1i64];
        pins.extend(folded_spectrum(&f, &q, gamma, k).zeros.iter().map(|&z| z as i64));
        for t in pins {
            let halve = func_rsolve_with(&f, &q, k, t, gamma, Split::Halve);
            let peel = func_rsolve_with(&f, &q, k, t, gamma, Split::PeelOne);
            prop_assert_eq!(&halve, &peel);
            if let Ok(g) = halve {
                prop_assert!(apply_folded(&f, &q, &g, gamma).truncated(k).is_zero());
            }
        }
    }

    #[test]
    fn functional_solver_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if seed % 2 == 0 { FieldConfig::new(101).unwrap() } else { field() };
        let gamma = f.gamma();
        let (q, d) = func_instance(&f, gamma, &mut rng);
        match (func_solve(&f, &q, d, gamma), gw_func_triangular_solve(&f, &q, d + 1, gamma)) {
            (Ok(a), Ok(b)) => {
                prop_assert!(a.same_space(&f, &b));
                for p in a.points() {
                    prop_assert!(apply_folded(&f, &q, p, gamma).truncated(d + 1).is_zero());
                }
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "solver {:?} vs oracle {:?}", a.map(|s| s.dim()), b.map(|s| s.dim())),
        }
    }
}

#[test]
fn dagger_shift_below_order_is_rejected() {
    let f = field();
    let q = AffineOperator::new(Poly::zero(), vec![Poly::zero(), Poly::zero(), Poly::one()]);
    assert!(matches!(solve_q_dagger_with(&f, &q, &Poly::one(), 1, 4, Split::Halve), Err(Error::InvalidParameter(_))));
    assert!(solve_q_dagger_with(&f, &q, &Poly::one(), 2, 4, Split::Halve).is_ok());
}

#[test]
fn pinned_solutions_differ_only_at_the_pin() {
    let f = FieldConfig::new(7).unwrap();
    let gamma = f.elem(3);
    // -3 y0 + y1: the symbol vanishes at gamma^1, so x is a free direction.
    let q = AffineOperator::new(Poly::zero(), vec![Poly::from_i64s(&f, &[-3]), Poly::one()]);
    assert_eq!(func_rsolve_with(&f, &q, 4, 1, gamma, Split::Halve).unwrap(), Poly::x());
    assert_eq!(func_rsolve_with(&f, &q, 4, -1, gamma, Split::PeelOne).unwrap(), Poly::zero());
}
