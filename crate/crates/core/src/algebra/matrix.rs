//! Products of small matrices with polynomial entries.

use super::field::FieldConfig;
use super::ntt::NttPlan;
use super::poly::{poly_add, poly_mul, Poly};

/// Row-major matrix of polynomials.
pub type PolyMatrix = Vec<Vec<Poly>>;

fn max_len(m: &[Vec<Poly>]) -> usize {
    m.iter().flatten().map(Poly::len).max().unwrap_or(0)
}

/// `a * b`, transforming each entry once.
pub fn matrix_mul(f: &FieldConfig, a: &[Vec<Poly>], b: &[Vec<Poly>]) -> PolyMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == inner), "dimension mismatch");
    let (la, lb) = (max_len(a), max_len(b));
    if la == 0 || lb == 0 {
        return vec![vec![Poly::zero(); cols]; a.len()];
    }
    if la.min(lb) <= 32 {
        return a
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        row.iter()
                            .zip(b)
                            .fold(Poly::zero(), |acc, (x, brow)| poly_add(f, &acc, &poly_mul(f, x, &brow[j])))
                    })
                    .collect()
            })
            .collect();
    }
    let out_len = la + lb - 1;
    let plan = NttPlan::for_sum(f, out_len, inner);
    let fb: Vec<Vec<_>> =
        b.iter().map(|row| row.iter().map(|e| (!e.is_zero()).then(|| plan.forward(e.coeffs()))).collect()).collect();
    a.iter()
        .map(|row| {
            let fa: Vec<_> = row.iter().map(|e| (!e.is_zero()).then(|| plan.forward(e.coeffs()))).collect();
            (0..cols)
                .map(|j| {
                    let mut acc = plan.zero();
                    let mut any = false;
                    for (x, brow) in fa.iter().zip(&fb) {
                        if let (Some(x), Some(y)) = (x, &brow[j]) {
                            plan.mul_acc(&mut acc, x, y);
                            any = true;
                        }
                    }
                    if any {
                        Poly::from_coeffs(plan.inverse(acc, out_len))
                    } else {
                        Poly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_path_matches_entrywise() {
        let f = FieldConfig::new(7919).unwrap();
        let entry = |s: u64, n: u64| Poly::from_u64s(&f, &(0..n).map(|i| (i * s + 7) % 97).collect::<Vec<_>>());
        let a = vec![vec![entry(1, 60), entry(2, 40)], vec![Poly::zero(), entry(3, 70)]];
        let b = vec![vec![entry(4, 50)], vec![entry(5, 45)]];
        let got = matrix_mul(&f, &a, &b);
        let want0 = poly_add(&f, &poly_mul(&f, &a[0][0], &b[0][0]), &poly_mul(&f, &a[0][1], &b[1][0]));
        assert_eq!(got[0][0], want0);
        assert_eq!(got[1][0], poly_mul(&f, &a[1][1], &b[1][0]));
    }
}
