//! Dense linear systems over `F_p`.

use super::field::{Fe, FieldConfig};

/// Solution set of `A v = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Fe>,
    pub kernel: Vec<Vec<Fe>>,
}

/// Gauss-Jordan elimination; `None` when the system is inconsistent.
pub fn solve_linear(f: &FieldConfig, mut a: Vec<Vec<Fe>>, mut b: Vec<Fe>, unknowns: usize) -> Option<LinearSolution> {
    assert_eq!(a.len(), b.len());
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, piv);
        b.swap(r, piv);
        let inv = f.inv(a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        b[r] = f.mul(b[r], inv);
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let l = a[i][c];
            let (top, rest) = if i < r { let (x, y) = a.split_at_mut(r); (&y[0], &mut x[i]) } else { let (x, y) = a.split_at_mut(i); (&x[r], &mut y[0]) };
            for (dst, &src) in rest.iter_mut().zip(top.iter()) {
                *dst = f.sub(*dst, f.mul(l, src));
            }
            b[i] = f.sub(b[i], f.mul(l, b[r]));
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut particular = vec![Fe::ZERO; unknowns];
    for (row, &c) in pivots.iter().enumerate() {
        particular[c] = b[row];
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Fe::ZERO; unknowns];
            v[fc] = Fe::ONE;
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(a[row][fc]);
            }
            v
        })
        .collect();
    Some(LinearSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_deficient_and_inconsistent() {
        let f = FieldConfig::new(7).unwrap();
        let e = |v: u64| f.elem(v);
        let a = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(6)]];
        let sol = solve_linear(&f, a.clone(), vec![e(1), e(2)], 3).unwrap();
        assert_eq!(sol.kernel.len(), 2);
        for k in &sol.kernel {
            assert!(f.add(f.add(k[0], f.mul(e(2), k[1])), f.mul(e(3), k[2])).is_zero());
        }
        assert!(solve_linear(&f, a, vec![e(1), e(3)], 3).is_none());
    }
}
