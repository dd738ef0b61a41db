//! Subproduct trees: multipoint evaluation, interpolation and Chinese
//! remaindering against products of prime powers `(x - a)^e`.

use std::collections::HashSet;

use super::field::{Fe, FieldConfig};
use super::poly::*;
use crate::error::{Error, Result};

/// Balanced product tree over a list of leaf moduli.
///
/// `levels[0]` holds the leaves and the last level holds the single root. A
/// level of odd length carries its last node up unchanged, so node `j` of
/// level `l` always has parent `j / 2`.
#[derive(Clone, Debug)]
pub struct SubproductTree {
    levels: Vec<Vec<Poly>>,
}

impl SubproductTree {
    pub fn new(f: &FieldConfig, leaves: Vec<Poly>) -> Self {
        assert!(!leaves.is_empty(), "tree needs at least one leaf");
        let mut levels = vec![leaves];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next = prev
                .chunks(2)
                .map(|pair| match pair {
                    [a, b] => poly_mul(f, a, b),
                    [a] => a.clone(),
                    _ => unreachable!(),
                })
                .collect();
            levels.push(next);
        }
        SubproductTree { levels }
    }

    /// Tree whose leaves are `(x - a)^e` for each point.
    pub fn over_points(f: &FieldConfig, points: &[Fe], e: usize) -> Self {
        let leaves = points.iter().map(|&a| poly_pow(f, &Poly::linear(f, a), e as u64)).collect();
        Self::new(f, leaves)
    }

    pub fn root(&self) -> &Poly {
        &self.levels.last().unwrap()[0]
    }

    pub fn leaves(&self) -> &[Poly] {
        &self.levels[0]
    }

    /// `a mod leaf_j` for every leaf.
    pub fn remainders(&self, f: &FieldConfig, a: &Poly) -> Vec<Poly> {
        self.remainders_many(f, std::slice::from_ref(a)).pop().expect("one input")
    }

    /// [`Self::remainders`] for several polynomials, preparing each node's
    /// division once.
    pub fn remainders_many(&self, f: &FieldConfig, polys: &[Poly]) -> Vec<Vec<Poly>> {
        let top = self.levels.len() - 1;
        let mut cur: Vec<Vec<Poly>> = polys
            .iter()
            .map(|a| vec![poly_rem(f, a, self.root()).expect("nonzero modulus")])
            .collect();
        for l in (0..top).rev() {
            let parents = &self.levels[l + 1];
            let mut next: Vec<Vec<Poly>> = vec![Vec::with_capacity(self.levels[l].len()); polys.len()];
            for (j, m) in self.levels[l].iter().enumerate() {
                let div = PolyDivisor::new(f, m.clone(), parents[j / 2].len()).expect("nonzero modulus");
                for (out, rems) in next.iter_mut().zip(&cur) {
                    out.push(div.rem(f, &rems[j / 2]));
                }
            }
            cur = next;
        }
        cur
    }

    /// `sum_j values[j] * root / leaf_j`.
    pub fn linear_combination(&self, f: &FieldConfig, values: Vec<Poly>) -> Poly {
        self.linear_combinations(f, vec![values]).pop().expect("one input")
    }

    /// [`Self::linear_combination`] for several value lists, transforming
    /// each node once.
    pub fn linear_combinations(&self, f: &FieldConfig, lists: Vec<Vec<Poly>>) -> Vec<Poly> {
        assert!(lists.iter().all(|v| v.len() == self.levels[0].len()));
        let mut cur = lists;
        for l in 0..self.levels.len() - 1 {
            let nodes = &self.levels[l];
            let mut next: Vec<Vec<Poly>> = vec![Vec::with_capacity(nodes.len().div_ceil(2)); cur.len()];
            for k in 0..nodes.len().div_ceil(2) {
                if 2 * k + 1 == nodes.len() {
                    for (out, vals) in next.iter_mut().zip(&mut cur) {
                        out.push(std::mem::take(&mut vals[2 * k]));
                    }
                    continue;
                }
                let (left, right) = (&nodes[2 * k], &nodes[2 * k + 1]);
                // Values at a node are shorter than the node itself.
                let out_len = left.len() + right.len() - 1;
                let by_right = FixedMultiplier::new(f, right.clone(), left.len(), out_len);
                let by_left = FixedMultiplier::new(f, left.clone(), right.len(), out_len);
                for (out, vals) in next.iter_mut().zip(&cur) {
                    out.push(poly_add(f, &by_right.mul(f, &vals[2 * k]), &by_left.mul(f, &vals[2 * k + 1])));
                }
            }
            cur = next;
        }
        cur.into_iter().map(|mut v| v.pop().unwrap()).collect()
    }
}

fn check_distinct(points: &[Fe]) -> Result<()> {
    let mut seen = HashSet::with_capacity(points.len());
    if points.iter().all(|p| seen.insert(*p)) {
        Ok(())
    } else {
        Err(Error::DuplicatePoint)
    }
}

/// Values of `a` at every point.
pub fn multipoint_eval(f: &FieldConfig, a: &Poly, points: &[Fe]) -> Vec<Fe> {
    if points.len() <= 8 || a.len() <= 8 {
        return points.iter().map(|&x| poly_eval(f, a, x)).collect();
    }
    let tree = SubproductTree::over_points(f, points, 1);
    tree.remainders(f, a).iter().map(Poly::constant_term).collect()
}

/// The unique polynomial of degree `< n` through `n` distinct points.
pub fn interpolate(f: &FieldConfig, points: &[Fe], values: &[Fe]) -> Result<Poly> {
    if points.len() != values.len() {
        return Err(Error::ShapeMismatch);
    }
    if points.is_empty() {
        return Ok(Poly::zero());
    }
    check_distinct(points)?;
    let tree = SubproductTree::over_points(f, points, 1);
    let weights = multipoint_eval(f, &poly_derivative(f, tree.root()), points);
    let inv = f.batch_inv(&weights)?;
    let scaled = values.iter().zip(&inv).map(|(&v, &w)| Poly::constant(f.mul(v, w))).collect();
    Ok(tree.linear_combination(f, scaled))
}

/// `prod_j (x - points[j])^e`
pub fn vanishing_poly(f: &FieldConfig, points: &[Fe], e: usize) -> Poly {
    let linear: Vec<Poly> = points.iter().map(|&a| Poly::linear(f, a)).collect();
    poly_pow(f, &poly_product(f, &linear), e as u64)
}

/// Reusable Hermite interpolation against a fixed point set and multiplicity.
///
/// For each point `a_j` the data is the jet `(A(a_j), A'(a_j), ...,
/// A^(e-1)(a_j))`; the result is the unique `A` of degree `< n e` with that
/// jet everywhere. Local work happens in Taylor coordinates around `a_j`.
#[derive(Clone, Debug)]
pub struct HermiteInterpolator {
    points: Vec<Fe>,
    mult: usize,
    tree: SubproductTree,
    /// Inverse of `(M / (x - a_j)^e)(a_j + z)` modulo `z^e`.
    local_inverses: Vec<Poly>,
    inv_fact: Vec<Fe>,
}

impl HermiteInterpolator {
    pub fn new(f: &FieldConfig, points: &[Fe], mult: usize) -> Result<Self> {
        if mult == 0 || points.is_empty() {
            return Err(Error::InvalidParameter("empty interpolation problem".into()));
        }
        check_distinct(points)?;
        let inv_fact = f.inv_factorials(mult - 1)?;
        let tree = SubproductTree::over_points(f, points, mult);
        let squared = SubproductTree::over_points(f, points, 2 * mult);
        let rems = squared.remainders(f, tree.root());
        let local_inverses = rems
            .iter()
            .zip(points)
            .map(|(r, &a)| {
                let around = taylor_shift(f, r, a).shifted_down(mult);
                inv_mod_xk(f, &around, mult)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HermiteInterpolator { points: points.to_vec(), mult, tree, local_inverses, inv_fact })
    }

    pub fn modulus(&self) -> &Poly {
        self.tree.root()
    }

    /// `jets[j][k]` is the `k`-th derivative at point `j`.
    pub fn interpolate(&self, f: &FieldConfig, jets: &[Vec<Fe>]) -> Result<Poly> {
        Ok(self.interpolate_many(f, std::slice::from_ref(&jets.to_vec()))?.pop().expect("one input"))
    }

    /// [`Self::interpolate`] for several jet lists sharing the points.
    pub fn interpolate_many(&self, f: &FieldConfig, jet_lists: &[Vec<Vec<Fe>>]) -> Result<Vec<Poly>> {
        let e = self.mult;
        if jet_lists.iter().any(|jets| jets.len() != self.points.len() || jets.iter().any(|j| j.len() != e)) {
            return Err(Error::ShapeMismatch);
        }
        let lists = jet_lists
            .iter()
            .map(|jets| {
                jets.iter()
                    .zip(&self.points)
                    .zip(&self.local_inverses)
                    .map(|((jet, &a), inv)| {
                        let taylor =
                            Poly::from_coeffs(jet.iter().zip(&self.inv_fact).map(|(&v, &c)| f.mul(v, c)).collect());
                        let local = poly_mul_trunc(f, &taylor, inv, e);
                        taylor_shift(f, &local, f.neg(a))
                    })
                    .collect()
            })
            .collect();
        Ok(self.tree.linear_combinations(f, lists))
    }
}

/// Hermite interpolation from standard derivatives: `values[j][k]` is
/// `A^(k)(points[j])` for `k < s`.
pub fn hermite_interpolate(f: &FieldConfig, points: &[Fe], values: &[Vec<Fe>]) -> Result<Poly> {
    let s = values.first().map_or(0, Vec::len);
    let needed = (points.len() * s) as u64;
    if f.p() <= needed {
        return Err(Error::CharacteristicTooSmall { p: f.p(), needed });
    }
    if points.len() != values.len() {
        return Err(Error::ShapeMismatch);
    }
    if points.is_empty() || s == 0 {
        return Ok(Poly::zero());
    }
    HermiteInterpolator::new(f, points, s)?.interpolate(f, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_hermite_example() {
        let f = FieldConfig::new(101).unwrap();
        let pts = [f.elem(0), f.elem(1)];
        let vals = vec![vec![f.elem(1), f.elem(0)], vec![f.elem(0), f.elem(0)]];
        let a = hermite_interpolate(&f, &pts, &vals).unwrap();
        assert_eq!(a, Poly::from_i64s(&f, &[1, 0, -3, 2]));
    }

    #[test]
    fn duplicate_points_rejected() {
        let f = FieldConfig::new(101).unwrap();
        let pts = [f.elem(3), f.elem(3)];
        assert_eq!(interpolate(&f, &pts, &[Fe::ONE, Fe::ONE]), Err(Error::DuplicatePoint));
    }

    #[test]
    fn hermite_needs_large_characteristic() {
        let f = FieldConfig::new(7).unwrap();
        let pts = [f.elem(1), f.elem(2), f.elem(3), f.elem(4)];
        let vals = vec![vec![Fe::ONE, Fe::ONE]; 4];
        assert!(matches!(
            hermite_interpolate(&f, &pts, &vals),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn vanishing_poly_roots() {
        let f = FieldConfig::new(7919).unwrap();
        let pts: Vec<Fe> = (1..20u64).map(|i| f.elem(i * i)).collect();
        let v = vanishing_poly(&f, &pts, 3);
        assert_eq!(v.degree(), Some(57));
        let d = derivative_batch(&f, &v, 4);
        for &a in &pts {
            for k in 0..3 {
                assert!(poly_eval(&f, &d[k], a).is_zero());
            }
            assert!(!poly_eval(&f, &d[3], a).is_zero());
        }
    }

    #[test]
    fn odd_sized_tree_round_trip() {
        let f = FieldConfig::new(7919).unwrap();
        let pts: Vec<Fe> = (0..77u64).map(|i| f.elem(5 * i + 2)).collect();
        let vals: Vec<Fe> = (0..77u64).map(|i| f.elem(i * i * i + 1)).collect();
        let a = interpolate(&f, &pts, &vals).unwrap();
        assert!(a.degree().unwrap() < 77);
        assert_eq!(multipoint_eval(&f, &a, &pts), vals);
    }
}
