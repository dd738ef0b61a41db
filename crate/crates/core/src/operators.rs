//! Affine operators `Q(x, y_0, ..., y_m) = Q~(x) + sum_i Q_i(x) y_i` and the
//! transforms used to state interpolation constraints and to solve for the
//! message.

use crate::algebra::*;
use crate::error::{Error, Result};
use crate::polylattice::PolyVec;

/// Affine polynomial in the formal variables `y_0..y_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineOperator {
    tilde: Poly,
    coeffs: Vec<Poly>,
}

impl AffineOperator {
    /// `coeffs[i]` multiplies `y_i`; at least one coefficient slot is kept.
    pub fn new(tilde: Poly, mut coeffs: Vec<Poly>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Poly::zero());
        }
        AffineOperator { tilde, coeffs }
    }

    /// Reads a lattice vector laid out as `(y_0, ..., y_m, y-free part)`.
    pub fn from_vector(v: &PolyVec) -> Self {
        let mut entries = v.entries().to_vec();
        let tilde = entries.pop().unwrap_or_default();
        Self::new(tilde, entries)
    }

    pub fn to_vector(&self) -> PolyVec {
        let mut entries = self.coeffs.clone();
        entries.push(self.tilde.clone());
        PolyVec::new(entries)
    }

    /// The `y`-free part.
    pub fn tilde(&self) -> &Poly {
        &self.tilde
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `y_i`, zero past the arity.
    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Index of the last `y` slot (`arity - 1`).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest degree among all parts.
    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.iter().chain(std::iter::once(&self.tilde)).filter_map(Poly::degree).max()
    }

    pub fn has_y_support(&self) -> bool {
        self.coeffs.iter().any(|c| !c.is_zero())
    }

    /// Highest `i` with `Q_i != 0`.
    pub fn effective_order(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Evaluates at `x` and a tuple `ys` that covers every slot.
    pub fn eval_at(&self, f: &FieldConfig, x: Fe, ys: &[Fe]) -> Fe {
        assert!(ys.len() >= self.coeffs.len(), "value tuple shorter than arity");
        self.coeffs
            .iter()
            .zip(ys)
            .fold(poly_eval(f, &self.tilde, x), |acc, (c, &y)| f.mul_add(poly_eval(f, c, x), y, acc))
    }

    /// Applies `map` to every part.
    pub fn map_parts(&self, mut map: impl FnMut(&Poly) -> Poly) -> Self {
        AffineOperator { tilde: map(&self.tilde), coeffs: self.coeffs.iter().map(&mut map).collect() }
    }

    /// Keeps the slots `0..=m`.
    pub fn truncate_order(&self, m: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(m + 1);
        Self::new(self.tilde.clone(), coeffs)
    }
}

/// `Q~ + sum_i Q_i g^(i)`
pub fn apply_derivative(f: &FieldConfig, q: &AffineOperator, g: &Poly) -> Poly {
    let derivs = derivative_batch(f, g, q.coeffs.len());
    q.coeffs.iter().zip(&derivs).fold(q.tilde.clone(), |acc, (c, d)| poly_add(f, &acc, &poly_mul(f, c, d)))
}

/// `Q~ + sum_i Q_i g(gamma^i x)`
pub fn apply_folded(f: &FieldConfig, q: &AffineOperator, g: &Poly, gamma: Fe) -> Poly {
    let mut acc = q.tilde.clone();
    let mut gi = Fe::ONE;
    for c in &q.coeffs {
        acc = poly_add(f, &acc, &poly_mul(f, c, &poly_dilate(f, g, gi)));
        gi = f.mul(gi, gamma);
    }
    acc
}

/// Formal derivative along a solution: `Q~' + sum_i (Q_i' y_i + Q_i y_{i+1})`.
pub fn tau(f: &FieldConfig, q: &AffineOperator) -> AffineOperator {
    let m = q.order();
    let coeffs = (0..=m + 1)
        .map(|i| {
            let own = if i <= m { poly_derivative(f, &q.coeffs[i]) } else { Poly::zero() };
            let shifted = if i >= 1 { q.coeffs[i - 1].clone() } else { Poly::zero() };
            poly_add(f, &own, &shifted)
        })
        .collect();
    AffineOperator::new(poly_derivative(f, &q.tilde), coeffs)
}

/// Folding shift: `Q~(gamma x) + sum_i Q_i(gamma x) y_{i+1}`.
pub fn psi(f: &FieldConfig, q: &AffineOperator, gamma: Fe) -> AffineOperator {
    let mut coeffs = vec![Poly::zero()];
    coeffs.extend(q.coeffs.iter().map(|c| poly_dilate(f, c, gamma)));
    AffineOperator::new(poly_dilate(f, &q.tilde, gamma), coeffs)
}

/// Coefficient of `y_i` in the conjugate operator, without the `x^i` factor:
/// `sum_{j >= i} n(n-1)...(n-j+i+1) C(j, i) x^(m-j) Q_j`.
pub(crate) fn conjugate_part(f: &FieldConfig, q: &AffineOperator, n: u64, i: usize) -> Poly {
    let m = q.order();
    (i..=m).fold(Poly::zero(), |acc, j| {
        let c = f.mul(f.falling_factorial(n as i64, j - i), f.binomial(j as u64, i as u64));
        let mut term = poly_scale(f, &q.coeffs[j], c).shifted_up(m - j);
        term = poly_add(f, &acc, &term);
        term
    })
}

/// The conjugate `Q^dagger_n`, which has no `y`-free part and satisfies
/// `Q^dagger_m(x, g, g', ...) = sum_i Q_i (x^m g)^(i)`.
pub fn conjugate(f: &FieldConfig, q: &AffineOperator, n: u64) -> AffineOperator {
    let coeffs = (0..=q.order()).map(|i| conjugate_part(f, q, n, i).shifted_up(i)).collect();
    AffineOperator::new(Poly::zero(), coeffs)
}

/// Zero structure of the constant terms of a folded operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedSpectrum {
    /// Indices `i` with `Q_i(0) != 0`.
    pub support: Vec<usize>,
    /// `sum_{i in support} Q_i(0) z^i`.
    pub symbol: Poly,
    /// `{ i < k : symbol(gamma^i) = 0 }`, ascending.
    pub zeros: Vec<usize>,
}

pub fn folded_spectrum(f: &FieldConfig, q: &AffineOperator, gamma: Fe, k: usize) -> FoldedSpectrum {
    let constants: Vec<Fe> = q.coeffs.iter().map(Poly::constant_term).collect();
    let support = (0..constants.len()).filter(|&i| !constants[i].is_zero()).collect();
    let symbol = Poly::from_coeffs(constants);
    let mut zeros = Vec::new();
    let mut z = Fe::ONE;
    for i in 0..k {
        if poly_eval(f, &symbol, z).is_zero() {
            zeros.push(i);
        }
        z = f.mul(z, gamma);
    }
    FoldedSpectrum { support, symbol, zeros }
}

/// Divides out the largest power of `x` shared by the `Q_i`, leaving some
/// `Q_i(0) != 0`. Fails with [`Error::NoSolution`] when `Q~` is not divisible
/// by that power, since then no polynomial solves the equation.
pub fn normalize_folded(f: &FieldConfig, q: &AffineOperator) -> Result<AffineOperator> {
    let _ = f;
    let v = q.coeffs.iter().filter_map(Poly::valuation).min().ok_or(Error::NoYSupport)?;
    if q.tilde.valuation().is_some_and(|t| t < v) {
        return Err(Error::NoSolution);
    }
    Ok(q.map_parts(|p| p.shifted_down(v)))
}

/// Result of [`normalize_derivative`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedOperator {
    /// `Q(x + shift, y)` truncated to its effective order.
    pub operator: AffineOperator,
    /// Solutions `g` of the shifted equation give `g(x - shift)` for the
    /// original.
    pub shift: Fe,
}

/// Drops vanishing top slots and translates `x` so the top coefficient has a
/// nonzero constant term.
pub fn normalize_derivative(f: &FieldConfig, q: &AffineOperator) -> Result<ShiftedOperator> {
    let m = q.effective_order().ok_or(Error::NoYSupport)?;
    let top = &q.coeffs[m];
    let beta = (0..f.p())
        .map(|b| f.elem(b))
        .find(|&b| !poly_eval(f, top, b).is_zero())
        .ok_or(Error::NotNormalized)?;
    let trimmed = q.truncate_order(m);
    let operator = if beta.is_zero() { trimmed } else { trimmed.map_parts(|p| taylor_shift(f, p, beta)) };
    Ok(ShiftedOperator { operator, shift: beta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(f: &FieldConfig, tilde: &[i64], coeffs: &[&[i64]]) -> AffineOperator {
        AffineOperator::new(Poly::from_i64s(f, tilde), coeffs.iter().map(|c| Poly::from_i64s(f, c)).collect())
    }

    #[test]
    fn conjugate_of_first_order_operator() {
        let f = FieldConfig::new(101).unwrap();
        let q = op(&f, &[], &[&[3, 1, 4], &[1, 5]]);
        let n = 7;
        let c = conjugate(&f, &q, n);
        let y0 = poly_add(&f, &q.coeffs()[0].shifted_up(1), &poly_scale(&f, &q.coeffs()[1], f.elem(n)));
        assert_eq!(c.coeffs(), &[y0, q.coeffs()[1].shifted_up(1)]);
        assert!(c.tilde().is_zero());
    }

    #[test]
    fn spectrum_example() {
        let f = FieldConfig::new(7).unwrap();
        let q = op(&f, &[], &[&[4], &[1]]);
        let s = folded_spectrum(&f, &q, f.elem(3), 6);
        assert_eq!(s.zeros, vec![1]);
        assert_eq!(s.support, vec![0, 1]);
    }

    #[test]
    fn folded_normalization() {
        let f = FieldConfig::new(7).unwrap();
        let q = op(&f, &[0, 0, 1], &[&[0, 1]]);
        assert_eq!(normalize_folded(&f, &q).unwrap(), op(&f, &[0, 1], &[&[1]]));
        let bad = op(&f, &[1], &[&[0, 1]]);
        assert_eq!(normalize_folded(&f, &bad), Err(Error::NoSolution));
        assert_eq!(normalize_folded(&f, &op(&f, &[1], &[&[]])), Err(Error::NoYSupport));
    }

    #[test]
    fn derivative_normalization_shifts_away_root() {
        let f = FieldConfig::new(101).unwrap();
        // Q = -1 + x y_1 + 0 y_2: top slot vanishes, Q_1(0) = 0.
        let q = op(&f, &[-1], &[&[], &[0, 1], &[]]);
        let n = normalize_derivative(&f, &q).unwrap();
        assert_eq!(n.shift, f.elem(1));
        assert_eq!(n.operator, op(&f, &[-1], &[&[], &[1, 1]]));
    }

    #[test]
    fn tau_and_psi_shapes() {
        let f = FieldConfig::new(7).unwrap();
        let q = op(&f, &[1, 1], &[&[0, 2], &[3]]);
        let t = tau(&f, &q);
        assert_eq!(t, op(&f, &[1], &[&[2], &[0, 2], &[3]]));
        let g = f.elem(3);
        assert_eq!(psi(&f, &q, g), op(&f, &[1, 3], &[&[], &[0, 6], &[3]]));
    }
}
