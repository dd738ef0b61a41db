//! Interpolating operators from a received word.
//!
//! Each decoder looks for a short vector in a lattice of polynomial vectors
//! whose members vanish, in the appropriate sense, on every received column.
//! The explicit generators are available through the `build_*` functions;
//! the `interpolate_*` functions compute a reduced basis of the same lattice
//! with the divide-and-conquer relation solver instead, then take its
//! shortest vector.

use crate::algebra::*;
use crate::codes::CodeKind;
use crate::error::{Error, Result};
use crate::operators::{psi, tau, AffineOperator};
use crate::polylattice::{reduce_basis, relation_basis, shortest_vector, LatticeBasis, PointConstraint, PolyVec};

/// A possibly corrupted word: column `j` is `columns[j]`, received at `alphas[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    kind: CodeKind,
    alphas: Vec<Fe>,
    columns: Vec<Vec<Fe>>,
    gamma: Fe,
}

impl ReceivedWord {
    /// Checks shapes and point distinctness. `gamma` is ignored for
    /// multiplicity words.
    pub fn new(f: &FieldConfig, kind: CodeKind, alphas: Vec<Fe>, columns: Vec<Vec<Fe>>, gamma: Fe) -> Result<Self> {
        let s = columns.first().map_or(0, Vec::len);
        if alphas.len() != columns.len() || s == 0 || columns.iter().any(|c| c.len() != s) {
            return Err(Error::ShapeMismatch);
        }
        let gamma = match kind {
            CodeKind::Mult => Fe::ONE,
            CodeKind::Frs => gamma,
        };
        let word = ReceivedWord { kind, alphas, columns, gamma };
        let mut pts = word.evaluation_points(f, s);
        pts.sort_unstable_by_key(|p| p.value());
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        Ok(word)
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn alphas(&self) -> &[Fe] {
        &self.alphas
    }

    pub fn columns(&self) -> &[Vec<Fe>] {
        &self.columns
    }

    pub fn gamma(&self) -> Fe {
        self.gamma
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn s(&self) -> usize {
        self.columns[0].len()
    }

    /// Distinct points behind the first `depth` entries of every column:
    /// `gamma^k alpha_j` for folded words, just the `alpha_j` otherwise.
    fn evaluation_points(&self, f: &FieldConfig, depth: usize) -> Vec<Fe> {
        match self.kind {
            CodeKind::Mult => self.alphas.clone(),
            CodeKind::Frs => self
                .alphas
                .iter()
                .flat_map(|&a| {
                    let mut cur = a;
                    (0..depth).map(move |_| {
                        let out = cur;
                        cur = f.mul(cur, self.gamma);
                        out
                    })
                })
                .collect(),
        }
    }
}

fn check_arity(word: &ReceivedWord, m: usize, kind: CodeKind) -> Result<()> {
    if word.kind != kind {
        return Err(Error::InvalidParameter("received word has the wrong code kind".into()));
    }
    if m >= word.s() {
        return Err(Error::InvalidParameter(format!("arity {} needs m < s = {}", m + 1, word.s())));
    }
    Ok(())
}

/// `A_0..A_m` with `A_i^(k)(alpha_j) = columns[j][i + k]` for `k < s - m`,
/// each of degree `< n (s - m)`.
pub fn hermite_columns(f: &FieldConfig, word: &ReceivedWord, m: usize) -> Result<Vec<Poly>> {
    check_arity(word, m, CodeKind::Mult)?;
    let e = word.s() - m;
    let needed = (word.n() * e) as u64;
    if f.p() <= needed {
        return Err(Error::CharacteristicTooSmall { p: f.p(), needed });
    }
    let interp = HermiteInterpolator::new(f, word.alphas(), e)?;
    let jets: Vec<Vec<Vec<Fe>>> =
        (0..=m).map(|i| word.columns.iter().map(|c| c[i..i + e].to_vec()).collect()).collect();
    interp.interpolate_many(f, &jets)
}

/// `A_0..A_m` with `A_i(gamma^k alpha_j) = columns[j][i + k]` for `k < s - m`.
pub fn frs_columns(f: &FieldConfig, word: &ReceivedWord, m: usize) -> Result<Vec<Poly>> {
    check_arity(word, m, CodeKind::Frs)?;
    let e = word.s() - m;
    let points = word.evaluation_points(f, e);
    let interp = HermiteInterpolator::new(f, &points, 1)?;
    let values: Vec<Vec<Vec<Fe>>> = (0..=m)
        .map(|i| word.columns.iter().flat_map(|c| c[i..i + e].iter().map(|&v| vec![v])).collect())
        .collect();
    interp.interpolate_many(f, &values)
}

/// Generators `y_i - A_i` and the vanishing polynomial, in the layout
/// `(y_0, ..., y_m, y-free)`.
fn affine_lattice(f: &FieldConfig, columns: &[Poly], modulus: Poly) -> LatticeBasis {
    let dim = columns.len() + 1;
    let mut rows: Vec<PolyVec> = columns
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut row = vec![Poly::zero(); dim];
            row[i] = Poly::one();
            row[dim - 1] = poly_neg(f, a);
            PolyVec::new(row)
        })
        .collect();
    let mut last = vec![Poly::zero(); dim];
    last[dim - 1] = modulus;
    rows.push(PolyVec::new(last));
    LatticeBasis::new(rows).expect("rows share a dimension")
}

/// Lattice of operators vanishing to order `s - m` along the received jets.
pub fn build_mult_lattice(f: &FieldConfig, word: &ReceivedWord, m: usize) -> Result<LatticeBasis> {
    let columns = hermite_columns(f, word, m)?;
    Ok(affine_lattice(f, &columns, vanishing_poly(f, word.alphas(), word.s() - m)))
}

/// Lattice of operators vanishing at every `(gamma^k alpha_j, shifted column)`.
pub fn build_frs_lattice(f: &FieldConfig, word: &ReceivedWord, m: usize) -> Result<LatticeBasis> {
    let columns = frs_columns(f, word, m)?;
    let points = word.evaluation_points(f, word.s() - m);
    Ok(affine_lattice(f, &columns, vanishing_poly(f, &points, 1)))
}

/// Shortest operator `Q~ + sum Q_i y_i` with `Q~ + sum Q_i A_i = 0` modulo the
/// constraints.
fn shortest_affine(f: &FieldConfig, columns: &[Poly], constraints: &[PointConstraint]) -> Result<AffineOperator> {
    let mut system: Vec<Vec<Poly>> = columns.iter().map(|a| vec![a.clone()]).collect();
    system.push(vec![Poly::one()]);
    let shift = vec![0; system.len()];
    let basis = relation_basis(f, &system, constraints, &shift)?;
    let reduced = reduce_basis(f, &LatticeBasis::from_rows(basis)?)?;
    Ok(AffineOperator::from_vector(&shortest_vector(f, &reduced)?))
}

/// A nonzero operator of x-degree at most `n (s - m) / (m + 2)` such that
/// `tau^i(Q)` vanishes at every received column for `i < s - m`.
pub fn interpolate_mult(f: &FieldConfig, word: &ReceivedWord, m: usize) -> Result<AffineOperator> {
    let columns = hermite_columns(f, word, m)?;
    let e = word.s() - m;
    let cons: Vec<PointConstraint> =
        word.alphas().iter().map(|&a| PointConstraint { column: 0, point: a, multiplicity: e }).collect();
    shortest_affine(f, &columns, &cons)
}

/// Folded counterpart of [`interpolate_mult`]: `psi^i(Q)` vanishes at every
/// received column for `i < s - m`.
pub fn interpolate_frs(f: &FieldConfig, word: &ReceivedWord, m: usize) -> Result<AffineOperator> {
    let columns = frs_columns(f, word, m)?;
    let cons: Vec<PointConstraint> = word
        .evaluation_points(f, word.s() - m)
        .into_iter()
        .map(|a| PointConstraint { column: 0, point: a, multiplicity: 1 })
        .collect();
    shortest_affine(f, &columns, &cons)
}

/// Checks every vanishing condition of the interpolation step directly:
/// `tau^i(Q)` (or `psi^i(Q)`) evaluated at each received column, `i < s - m`.
pub fn satisfies_constraints(f: &FieldConfig, word: &ReceivedWord, q: &AffineOperator) -> bool {
    let m = q.order();
    if m >= word.s() {
        return false;
    }
    let mut op = q.clone();
    for i in 0..word.s() - m {
        if i > 0 {
            op = match word.kind {
                CodeKind::Mult => tau(f, &op),
                CodeKind::Frs => psi(f, &op, word.gamma),
            };
        }
        let ok = word.alphas.iter().zip(&word.columns).all(|(&a, col)| op.eval_at(f, a, col).is_zero());
        if !ok {
            return false;
        }
    }
    true
}

/// `Q(x, y) = sum_j y_coeffs[j](x) y^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariateQ {
    y_coeffs: Vec<Poly>,
}

impl BivariateQ {
    pub fn new(mut y_coeffs: Vec<Poly>) -> Self {
        while y_coeffs.last().is_some_and(Poly::is_zero) {
            y_coeffs.pop();
        }
        BivariateQ { y_coeffs }
    }

    pub fn y_coeffs(&self) -> &[Poly] {
        &self.y_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    /// `max (i + d j)` over nonzero monomials `x^i y^j`.
    pub fn weighted_degree(&self, d: usize) -> Option<usize> {
        self.y_coeffs.iter().enumerate().filter_map(|(j, c)| c.degree().map(|i| i + d * j)).max()
    }

    /// `Q(x, g(x))`.
    pub fn substitute(&self, f: &FieldConfig, g: &Poly) -> Poly {
        self.y_coeffs.iter().rev().fold(Poly::zero(), |acc, c| poly_add(f, &poly_mul(f, &acc, g), c))
    }

    /// `Q(a, b)`.
    pub fn eval(&self, f: &FieldConfig, a: Fe, b: Fe) -> Fe {
        self.y_coeffs.iter().rev().fold(Fe::ZERO, |acc, c| f.mul_add(acc, b, poly_eval(f, c, a)))
    }
}

/// The single Hermite column for the Johnson decoder: all `s` derivative
/// orders at every point.
fn johnson_column(f: &FieldConfig, word: &ReceivedWord) -> Result<Poly> {
    if word.kind != CodeKind::Mult {
        return Err(Error::InvalidParameter("received word has the wrong code kind".into()));
    }
    hermite_interpolate(f, word.alphas(), word.columns())
}

fn check_johnson(r: usize, u: usize) -> Result<()> {
    if r > u || r == 0 {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= u, got r = {r}, u = {u}")));
    }
    Ok(())
}

/// Generators `(y x^d - A)^j V^(r - j)` of the substituted lattice, `j <= u`,
/// with `V = prod (x - alpha_i)^s`; entry `i` holds the `y^i` coefficient.
pub fn build_johnson_lattice(f: &FieldConfig, word: &ReceivedWord, r: usize, u: usize, d: usize) -> Result<LatticeBasis> {
    check_johnson(r, u)?;
    let a = johnson_column(f, word)?;
    let v = vanishing_poly(f, word.alphas(), word.s());
    let neg_a = poly_neg(f, &a);
    let neg_a_pows: Vec<Poly> =
        std::iter::successors(Some(Poly::one()), |p| Some(poly_mul(f, p, &neg_a))).take(u + 1).collect();
    let v_pows: Vec<Poly> = std::iter::successors(Some(Poly::one()), |p| Some(poly_mul(f, p, &v))).take(r + 1).collect();
    let rows = (0..=u)
        .map(|j| {
            let vp = &v_pows[r.saturating_sub(j)];
            let entries = (0..=u)
                .map(|i| {
                    if i > j {
                        return Poly::zero();
                    }
                    let c = f.binomial(j as u64, i as u64);
                    poly_scale(f, &poly_mul(f, &neg_a_pows[j - i], vp), c).shifted_up(d * i)
                })
                .collect();
            PolyVec::new(entries)
        })
        .collect();
    LatticeBasis::new(rows)
}

/// A nonzero `Q` with `y`-degree at most `u`, vanishing to order `s r` at
/// every received column and of `(1, d)`-weighted degree at most
/// `(n s r (r + 1) / (u + 1) + d u) / 2`.
pub fn interpolate_johnson(f: &FieldConfig, word: &ReceivedWord, r: usize, u: usize, d: usize) -> Result<BivariateQ> {
    check_johnson(r, u)?;
    let a = johnson_column(f, word)?;
    let s = word.s();
    // Column k asks that the k-th Hasse derivative in y, Q^[k](x, A), vanish
    // to order s (r - k): entry (j, k) is C(j, k) A^(j - k).
    let full = vanishing_poly(f, word.alphas(), s * r);
    let mut a_pows = vec![Poly::one()];
    for _ in 0..u {
        let next = poly_rem(f, &poly_mul(f, a_pows.last().unwrap(), &a), &full)?;
        a_pows.push(next);
    }
    let system: Vec<Vec<Poly>> = (0..=u)
        .map(|j| {
            (0..r)
                .map(|k| if k > j { Poly::zero() } else { poly_scale(f, &a_pows[j - k], f.binomial(j as u64, k as u64)) })
                .collect()
        })
        .collect();
    let cons: Vec<PointConstraint> = (0..r)
        .flat_map(|k| {
            word.alphas().iter().map(move |&pt| PointConstraint { column: k, point: pt, multiplicity: s * (r - k) })
        })
        .collect();
    let shift: Vec<i64> = (0..=u).map(|j| (d * j) as i64).collect();
    let basis = relation_basis(f, &system, &cons, &shift)?;
    let hat: Vec<Vec<Poly>> =
        basis.into_iter().map(|row| row.into_iter().enumerate().map(|(j, e)| e.shifted_up(d * j)).collect()).collect();
    let reduced = reduce_basis(f, &LatticeBasis::from_rows(hat)?)?;
    let short = shortest_vector(f, &reduced)?;
    Ok(BivariateQ::new(short.into_entries().into_iter().enumerate().map(|(j, e)| e.shifted_down(d * j)).collect()))
}
