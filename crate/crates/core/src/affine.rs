//! Affine subspaces of `F_p[x]`, given by spanning points.

use crate::algebra::{poly_add, poly_scale, poly_sub, Fe, FieldConfig, Poly};

/// The affine span of a list of points.
///
/// Keeps the points as given, plus an echelon basis of the direction space
/// used for membership tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    points: Vec<Poly>,
    offset: Poly,
    /// Rows in reduced echelon form; `pivots[r]` is the pivot coefficient of
    /// row `r`.
    echelon: Vec<Poly>,
    pivots: Vec<usize>,
    directions: Vec<Poly>,
}

impl AffineSpace {
    /// Span of `points`; needs at least one point.
    pub fn from_points(f: &FieldConfig, points: Vec<Poly>) -> Self {
        assert!(!points.is_empty(), "affine span of no points");
        let offset = points[0].clone();
        let mut space = AffineSpace { points: Vec::new(), offset, echelon: Vec::new(), pivots: Vec::new(), directions: Vec::new() };
        for p in &points[1..] {
            let d = poly_sub(f, p, &space.offset);
            if space.absorb(f, &d) {
                space.directions.push(d);
            }
        }
        space.points = points;
        space
    }

    /// `offset + span(directions)`.
    pub fn from_parts(f: &FieldConfig, offset: Poly, directions: Vec<Poly>) -> Self {
        let mut points = vec![offset.clone()];
        points.extend(directions.iter().map(|d| poly_add(f, &offset, d)));
        Self::from_points(f, points)
    }

    /// Reduces `v` against the echelon rows; adds it if something is left.
    fn absorb(&mut self, f: &FieldConfig, v: &Poly) -> bool {
        let mut r = self.reduce(f, v);
        let Some(piv) = r.degree() else { return false };
        r = poly_scale(f, &r, f.inv(r.leading_coeff()).expect("nonzero"));
        for row in self.echelon.iter_mut() {
            let c = row.coeff(piv);
            if !c.is_zero() {
                *row = poly_sub(f, row, &poly_scale(f, &r, c));
            }
        }
        self.echelon.push(r);
        self.pivots.push(piv);
        true
    }

    fn reduce(&self, f: &FieldConfig, v: &Poly) -> Poly {
        let mut r = v.clone();
        for (row, &piv) in self.echelon.iter().zip(&self.pivots) {
            let c = r.coeff(piv);
            if !c.is_zero() {
                r = poly_sub(f, &r, &poly_scale(f, row, c));
            }
        }
        r
    }

    pub fn points(&self) -> &[Poly] {
        &self.points
    }

    pub fn offset(&self) -> &Poly {
        &self.offset
    }

    /// Independent direction vectors, each a difference of input points.
    pub fn directions(&self) -> &[Poly] {
        &self.directions
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// `offset + sum_i lambda_i directions_i`.
    pub fn point(&self, f: &FieldConfig, lambda: &[Fe]) -> Poly {
        self.directions
            .iter()
            .zip(lambda)
            .fold(self.offset.clone(), |acc, (d, &l)| poly_add(f, &acc, &poly_scale(f, d, l)))
    }

    pub fn contains(&self, f: &FieldConfig, v: &Poly) -> bool {
        self.reduce(f, &poly_sub(f, v, &self.offset)).is_zero()
    }

    /// Same dimension and each space contains the other's points.
    pub fn same_space(&self, f: &FieldConfig, other: &AffineSpace) -> bool {
        self.dim() == other.dim()
            && other.points.iter().all(|p| self.contains(f, p))
            && self.points.iter().all(|p| other.contains(f, p))
    }

    /// Maps every point through `map`, which must be affine.
    pub fn map_points(&self, f: &FieldConfig, map: impl FnMut(&Poly) -> Poly) -> Self {
        Self::from_points(f, self.points.iter().map(map).collect())
    }
}
