//! Lattices over `F_p[x]`: vectors of polynomials, weak Popov reduction and
//! shortest vectors for the max-degree norm.
//!
//! The norm of a vector is the largest degree among its entries. Its leading
//! coordinate is the greatest index whose entry attains that degree. A basis
//! is reduced when its leading coordinates are pairwise distinct, and then the
//! minimal-degree basis vector is a shortest nonzero lattice vector.

mod relation;

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{poly_axpy, Fe, FieldConfig, Poly};
use crate::error::{Error, Result};

pub use relation::{relation_basis, row_degrees, PointConstraint};

/// A vector in `F_p[x]^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyVec {
    entries: Vec<Poly>,
}

impl PolyVec {
    pub fn new(entries: Vec<Poly>) -> Self {
        PolyVec { entries }
    }

    pub fn zero(dim: usize) -> Self {
        PolyVec { entries: vec![Poly::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Poly> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest entry degree; `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Greatest index whose entry has the vector's degree.
    pub fn leading_coordinate(&self) -> Result<usize> {
        let d = self.degree().ok_or(Error::ZeroVector)?;
        Ok(self.entries.iter().rposition(|e| e.degree() == Some(d)).unwrap())
    }

    fn profile(&self) -> Option<(usize, usize)> {
        let d = self.degree()?;
        Some((d, self.entries.iter().rposition(|e| e.degree() == Some(d)).unwrap()))
    }
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// An ordered generating set of a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    vectors: Vec<PolyVec>,
    reduced: bool,
}

impl LatticeBasis {
    /// Wraps vectors of a common dimension.
    pub fn new(vectors: Vec<PolyVec>) -> Result<Self> {
        let dim = vectors.first().map_or(0, PolyVec::dim);
        if vectors.iter().any(|v| v.dim() != dim) {
            return Err(Error::ShapeMismatch);
        }
        Ok(LatticeBasis { vectors, reduced: false })
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        Self::new(rows.into_iter().map(PolyVec::new).collect())
    }

    pub fn vectors(&self) -> &[PolyVec] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<PolyVec> {
        self.vectors
    }

    /// Number of coordinates per vector.
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, PolyVec::dim)
    }

    pub fn rank_bound(&self) -> usize {
        self.vectors.len()
    }

    /// Set only by [`reduce_basis`].
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }
}

/// Mulders-Storjohann reduction to weak Popov form.
///
/// While two vectors share a leading coordinate, the one of larger degree
/// (the earlier one on ties) has its leading term cancelled by a monomial
/// multiple of the other. Row order is preserved.
pub fn reduce_basis(f: &FieldConfig, basis: &LatticeBasis) -> Result<LatticeBasis> {
    let mut rows: Vec<PolyVec> = basis.vectors.clone();
    if rows.len() > basis.dim() {
        return Err(Error::DegenerateBasis);
    }
    let mut profile: Vec<(usize, usize)> =
        rows.iter().map(|v| v.profile().ok_or(Error::DegenerateBasis)).collect::<Result<_>>()?;
    loop {
        let mut owner: HashMap<usize, usize> = HashMap::new();
        let mut clash = None;
        for (i, &(_, lc)) in profile.iter().enumerate() {
            if let Some(&j) = owner.get(&lc) {
                clash = Some((j, i));
                break;
            }
            owner.insert(lc, i);
        }
        let Some((a, b)) = clash else { break };
        let (target, pivot) = if profile[a].0 >= profile[b].0 { (a, b) } else { (b, a) };
        let (dt, lc) = profile[target];
        let dp = profile[pivot].0;
        let coef = f.neg(f.div(rows[target].entries[lc].leading_coeff(), rows[pivot].entries[lc].leading_coeff())?);
        let pivot_row = rows[pivot].clone();
        for (dst, src) in rows[target].entries.iter_mut().zip(&pivot_row.entries) {
            poly_axpy(f, dst, coef, dt - dp, src);
        }
        profile[target] = rows[target].profile().ok_or(Error::DegenerateBasis)?;
    }
    Ok(LatticeBasis { vectors: rows, reduced: true })
}

/// A minimal-degree nonzero lattice vector; ties go to the smallest leading
/// coordinate.
pub fn shortest_vector(f: &FieldConfig, basis: &LatticeBasis) -> Result<PolyVec> {
    let reduced = if basis.reduced { basis.clone() } else { reduce_basis(f, basis)? };
    reduced
        .vectors
        .into_iter()
        .min_by_key(|v| v.profile().expect("reduced rows are nonzero"))
        .ok_or(Error::DegenerateBasis)
}

/// Degree of the determinant of a square basis.
pub fn det_degree(f: &FieldConfig, basis: &LatticeBasis) -> Result<usize> {
    if basis.vectors.len() != basis.dim() {
        return Err(Error::ShapeMismatch);
    }
    let reduced = if basis.reduced { basis.clone() } else { reduce_basis(f, basis)? };
    Ok(reduced.vectors.iter().map(|v| v.degree().unwrap()).sum())
}

/// Upper bound on the shortest vector degree of a full-rank lattice.
pub fn minkowski_bound(det_degree: usize, dim: usize) -> usize {
    det_degree / dim.max(1)
}

/// Scales column `j` of every vector by `x^(shift[j])`.
pub fn shift_columns(basis: &[Vec<Poly>], shift: &[usize]) -> Vec<Vec<Poly>> {
    basis.iter().map(|row| row.iter().zip(shift).map(|(e, &s)| e.shifted_up(s)).collect()).collect()
}

/// Leading coefficient vector of each row at its own degree.
pub fn leading_matrix(basis: &LatticeBasis) -> Vec<Vec<Fe>> {
    basis
        .vectors
        .iter()
        .map(|v| {
            let d = v.degree();
            v.entries
                .iter()
                .map(|e| if e.degree() == d && d.is_some() { e.leading_coeff() } else { Fe::ZERO })
                .collect()
        })
        .collect()
}
