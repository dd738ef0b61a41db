//! Parameter selection for the decoders.

use crate::codes::CodeParams;
use crate::error::{Error, Result};

/// Arity and agreement threshold of the capacity decoders.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityParams {
    pub epsilon: f64,
    /// Operator order; the interpolated operator has `m + 1` slots.
    pub m: usize,
    /// Smallest folding or multiplicity parameter for this `epsilon`.
    pub s_min: usize,
}

impl CapacityParams {
    /// Fewest agreeing columns that force `Q(f) = 0` for an interpolant of
    /// x-degree `x_degree`: `ceil((D + d) / (s - m)) + 1`.
    pub fn threshold(&self, code: &CodeParams, x_degree: usize) -> usize {
        (x_degree + code.d()).div_ceil(code.s() - self.m) + 1
    }

    /// Fractional agreement the decoder is guaranteed to handle,
    /// `d / (s n) + epsilon`.
    pub fn target_agreement(&self, code: &CodeParams) -> f64 {
        code.rate() + self.epsilon
    }

    /// Worst-case value of `(D + d) / (s - m)` over `n`, using the interpolation
    /// bound `D <= n (s - m) / m`.
    pub fn worst_case_agreement(&self, code: &CodeParams) -> f64 {
        let (n, s, d, m) = (code.n() as f64, code.s() as f64, code.d() as f64, self.m as f64);
        (d / s + d * m / (s * (s - m)) + n / m) / n
    }
}

fn arity_for(epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    // Nudge down so 2/epsilon that is an integer up to rounding stays put.
    Ok((2.0 / epsilon - 1e-9).ceil() as usize)
}

/// `m = ceil(2 / epsilon)` and `s_min = ceil((1 + 2 / epsilon)^2)`; fails
/// when the code's `s` is below `s_min`.
pub fn choose_capacity_params(epsilon: f64, code: &CodeParams) -> Result<CapacityParams> {
    let m = arity_for(epsilon)?;
    let s_min = ((1.0 + 2.0 / epsilon).powi(2) - 1e-9).ceil() as usize;
    if code.s() < s_min {
        return Err(Error::FoldingTooSmall { s: code.s(), needed: s_min });
    }
    let params = CapacityParams { epsilon, m, s_min };
    debug_assert!(code.s() as f64 / m as f64 - 1.0 >= 2.0 / epsilon - 1e-9);
    debug_assert!(params.worst_case_agreement(code) <= params.target_agreement(code) + 1e-9);
    Ok(params)
}

/// Multiplicity and list-size parameters of the Johnson decoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JohnsonParams {
    /// Vanishing multiplicity, in units of `s`.
    pub r: usize,
    /// Largest `y`-degree.
    pub u: usize,
}

impl JohnsonParams {
    /// Upper bound on the weighted degree of the shortest lattice vector:
    /// the lattice determinant spread over its `u + 1` dimensions.
    pub fn degree_bound(&self, code: &CodeParams) -> usize {
        let (r, u) = (self.r, self.u);
        (code.n() * code.s() * r * (r + 1) + code.d() * u * (u + 1)) / (2 * (u + 1))
    }

    /// Fewest agreeing columns that the degree bound guarantees to recover.
    pub fn guaranteed_agreement(&self, code: &CodeParams) -> usize {
        self.degree_bound(code) / (code.s() * self.r) + 1
    }
}

/// Least `u >= r` with `u (u + 1) d >= r (r + 1) n s`.
fn johnson_list_degree(r: usize, code: &CodeParams) -> usize {
    let need = r * (r + 1) * code.n() * code.s();
    let mut u = r;
    while u * (u + 1) * code.d() < need {
        u += 1;
    }
    u
}

/// The least `r <= ceil(1 / epsilon)` whose degree bound already guarantees
/// recovery at fractional agreement `sqrt(d / (s n)) + epsilon`, or
/// `ceil(1 / epsilon)` if none does, with the least `u >= r` satisfying
/// `u (u + 1) >= r (r + 1) n s / d`. The lattice dimension and the
/// interpolation cost grow quickly with `r`.
pub fn choose_johnson_params(epsilon: f64, code: &CodeParams) -> Result<JohnsonParams> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if code.d() == 0 {
        return Err(Error::InvalidParameter("Johnson decoding needs d >= 1".into()));
    }
    let r_max = (1.0 / epsilon - 1e-9).ceil() as usize;
    let target = (((code.rate()).sqrt() + epsilon) * code.n() as f64 - 1e-9).ceil() as usize;
    let params = |r| JohnsonParams { r, u: johnson_list_degree(r, code) };
    Ok((1..r_max).map(params).find(|p| p.guaranteed_agreement(code) <= target).unwrap_or_else(|| params(r_max)))
}
