//! Extracting the few close codewords from a low-dimensional affine space by
//! random restriction: sample `t` columns, and keep the unique member of the
//! space that matches the received word there, if there is exactly one.

use std::collections::HashSet;
use std::thread;

use rand::Rng;

use crate::algebra::{solve_linear, Fe, FieldConfig};
use crate::codes::Codeword;
use crate::error::{Error, Result};

/// Default multiplier in the trial count.
pub const DEFAULT_PRUNE_CONSTANT: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PruneParams {
    /// Columns sampled per trial.
    pub t: usize,
    /// Number of trials.
    pub k_trials: usize,
    /// Failure probability the trial count was sized for.
    pub gamma_fail: f64,
    /// Relative distance `1 - d / (s n)` of the code.
    pub delta: f64,
    /// Worker threads; the output does not depend on it.
    pub threads: usize,
}

/// Sample and trial counts from the theorem, reported as logarithms since
/// they overflow for realistic rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoreticalPrune {
    pub t: f64,
    pub log10_k: f64,
}

/// Thread count from `MERCODE_THREADS`, else the available parallelism.
pub fn default_threads() -> usize {
    std::env::var("MERCODE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, usize::from))
}

impl PruneParams {
    /// Practical sizing for a space of dimension `dim` over columns of `s`
    /// symbols: `t = ceil(dim / s) + 1` columns already overdetermine the
    /// space, and `k = ceil(C ln(1/gamma) t ln(1/(1-delta)) / (1-delta)^t)`
    /// trials make a run of all-agreeing samples overwhelmingly likely.
    pub fn practical(dim: usize, s: usize, delta: f64, gamma_fail: f64, constant: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("distance must lie in (0, 1), got {delta}")));
        }
        if !(gamma_fail > 0.0 && gamma_fail < 1.0) || constant <= 0.0 || s == 0 {
            return Err(Error::InvalidParameter("prune needs 0 < gamma < 1, C > 0 and s > 0".into()));
        }
        let t = dim.div_ceil(s) + 1;
        let keep = 1.0 - delta;
        let k = constant * (1.0 / gamma_fail).ln() * t as f64 * (1.0 / keep).ln() / keep.powi(t as i32);
        Ok(PruneParams { t, k_trials: (k.ceil() as usize).max(1), gamma_fail, delta, threads: default_threads() })
    }

    /// `t = 3 (m / (eps (1 - delta))) ln(m / (eps (1 - delta)))` and the matching
    /// `k` with unit constant.
    pub fn theoretical(m: usize, epsilon: f64, delta: f64, gamma_fail: f64) -> TheoreticalPrune {
        let keep = 1.0 - delta;
        let ratio = m as f64 / (epsilon * keep);
        let t = 3.0 * ratio * ratio.ln();
        let log10_k = ((1.0 / gamma_fail).ln() * t * (1.0 / keep).ln()).log10() - t * keep.log10();
        TheoreticalPrune { t, log10_k }
    }
}

/// A member of the space found by [`prune`]: `weights` are its coordinates
/// against `span[1..] - span[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub weights: Vec<Fe>,
    pub codeword: Codeword,
}

/// Runs the trials over the affine span of `span[0], span[1], ...`. Output
/// order follows trial order; duplicates are dropped.
pub fn prune<R: Rng + ?Sized>(
    f: &FieldConfig,
    span: &[Codeword],
    received: &[Vec<Fe>],
    params: &PruneParams,
    rng: &mut R,
) -> Result<Vec<Pruned>> {
    let base = span.first().ok_or(Error::InvalidParameter("empty span".into()))?;
    let n = base.n();
    if received.len() != n || span.iter().any(|c| c.n() != n) {
        return Err(Error::ShapeMismatch);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let dirs: Vec<Vec<Vec<Fe>>> = span[1..]
        .iter()
        .map(|c| {
            c.columns()
                .iter()
                .zip(base.columns())
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect())
                .collect()
        })
        .collect();
    let samples: Vec<Vec<usize>> =
        (0..params.k_trials).map(|_| (0..params.t).map(|_| rng.gen_range(0..n)).collect()).collect();
    let ctx = TrialContext { f, base: base.columns(), dirs: &dirs, received };
    let threads = params.threads.clamp(1, samples.len().max(1));
    let found: Vec<Option<Vec<Fe>>> = if threads == 1 {
        samples.iter().map(|cols| ctx.trial(cols)).collect()
    } else {
        let chunk = samples.len().div_ceil(threads);
        thread::scope(|scope| {
            let handles: Vec<_> = samples
                .chunks(chunk)
                .map(|part| scope.spawn(|| part.iter().map(|cols| ctx.trial(cols)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("prune worker panicked")).collect()
        })
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for weights in found.into_iter().flatten() {
        if seen.insert(weights.clone()) {
            let codeword = ctx.combine(&weights);
            out.push(Pruned { weights, codeword });
        }
    }
    Ok(out)
}

struct TrialContext<'a> {
    f: &'a FieldConfig,
    base: &'a [Vec<Fe>],
    dirs: &'a [Vec<Vec<Fe>>],
    received: &'a [Vec<Fe>],
}

impl TrialContext<'_> {
    /// Weights of the unique member agreeing with the received word on
    /// `cols`, if there is exactly one.
    fn trial(&self, cols: &[usize]) -> Option<Vec<Fe>> {
        let f = self.f;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &c in cols {
            for k in 0..self.base[c].len() {
                rows.push(self.dirs.iter().map(|d| d[c][k]).collect::<Vec<_>>());
                rhs.push(f.sub(self.received[c][k], self.base[c][k]));
            }
        }
        let sol = solve_linear(f, rows, rhs, self.dirs.len())?;
        sol.kernel.is_empty().then_some(sol.particular)
    }

    fn combine(&self, weights: &[Fe]) -> Codeword {
        let f = self.f;
        let columns = self
            .base
            .iter()
            .enumerate()
            .map(|(c, col)| {
                (0..col.len())
                    .map(|k| self.dirs.iter().zip(weights).fold(col[k], |acc, (d, &w)| f.mul_add(w, d[c][k], acc)))
                    .collect()
            })
            .collect();
        Codeword::new(columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::codes::{agreement, corrupt, CodeParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_point_space() {
        let f = FieldConfig::new(101).unwrap();
        let code = CodeParams::mult(f.clone(), 20, 2, 9).unwrap();
        let c = code.encode(&Poly::from_u64s(&f, &[3, 1, 4, 1, 5])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = corrupt(&code, &c, 6, &mut rng).unwrap();
        let params = PruneParams::practical(0, 2, code.distance(), 0.01, 4.0).unwrap();
        let out = prune(&f, &[c.clone()], r.columns(), &params, &mut rng).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].codeword, c);
        assert_eq!(agreement(out[0].codeword.columns(), r.columns()).unwrap(), 14);
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let f = FieldConfig::new(101).unwrap();
        let code = CodeParams::mult(f.clone(), 30, 3, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let span: Vec<Codeword> = (0..3)
            .map(|i| code.encode(&Poly::from_u64s(&f, &[i, 2 * i + 1, 7, i * i])).unwrap())
            .collect();
        let r = corrupt(&code, &span[1], 10, &mut rng).unwrap();
        let mut params = PruneParams::practical(2, 3, code.distance(), 0.01, 4.0).unwrap();
        params.threads = 1;
        let one = prune(&f, &span, r.columns(), &params, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        params.threads = 4;
        let four = prune(&f, &span, r.columns(), &params, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(one, four);
        assert!(one.iter().any(|p| p.codeword == span[1]));
    }

    #[test]
    fn theoretical_sizes_are_huge() {
        let th = PruneParams::theoretical(4, 0.5, 0.75, 0.01);
        assert!(th.t > 300.0 && th.log10_k > 150.0);
    }
}
