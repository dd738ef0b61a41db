//! Timing ladder for the capacity decoder.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{decode_capacity, CapacityOptions};
use crate::algebra::{FieldConfig, Poly};
use crate::codes::{corrupt, CodeKind, CodeParams};
use crate::error::{Error, Result};

/// Median stage times in milliseconds for one block length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub interp_ms: f64,
    pub solve_ms: f64,
    pub prune_ms: f64,
    pub total_ms: f64,
    /// Trials whose output contained the planted message.
    pub recovered: usize,
    pub trials: usize,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str = "n,interp_ms,solve_ms,prune_ms,total_ms";

    pub fn csv(&self) -> String {
        format!("{},{:.3},{:.3},{:.3},{:.3}", self.n, self.interp_ms, self.solve_ms, self.prune_ms, self.total_ms)
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Decodes `trials` corrupted words per block length with `d = rate s n`
/// and `error_fraction n` corrupted columns.
#[allow(clippy::too_many_arguments)]
pub fn bench_ladder(
    field: &FieldConfig,
    kind: CodeKind,
    ns: &[usize],
    s: usize,
    rate: f64,
    options: &CapacityOptions,
    error_fraction: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    if trials == 0 || !(rate > 0.0 && rate < 1.0) || !(0.0..=1.0).contains(&error_fraction) {
        return Err(Error::InvalidParameter("bench needs trials >= 1, 0 < rate < 1, 0 <= errors <= 1".into()));
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let d = (rate * (s * n) as f64).round() as usize;
        let code = match kind {
            CodeKind::Mult => CodeParams::mult(field.clone(), n, s, d)?,
            CodeKind::Frs => CodeParams::frs(field.clone(), n, s, d)?,
        };
        let errors = (error_fraction * n as f64).floor() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let mut times: [Vec<f64>; 4] = Default::default();
        let mut recovered = 0;
        for _ in 0..trials {
            let msg = Poly::from_u64s(field, &(0..=d).map(|_| rng.gen_range(0..field.p())).collect::<Vec<_>>());
            let word = corrupt(&code, &code.encode(&msg)?, errors, &mut rng)?;
            let report = decode_capacity(&word, &code, options, &mut rng)?;
            recovered += usize::from(report.messages.contains(&msg));
            let t = report.timings;
            for (slot, dur) in times.iter_mut().zip([t.interpolate, t.solve, t.prune, t.total]) {
                slot.push(dur.as_secs_f64() * 1e3);
            }
        }
        let [interp, solve, prune, total] = times.map(median);
        rows.push(BenchRow { n, interp_ms: interp, solve_ms: solve, prune_ms: prune, total_ms: total, recovered, trials });
    }
    Ok(rows)
}
