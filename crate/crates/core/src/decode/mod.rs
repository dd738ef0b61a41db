//! End-to-end list decoders.
//!
//! The capacity decoders interpolate an operator `Q` that every close
//! codeword must satisfy, solve `Q(f) = 0` for the affine space of
//! candidates, prune that space down to the codewords that really are close
//! and finally filter by agreement. The Johnson decoder interpolates a
//! bivariate polynomial instead and reads the candidates off its roots.

mod bench;
mod params;
mod prune;

use std::time::{Duration, Instant};

use rand::Rng;

use crate::affine::AffineSpace;
use crate::algebra::*;
use crate::codes::{agreement, CodeKind, CodeParams};
use crate::error::{Error, Result};
use crate::funcsolve::func_solve;
use crate::interpolation::{interpolate_frs, interpolate_johnson, interpolate_mult, ReceivedWord};
use crate::odesolve::solve_q;
use crate::operators::{normalize_derivative, normalize_folded};
use crate::rootfind::rr_roots;

pub use bench::{bench_ladder, BenchRow};
pub use params::{choose_capacity_params, choose_johnson_params, CapacityParams, JohnsonParams};
pub use prune::{default_threads, prune, PruneParams, Pruned, TheoreticalPrune, DEFAULT_PRUNE_CONSTANT};

/// Wall time per stage.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StageTimings {
    pub interpolate: Duration,
    pub solve: Duration,
    pub prune: Duration,
    pub total: Duration,
}

/// Output of a decoder with the intermediate quantities.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeReport {
    /// Messages ascending by coefficients.
    pub messages: Vec<Poly>,
    /// Agreement of each message's encoding with the received word.
    pub agreements: Vec<usize>,
    /// Least agreement a message needs to be reported.
    pub threshold: usize,
    /// x-degree of the interpolated operator (weighted degree for Johnson).
    pub interpolation_degree: usize,
    /// Dimension of the candidate space, or number of roots for Johnson.
    pub candidates: usize,
    pub timings: StageTimings,
}

/// Knobs of the capacity decoders beyond the code itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityOptions {
    pub epsilon: f64,
    pub gamma_fail: f64,
    pub prune_constant: f64,
    /// Overrides the worker count from the environment.
    pub threads: Option<usize>,
}

impl CapacityOptions {
    pub fn new(epsilon: f64) -> Self {
        CapacityOptions { epsilon, gamma_fail: 0.01, prune_constant: DEFAULT_PRUNE_CONSTANT, threads: None }
    }
}

fn check_word(word: &ReceivedWord, code: &CodeParams) -> Result<()> {
    if word.kind() != code.kind() || word.n() != code.n() || word.s() != code.s() || word.alphas() != code.alphas() {
        return Err(Error::InvalidParameter("received word does not match the code".into()));
    }
    if code.kind() == CodeKind::Frs && word.gamma() != code.gamma() {
        return Err(Error::InvalidParameter("received word uses a different gamma".into()));
    }
    Ok(())
}

fn message_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.coeffs().iter().map(|c| c.value()).cmp(b.coeffs().iter().map(|c| c.value()))
}

/// Capacity decoder for either code family.
pub fn decode_capacity<R: Rng + ?Sized>(
    word: &ReceivedWord,
    code: &CodeParams,
    options: &CapacityOptions,
    rng: &mut R,
) -> Result<DecodeReport> {
    check_word(word, code)?;
    let f = code.field();
    let params = choose_capacity_params(options.epsilon, code)?;
    let start = Instant::now();
    let q = match code.kind() {
        CodeKind::Mult => interpolate_mult(f, word, params.m)?,
        CodeKind::Frs => interpolate_frs(f, word, params.m)?,
    };
    let interpolated = Instant::now();
    let degree = q.x_degree().unwrap_or(0);
    let threshold = params.threshold(code, degree);
    let space = match code.kind() {
        CodeKind::Mult => solve_derivative(f, &q, code.d())?,
        CodeKind::Frs => solve_folded(f, &q, code.d(), code.gamma())?,
    };
    let solved = Instant::now();
    let mut messages = Vec::new();
    let candidates = space.as_ref().map_or(0, AffineSpace::dim);
    if let Some(space) = space {
        let mut span = vec![space.offset().clone()];
        span.extend(space.directions().iter().map(|d| poly_add(f, space.offset(), d)));
        let span_words = code.encode_many(&span)?;
        let mut prune_params =
            PruneParams::practical(space.dim(), code.s(), code.distance(), options.gamma_fail, options.prune_constant)?;
        if let Some(t) = options.threads {
            prune_params.threads = t.max(1);
        }
        for hit in prune(f, &span_words, word.columns(), &prune_params, rng)? {
            let agree = agreement(hit.codeword.columns(), word.columns())?;
            if agree >= threshold {
                messages.push((space.point(f, &hit.weights), agree));
            }
        }
    }
    messages.sort_by(|a, b| message_order(&a.0, &b.0));
    let (messages, agreements): (Vec<Poly>, Vec<usize>) = messages.into_iter().unzip();
    let end = Instant::now();
    Ok(DecodeReport {
        messages,
        agreements,
        threshold,
        interpolation_degree: degree,
        candidates,
        timings: StageTimings {
            interpolate: interpolated - start,
            solve: solved - interpolated,
            prune: end - solved,
            total: end - start,
        },
    })
}

/// Candidates of degree at most `d` solving `Q(x, f, f', ...) = 0`;
/// `None` when the equation forces nothing useful or has no solution.
fn solve_derivative(f: &FieldConfig, q: &crate::operators::AffineOperator, d: usize) -> Result<Option<AffineSpace>> {
    let shifted = match normalize_derivative(f, q) {
        Ok(s) => s,
        Err(Error::NoYSupport) => return Ok(None),
        Err(e) => return Err(e),
    };
    if shifted.operator.order() > d {
        return Ok(None);
    }
    let space = solve_q(f, &shifted.operator, d)?;
    let back = f.neg(shifted.shift);
    let space = if shifted.shift.is_zero() { space } else { space.map_points(f, |p| taylor_shift(f, p, back)) };
    Ok(Some(space))
}

fn solve_folded(f: &FieldConfig, q: &crate::operators::AffineOperator, d: usize, gamma: Fe) -> Result<Option<AffineSpace>> {
    let normal = match normalize_folded(f, q) {
        Ok(n) => n,
        Err(Error::NoYSupport | Error::NoSolution) => return Ok(None),
        Err(e) => return Err(e),
    };
    match func_solve(f, &normal, d, gamma) {
        Ok(space) => Ok(Some(space)),
        Err(Error::NoSolution) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Capacity decoding of a multiplicity code.
pub fn decode_mult_capacity<R: Rng + ?Sized>(
    word: &ReceivedWord,
    code: &CodeParams,
    epsilon: f64,
    rng: &mut R,
) -> Result<Vec<Poly>> {
    if code.kind() != CodeKind::Mult {
        return Err(Error::InvalidParameter("not a multiplicity code".into()));
    }
    Ok(decode_capacity(word, code, &CapacityOptions::new(epsilon), rng)?.messages)
}

/// Capacity decoding of a folded Reed-Solomon code.
pub fn decode_frs_capacity<R: Rng + ?Sized>(
    word: &ReceivedWord,
    code: &CodeParams,
    epsilon: f64,
    rng: &mut R,
) -> Result<Vec<Poly>> {
    if code.kind() != CodeKind::Frs {
        return Err(Error::InvalidParameter("not a folded code".into()));
    }
    Ok(decode_capacity(word, code, &CapacityOptions::new(epsilon), rng)?.messages)
}

/// Johnson-radius decoding of a multiplicity code, with details.
pub fn decode_johnson_report(word: &ReceivedWord, code: &CodeParams, epsilon: f64) -> Result<DecodeReport> {
    check_word(word, code)?;
    if code.kind() != CodeKind::Mult {
        return Err(Error::InvalidParameter("Johnson decoding is implemented for multiplicity codes".into()));
    }
    let f = code.field();
    let JohnsonParams { r, u } = choose_johnson_params(epsilon, code)?;
    let start = Instant::now();
    let q = interpolate_johnson(f, word, r, u, code.d())?;
    let interpolated = Instant::now();
    let degree = q.weighted_degree(code.d()).unwrap_or(0);
    let roots = rr_roots(f, &q, code.d())?;
    let solved = Instant::now();
    // Strictly more than D / (s r) agreeing columns.
    let threshold = degree / (code.s() * r) + 1;
    let mut messages = Vec::new();
    let mut agreements = Vec::new();
    for root in &roots {
        let agree = agreement(code.encode(root)?.columns(), word.columns())?;
        if agree >= threshold {
            messages.push(root.clone());
            agreements.push(agree);
        }
    }
    let end = Instant::now();
    Ok(DecodeReport {
        messages,
        agreements,
        threshold,
        interpolation_degree: degree,
        candidates: roots.len(),
        timings: StageTimings {
            interpolate: interpolated - start,
            solve: solved - interpolated,
            prune: end - solved,
            total: end - start,
        },
    })
}

pub fn decode_johnson(word: &ReceivedWord, code: &CodeParams, epsilon: f64) -> Result<Vec<Poly>> {
    Ok(decode_johnson_report(word, code, epsilon)?.messages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::corrupt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_message(f: &FieldConfig, d: usize, rng: &mut ChaCha8Rng) -> Poly {
        Poly::from_u64s(f, &(0..=d).map(|_| rng.gen_range(0..f.p())).collect::<Vec<_>>())
    }

    #[test]
    fn clean_mult_word_decodes() {
        let f = FieldConfig::new(2013265921).unwrap();
        let code = CodeParams::mult(f.clone(), 16, 25, 100).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let msg = random_message(&f, 100, &mut rng);
        let word = corrupt(&code, &code.encode(&msg).unwrap(), 0, &mut rng).unwrap();
        let out = decode_mult_capacity(&word, &code, 0.5, &mut rng).unwrap();
        assert_eq!(out, vec![msg]);
    }

    #[test]
    fn corrupted_frs_word_decodes() {
        let f = FieldConfig::new(2013265921).unwrap();
        let code = CodeParams::frs(f.clone(), 16, 25, 100).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let msg = random_message(&f, 100, &mut rng);
        let word = corrupt(&code, &code.encode(&msg).unwrap(), 3, &mut rng).unwrap();
        let out = decode_frs_capacity(&word, &code, 0.5, &mut rng).unwrap();
        assert!(out.contains(&msg));
    }

    #[test]
    fn johnson_round_trip_small() {
        let f = FieldConfig::new(7919).unwrap();
        let code = CodeParams::mult(f.clone(), 32, 2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let msg = random_message(&f, 16, &mut rng);
        let word = corrupt(&code, &code.encode(&msg).unwrap(), 10, &mut rng).unwrap();
        let report = decode_johnson_report(&word, &code, 0.25).unwrap();
        assert!(report.messages.contains(&msg));
        assert!(report.agreements.iter().all(|&a| a >= report.threshold));
    }
}
