//! Random-subset models, Monte Carlo density estimates and exhaustive counts.
//!
//! Trial `i` of an experiment with seed `s` draws from its own ChaCha8 stream `(s, i)`, so
//! hit counts do not depend on how trials are spread over worker threads.

pub mod config;
mod exhaustive;
mod predicate;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{embed_random_middle, EmbedSpec, MiddleFill};
use crate::error::{domain, Result};
use crate::setcore::IntSet;

pub use exhaustive::{exhaustive_count, ExhaustiveCount, EXHAUSTIVE_MAX_N};
pub use predicate::Predicate;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// How subsets of `[0, n-1]` are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "p", rename_all = "lowercase")]
pub enum Model {
    /// Every subset equally likely.
    Uniform,
    /// Each element independently with probability `p`.
    Binomial(f64),
}

impl Model {
    pub fn validate(self) -> Result<Model> {
        match self {
            Model::Binomial(p) if !(p > 0.0 && p < 1.0) => {
                domain(format!("inclusion probability {p} is outside (0, 1)"))
            }
            m => Ok(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub n: u32,
    #[serde(flatten)]
    pub model: Model,
    pub predicate: String,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

/// The generator for trial `index` of an experiment seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform subset of `[0, n-1]`: 64 positions per draw, low positions first.
pub fn sample_uniform(n: u32, rng: &mut (impl RngCore + ?Sized)) -> IntSet {
    let mut words: Vec<u64> = (0..n.div_ceil(64)).map(|_| rng.next_u64()).collect();
    if !n.is_multiple_of(64) {
        *words.last_mut().unwrap() &= (1u64 << (n % 64)) - 1;
    }
    IntSet::from_words(0, words)
}

/// Each of `0..n` independently with probability `p`.
pub fn sample_binomial(n: u32, p: f64, rng: &mut (impl RngCore + ?Sized)) -> Result<IntSet> {
    Model::Binomial(p).validate()?;
    Ok((0..n as i64).filter(|_| rng.gen::<f64>() < p).collect())
}

pub fn sample(n: u32, model: Model, rng: &mut (impl RngCore + ?Sized)) -> Result<IntSet> {
    match model {
        Model::Uniform => Ok(sample_uniform(n, rng)),
        Model::Binomial(p) => sample_binomial(n, p, rng),
    }
}

/// Bitmask form of [`sample`] for `n <= 128`; consumes the generator identically.
fn sample_mask(n: u32, model: Model, rng: &mut (impl RngCore + ?Sized)) -> u128 {
    match model {
        Model::Uniform => {
            let lo = rng.next_u64() as u128;
            let hi = if n > 64 { (rng.next_u64() as u128) << 64 } else { 0 };
            let all = lo | hi;
            if n == 128 {
                all
            } else {
                all & ((1u128 << n) - 1)
            }
        }
        Model::Binomial(p) => {
            (0..n).filter(|_| rng.gen::<f64>() < p).fold(0u128, |m, i| m | (1u128 << i))
        }
    }
}

/// Wilson score interval for `hits` successes in `trials` at 95%.
pub fn wilson_interval(hits: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

/// Worker count from `MSTD_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("MSTD_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}

/// Counts the indices in `0..trials` where `f` holds, on at most `threads` workers.
pub fn count_parallel<F>(trials: u64, threads: Option<usize>, f: F) -> Result<u64>
where
    F: Fn(u64) -> Result<bool> + Sync + Send,
{
    let run = || {
        (0..trials)
            .into_par_iter()
            .map(|i| f(i).map(u64::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    };
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| crate::Error::Domain(format!("cannot start {t} workers: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Monte Carlo estimate of the fraction of subsets of `[0, n-1]` satisfying `predicate`.
pub fn estimate_density(
    n: u32,
    model: Model,
    predicate: &Predicate,
    trials: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    estimate_density_with(n, model, predicate, trials, seed, thread_cap())
}

/// [`estimate_density`] on an explicit number of workers (`None` for the global pool).
pub fn estimate_density_with(
    n: u32,
    model: Model,
    predicate: &Predicate,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<DensityEstimate> {
    if trials == 0 {
        return domain("need at least one trial");
    }
    let model = model.validate()?;
    let hits = count_parallel(trials, threads, |i| {
        let mut rng = trial_rng(seed, i);
        if n <= 128 {
            predicate.holds_mask(sample_mask(n, model, &mut rng))
        } else {
            predicate.holds(&sample(n, model, &mut rng)?)
        }
    })?;
    let (ci_low, ci_high) = wilson_interval(hits, trials);
    Ok(DensityEstimate {
        n,
        model,
        predicate: predicate.to_string(),
        trials,
        hits,
        estimate: hits as f64 / trials as f64,
        ci_low,
        ci_high,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingEstimate {
    pub m: i64,
    pub trials: u64,
    pub hits: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    /// `1 - 6·2^{-(s1+d1)n+1}`.
    pub floor: f64,
    /// Binomial standard error at the floor, `sqrt(c(1-c)/trials)`.
    pub sigma: f64,
    /// `rate >= floor - 3·sigma`.
    pub meets_floor: bool,
    /// `floor·2^{-4(s1+d1)n}`, a lower bound on the share of all subsets of `[0, m-1]`
    /// that have this structure and succeed.
    pub incidence_lower_bound: f64,
}

/// Fraction of random-middle embeddings of the seed set that keep its inequality.
pub fn embedding_success_rate(
    spec: &EmbedSpec,
    fill: MiddleFill,
    trials: u64,
    seed: u64,
) -> Result<EmbeddingEstimate> {
    if trials == 0 {
        return domain("need at least one trial");
    }
    let hits = count_parallel(trials, thread_cap(), |i| {
        spec.succeeds(&embed_random_middle(spec, fill, &mut trial_rng(seed, i)))
    })?;
    let (ci_low, ci_high) = wilson_interval(hits, trials);
    let rate = hits as f64 / trials as f64;
    let floor = spec.success_floor();
    let sigma = (floor * (1.0 - floor) / trials as f64).sqrt();
    Ok(EmbeddingEstimate {
        m: spec.m,
        trials,
        hits,
        rate,
        ci_low,
        ci_high,
        seed,
        floor,
        sigma,
        meets_floor: rate >= floor - 3.0 * sigma,
        incidence_lower_bound: floor * 2f64.powi(-4 * spec.block() as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.03 && hi < 0.04);
        let (lo, hi) = wilson_interval(100, 100);
        assert_eq!(hi, 1.0);
        assert!(lo < 1.0);
        let (lo, hi) = wilson_interval(45, 100_000);
        assert!(lo < 4.5e-4 && 4.5e-4 < hi);
    }

    #[test]
    fn mask_and_set_sampling_agree() {
        for n in [1u32, 7, 64, 65, 100, 128] {
            for model in [Model::Uniform, Model::Binomial(0.3)] {
                let a = sample(n, model, &mut trial_rng(5, n as u64)).unwrap();
                let mask = sample_mask(n, model, &mut trial_rng(5, n as u64));
                assert_eq!(a, predicate::mask_to_set(mask), "n = {n}, {model:?}");
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_hits() {
        let p = Predicate::SumDominant;
        let one = estimate_density_with(20, Model::Uniform, &p, 20_000, 11, Some(1)).unwrap();
        let three = estimate_density_with(20, Model::Uniform, &p, 20_000, 11, Some(3)).unwrap();
        assert_eq!(one.hits, three.hits);
        let always = estimate_density_with(10, Model::Uniform, &Predicate::Always, 500, 1, None).unwrap();
        assert_eq!(always.estimate, 1.0);
    }

    #[test]
    fn binomial_rejects_bad_probability() {
        assert!(sample_binomial(5, 1.5, &mut trial_rng(0, 0)).is_err());
        assert!(estimate_density(5, Model::Binomial(0.0), &Predicate::Always, 5, 0).is_err());
    }
}
