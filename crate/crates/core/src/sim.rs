//! Monte Carlo simulation of the helped schemes, exact small-instance error
//! probabilities by type enumeration, and exponent estimation.
//!
//! Trials are cut into fixed batches of [`BATCH_TRIALS`]. Batch `b` draws
//! from a ChaCha8 generator seeded with the master seed on stream `b`, so
//! the partition, and therefore every result bit, does not depend on how
//! many workers run the batches. Batch results are merged in batch order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Binomial, DiscreteCDF};
use statrs::function::beta::inv_beta_reg;

use crate::awgn::{flash_rate, AwgnParams, FlashDesign, HelpMode};
use crate::error::{domain, Error, Result};
use crate::modulo::{helper_covers, ModuloParams};
use crate::prob::{empirical_entropy, log_multinomial, log_sum_exp, type_enumerate, EmpiricalType};
use crate::value::ExponentValue;

/// Trials per independently seeded batch.
pub const BATCH_TRIALS: u64 = 4096;

/// Seeding plan. `stream_count` only sets the number of worker threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RngPlan {
    pub master_seed: u64,
    pub stream_count: usize,
}

impl RngPlan {
    pub fn new(master_seed: u64, stream_count: usize) -> Self {
        RngPlan {
            master_seed,
            stream_count: stream_count.max(1),
        }
    }

    /// Generator of batch `index`.
    pub fn batch_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(index);
        rng
    }
}

/// Runs `batch(rng, size)` over every batch and returns results in batch
/// order.
fn run_batches<T, F>(trials: u64, plan: RngPlan, batch: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let count = trials.div_ceil(BATCH_TRIALS);
    let job = |b: u64| {
        let size = BATCH_TRIALS.min(trials - b * BATCH_TRIALS);
        batch(&mut plan.batch_rng(b), size)
    };
    if plan.stream_count == 1 {
        return Ok((0..count).map(job).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.stream_count)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..count).into_par_iter().map(job).collect()))
}

/// Error counts by cause.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ErrorCauses {
    /// Noise outside the sphere, outside the helper set, or buffer overflow.
    pub helper_failure: u64,
    /// Wrong message despite successful help.
    pub decode_error: u64,
    pub none: u64,
}

/// Outcome of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub trials: u64,
    pub errors_total: u64,
    pub errors_by_cause: ErrorCauses,
    /// Mean of `‖x‖²/t` over trials that transmitted; `None` for schemes
    /// whose power is fixed by the constellation.
    pub realized_power_mean: Option<f64>,
    /// Quantization residuals larger than `Δ/2` (always 0 unless broken).
    pub residual_violations: u64,
    /// Block length used to normalize the exponent.
    pub n: u64,
    pub p_hat: f64,
    pub ci95: (f64, f64),
    pub exponent: ExponentEstimate,
}

impl SimResult {
    fn assemble(
        trials: u64,
        causes: ErrorCauses,
        realized_power_mean: Option<f64>,
        residual_violations: u64,
        n: u64,
    ) -> Self {
        let errors_total = causes.helper_failure + causes.decode_error;
        let p_hat = errors_total as f64 / trials as f64;
        let ci95 = clopper_pearson(errors_total, trials, 0.95);
        SimResult {
            trials,
            errors_total,
            errors_by_cause: causes,
            realized_power_mean,
            residual_violations,
            n,
            p_hat,
            ci95,
            exponent: exponent_from_counts(errors_total, trials, n),
        }
    }
}

/// Two-sided Clopper–Pearson interval for `errors` successes out of
/// `trials`. With zero errors the upper end is the rule-of-three bound
/// `3/trials`.
pub fn clopper_pearson(errors: u64, trials: u64, level: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let k = errors as f64;
    let alpha = 1.0 - level;
    if errors == 0 {
        return (0.0, (3.0 / n).min(1.0));
    }
    let lo = inv_beta_reg(k, n - k + 1.0, alpha / 2.0);
    let hi = if errors == trials {
        1.0
    } else {
        inv_beta_reg(k + 1.0, n - k, 1.0 - alpha / 2.0)
    };
    (lo.min(k / n), hi.max(k / n))
}

/// Central acceptance region `[lo, hi]` for the error count of `trials`
/// Bernoulli(`p`) draws at confidence `level`.
pub fn binomial_acceptance(p: f64, trials: u64, level: f64) -> Result<(u64, u64)> {
    if p <= 0.0 {
        return Ok((0, 0));
    }
    if p >= 1.0 {
        return Ok((trials, trials));
    }
    let b = Binomial::new(p, trials).map_err(|e| domain("p", e.to_string()))?;
    let alpha = 1.0 - level;
    Ok((b.inverse_cdf(alpha / 2.0), b.inverse_cdf(1.0 - alpha / 2.0)))
}

/// Empirical exponent `−ln(p̂)/n` with the interval mapped from the error
/// probability interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentEstimate {
    /// Infinite when no error was observed.
    pub point: ExponentValue,
    pub lower: ExponentValue,
    pub upper: ExponentValue,
    /// No errors observed: only `lower` is informative.
    pub censored: bool,
}

/// `−ln(p)/n` for a probability `p ∈ [0, 1]`.
pub fn exponent_from_probability(p: f64, n: u64) -> ExponentValue {
    if p <= 0.0 {
        return ExponentValue::Infinite;
    }
    ExponentValue::from_f64(-p.ln() / n as f64)
}

fn exponent_from_counts(errors: u64, trials: u64, n: u64) -> ExponentEstimate {
    let (lo, hi) = clopper_pearson(errors, trials, 0.95);
    let censored = errors == 0;
    ExponentEstimate {
        point: exponent_from_probability(errors as f64 / trials as f64, n),
        lower: exponent_from_probability(hi, n),
        upper: if censored {
            ExponentValue::Infinite
        } else {
            exponent_from_probability(lo, n)
        },
        censored,
    }
}

/// Exponent estimate of a finished run.
pub fn estimate_exponent(sr: &SimResult, n: u64) -> Result<ExponentEstimate> {
    if sr.trials == 0 {
        return Err(domain("trials", "must be positive"));
    }
    if n == 0 {
        return Err(domain("n", "must be positive"));
    }
    Ok(exponent_from_counts(sr.errors_total, sr.trials, n))
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(domain("trials", "must be positive"));
    }
    Ok(())
}

/// Flash-help segment of the AWGN scheme: cube codebook of step `Δ` inside
/// `[−A, A]^t`, helper sends the quantized noise, encoder subtracts it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AwgnFlashConfig {
    pub awgn: AwgnParams,
    pub design: FlashDesign,
    pub t: u64,
    /// Per-coordinate amplitude bound `A`.
    pub amplitude: f64,
}

impl AwgnFlashConfig {
    /// Configuration with the default amplitude `A = √P`.
    pub fn new(awgn: AwgnParams, design: FlashDesign, t: u64) -> Result<Self> {
        AwgnFlashConfig::with_amplitude(awgn, design, t, awgn.power.sqrt())
    }

    pub fn with_amplitude(awgn: AwgnParams, design: FlashDesign, t: u64, amplitude: f64) -> Result<Self> {
        if t == 0 {
            return Err(domain("t", "must be at least 1"));
        }
        if design.mode != HelpMode::FixedRate {
            return Err(domain("mode", "the flash simulator covers fixed-rate help only"));
        }
        let cfg = AwgnFlashConfig {
            awgn,
            design,
            t,
            amplitude,
        };
        let step = cfg.step()?;
        if !(step > 0.0 && step.is_finite()) {
            return Err(domain("step", format!("{step} is not positive")));
        }
        if !(amplitude >= step / 2.0 && amplitude.is_finite()) {
            return Err(domain("amplitude", format!("{amplitude} is below half the step {step}")));
        }
        Ok(cfg)
    }

    pub fn step(&self) -> Result<f64> {
        self.design.step(self.awgn.sigma2)
    }

    /// Grid points per coordinate, `⌊2A/Δ⌋ + 1`.
    pub fn points_per_coordinate(&self) -> Result<u64> {
        Ok((2.0 * self.amplitude / self.step()?).floor() as u64 + 1)
    }

    /// Rate of the cube codebook, nats per helped sample.
    pub fn cube_rate(&self) -> Result<f64> {
        Ok((self.points_per_coordinate()? as f64).ln())
    }

    /// Sphere-based rate `R′` of the flash segment, per block channel use.
    pub fn sphere_rate(&self) -> Result<f64> {
        let d = self.design;
        Ok(flash_rate(d.helper_rate, d.tau, d.slack, self.awgn.power, self.awgn.sigma2)?.rate)
    }

    /// Block length `n = round(t/τ)` the segment belongs to.
    pub fn block_length(&self) -> u64 {
        ((self.t as f64 / self.design.tau).round() as u64).max(self.t)
    }
}

#[derive(Default)]
struct FlashTally {
    causes: ErrorCauses,
    power_sum: f64,
    residual_violations: u64,
}

/// Simulates the helped segment `trials` times.
pub fn simulate_flash_awgn(cfg: &AwgnFlashConfig, trials: u64, rng: RngPlan) -> Result<SimResult> {
    check_trials(trials)?;
    let step = cfg.step()?;
    let points = cfg.points_per_coordinate()?;
    let sigma = cfg.awgn.sigma2.sqrt();
    let t = cfg.t as usize;
    let radius2 = cfg.t as f64 * cfg.awgn.sigma2 * (1.0 + cfg.design.slack);
    let a = cfg.amplitude;
    let half = step / 2.0;

    let tallies = run_batches(trials, rng, |rng, size| {
        let mut tally = FlashTally::default();
        let mut z = vec![0.0; t];
        for _ in 0..size {
            let mut energy = 0.0;
            for zi in z.iter_mut() {
                let g: f64 = StandardNormal.sample(rng);
                *zi = sigma * g;
                energy += *zi * *zi;
            }
            if energy > radius2 {
                tally.causes.helper_failure += 1;
                continue;
            }
            let mut wrong = false;
            let mut power = 0.0;
            for &zi in &z {
                let q = ((zi / step).floor() + 0.5) * step;
                let residual = zi - q;
                if !(-half..=half).contains(&residual) {
                    tally.residual_violations += 1;
                }
                let j = rng.random_range(0..points);
                let codeword = -a + j as f64 * step;
                let x = codeword - q;
                power += x * x;
                let y = x + zi;
                let decoded = ((y + a) / step + 0.5).floor();
                wrong |= decoded != j as f64;
            }
            tally.power_sum += power / t as f64;
            if wrong {
                tally.causes.decode_error += 1;
            } else {
                tally.causes.none += 1;
            }
        }
        tally
    })?;

    let mut causes = ErrorCauses::default();
    let mut power_sum = 0.0;
    let mut residual_violations = 0;
    for tl in tallies {
        causes.helper_failure += tl.causes.helper_failure;
        causes.decode_error += tl.causes.decode_error;
        causes.none += tl.causes.none;
        power_sum += tl.power_sum;
        residual_violations += tl.residual_violations;
    }
    let helped = trials - causes.helper_failure;
    let power = (helped > 0).then(|| power_sum / helped as f64);
    Ok(SimResult::assemble(trials, causes, power, residual_violations, cfg.block_length()))
}

/// Draws the type of `t` i.i.d. symbols.
fn draw_type(rng: &mut ChaCha8Rng, sampler: &WeightedAliasIndex<f64>, counts: &mut [u64], t: u64) {
    counts.iter_mut().for_each(|c| *c = 0);
    for _ in 0..t {
        counts[sampler.sample(rng)] += 1;
    }
}

fn alias(mp: &ModuloParams) -> Result<WeightedAliasIndex<f64>> {
    WeightedAliasIndex::new(mp.noise.probs().to_vec()).map_err(|e| Error::InvalidPmf(e.to_string()))
}

fn merge_failures(trials: u64, failures: Vec<u64>, n: u64) -> SimResult {
    let helper_failure: u64 = failures.into_iter().sum();
    let causes = ErrorCauses {
        helper_failure,
        decode_error: 0,
        none: trials - helper_failure,
    };
    SimResult::assemble(trials, causes, None, 0, n)
}

/// Fixed-rate helper: the helper describes `z^t` exactly when
/// `P(z^t) ≥ e^{−tθ}` and the encoder cancels it; otherwise the trial fails.
pub fn simulate_modulo_fixed(mp: &ModuloParams, theta: f64, t: u64, trials: u64, rng: RngPlan) -> Result<SimResult> {
    check_trials(trials)?;
    if t == 0 {
        return Err(domain("t", "must be at least 1"));
    }
    if theta.is_nan() {
        return Err(domain("theta", "is NaN"));
    }
    let sampler = alias(mp)?;
    let k = mp.k();
    let failures = run_batches(trials, rng, |rng, size| {
        let mut counts = vec![0u64; k];
        let mut fails = 0u64;
        for _ in 0..size {
            draw_type(rng, &sampler, &mut counts, t);
            let tp = EmpiricalType::new(counts.clone()).expect("nonempty type");
            if !helper_covers(tp.log_prob(&mp.noise), t, theta) {
                fails += 1;
            }
        }
        fails
    })?;
    Ok(merge_failures(trials, failures, t))
}

/// Exact helper-failure probability `Pr{P(z^t) < e^{−tθ}}`.
pub fn exact_error_modulo_fixed(mp: &ModuloParams, theta: f64, t: u64) -> Result<f64> {
    if theta.is_nan() {
        return Err(domain("theta", "is NaN"));
    }
    let p = &mp.noise;
    let terms: Vec<f64> = type_enumerate(mp.k(), t)?
        .filter_map(|tp| {
            let lp = tp.log_prob(p);
            (lp > f64::NEG_INFINITY && !helper_covers(lp, t, theta)).then(|| log_multinomial(&tp) + lp)
        })
        .collect();
    Ok(log_sum_exp(terms).exp().min(1.0))
}

/// Variable-rate helper parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariableRateConfig {
    pub helper_rate: f64,
    pub tau: f64,
    pub n: u64,
    /// Constant `c` of the type-index overhead `c (K−1) ln(t+1)`.
    pub overhead_const: f64,
}

impl VariableRateConfig {
    pub fn new(helper_rate: f64, tau: f64, n: u64) -> Result<Self> {
        VariableRateConfig::with_overhead(helper_rate, tau, n, 1.0)
    }

    pub fn with_overhead(helper_rate: f64, tau: f64, n: u64, overhead_const: f64) -> Result<Self> {
        if !(helper_rate >= 0.0 && helper_rate.is_finite()) {
            return Err(domain("helper_rate", format!("{helper_rate} is negative")));
        }
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(domain("tau", format!("{tau} is not in (0,1]")));
        }
        if !(overhead_const >= 0.0 && overhead_const.is_finite()) {
            return Err(domain("overhead_const", format!("{overhead_const} is negative")));
        }
        let cfg = VariableRateConfig {
            helper_rate,
            tau,
            n,
            overhead_const,
        };
        if cfg.segment_length() == 0 {
            return Err(domain("t", "round(n tau) is 0"));
        }
        Ok(cfg)
    }

    /// `t = round(nτ)`.
    pub fn segment_length(&self) -> u64 {
        (self.n as f64 * self.tau).round() as u64
    }

    /// Description length `L = t Ĥ + c (K−1) ln(t+1)` of a noise type.
    pub fn description_length(&self, counts: &[u64]) -> f64 {
        let t = self.segment_length() as f64;
        let k = counts.len() as f64;
        t * empirical_entropy(counts) + self.overhead_const * (k - 1.0) * (t + 1.0).ln()
    }

    pub fn overflows(&self, counts: &[u64]) -> bool {
        self.description_length(counts) >= self.n as f64 * self.helper_rate
    }
}

/// Variable-rate helper: the description overflows the `nR_h` buffer when
/// `L ≥ nR_h`.
pub fn simulate_modulo_variable(
    mp: &ModuloParams,
    cfg: &VariableRateConfig,
    trials: u64,
    rng: RngPlan,
) -> Result<SimResult> {
    check_trials(trials)?;
    let sampler = alias(mp)?;
    let k = mp.k();
    let t = cfg.segment_length();
    let failures = run_batches(trials, rng, |rng, size| {
        let mut counts = vec![0u64; k];
        let mut fails = 0u64;
        for _ in 0..size {
            draw_type(rng, &sampler, &mut counts, t);
            if cfg.overflows(&counts) {
                fails += 1;
            }
        }
        fails
    })?;
    Ok(merge_failures(trials, failures, cfg.n))
}

/// Exact overflow probability `Pr{L(z^t) ≥ nR_h}`.
pub fn exact_overflow_modulo(mp: &ModuloParams, cfg: &VariableRateConfig) -> Result<f64> {
    let p = &mp.noise;
    let t = cfg.segment_length();
    let terms: Vec<f64> = type_enumerate(mp.k(), t)?
        .filter_map(|tp| {
            let lp = tp.log_prob(p);
            (lp > f64::NEG_INFINITY && cfg.overflows(tp.counts())).then(|| log_multinomial(&tp) + lp)
        })
        .collect();
    Ok(log_sum_exp(terms).exp().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::gaussian::gaussian_sphere_tail;
    use crate::prob::Pmf;

    fn flash_cfg(t: u64, slack: f64) -> AwgnFlashConfig {
        let awgn = AwgnParams::new(1.0, 1.0).unwrap();
        let design = FlashDesign::new(0.5, 0.1, slack, HelpMode::FixedRate).unwrap();
        AwgnFlashConfig::new(awgn, design, t).unwrap()
    }

    fn binom_tail(n: u64, q: f64, from: u64) -> f64 {
        (from..=n)
            .map(|k| {
                let c = statrs::function::factorial::binomial(n, k);
                c * q.powi(k as i32) * (1.0 - q).powi((n - k) as i32)
            })
            .sum()
    }

    #[test]
    fn flash_has_no_conditional_decode_errors() {
        for seed in [1, 2, 3] {
            let r = simulate_flash_awgn(&flash_cfg(16, 0.5), 20_000, RngPlan::new(seed, 1)).unwrap();
            assert_eq!(r.errors_by_cause.decode_error, 0);
            assert_eq!(r.residual_violations, 0);
            assert!(r.errors_by_cause.helper_failure > 0);
            assert_eq!(r.errors_total, r.errors_by_cause.helper_failure);
            assert_eq!(r.errors_total + r.errors_by_cause.none, r.trials);
        }
    }

    #[test]
    fn flash_failure_rate_matches_chi_square_tail() {
        let cfg = flash_cfg(20, 0.0);
        let trials = 40_000;
        let r = simulate_flash_awgn(&cfg, trials, RngPlan::new(9, 1)).unwrap();
        let exact = gaussian_sphere_tail(20, 0.0).unwrap().prob;
        let (lo, hi) = binomial_acceptance(exact, trials, 0.999).unwrap();
        assert!((lo..=hi).contains(&r.errors_total), "{} not in [{lo},{hi}]", r.errors_total);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = flash_cfg(8, 1.0);
        let a = simulate_flash_awgn(&cfg, 10_000, RngPlan::new(5, 1)).unwrap();
        let b = simulate_flash_awgn(&cfg, 10_000, RngPlan::new(5, 3)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = simulate_flash_awgn(&cfg, 10_000, RngPlan::new(6, 1)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn flash_config_validation() {
        let awgn = AwgnParams::new(1.0, 1.0).unwrap();
        let design = FlashDesign::new(0.5, 0.1, 1.0, HelpMode::FixedRate).unwrap();
        assert!(AwgnFlashConfig::new(awgn, design, 0).is_err());
        let step = design.step(1.0).unwrap();
        assert!(AwgnFlashConfig::with_amplitude(awgn, design, 4, step / 3.0).is_err());
        let var = FlashDesign::new(0.5, 0.1, 1.0, HelpMode::VariableRate).unwrap();
        assert!(AwgnFlashConfig::new(awgn, var, 4).is_err());
        let cfg = AwgnFlashConfig::new(awgn, design, 64).unwrap();
        assert_eq!(cfg.block_length(), 640);
        assert!(cfg.cube_rate().unwrap() > 0.0);
    }

    #[test]
    fn exact_fixed_examples() {
        let mp = ModuloParams::new(Pmf::binary(0.1).unwrap());
        let e = exact_error_modulo_fixed(&mp, 1.0, 12).unwrap();
        assert!((e - binom_tail(12, 0.1, 5)).abs() < 1e-12);
        assert_eq!(exact_error_modulo_fixed(&mp, 10.0f64.ln() + 1e-9, 12).unwrap(), 0.0);
        let u = ModuloParams::new(Pmf::uniform(3).unwrap());
        let all = exact_error_modulo_fixed(&u, 3f64.ln() - 0.01, 5).unwrap();
        assert!((all - 1.0).abs() < 1e-12);
    }

    #[test]
    fn modulo_fixed_full_support_never_fails() {
        let mp = ModuloParams::new(Pmf::new(vec![0.7, 0.2, 0.1]).unwrap());
        let theta = 10f64.ln();
        let r = simulate_modulo_fixed(&mp, theta, 30, 20_000, RngPlan::new(3, 2)).unwrap();
        assert_eq!(r.errors_total, 0);
        assert!(r.exponent.censored);
        assert_eq!(r.realized_power_mean, None);
    }

    #[test]
    fn modulo_fixed_agrees_with_exact() {
        let mp = ModuloParams::new(Pmf::binary(0.1).unwrap());
        let trials = 100_000;
        let r = simulate_modulo_fixed(&mp, 1.0, 12, trials, RngPlan::new(11, 1)).unwrap();
        let exact = exact_error_modulo_fixed(&mp, 1.0, 12).unwrap();
        let (lo, hi) = binomial_acceptance(exact, trials, 0.999).unwrap();
        assert!((lo..=hi).contains(&r.errors_total));
        assert!(r.ci95.0 <= r.p_hat && r.p_hat <= r.ci95.1);
    }

    #[test]
    fn variable_rate_examples() {
        let mp = ModuloParams::new(Pmf::binary(0.1).unwrap());
        let zero = VariableRateConfig::new(0.0, 0.3, 50).unwrap();
        assert_eq!(exact_overflow_modulo(&mp, &zero).unwrap(), 1.0);
        let big = VariableRateConfig::new(5.0, 0.3, 50).unwrap();
        assert_eq!(exact_overflow_modulo(&mp, &big).unwrap(), 0.0);
        let r = simulate_modulo_variable(&mp, &big, 5_000, RngPlan::new(1, 1)).unwrap();
        assert_eq!(r.errors_total, 0);

        let cfg = VariableRateConfig::new(0.1, 0.5, 60).unwrap();
        let exact = exact_overflow_modulo(&mp, &cfg).unwrap();
        assert!(exact > 0.01 && exact < 0.99);
        let trials = 50_000;
        let r = simulate_modulo_variable(&mp, &cfg, trials, RngPlan::new(2, 1)).unwrap();
        let (lo, hi) = binomial_acceptance(exact, trials, 0.999).unwrap();
        assert!((lo..=hi).contains(&r.errors_total));
        assert!(VariableRateConfig::new(0.1, 0.001, 100).is_err());
    }

    #[test]
    fn exponent_estimates() {
        let e = exponent_from_probability((-10.0f64 * 0.1).exp(), 10).to_f64();
        assert!((e - 0.1).abs() < 1e-15);
        let est = exponent_from_counts(0, 1_000_000, 100);
        assert!(est.censored);
        assert!(est.point.is_infinite());
        assert!((est.lower.to_f64() - (1e6f64 / 3.0).ln() / 100.0).abs() < 1e-12);
        assert!(est.lower.to_f64() >= 0.127);
        let est = exponent_from_counts(37, 10_000, 20);
        assert!(!est.censored);
        assert!(est.lower <= est.point && est.point <= est.upper);
    }

    #[test]
    fn clopper_pearson_contains_estimate() {
        for (k, n) in [(0, 10), (1, 10), (5, 10), (10, 10), (3, 1_000_000)] {
            let (lo, hi) = clopper_pearson(k, n, 0.95);
            let p = k as f64 / n as f64;
            assert!(lo <= p && p <= hi && lo >= 0.0 && hi <= 1.0);
        }
        // textbook value: 1 of 10 gives [0.00253, 0.44502]
        let (lo, hi) = clopper_pearson(1, 10, 0.95);
        assert!((lo - 0.002_529).abs() < 1e-5 && (hi - 0.445_016).abs() < 1e-5);
    }
}
