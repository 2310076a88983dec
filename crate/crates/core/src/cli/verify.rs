//! `verify`: oracle-equivalence suites with their worst observed deviation.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use super::format::fmt_num;
use super::{par_map, CliError, CliResult, VerifyArgs};
use crate::awgn::{achievable_exponent, capacity_awgn, wsp_awgn, FlashScheme, GaussianRandomCoding};
use crate::mac::{classify_rate_point, wsp_mac, MacParams, RateClass, RatePair};
use crate::modulo::{
    helper_failure_exponent, helper_set_log_size, min_divergence_with_entropy, overflow_exponent,
    overflow_exponent_dual, r_of_theta, theta_max, theta_min, theta_saturation, ModuloParams,
};
use crate::oracle::{default_resolution, grid_failure_exponent, grid_min_divergence_with_entropy, grid_r_of_theta};
use crate::prob::{gaussian_sphere_tail, shannon_entropy, Pmf};
use crate::sim::{
    binomial_acceptance, exact_error_modulo_fixed, exact_overflow_modulo, simulate_flash_awgn, simulate_modulo_fixed,
    simulate_modulo_variable, AwgnFlashConfig, RngPlan, VariableRateConfig,
};
use crate::value::Regime;

/// Suite names, in report order.
pub const SUITES: [&str; 6] = [
    "dual-vs-grid",
    "overflow-primal-dual",
    "counting-law",
    "monte-carlo-vs-exact",
    "awgn-sandwich",
    "mac-classification",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub checks: usize,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Random pmf: a flat Dirichlet draw mixed with 10% of the uniform law.
pub fn random_pmf(rng: &mut ChaCha8Rng, k: usize) -> Pmf {
    let w: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.iter().map(|x| 0.9 * x / s + 0.1 / k as f64).collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    Pmf::new(p).expect("normalized")
}

fn dual_vs_grid(quick: bool, seed: u64, workers: usize) -> CliResult<(f64, usize)> {
    let count = if quick { 12 } else { 50 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Pmf, [f64; 3])> = (0..count)
        .map(|i| {
            let p = random_pmf(&mut rng, 2 + i % 2);
            let u: [f64; 3] = [rng.random(), rng.random(), rng.random()];
            (p, u)
        })
        .collect();
    let devs = par_map(workers, cases.len(), |i| {
        let (p, u) = &cases[i];
        let res = default_resolution(p.len());
        let mut dev: f64 = 0.0;
        let (t0, ts) = (theta_min(p), theta_saturation(p));
        let th = t0 + (0.02 + 0.96 * u[0]) * (ts - t0);
        let dual = r_of_theta(p, th).expect("theta >= 0").to_f64();
        dev = dev.max((dual - grid_r_of_theta(p, th, res).unwrap_or(f64::NEG_INFINITY)).abs());
        let (h, tm) = (shannon_entropy(p), theta_max(p));
        let th = h + (0.02 + 0.96 * u[1]) * (tm - h);
        let dual = helper_failure_exponent(p, th).expect("theta >= 0").to_f64();
        dev = dev.max((dual - grid_failure_exponent(p, th, res).unwrap_or(f64::INFINITY)).abs());
        let ln_k = (p.len() as f64).ln();
        let hh = h + (0.02 + 0.96 * u[2]) * (ln_k - h);
        let primal = min_divergence_with_entropy(p, hh).to_f64();
        dev.max((primal - grid_min_divergence_with_entropy(p, hh, res).unwrap_or(f64::INFINITY)).abs())
    })?;
    Ok((devs.into_iter().fold(0.0, f64::max), 3 * count))
}

fn overflow_primal_dual(quick: bool, seed: u64) -> CliResult<(f64, usize)> {
    let count = if quick { 20 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut dev: f64 = 0.0;
    for i in 0..count {
        let p = random_pmf(&mut rng, 2 + i % 3);
        let ln_k = (p.len() as f64).ln();
        let tau: f64 = rng.random_range(0.05..0.95);
        let h = shannon_entropy(&p);
        // between τH (exponent 0) and τ ln K (infinite)
        let rh = tau * (h + rng.random_range(0.05..0.95) * (ln_k - h));
        let primal = overflow_exponent(&p, rh, tau)?.to_f64();
        let dual = overflow_exponent_dual(&p, rh, tau)?.to_f64();
        dev = dev.max((dual - tau * primal).abs());
    }
    Ok((dev, count))
}

fn counting_law(quick: bool) -> CliResult<(f64, usize)> {
    let p = Pmf::binary(0.1).expect("valid");
    let theta = 1.0;
    let r = r_of_theta(&p, theta)?.to_f64();
    let top = if quick { 14 } else { 20 };
    // deviation measured in units of ln t / t, so the tolerance is C
    let mut worst: f64 = 0.0;
    for t in 8..=top {
        let ls = helper_set_log_size(&p, t, theta)?.to_f64();
        let tf = t as f64;
        worst = worst.max((ls / tf - r).abs() / (tf.ln() / tf));
    }
    let at12 = helper_set_log_size(&p, 12, theta)?.to_f64();
    if (at12 - 794f64.ln()).abs() > 1e-9 {
        worst = f64::INFINITY;
    }
    Ok((worst, top as usize - 7 + 1))
}

/// Largest standardized gap `|k − np| / √(np(1−p))` among runs whose count
/// also falls in the 99.9% acceptance interval; a count outside it reports
/// infinity.
fn monte_carlo_vs_exact(quick: bool, seed: u64, workers: usize) -> CliResult<(f64, usize)> {
    let trials = if quick { 20_000 } else { 200_000 };
    let plan = RngPlan::new(seed, workers);
    let mut worst: f64 = 0.0;
    let mut gauge = |k: u64, p: f64| -> CliResult {
        let (lo, hi) = binomial_acceptance(p, trials, 0.999)?;
        let n = trials as f64;
        let z = if (lo..=hi).contains(&k) {
            (k as f64 - n * p).abs() / (n * p * (1.0 - p)).sqrt().max(1e-300)
        } else {
            f64::INFINITY
        };
        worst = worst.max(z);
        Ok(())
    };
    let mp = ModuloParams::new(Pmf::binary(0.1).expect("valid"));
    let r = simulate_modulo_fixed(&mp, 1.0, 12, trials, plan)?;
    gauge(r.errors_total, exact_error_modulo_fixed(&mp, 1.0, 12)?)?;

    let cfg = VariableRateConfig::new(0.1, 0.5, 60)?;
    let r = simulate_modulo_variable(&mp, &cfg, trials, plan)?;
    gauge(r.errors_total, exact_overflow_modulo(&mp, &cfg)?)?;

    let awgn = crate::awgn::AwgnParams::new(1.0, 1.0)?;
    let design = crate::awgn::FlashDesign::new(0.5, 0.1, 0.0, crate::awgn::HelpMode::FixedRate)?;
    let flash = AwgnFlashConfig::new(awgn, design, 20)?;
    let r = simulate_flash_awgn(&flash, trials, plan)?;
    gauge(r.errors_total, gaussian_sphere_tail(20, 0.0)?.prob)?;
    if r.errors_by_cause.decode_error != 0 {
        worst = f64::INFINITY;
    }
    Ok((worst, 3))
}

/// Counts grid points where achievable > WSP or the regimes disagree away
/// from `R = R_h` (where WSP is infinite and the achievable value finite).
fn awgn_sandwich(quick: bool) -> CliResult<(f64, usize)> {
    let points = if quick { 100 } else { 400 };
    let mut bad = 0usize;
    let mut total = 0;
    for &(gamma, rh) in &[(1.0, 0.5), (3.0, 0.2), (0.5, 1.0)] {
        let c = capacity_awgn(gamma)?;
        let provider = GaussianRandomCoding::new(gamma);
        let hi = 1.5 * (rh + c);
        for i in 0..points {
            let r = hi * (i as f64 + 0.5) / points as f64;
            let w = wsp_awgn(r, gamma, rh)?;
            let a = achievable_exponent(r, gamma, rh, FlashScheme::OptimizedLimit, &provider)?;
            total += 1;
            if a.to_f64() > w.to_f64() + 1e-12 || a.regime() != w.regime() {
                bad += 1;
            }
        }
    }
    Ok((bad as f64, total))
}

fn mac_classification(quick: bool) -> CliResult<(f64, usize)> {
    let n = if quick { 60 } else { 200 };
    let mac = MacParams::from_snr(1.0, 1.0)?;
    let rh = 0.2;
    let mut bad = 0usize;
    for i in 0..n {
        for j in 0..n {
            let rp = RatePair::new(0.9 * i as f64 / (n - 1) as f64, 0.9 * j as f64 / (n - 1) as f64)?;
            let class = classify_rate_point(rp, &mac, rh);
            let w = wsp_mac(rp, &mac, rh);
            let expect = match w.regime() {
                Regime::Infinite => RateClass::InfiniteExponent,
                Regime::Zero => RateClass::ZeroExponent,
                Regime::Finite => RateClass::FiniteExponent,
            };
            if class != expect {
                bad += 1;
            }
        }
    }
    Ok((bad as f64, n * n))
}

/// Runs every suite; `tamper` forces the named suite's tolerance below any
/// deviation.
pub fn run_suites(quick: bool, seed: u64, workers: usize, tamper: Option<&str>) -> CliResult<Vec<SuiteReport>> {
    if let Some(t) = tamper {
        if !SUITES.contains(&t) {
            return Err(CliError::Usage(format!("unknown suite `{t}`")));
        }
    }
    let mut out = Vec::new();
    for name in SUITES {
        let start = Instant::now();
        let ((dev, checks), tol) = match name {
            "dual-vs-grid" => (dual_vs_grid(quick, seed, workers)?, 2e-3),
            "overflow-primal-dual" => (overflow_primal_dual(quick, seed)?, 1e-9),
            "counting-law" => (counting_law(quick)?, 2.0),
            "monte-carlo-vs-exact" => (monte_carlo_vs_exact(quick, seed, workers)?, 4.0),
            "awgn-sandwich" => (awgn_sandwich(quick)?, 0.0),
            "mac-classification" => (mac_classification(quick)?, 0.0),
            _ => unreachable!(),
        };
        let tolerance = if tamper == Some(name) { -1.0 } else { tol };
        out.push(SuiteReport {
            name,
            max_deviation: dev,
            tolerance,
            checks,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(out)
}

pub fn verify(a: &VerifyArgs, stdout: &mut dyn Write) -> CliResult {
    let reports = run_suites(a.quick, a.seed, a.workers, a.tamper.as_deref())?;
    writeln!(stdout, "suite,status,max_deviation,tolerance,checks,seconds")?;
    for r in &reports {
        writeln!(
            stdout,
            "{},{},{},{},{},{:.2}",
            r.name,
            if r.passed() { "pass" } else { "fail" },
            fmt_num(r.max_deviation),
            fmt_num(r.tolerance),
            r.checks,
            r.seconds
        )?;
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("suites failed: {}", failed.join(", "))))
    }
}
