//! `simulate`: one JSON line per parameter combination plus a summary CSV.
//!
//! Records carry no timestamp and no worker count, so repeated runs with the
//! same seed are byte-identical. The summary CSV header line is stamped.

use std::io::Write;

use serde::Serialize;

use super::{parse_list, read_pmf, CliError, CliResult, PowerPolicy, RunManifest, Scheme, SimulateArgs};
use super::format::fmt_num;
use crate::awgn::{AwgnParams, FlashDesign, HelpMode};
use crate::error::Error;
use crate::modulo::{theta_max, ModuloParams};
use crate::prob::Pmf;
use crate::sim::{
    binomial_acceptance, exact_error_modulo_fixed, exact_overflow_modulo, simulate_flash_awgn, simulate_modulo_fixed,
    simulate_modulo_variable, AwgnFlashConfig, RngPlan, SimResult, VariableRateConfig,
};

pub const SUMMARY_HEADER: &str = "index,scheme,trials,errors_total,helper_failure,decode_error,p_hat,ci_lo,ci_hi,n,\
exponent,exponent_lower,exponent_upper,censored,realized_power,exact_p";

/// Noise samples one configuration may draw (trials × block length).
pub const SAMPLE_BUDGET: f64 = 1e12;

fn guard_samples(trials: u64, t: u64) -> CliResult {
    let samples = trials as f64 * t as f64;
    if samples > SAMPLE_BUDGET {
        return Err(CliError::Guard(format!(
            "{trials} trials of length {t} need {samples:e} samples, over the budget of {SAMPLE_BUDGET:e}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct Check {
    name: &'static str,
    held: bool,
}

#[derive(Debug, Clone, Serialize)]
struct FlashReport {
    step: f64,
    points_per_coordinate: u64,
    cube_rate: f64,
    sphere_rate: f64,
    /// `P + σ²(1+s)`, the bound the realized power is compared with.
    power_reference: f64,
    power_exceeds_p: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
struct Exact {
    prob: f64,
    acceptance99: (u64, u64),
    within: bool,
}

#[derive(Serialize)]
struct Record<'a> {
    manifest: &'a RunManifest<'a, SimulateArgs>,
    index: usize,
    scheme: Scheme,
    params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    flash: Option<FlashReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<Exact>,
    result: &'a SimResult,
    checks: Vec<Check>,
}

struct Outcome {
    params: serde_json::Value,
    flash: Option<FlashReport>,
    exact: Option<Exact>,
    result: SimResult,
    checks: Vec<Check>,
}

/// Cartesian product of the parameter lists, last list varying fastest.
fn product(lists: &[Vec<f64>]) -> Vec<Vec<f64>> {
    lists.iter().fold(vec![vec![]], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

fn exact_with_acceptance(prob: Result<f64, Error>, r: &SimResult) -> CliResult<Option<Exact>> {
    match prob {
        Ok(prob) => {
            let (lo, hi) = binomial_acceptance(prob, r.trials, 0.99)?;
            Ok(Some(Exact {
                prob,
                acceptance99: (lo, hi),
                within: (lo..=hi).contains(&r.errors_total),
            }))
        }
        // the oracle is optional: too many types just leaves it out
        Err(Error::EnumerationGuard { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn run_flash(a: &SimulateArgs, v: &[f64], plan: RngPlan) -> CliResult<Outcome> {
    let (gamma, rh, tau, slack, t) = (v[0], v[1], v[2], v[3], v[4]);
    if t < 1.0 || t.fract() != 0.0 {
        return Err(CliError::Usage(format!("--length {t} is not a positive integer")));
    }
    let awgn = AwgnParams::from_snr(gamma)?;
    let design = FlashDesign::new(rh, tau, slack, HelpMode::FixedRate)?;
    let cfg = AwgnFlashConfig::new(awgn, design, t as u64)?;
    guard_samples(a.trials, t as u64)?;
    let result = simulate_flash_awgn(&cfg, a.trials, plan)?;
    let exceeds = result.realized_power_mean.map(|p| p > awgn.power);
    let report = FlashReport {
        step: cfg.step()?,
        points_per_coordinate: cfg.points_per_coordinate()?,
        cube_rate: cfg.cube_rate()?,
        sphere_rate: cfg.sphere_rate()?,
        power_reference: awgn.power + awgn.sigma2 * (1.0 + slack),
        power_exceeds_p: exceeds,
    };
    let mut checks = vec![
        Check {
            name: "conditional_decode_errors_zero",
            held: result.errors_by_cause.decode_error == 0,
        },
        Check {
            name: "quantization_residual_bound",
            held: result.residual_violations == 0,
        },
    ];
    if a.power_policy == PowerPolicy::Strict {
        checks.push(Check {
            name: "realized_power_within_p",
            held: exceeds != Some(true),
        });
    }
    Ok(Outcome {
        params: serde_json::json!({"gamma": gamma, "rate_helper": rh, "tau": tau, "slack": slack, "t": t as u64}),
        flash: Some(report),
        exact: None,
        result,
        checks,
    })
}

fn run_fixed(a: &SimulateArgs, p: &Pmf, v: &[f64], plan: RngPlan) -> CliResult<Outcome> {
    let (theta, t) = (v[0], v[1]);
    if t < 1.0 || t.fract() != 0.0 {
        return Err(CliError::Usage(format!("--length {t} is not a positive integer")));
    }
    if !(theta >= 0.0) {
        return Err(CliError::Usage(format!("--theta {theta} is negative")));
    }
    let mp = ModuloParams::new(p.clone());
    let t = t as u64;
    guard_samples(a.trials, t)?;
    let result = simulate_modulo_fixed(&mp, theta, t, a.trials, plan)?;
    let exact = exact_with_acceptance(exact_error_modulo_fixed(&mp, theta, t), &result)?;
    let mut checks = Vec::new();
    if theta >= theta_max(p) {
        checks.push(Check {
            name: "full_support_theta_zero_errors",
            held: result.errors_total == 0,
        });
    }
    Ok(Outcome {
        params: serde_json::json!({"pmf": p.probs(), "theta": theta, "t": t}),
        flash: None,
        exact,
        result,
        checks,
    })
}

fn run_variable(a: &SimulateArgs, p: &Pmf, v: &[f64], plan: RngPlan) -> CliResult<Outcome> {
    let (rh, tau, n, c) = (v[0], v[1], v[2], v[3]);
    if n < 1.0 || n.fract() != 0.0 {
        return Err(CliError::Usage(format!("--length {n} is not a positive integer")));
    }
    let mp = ModuloParams::new(p.clone());
    let cfg = VariableRateConfig::with_overhead(rh, tau, n as u64, c)?;
    guard_samples(a.trials, cfg.segment_length())?;
    let result = simulate_modulo_variable(&mp, &cfg, a.trials, plan)?;
    let exact = exact_with_acceptance(exact_overflow_modulo(&mp, &cfg), &result)?;
    let ln_k = (p.len() as f64).ln();
    let t = cfg.segment_length() as f64;
    let overhead = c * (p.len() as f64 - 1.0) * (t + 1.0).ln();
    let mut checks = Vec::new();
    if tau < rh / ln_k && overhead < n * rh - t * ln_k {
        checks.push(Check {
            name: "margin_zero_overflows",
            held: result.errors_total == 0,
        });
    }
    Ok(Outcome {
        params: serde_json::json!({
            "pmf": p.probs(), "rate_helper": rh, "tau": tau, "n": n as u64,
            "t": cfg.segment_length(), "overhead_const": c
        }),
        flash: None,
        exact,
        result,
        checks,
    })
}

pub fn simulate(a: &SimulateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let plan = RngPlan::new(a.seed, a.workers);
    let lists: Vec<Vec<f64>> = match a.scheme {
        Scheme::AwgnFlash => vec![
            parse_list("gamma", &a.gamma)?,
            parse_list("rate-helper", &a.rate_helper)?,
            parse_list("tau", &a.tau)?,
            parse_list("slack", &a.slack)?,
            parse_list("length", &a.length)?,
        ],
        Scheme::ModuloFixed => vec![parse_list("theta", &a.theta)?, parse_list("length", &a.length)?],
        Scheme::ModuloVariable => vec![
            parse_list("rate-helper", &a.rate_helper)?,
            parse_list("tau", &a.tau)?,
            parse_list("length", &a.length)?,
            parse_list("overhead-const", &a.overhead_const)?,
        ],
    };
    let pmf = match a.scheme {
        Scheme::AwgnFlash => None,
        _ => Some(read_pmf(&a.pmf)?),
    };
    let manifest = RunManifest::new("simulate", Some(a.seed), a);
    let mut json = super::open_out(&a.out, stdout)?;
    let mut summary: Vec<String> = Vec::new();
    let mut failed: Vec<String> = Vec::new();
    for (index, v) in product(&lists).iter().enumerate() {
        let o = match a.scheme {
            Scheme::AwgnFlash => run_flash(a, v, plan)?,
            Scheme::ModuloFixed => run_fixed(a, pmf.as_ref().expect("pmf"), v, plan)?,
            Scheme::ModuloVariable => run_variable(a, pmf.as_ref().expect("pmf"), v, plan)?,
        };
        let rec = Record {
            manifest: &manifest,
            index,
            scheme: a.scheme,
            params: o.params.clone(),
            flash: o.flash.clone(),
            exact: o.exact.clone(),
            result: &o.result,
            checks: o.checks.clone(),
        };
        writeln!(json, "{}", serde_json::to_string(&rec).expect("record serializes"))?;
        for c in o.checks.iter().filter(|c| !c.held) {
            failed.push(format!("{} (record {index})", c.name));
        }
        let r = &o.result;
        let u = a.units;
        summary.push(format!(
            "{index},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            scheme_name(a.scheme),
            r.trials,
            r.errors_total,
            r.errors_by_cause.helper_failure,
            r.errors_by_cause.decode_error,
            fmt_num(r.p_hat),
            fmt_num(r.ci95.0),
            fmt_num(r.ci95.1),
            r.n,
            u.exponent(r.exponent.point),
            u.exponent(r.exponent.lower),
            u.exponent(r.exponent.upper),
            r.exponent.censored,
            r.realized_power_mean.map(fmt_num).unwrap_or_default(),
            o.exact.as_ref().map(|e| fmt_num(e.prob)).unwrap_or_default(),
        ));
    }
    json.flush()?;
    drop(json);

    let stamped = RunManifest::new("simulate", Some(a.seed), a).stamped();
    let mut text = format!("# {}\n{SUMMARY_HEADER}\n", serde_json::to_string(&stamped).expect("manifest"));
    for line in summary {
        text.push_str(&line);
        text.push('\n');
    }
    match &a.out {
        Some(path) => {
            let mut p = path.as_os_str().to_owned();
            p.push(".summary.csv");
            std::fs::write(p, text)?;
        }
        None => stderr.write_all(text.as_bytes())?,
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(failed.join(", ")))
    }
}

fn scheme_name(s: Scheme) -> &'static str {
    match s {
        Scheme::AwgnFlash => "awgn-flash",
        Scheme::ModuloFixed => "modulo-fixed",
        Scheme::ModuloVariable => "modulo-variable",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_order() {
        let p = product(&[vec![1.0, 2.0], vec![3.0, 4.0, 5.0]]);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![1.0, 3.0]);
        assert_eq!(p[1], vec![1.0, 4.0]);
        assert_eq!(p[5], vec![2.0, 5.0]);
    }
}
