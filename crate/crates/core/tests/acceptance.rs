//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any failed.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use flashhelp::awgn::{
    achievable_exponent, capacity_awgn, quantizer_step, wsp_awgn, AwgnParams, FlashDesign, FlashScheme,
    GaussianRandomCoding, HelpMode,
};
use flashhelp::mac::{
    classify_rate_point, helped_rc_exponent_symmetric, optimal_help_split, wsp_mac, HelpSplit, MacParams,
    RateClass, RatePair,
};
use flashhelp::modulo::{
    helper_failure_exponent, helper_set_log_size, overflow_exponent, r_of_theta, theta_max, theta_min,
    theta_saturation, wsp_modulo, ModuloParams,
};
use flashhelp::oracle::{default_resolution, grid_failure_exponent, grid_min_divergence_with_entropy, grid_r_of_theta};
use flashhelp::prob::{gaussian_sphere_tail, shannon_entropy, Pmf};
use flashhelp::sim::{
    binomial_acceptance, clopper_pearson, exact_error_modulo_fixed, simulate_flash_awgn, simulate_modulo_fixed,
    simulate_modulo_variable, AwgnFlashConfig, RngPlan, VariableRateConfig,
};
use flashhelp::ExponentValue;

type Outcome = Result<String, String>;

/// `½[v − ln v − 1]`, `v = 1/(e^{0.2} − 1)`, evaluated with 30-digit
/// arithmetic.
const WSP_AT_0_6: f64 = 1.004_441_882_578_237_44;
const WSP_AT_0_6_STATED: f64 = 1.004_412;

fn binomial_upper_tail(n: u64, q: f64, from: u64) -> f64 {
    (from..=n)
        .map(|k| statrs::function::factorial::binomial(n, k) * q.powi(k as i32) * (1.0 - q).powi((n - k) as i32))
        .sum()
}

fn flash(t: u64, slack: f64) -> AwgnFlashConfig {
    let awgn = AwgnParams::new(1.0, 1.0).unwrap();
    let design = FlashDesign::new(0.5, 0.1, slack, HelpMode::FixedRate).unwrap();
    AwgnFlashConfig::new(awgn, design, t).unwrap()
}

fn zero_error_flash() -> Outcome {
    let cfg = flash(64, 1.0);
    let step = quantizer_step(1.0, 1.0, 0.5, 0.1).unwrap();
    if cfg.step().unwrap() != step {
        return Err("configured step differs from the design formula".into());
    }
    let start = Instant::now();
    let r = simulate_flash_awgn(&cfg, 100_000, RngPlan::new(1, 1)).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let msg = format!(
        "decode errors {} given {} in-sphere trials, {} sphere failures, {secs:.2} s",
        r.errors_by_cause.decode_error, r.errors_by_cause.none, r.errors_by_cause.helper_failure
    );
    if r.errors_by_cause.decode_error == 0 && r.residual_violations == 0 && secs < 30.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn chernoff_consistency() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (i, &t) in [50u64, 100, 200].iter().enumerate() {
        for (j, &s) in [0.5, 1.0, 2.0].iter().enumerate() {
            let tail = gaussian_sphere_tail(t, s).unwrap();
            let bound = -(t as f64) / 2.0 * (s - (1.0f64 + s).ln());
            if tail.ln_prob > bound {
                ok = false;
                notes.push(format!("t={t} s={s}: exact ln {} above bound {bound}", tail.ln_prob));
            }
            let trials = 1_000_000;
            let seed = 100 + 3 * i as u64 + j as u64;
            let r = simulate_flash_awgn(&flash(t, s), trials, RngPlan::new(seed, 1)).unwrap();
            let (lo, hi) = binomial_acceptance(tail.prob, trials, 0.99).unwrap();
            if !(lo..=hi).contains(&r.errors_total) || r.errors_by_cause.decode_error != 0 {
                ok = false;
                notes.push(format!("t={t} s={s}: {} not in [{lo},{hi}]", r.errors_total));
            }
        }
    }
    let msg = if notes.is_empty() {
        "9 configurations: exact tail below Chernoff bound, Monte Carlo counts inside 99% bands".to_string()
    } else {
        notes.join("; ")
    };
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn rate_grid() -> Vec<f64> {
    (0..400).map(|i| 1.2 * i as f64 / 399.0).collect()
}

fn wsp_regimes() -> Outcome {
    let (gamma, rh) = (1.0, 0.5);
    let edge = rh + capacity_awgn(gamma).unwrap();
    let mut prev = f64::INFINITY;
    for r in rate_grid() {
        let e = wsp_awgn(r, gamma, rh).unwrap();
        let good = if r < rh {
            e.is_infinite()
        } else if r > rh && r < edge {
            let strictly = e.to_f64() < prev;
            prev = e.to_f64();
            e.is_positive_finite() && strictly
        } else if r > edge {
            e.is_zero()
        } else {
            true
        };
        if !good {
            return Err(format!("regime violated at R={r}: {e}"));
        }
    }
    let spot = wsp_awgn(0.6, gamma, rh).unwrap().to_f64();
    let dev = (spot - WSP_AT_0_6).abs();
    let msg = format!(
        "regimes hold on 400 points; E_wsp(0.6)={spot:.10} vs 30-digit oracle {WSP_AT_0_6:.10} (|d|={dev:.1e}); \
         the stated literal {WSP_AT_0_6_STATED} differs from that oracle by {:.1e}",
        (WSP_AT_0_6 - WSP_AT_0_6_STATED).abs()
    );
    if dev <= 1e-6 && (edge - 0.846_574).abs() < 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn sandwich() -> Outcome {
    let (gamma, rh) = (1.0, 0.5);
    let c = capacity_awgn(gamma).unwrap();
    let provider = GaussianRandomCoding::new(gamma);
    let ach = |r: f64| achievable_exponent(r, gamma, rh, FlashScheme::OptimizedLimit, &provider).unwrap();
    let wsp = |r: f64| wsp_awgn(r, gamma, rh).unwrap();
    for r in rate_grid() {
        if ach(r) > wsp(r) {
            return Err(format!("achievable {} above converse {} at R={r}", ach(r), wsp(r)));
        }
    }
    let eps = 1e-9;
    let boundaries_agree = ach(rh - eps).is_infinite()
        && wsp(rh - eps).is_infinite()
        && ach(rh + eps).is_positive_finite()
        && wsp(rh + eps).is_positive_finite()
        && ach(rh + c - eps).is_positive_finite()
        && wsp(rh + c - eps).is_positive_finite()
        && ach(rh + c).is_zero()
        && wsp(rh + c).is_zero();
    if boundaries_agree {
        Ok("achievable <= converse on 400 points; both switch regime at R_h and R_h + C0".into())
    } else {
        Err("regime boundaries differ".into())
    }
}

fn flat_dirichlet(rng: &mut ChaCha8Rng, k: usize) -> Pmf {
    let w: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.iter().map(|x| x / s).collect();
    let head: f64 = p[..k - 1].iter().sum();
    p[k - 1] = 1.0 - head;
    Pmf::new(p).unwrap()
}

fn dual_vs_grid() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let p = flat_dirichlet(&mut rng, 2 + i % 2);
        let res = default_resolution(p.len());
        let (t0, ts) = (theta_min(&p), theta_saturation(&p));
        let th = t0 + rng.random_range(0.0..1.0) * (ts - t0);
        let r = r_of_theta(&p, th).unwrap().to_f64();
        worst = worst.max((r - grid_r_of_theta(&p, th, res).unwrap()).abs());
        let (h, tm) = (shannon_entropy(&p), theta_max(&p));
        let th = h + rng.random_range(0.0..1.0) * (tm - h);
        let e = helper_failure_exponent(&p, th).unwrap().to_f64();
        worst = worst.max((e - grid_failure_exponent(&p, th, res).unwrap()).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    let msg = format!("50 pmfs (K=2,3): max |dual - grid| = {worst:.2e}, {secs:.2} s");
    if worst <= 2e-3 && secs < 120.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn counting_law() -> Outcome {
    let p = Pmf::binary(0.1).unwrap();
    let at12 = helper_set_log_size(&p, 12, 1.0).unwrap().to_f64();
    if (at12 - 794f64.ln()).abs() > 1e-12 {
        return Err(format!("ln|set| at t=12 is {at12}, expected ln 794"));
    }
    let r = r_of_theta(&p, 1.0).unwrap().to_f64();
    let c = (8..=20u64)
        .map(|t| {
            let tf = t as f64;
            let ls = helper_set_log_size(&p, t, 1.0).unwrap().to_f64();
            (ls / tf - r).abs() * tf / tf.ln()
        })
        .fold(0.0, f64::max);
    let msg = format!("ln|set|(t=12) = ln 794; smallest C covering t=8..20 is {c:.3}");
    if c <= 2.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn exact_failure() -> Outcome {
    let mp = ModuloParams::new(Pmf::binary(0.1).unwrap());
    let exact = exact_error_modulo_fixed(&mp, 1.0, 12).unwrap();
    let direct = binomial_upper_tail(12, 0.1, 5);
    let trials = 1_000_000;
    let r = simulate_modulo_fixed(&mp, 1.0, 12, trials, RngPlan::new(3, 1)).unwrap();
    let (lo, hi) = clopper_pearson(r.errors_total, trials, 0.99);
    let msg = format!(
        "exact {exact:.15} vs binomial {direct:.15}; Monte Carlo {:.6} with 99% CI [{lo:.6}, {hi:.6}]",
        r.p_hat
    );
    if (exact - direct).abs() <= 1e-12 && lo <= exact && exact <= hi {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn overflow_regime() -> Outcome {
    let p = Pmf::binary(0.1).unwrap();
    let mp = ModuloParams::new(p.clone());
    let (rh, tau, n) = (0.3, 0.3, 200);
    let cfg = VariableRateConfig::new(rh, tau, n).unwrap();
    let t = cfg.segment_length() as f64;
    let ln_k = 2f64.ln();
    let margin = n as f64 * rh - t * ln_k - (t + 1.0).ln();
    let r = simulate_modulo_variable(&mp, &cfg, 1_000_000, RngPlan::new(8, 1)).unwrap();
    let e = overflow_exponent(&p, rh, tau).unwrap();
    let msg = format!(
        "tau={tau} < R_h/ln2={:.3}, margin {margin:.2} nats: {} overflows in 10^6 trials, exponent {e}",
        rh / ln_k,
        r.errors_total
    );
    if tau < rh / ln_k && margin > 0.0 && r.errors_total == 0 && e.is_infinite() {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn modulo_wsp() -> Outcome {
    let p = Pmf::binary(0.1).unwrap();
    let rh = 0.25;
    let info = 2f64.ln() - shannon_entropy(&p);
    let below = [0.0, 0.1, 0.2, 0.249].iter().all(|&r| wsp_modulo(&p, r, rh).unwrap().is_infinite());
    let above = [0.0, 1e-9, 0.1, 0.5]
        .iter()
        .all(|&d| wsp_modulo(&p, rh + info + d, rh).unwrap().is_zero());
    let v = wsp_modulo(&p, rh + 0.2, rh).unwrap().to_f64();
    let g = grid_min_divergence_with_entropy(&p, 2f64.ln() - 0.2, default_resolution(2)).unwrap();
    let msg = format!("infinite below R_h: {below}; zero from R_h + I(p): {above}; at R-R_h=0.2: {v:.6} vs grid {g:.6}");
    if below && above && (v - g).abs() <= 2e-3 && (v - 0.04).abs() < 1e-3 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn mac_split() -> Outcome {
    let gamma = 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rh: f64 = rng.random_range(0.0..0.4);
        let rp = RatePair::new(rng.random_range(0.0..0.5), rng.random_range(0.0..0.5)).unwrap();
        let split = optimal_help_split(rp, rh);
        let ours = helped_rc_exponent_symmetric(rp, gamma, split).value;
        let best = (0..1000)
            .map(|i| {
                let rh1 = rh * i as f64 / 999.0;
                let s = HelpSplit::new(rh1, rh - rh1, rh).unwrap();
                helped_rc_exponent_symmetric(rp, gamma, s).value
            })
            .fold(ExponentValue::Zero, ExponentValue::max);
        let gap = match (ours, best) {
            (a, b) if a.is_infinite() && b.is_infinite() => 0.0,
            (a, b) if a.is_infinite() || b.is_infinite() => f64::INFINITY,
            (a, b) => b.to_f64() - a.to_f64(),
        };
        worst = worst.max(gap);
    }
    let sym = optimal_help_split(RatePair::new(0.3, 0.3).unwrap(), 0.2);
    let exact_half = sym.rh1 == 0.1 && sym.rh2 == 0.1;
    let msg = format!("100 triples: sweep beats the split by at most {worst:.2e}; symmetric split exact: {exact_half}");
    if worst <= 1e-3 && exact_half {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn mac_classification() -> Outcome {
    let mac = MacParams::from_snr(1.0, 1.0).unwrap();
    let rh = 0.2;
    let (c1, c2, c12) = (capacity_awgn(1.0).unwrap(), capacity_awgn(1.0).unwrap(), capacity_awgn(2.0).unwrap());
    let mut bad = 0;
    for i in 0..200 {
        for j in 0..200 {
            let (r1, r2) = (0.9 * i as f64 / 199.0, 0.9 * j as f64 / 199.0);
            let rp = RatePair::new(r1, r2).unwrap();
            let class = classify_rate_point(rp, &mac, rh);
            let outside = r1 >= c1 + rh || r2 >= c2 + rh || r1 + r2 >= c12 + rh;
            let w = wsp_mac(rp, &mac, rh);
            let ok = ((class == RateClass::InfiniteExponent) == (r1 + r2 < rh))
                && ((class == RateClass::ZeroExponent) == outside)
                && (w.is_infinite() == (class == RateClass::InfiniteExponent))
                && (w.is_zero() == (class == RateClass::ZeroExponent));
            if !ok {
                bad += 1;
            }
        }
    }
    let msg = format!("{bad} of 40000 grid points disagree");
    if bad == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["--scheme", "awgn-flash", "--trials", "30000", "--length", "32,64", "--slack", "0.5"],
        &["--scheme", "modulo-fixed", "--trials", "50000", "--theta", "0.8,1.0", "--length", "12"],
        &["--scheme", "modulo-variable", "--trials", "50000", "--rate-helper", "0.1", "--tau", "0.5", "--length", "60"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for workers in ["1", "2", "5"] {
            let out = Command::new(env!("CARGO_BIN_EXE_flashhelp"))
                .arg("simulate")
                .args(args)
                .args(["--seed", "42", "--workers", workers])
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!("simulate {args:?} exited with {}", out.status));
            }
            outputs.push(out.stdout);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) || outputs[0].is_empty() {
            return Err(format!("outputs differ across --workers for {args:?}"));
        }
    }
    Ok("three schemes, --workers 1/2/5: byte-identical JSON lines".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("zero-error flash segment", zero_error_flash),
        ("chernoff consistency", chernoff_consistency),
        ("wsp three regimes", wsp_regimes),
        ("achievable below converse", sandwich),
        ("dual equals grid primal", dual_vs_grid),
        ("counting law", counting_law),
        ("exact failure probability", exact_failure),
        ("overflow regime", overflow_regime),
        ("modulo wsp endpoints", modulo_wsp),
        ("mac split optimality", mac_split),
        ("mac classification", mac_classification),
        ("determinism across workers", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
