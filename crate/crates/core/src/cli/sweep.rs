//! Curve subcommands. Every file starts with a `#` manifest line followed by
//! the header row; rows follow grid order.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{open_out, par_map, read_pmf, AwgnArgs, CliError, CliResult, MacArgs, ModuloArgs, OutputArgs, RunManifest};
use super::format::{Axis, GridSpec};
use crate::awgn::{achievable_exponent, awgn_regime, capacity_awgn, wsp_awgn, FlashScheme, GaussianRandomCoding};
use crate::mac::{classify_rate_point, optimal_help_split, wsp_mac_branches, MacParams, RatePair};
use crate::modulo::{
    helper_failure_exponent, modulo_achievable_exponent, overflow_exponent, r_of_theta, theta_max, theta_of_r,
    wsp_modulo, ModuloParams, ModuloRandomCoding,
};
use crate::value::ThetaRate;

pub const AWGN_HEADER: &str = "R,E_wsp,E_achievable,regime";
pub const MODULO_HEADER: &str = "theta,R,R_h,tau,r,E,overflow,E_wsp,E_achievable";
pub const MAC_HEADER: &str = "R1,R2,E1,E2,E3,E_wsp,class,R_h1,R_h2";

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn write_csv<C: Serialize>(
    out: &OutputArgs,
    command: &'static str,
    config: &C,
    header: &str,
    rows: &[String],
    stdout: &mut dyn Write,
) -> CliResult {
    if out.emit_plotscript && out.out.is_none() {
        return Err(usage("--emit-plotscript needs --out"));
    }
    let manifest = RunManifest::new(command, None, config).stamped();
    let mut w = open_out(&out.out, stdout)?;
    writeln!(w, "# {}", serde_json::to_string(&manifest).expect("manifest serializes"))?;
    writeln!(w, "{header}")?;
    for r in rows {
        writeln!(w, "{r}")?;
    }
    w.flush()?;
    if let (true, Some(path)) = (out.emit_plotscript, &out.out) {
        write_plotscript(path, header)?;
    }
    Ok(())
}

/// gnuplot script plotting every numeric column against the first.
fn write_plotscript(csv: &Path, header: &str) -> CliResult {
    let mut script = csv.as_os_str().to_owned();
    script.push(".gp");
    let name = csv.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let cols: Vec<&str> = header.split(',').collect();
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset datafile commentschars '#'\n");
    s.push_str("set datafile missing 'inf'\nset key autotitle columnhead\n");
    s.push_str(&format!("set xlabel '{}'\n", cols[0]));
    let plots: Vec<String> = cols
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !matches!(**c, "regime" | "class"))
        .map(|(i, _)| format!("'{name}' using 1:{} with lines", i + 1))
        .collect();
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    std::fs::write(script, s)?;
    Ok(())
}

/// The single grid of a one-axis sweep, checked against the allowed axes.
fn single_grid(grids: &[GridSpec], allowed: &[Axis], default: GridSpec) -> CliResult<GridSpec> {
    match grids {
        [] => Ok(default),
        [g] if allowed.contains(&g.axis) => Ok(*g),
        [g] => Err(usage(format!(
            "axis {} is not available here (allowed: {})",
            g.axis.name(),
            allowed.iter().map(|a| a.name()).collect::<Vec<_>>().join(", ")
        ))),
        _ => Err(usage("this subcommand takes a single --grid")),
    }
}

pub fn exponent_awgn(a: &AwgnArgs, stdout: &mut dyn Write) -> CliResult {
    if !(a.gamma > 0.0 && a.gamma.is_finite()) {
        return Err(usage(format!("--gamma {} must be positive", a.gamma)));
    }
    if !(a.rate_helper >= 0.0 && a.rate_helper.is_finite()) {
        return Err(usage(format!("--rate-helper {} must be nonnegative", a.rate_helper)));
    }
    let c = capacity_awgn(a.gamma)?;
    let default = GridSpec::new(Axis::Rate, 0.0, 1.25 * (a.rate_helper + c), 101).map_err(usage)?;
    let grid = single_grid(&a.grid, &[Axis::Rate], default)?;
    let scheme = match a.tau {
        Some(tau) => FlashScheme::Explicit { tau, slack: a.slack },
        None => FlashScheme::OptimizedLimit,
    };
    let provider = GaussianRandomCoding::new(a.gamma);
    let u = a.output.units;
    let rates = grid.values();
    let rows = par_map(a.output.workers, rates.len(), |i| -> CliResult<String> {
        let r = rates[i];
        let wsp = wsp_awgn(r, a.gamma, a.rate_helper)?;
        let ach = achievable_exponent(r, a.gamma, a.rate_helper, scheme, &provider)?;
        let regime = awgn_regime(r, a.gamma, a.rate_helper);
        Ok(format!("{},{},{},{}", u.num(r), u.exponent(wsp), u.exponent(ach), regime.as_str()))
    })?
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    let config = Resolved { args: a, grid: vec![grid] };
    write_csv(&a.output, "exponent-awgn", &config, AWGN_HEADER, &rows, stdout)
}

#[derive(Serialize)]
struct Resolved<'a, A: Serialize> {
    args: &'a A,
    grid: Vec<GridSpec>,
}

pub fn exponent_modulo(a: &ModuloArgs, stdout: &mut dyn Write) -> CliResult {
    let p = read_pmf(&a.pmf)?;
    let mp = ModuloParams::new(p.clone());
    if !(a.rate_helper >= 0.0 && a.rate_helper.is_finite()) {
        return Err(usage(format!("--rate-helper {} must be nonnegative", a.rate_helper)));
    }
    let ln_k = (p.len() as f64).ln();
    let tau = match a.tau {
        Some(t) if t > 0.0 && t <= 1.0 => t,
        Some(t) => return Err(usage(format!("--tau {t} is not in (0,1]"))),
        None if a.rate_helper > 0.0 => (a.rate_helper / ln_k).min(1.0),
        None => 0.5,
    };
    let default = GridSpec::new(Axis::Theta, 0.0, 1.25 * theta_max(&p), 101).map_err(usage)?;
    let grid = single_grid(
        &a.grid,
        &[Axis::Theta, Axis::Rate, Axis::HelperRate, Axis::Tau],
        default,
    )?;
    let provider = ModuloRandomCoding::new(p.clone());
    let u = a.output.units;
    let values = grid.values();
    let default_rate = a.rate.unwrap_or(a.rate_helper + 0.5 * mp.capacity());
    let rows = par_map(a.output.workers, values.len(), |i| -> CliResult<String> {
        let v = values[i];
        let (mut rate, mut rh, mut tau) = (default_rate, a.rate_helper, tau);
        match grid.axis {
            Axis::Rate => rate = v,
            Axis::HelperRate => rh = v,
            Axis::Tau => tau = v,
            _ => {}
        }
        if !(tau > 0.0 && tau <= 1.0) || rh < 0.0 || rate < 0.0 {
            return Err(usage(format!("grid value {v} leaves the domain")));
        }
        let theta = match (grid.axis, a.theta) {
            (Axis::Theta, _) => ThetaRate::Finite(v),
            (_, Some(th)) => ThetaRate::Finite(th),
            _ => theta_of_r(&p, (rh / tau).min(ln_k))?,
        };
        let th = theta.to_f64();
        let r = r_of_theta(&p, th)?;
        let e = helper_failure_exponent(&p, th)?;
        let overflow = overflow_exponent(&p, rh, tau)?;
        let wsp = wsp_modulo(&p, rate, rh)?;
        let ach = modulo_achievable_exponent(&p, rate, rh, None, &provider)?;
        Ok(format!(
            "{},{},{},{},{},{},{},{},{}",
            u.theta(theta),
            u.num(rate),
            u.num(rh),
            super::fmt_num(tau),
            u.log_size(r),
            u.exponent(e),
            u.exponent(overflow),
            u.exponent(wsp),
            u.exponent(ach)
        ))
    })?
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    #[derive(Serialize)]
    struct Config<'a> {
        args: &'a ModuloArgs,
        pmf: Vec<f64>,
        tau: f64,
        grid: GridSpec,
    }
    let config = Config {
        args: a,
        pmf: p.probs().to_vec(),
        tau,
        grid,
    };
    write_csv(&a.output, "exponent-modulo", &config, MODULO_HEADER, &rows, stdout)
}

pub fn exponent_mac(a: &MacArgs, stdout: &mut dyn Write) -> CliResult {
    let mac = MacParams::from_snr(a.gamma1, a.gamma2)?;
    if !(a.rate_helper >= 0.0 && a.rate_helper.is_finite()) {
        return Err(usage(format!("--rate-helper {} must be nonnegative", a.rate_helper)));
    }
    let (c1, c2, _) = mac.capacities();
    let mut g1 = GridSpec::new(Axis::Rate1, 0.0, 1.25 * (c1 + a.rate_helper), 21).map_err(usage)?;
    let mut g2 = GridSpec::new(Axis::Rate2, 0.0, 1.25 * (c2 + a.rate_helper), 21).map_err(usage)?;
    for g in &a.grid {
        match g.axis {
            Axis::Rate1 => g1 = *g,
            Axis::Rate2 => g2 = *g,
            other => return Err(usage(format!("axis {} is not available here (allowed: R1, R2)", other.name()))),
        }
    }
    let (v1, v2) = (g1.values(), g2.values());
    if v1[0] < 0.0 || v2[0] < 0.0 {
        return Err(usage("rates must be nonnegative"));
    }
    let u = a.output.units;
    let rh = a.rate_helper;
    let rows = par_map(a.output.workers, v1.len() * v2.len(), |i| -> CliResult<String> {
        let rp = RatePair::new(v1[i / v2.len()], v2[i % v2.len()])?;
        let b = wsp_mac_branches(rp, &mac, rh);
        let class = classify_rate_point(rp, &mac, rh);
        let split = optimal_help_split(rp, rh);
        Ok(format!(
            "{},{},{},{},{},{},{},{},{}",
            u.num(rp.r1),
            u.num(rp.r2),
            u.exponent(b.e1),
            u.exponent(b.e2),
            u.exponent(b.e3),
            u.exponent(b.value),
            class.as_str(),
            u.num(split.rh1),
            u.num(split.rh2)
        ))
    })?
    .into_iter()
    .collect::<CliResult<Vec<_>>>()?;
    let config = Resolved { args: a, grid: vec![g1, g2] };
    write_csv(&a.output, "exponent-mac", &config, MAC_HEADER, &rows, stdout)
}
