//! Single-user AWGN channel with a noise helper at the encoder: capacities,
//! flash-help design formulas, the achievable exponent, and the weak
//! sphere-packing converse.
//!
//! All rates, entropies and exponents are in nats. Exponents are normalized
//! by the full block length `n`: a segment of fraction `τ` contributes `τ`
//! times its per-sample exponent.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::optim::golden_max;
use crate::prob::gaussian::{gaussian_kl_variance_ratio, sphere_chernoff};
use crate::value::ExponentValue;

/// Transmit power and noise variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AwgnParams {
    pub power: f64,
    pub sigma2: f64,
}

impl AwgnParams {
    pub fn new(power: f64, sigma2: f64) -> Result<Self> {
        if !(power > 0.0 && power.is_finite()) {
            return Err(domain("power", format!("{power} is not positive")));
        }
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(domain("sigma2", format!("{sigma2} is not positive")));
        }
        Ok(AwgnParams { power, sigma2 })
    }

    /// Unit noise variance with power `gamma`.
    pub fn from_snr(gamma: f64) -> Result<Self> {
        AwgnParams::new(gamma, 1.0)
    }

    /// SNR `γ = P/σ²`.
    pub fn gamma(&self) -> f64 {
        self.power / self.sigma2
    }

    pub fn capacity(&self) -> f64 {
        0.5 * self.gamma().ln_1p()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HelpMode {
    FixedRate,
    VariableRate,
}

/// Parameters of the flash-help segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlashDesign {
    /// `R_h`, nats per channel use of the whole block.
    pub helper_rate: f64,
    /// Fraction `τ ∈ (0,1)` of the block that receives help.
    pub tau: f64,
    /// Sphere slack `s > 0` (fixed-rate mode only).
    pub slack: f64,
    pub mode: HelpMode,
}

impl FlashDesign {
    pub fn new(helper_rate: f64, tau: f64, slack: f64, mode: HelpMode) -> Result<Self> {
        if !(helper_rate >= 0.0 && helper_rate.is_finite()) {
            return Err(domain("helper_rate", format!("{helper_rate} is negative")));
        }
        if !(tau > 0.0 && tau < 1.0) {
            return Err(domain("tau", format!("{tau} is not in (0,1)")));
        }
        if mode == HelpMode::FixedRate && !(slack >= 0.0 && slack.is_finite()) {
            return Err(domain("slack", format!("{slack} is negative")));
        }
        Ok(FlashDesign {
            helper_rate,
            tau,
            slack,
            mode,
        })
    }

    /// Helped segment length `t = round(n τ)`, at least 1.
    pub fn segment_length(&self, n: u64) -> u64 {
        ((n as f64 * self.tau).round() as u64).max(1)
    }

    /// Quantizer step for this design and noise variance.
    pub fn step(&self, sigma2: f64) -> Result<f64> {
        match self.mode {
            HelpMode::FixedRate => quantizer_step(sigma2, self.slack, self.helper_rate, self.tau),
            HelpMode::VariableRate => variable_rate_step(sigma2, self.helper_rate, self.tau),
        }
    }
}

/// An error-exponent curve `R ↦ E(R)` for a channel without help.
///
/// Implementations are nonincreasing in `R`, positive below capacity and
/// zero at or above it.
pub trait ExponentProvider {
    fn exponent(&self, rate: f64) -> ExponentValue;
}

impl<F: Fn(f64) -> ExponentValue> ExponentProvider for F {
    fn exponent(&self, rate: f64) -> ExponentValue {
        self(rate)
    }
}

/// Random-coding exponent of the AWGN channel with an i.i.d. Gaussian
/// ensemble: `max_{ρ∈[0,1]} [E₀(ρ) − ρR]`, `E₀(ρ) = (ρ/2) ln(1 + γ/(1+ρ))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianRandomCoding {
    pub gamma: f64,
}

impl GaussianRandomCoding {
    pub fn new(gamma: f64) -> Self {
        GaussianRandomCoding { gamma }
    }

    pub fn e0(&self, rho: f64) -> f64 {
        0.5 * rho * (self.gamma / (1.0 + rho)).ln_1p()
    }
}

impl ExponentProvider for GaussianRandomCoding {
    fn exponent(&self, rate: f64) -> ExponentValue {
        let rate = rate.max(0.0);
        if rate >= 0.5 * self.gamma.ln_1p() {
            return ExponentValue::Zero;
        }
        let (_, best) = golden_max(|rho| self.e0(rho) - rho * rate, 0.0, 1.0, 1e-10);
        ExponentValue::from_f64(best)
    }
}

/// `c(γ) = ½ ln(1+γ)`.
pub fn capacity_awgn(gamma: f64) -> Result<f64> {
    if gamma.is_nan() || gamma < 0.0 {
        return Err(domain("gamma", format!("{gamma} is negative")));
    }
    Ok(0.5 * gamma.ln_1p())
}

/// Capacity with a helper of rate `R_h`: `c(γ) + R_h`.
pub fn helped_capacity(gamma: f64, helper_rate: f64) -> Result<f64> {
    if helper_rate.is_nan() || helper_rate < 0.0 {
        return Err(domain("helper_rate", format!("{helper_rate} is negative")));
    }
    Ok(capacity_awgn(gamma)? + helper_rate)
}

fn check_step_args(sigma2: f64, helper_rate: f64, tau: f64) -> Result<()> {
    if !(sigma2 > 0.0) {
        return Err(domain("sigma2", format!("{sigma2} is not positive")));
    }
    if !(helper_rate >= 0.0) {
        return Err(domain("helper_rate", format!("{helper_rate} is negative")));
    }
    if !(tau > 0.0) {
        return Err(domain("tau", format!("{tau} is not positive")));
    }
    Ok(())
}

/// Scalar quantizer step for fixed-rate help:
/// `Δ = √(2πeσ²(1+s)) · e^{−R_h/τ}`.
pub fn quantizer_step(sigma2: f64, slack: f64, helper_rate: f64, tau: f64) -> Result<f64> {
    check_step_args(sigma2, helper_rate, tau)?;
    if !(slack >= 0.0) {
        return Err(domain("slack", format!("{slack} is negative")));
    }
    Ok((2.0 * PI * E * sigma2 * (1.0 + slack)).sqrt() * (-helper_rate / tau).exp())
}

/// Quantizer step for variable-rate help: `Δ = √(2πeσ²) · e^{−R_h/τ}`.
pub fn variable_rate_step(sigma2: f64, helper_rate: f64, tau: f64) -> Result<f64> {
    check_step_args(sigma2, helper_rate, tau)?;
    Ok((2.0 * PI * E * sigma2).sqrt() * (-helper_rate / tau).exp())
}

/// Rate carried error-free by the helped segment, per block channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlashRate {
    /// `max(0, R_h + (τ/2) ln(P/(σ²(1+s))))`.
    pub rate: f64,
    /// Set when the formula is nonpositive and the segment carries nothing.
    pub carries_no_rate: bool,
}

/// `R' = R_h + (τ/2) ln(P/(σ²(1+s)))`.
pub fn flash_rate(helper_rate: f64, tau: f64, slack: f64, power: f64, sigma2: f64) -> Result<FlashRate> {
    check_step_args(sigma2, helper_rate, tau)?;
    if !(power > 0.0) {
        return Err(domain("power", format!("{power} is not positive")));
    }
    if !(slack >= 0.0) {
        return Err(domain("slack", format!("{slack} is negative")));
    }
    let raw = helper_rate + 0.5 * tau * (power / (sigma2 * (1.0 + slack))).ln();
    Ok(if raw > 0.0 {
        FlashRate {
            rate: raw,
            carries_no_rate: false,
        }
    } else {
        FlashRate {
            rate: 0.0,
            carries_no_rate: true,
        }
    })
}

/// Per-sample Chernoff exponent of the noise leaving the sphere of radius
/// `√(tσ²(1+s))`: `½[s − ln(1+s)]`.
pub fn chernoff_sphere_exponent(slack: f64) -> Result<f64> {
    if !(slack > 0.0) {
        return Err(domain("slack", format!("{slack} is not positive")));
    }
    Ok(sphere_chernoff(slack))
}

/// [`GaussianRandomCoding`] evaluated at `R`.
pub fn default_ordinary_exponent(rate: f64, gamma: f64) -> ExponentValue {
    GaussianRandomCoding::new(gamma).exponent(rate)
}

/// How the flash segment is parameterized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FlashScheme {
    /// A concrete `(τ, s)`.
    Explicit { tau: f64, slack: f64 },
    /// `τ → 0` with `s = B/τ`, then `B → ∞`.
    OptimizedLimit,
}

/// Branch values of the two-segment exponent for explicit `(τ, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AchievableBreakdown {
    pub flash: FlashRate,
    /// `τ · ½[s − ln(1+s)]`.
    pub flash_branch: ExponentValue,
    /// `ΔR = max(0, R − R')`.
    pub delta_rate: f64,
    /// `(1−τ) E_a(ΔR/(1−τ))`, infinite when `ΔR = 0`.
    pub ordinary_branch: ExponentValue,
    pub value: ExponentValue,
}

/// The two-segment exponent at explicit `(τ, s)`.
pub fn achievable_breakdown<P: ExponentProvider + ?Sized>(
    rate: f64,
    gamma: f64,
    helper_rate: f64,
    tau: f64,
    slack: f64,
    provider: &P,
) -> Result<AchievableBreakdown> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(domain("tau", format!("{tau} is not in (0,1)")));
    }
    let flash_branch = ExponentValue::from_f64(tau * chernoff_sphere_exponent(slack)?);
    let flash = flash_rate(helper_rate, tau, slack, gamma, 1.0)?;
    let delta_rate = (rate - flash.rate).max(0.0);
    let ordinary_branch = if delta_rate == 0.0 {
        ExponentValue::Infinite
    } else {
        provider.exponent(delta_rate / (1.0 - tau)).scale(1.0 - tau)
    };
    Ok(AchievableBreakdown {
        flash,
        flash_branch,
        delta_rate,
        ordinary_branch,
        value: flash_branch.min(ordinary_branch),
    })
}

/// Achievable exponent of the flash-help scheme.
///
/// In the optimized limit: infinite below `R_h`, `E_a(R − R_h)` up to
/// `R_h + c(γ)`, zero beyond.
pub fn achievable_exponent<P: ExponentProvider + ?Sized>(
    rate: f64,
    gamma: f64,
    helper_rate: f64,
    scheme: FlashScheme,
    provider: &P,
) -> Result<ExponentValue> {
    if !(gamma > 0.0) {
        return Err(domain("gamma", format!("{gamma} is not positive")));
    }
    if !(helper_rate >= 0.0) {
        return Err(domain("helper_rate", format!("{helper_rate} is negative")));
    }
    match scheme {
        FlashScheme::Explicit { tau, slack } => {
            Ok(achievable_breakdown(rate, gamma, helper_rate, tau, slack, provider)?.value)
        }
        FlashScheme::OptimizedLimit => {
            let excess = rate - helper_rate;
            Ok(if excess < 0.0 {
                ExponentValue::Infinite
            } else if excess >= capacity_awgn(gamma)? {
                ExponentValue::Zero
            } else {
                provider.exponent(excess)
            })
        }
    }
}

/// Smallest auxiliary noise variance under which rate `R` exceeds the helped
/// capacity: `P / (e^{2(R−R_h)} − 1)`. `None` when no variance works
/// (`R ≤ R_h`).
pub fn worst_case_variance(rate: f64, helper_rate: f64, power: f64) -> Option<f64> {
    let excess = rate - helper_rate;
    if excess <= 0.0 {
        None
    } else {
        Some(power / (2.0 * excess).exp_m1())
    }
}

/// Divergence branch shared with the MAC bound: `½[v − ln v − 1]` at
/// `v = (e^{2c} − 1)/(e^{2(rate − R_h)} − 1)`, infinite for `rate ≤ R_h` and
/// zero for `rate ≥ R_h + c`.
pub(crate) fn wsp_branch(rate: f64, helper_rate: f64, snr: f64) -> ExponentValue {
    let excess = rate - helper_rate;
    if excess <= 0.0 {
        return ExponentValue::Infinite;
    }
    if excess >= 0.5 * snr.ln_1p() {
        return ExponentValue::Zero;
    }
    let v = snr / (2.0 * excess).exp_m1();
    ExponentValue::from_f64(gaussian_kl_variance_ratio(v).expect("v > 0"))
}

/// Weak sphere-packing upper bound on the helped AWGN exponent.
pub fn wsp_awgn(rate: f64, gamma: f64, helper_rate: f64) -> Result<ExponentValue> {
    if !(gamma > 0.0) {
        return Err(domain("gamma", format!("{gamma} is not positive")));
    }
    if !(helper_rate >= 0.0) {
        return Err(domain("helper_rate", format!("{helper_rate} is negative")));
    }
    if rate.is_nan() || rate < 0.0 {
        return Err(domain("rate", format!("{rate} is negative")));
    }
    Ok(wsp_branch(rate, helper_rate, gamma))
}

/// Regime of the helped exponent at `R`: infinite, finite, or zero.
pub fn awgn_regime(rate: f64, gamma: f64, helper_rate: f64) -> crate::value::Regime {
    wsp_branch(rate, helper_rate, gamma).regime()
}
