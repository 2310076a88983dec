//! Modulo-additive channel `Y = X ⊕ Z` over `{0, …, K-1}` with a noise
//! helper: fixed-rate helper functions `r(θ)`, `θ(r)`, `E(θ)`, the
//! variable-rate overflow exponent, the weak sphere-packing converse, and
//! exact counting via types.
//!
//! Where the noise pmf has zero entries, every quantity is computed on the
//! reduced support: sequences using a zero-probability symbol never occur.

use serde::Serialize;

use crate::awgn::ExponentProvider;
use crate::error::{domain, Error, Result};
use crate::optim::{bisect, bracket_slope_sign, golden_max};
use crate::prob::entropy::log_power_sum_slice;
use crate::prob::{log_multinomial, log_sum_exp, shannon_entropy, type_enumerate, Pmf};
use crate::value::{ExponentValue, LogSize, ThetaRate};

const LAMBDA_LIMIT: f64 = 1e12;
const GOLDEN_TOL: f64 = 1e-13;

/// Alphabet size and noise law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuloParams {
    pub noise: Pmf,
}

impl ModuloParams {
    pub fn new(noise: Pmf) -> Self {
        ModuloParams { noise }
    }

    pub fn k(&self) -> usize {
        self.noise.len()
    }

    /// Capacity without help, `ln K − H(P)`.
    pub fn capacity(&self) -> f64 {
        (self.k() as f64).ln() - shannon_entropy(&self.noise)
    }
}

/// Log-probabilities of the support, with helpers for the tilted family
/// `Q_a ∝ P^a`.
struct Support {
    ln_p: Vec<f64>,
}

impl Support {
    fn of(p: &Pmf) -> Self {
        Support {
            ln_p: p.positive_probs().iter().map(|x| x.ln()).collect(),
        }
    }

    fn size(&self) -> usize {
        self.ln_p.len()
    }

    fn probs(&self) -> Vec<f64> {
        self.ln_p.iter().map(|l| l.exp()).collect()
    }

    /// `ln Σ P^a` over the support.
    fn log_power_sum(&self, a: f64) -> f64 {
        log_power_sum_slice(&self.probs(), a)
    }

    /// Normalized weights of `Q_a ∝ P^a`.
    fn tilted(&self, a: f64) -> Vec<f64> {
        let m = self
            .ln_p
            .iter()
            .map(|l| a * l)
            .fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = self.ln_p.iter().map(|l| (a * l - m).exp()).collect();
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    }

    /// `−E_{Q_a} ln P`.
    fn tilted_log_loss(&self, a: f64) -> f64 {
        self.tilted(a)
            .iter()
            .zip(&self.ln_p)
            .map(|(q, l)| -q * l)
            .sum()
    }

    fn tilted_entropy(&self, a: f64) -> f64 {
        -self
            .tilted(a)
            .iter()
            .map(|&q| if q > 0.0 { q * q.ln() } else { 0.0 })
            .sum::<f64>()
    }

    /// `D(Q_a ‖ P)`.
    fn tilted_divergence(&self, a: f64) -> f64 {
        self.tilted(a)
            .iter()
            .zip(&self.ln_p)
            .map(|(&q, l)| if q > 0.0 { q * (q.ln() - l) } else { 0.0 })
            .sum::<f64>()
            .max(0.0)
    }

    fn max_ln_p(&self) -> f64 {
        self.ln_p.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    fn min_ln_p(&self) -> f64 {
        self.ln_p.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Number of support symbols whose log-probability equals `level`.
    fn multiplicity(&self, level: f64) -> usize {
        self.ln_p.iter().filter(|&&l| l == level).count()
    }

    fn entropy(&self) -> f64 {
        -self.ln_p.iter().map(|l| l.exp() * l).sum::<f64>()
    }
}

/// `θ₀ = ln(1/max P)`: below it no sequence is typical enough for the helper.
pub fn theta_min(p: &Pmf) -> f64 {
    -p.max_prob().ln()
}

/// `θ∞ = (1/|S|) Σ_{z∈S} ln(1/P(z))` over the support `S`: from here on the
/// helper set contains every sequence type's worth of entropy.
pub fn theta_saturation(p: &Pmf) -> f64 {
    let s = Support::of(p);
    if s.max_ln_p() == s.min_ln_p() {
        return -s.max_ln_p();
    }
    -s.ln_p.iter().sum::<f64>() / s.size() as f64
}

/// `ln(1/min_{z∈S} P(z))`: beyond it no type has that log-loss.
pub fn theta_max(p: &Pmf) -> f64 {
    -p.min_positive_prob().ln()
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_nan() || theta < 0.0 {
        return Err(domain("theta", format!("{theta} is negative")));
    }
    Ok(())
}

/// `r(θ) = max { H(Q) : −E_Q ln P ≤ θ }`, via the dual
/// `min_{λ≥0} [λθ + ln Σ P^λ]`.
///
/// `Empty` (−∞) below `θ₀`; `ln |S|` from `θ∞` on.
pub fn r_of_theta(p: &Pmf, theta: f64) -> Result<LogSize> {
    check_theta(theta)?;
    let s = Support::of(p);
    let theta0 = -s.max_ln_p();
    if theta < theta0 {
        return Ok(LogSize::Empty);
    }
    if theta >= theta_saturation(p) {
        return Ok(LogSize::Finite((s.size() as f64).ln()));
    }
    // the dual objective is convex; maximize its negation, whose slope is
    // −E_{Q_λ}[ln P] − θ
    let slope = |lam: f64| s.tilted_log_loss(lam) - theta;
    let value = match bracket_slope_sign(slope, 1.0, LAMBDA_LIMIT) {
        Some(hi) => {
            let (_, g) = golden_max(|lam| -(lam * theta + s.log_power_sum(lam)), 0.0, hi, GOLDEN_TOL);
            -g
        }
        // θ = θ₀: the infimum is approached as λ → ∞
        None => (s.multiplicity(s.max_ln_p()) as f64).ln(),
    };
    Ok(LogSize::Finite(value))
}

/// Minimal `θ` with `r(θ) ≥ r`, by bisection on the monotone `r(θ)`.
///
/// Returns `θ₀` for `r` at or below `r(θ₀)`, and `Infinite` for
/// `ln|S| < r ≤ ln K` (reachable only if all symbols had mass).
pub fn theta_of_r(p: &Pmf, r: f64) -> Result<ThetaRate> {
    let ln_k = (p.len() as f64).ln();
    if r.is_nan() || r > ln_k + 1e-12 {
        return Err(domain("r", format!("{r} exceeds ln K = {ln_k}")));
    }
    let s = Support::of(p);
    let ln_s = (s.size() as f64).ln();
    if r > ln_s + 1e-12 {
        return Ok(ThetaRate::Infinite);
    }
    let lo = theta_min(p);
    let hi = theta_saturation(p);
    let at = |th: f64| r_of_theta(p, th).expect("theta >= 0").to_f64();
    if r <= at(lo) {
        return Ok(ThetaRate::Finite(lo));
    }
    if r >= ln_s {
        return Ok(ThetaRate::Finite(hi));
    }
    Ok(ThetaRate::Finite(bisect(|th| at(th) - r, lo, hi, 1e-14)))
}

/// `θ(r) = sup_{λ>0} (r − ln Σ P^λ)/λ`, the Legendre-dual expression for the
/// inverse of `r(θ)`. Evaluated by a golden search in `ln λ`.
pub fn theta_of_r_sup_form(p: &Pmf, r: f64) -> f64 {
    let s = Support::of(p);
    let phi = |u: f64| {
        let lam = u.exp();
        (r - s.log_power_sum(lam)) / lam
    };
    let (_, v) = golden_max(phi, -30.0, 30.0, 1e-14);
    v
}

/// Helper-failure exponent per helped sample,
/// `E(θ) = min { D(Q‖P) : −E_Q ln P ≥ θ } = sup_{λ≥0} [λθ − ln Σ P^{1−λ}]`.
///
/// Zero for `θ ≤ H(P)`, infinite beyond `ln(1/min P)`.
pub fn helper_failure_exponent(p: &Pmf, theta: f64) -> Result<ExponentValue> {
    check_theta(theta)?;
    let s = Support::of(p);
    if theta <= s.entropy() {
        return Ok(ExponentValue::Zero);
    }
    let top = -s.min_ln_p();
    let tol = 1e-12 * top.max(1.0);
    if theta > top + tol {
        return Ok(ExponentValue::Infinite);
    }
    if theta >= top - tol {
        // only the least likely symbols qualify; Q ∝ P on them
        let m = s.multiplicity(s.min_ln_p()) as f64;
        return Ok(ExponentValue::from_f64(-(m.ln() + s.min_ln_p())));
    }
    let slope = |lam: f64| theta - s.tilted_log_loss(1.0 - lam);
    let hi = bracket_slope_sign(slope, 1.0, LAMBDA_LIMIT).unwrap_or(LAMBDA_LIMIT);
    let (_, v) = golden_max(
        |lam| lam * theta - s.log_power_sum(1.0 - lam),
        0.0,
        hi,
        GOLDEN_TOL,
    );
    Ok(ExponentValue::from_f64(v))
}

/// `min { D(Q‖P) : H(Q) ≥ h }`, solved on the tilted family `Q_β ∝ P^β`,
/// `β ∈ [0,1]`, by bisection on `H(Q_β) = h`.
pub fn min_divergence_with_entropy(p: &Pmf, h: f64) -> ExponentValue {
    let s = Support::of(p);
    if h <= s.entropy() {
        return ExponentValue::Zero;
    }
    let ln_s = (s.size() as f64).ln();
    if h > ln_s + 1e-14 {
        return ExponentValue::Infinite;
    }
    let beta = if h >= ln_s {
        0.0
    } else {
        bisect(|b| s.tilted_entropy(b) - h, 0.0, 1.0, 1e-15)
    };
    ExponentValue::from_f64(s.tilted_divergence(beta))
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(domain("tau", format!("{tau} is not in (0,1)")));
    }
    Ok(())
}

/// Variable-rate helper buffer-overflow exponent per helped sample,
/// `min { D(Q‖P) : τ H(Q) ≥ R_h }`.
///
/// Infinite when `τ < R_h / ln K`; zero when `R_h ≤ τ H(P)`.
pub fn overflow_exponent(p: &Pmf, helper_rate: f64, tau: f64) -> Result<ExponentValue> {
    check_tau(tau)?;
    if helper_rate.is_nan() || helper_rate < 0.0 {
        return Err(domain("helper_rate", format!("{helper_rate} is negative")));
    }
    let h = helper_rate / tau;
    if h > (p.len() as f64).ln() {
        return Ok(ExponentValue::Infinite);
    }
    Ok(min_divergence_with_entropy(p, h))
}

/// `sup_{λ≥0} λ[R_h − τ H_{1/(1+λ)}(P)]`.
///
/// This Lagrange dual carries the factor `τ`: it equals `τ` times
/// [`overflow_exponent`], i.e. the overflow exponent per block symbol.
pub fn overflow_exponent_dual(p: &Pmf, helper_rate: f64, tau: f64) -> Result<ExponentValue> {
    check_tau(tau)?;
    let s = Support::of(p);
    let objective = |lam: f64| {
        lam * helper_rate - tau * (1.0 + lam) * s.log_power_sum(1.0 / (1.0 + lam))
    };
    // derivative R_h − τ H(Q_a), a = 1/(1+λ)
    let slope = |lam: f64| helper_rate - tau * s.tilted_entropy(1.0 / (1.0 + lam));
    if slope(0.0) <= 0.0 {
        return Ok(ExponentValue::Zero);
    }
    match bracket_slope_sign(slope, 1.0, LAMBDA_LIMIT) {
        Some(hi) => Ok(ExponentValue::from_f64(
            golden_max(objective, 0.0, hi, GOLDEN_TOL).1,
        )),
        None => Ok(ExponentValue::Infinite),
    }
}

/// Weak sphere-packing bound `min { D(Q‖P) : ln K − H(Q) < R − R_h }`.
///
/// Infinite for `R ≤ R_h`; zero for `R ≥ R_h + C₀` and for `R ≥ ln K`.
pub fn wsp_modulo(p: &Pmf, rate: f64, helper_rate: f64) -> Result<ExponentValue> {
    if rate.is_nan() || rate < 0.0 {
        return Err(domain("rate", format!("{rate} is negative")));
    }
    if helper_rate.is_nan() || helper_rate < 0.0 {
        return Err(domain("helper_rate", format!("{helper_rate} is negative")));
    }
    let ln_k = (p.len() as f64).ln();
    if rate >= ln_k {
        return Ok(ExponentValue::Zero);
    }
    let excess = rate - helper_rate;
    if excess <= 0.0 {
        return Ok(ExponentValue::Infinite);
    }
    if excess >= ln_k - shannon_entropy(p) {
        return Ok(ExponentValue::Zero);
    }
    Ok(min_divergence_with_entropy(p, ln_k - excess))
}

/// Whether a sequence with log-probability `ln_prob` and length `t` lies in
/// the fixed-rate helper set `{P(z^t) ≥ e^{−tθ}}`. Ties are included, with
/// a relative slack of 1e-11 for roundoff in the log-probability sum.
pub fn helper_covers(ln_prob: f64, t: u64, theta: f64) -> bool {
    if theta == f64::INFINITY {
        return ln_prob > f64::NEG_INFINITY;
    }
    let bound = -(t as f64) * theta;
    ln_prob >= bound - 1e-11 * bound.abs().max(1.0)
}

/// Exact `ln |{z^t : P(z^t) ≥ e^{−tθ}}|` by summing type-class sizes.
pub fn helper_set_log_size(p: &Pmf, t: u64, theta: f64) -> Result<LogSize> {
    check_theta(theta)?;
    let terms: Vec<f64> = type_enumerate(p.len(), t)?
        .filter(|tp| helper_covers(tp.log_prob(p), t, theta))
        .map(|tp| log_multinomial(&tp))
        .collect();
    if terms.is_empty() {
        return Ok(LogSize::Empty);
    }
    Ok(LogSize::Finite(log_sum_exp(terms)))
}

/// Random-coding exponent of the modulo-additive channel with uniform input:
/// `max_{ρ∈[0,1]} [E₀(ρ) − ρR]`, `E₀(ρ) = ρ ln K − (1+ρ) ln Σ P^{1/(1+ρ)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuloRandomCoding {
    noise: Pmf,
}

impl ModuloRandomCoding {
    pub fn new(noise: Pmf) -> Self {
        ModuloRandomCoding { noise }
    }

    pub fn e0(&self, rho: f64) -> f64 {
        let ln_k = (self.noise.len() as f64).ln();
        rho * ln_k - (1.0 + rho) * crate::prob::log_power_sum(&self.noise, 1.0 / (1.0 + rho))
    }

    pub fn capacity(&self) -> f64 {
        (self.noise.len() as f64).ln() - shannon_entropy(&self.noise)
    }
}

impl ExponentProvider for ModuloRandomCoding {
    fn exponent(&self, rate: f64) -> ExponentValue {
        let rate = rate.max(0.0);
        if rate >= self.capacity() {
            return ExponentValue::Zero;
        }
        let (_, best) = golden_max(|rho| self.e0(rho) - rho * rate, 0.0, 1.0, 1e-10);
        ExponentValue::from_f64(best)
    }
}

/// Two-phase fixed-rate scheme exponent
/// `(1−τ) E_a((R − τ ln K)/(1−τ))` with `τ ≤ R_h / ln K`, so that the helped
/// phase is error-free. `tau = None` selects `τ = R_h / ln K`.
pub fn modulo_achievable_exponent<P: ExponentProvider + ?Sized>(
    p: &Pmf,
    rate: f64,
    helper_rate: f64,
    tau: Option<f64>,
    provider: &P,
) -> Result<ExponentValue> {
    if rate.is_nan() || rate < 0.0 {
        return Err(domain("rate", format!("{rate} is negative")));
    }
    if helper_rate.is_nan() || helper_rate < 0.0 {
        return Err(domain("helper_rate", format!("{helper_rate} is negative")));
    }
    let ln_k = (p.len() as f64).ln();
    let tau_max = helper_rate / ln_k;
    let tau = match tau {
        None if helper_rate == 0.0 => return Ok(provider.exponent(rate)),
        None => tau_max.min(1.0),
        Some(tau) => {
            if !(tau > 0.0) {
                return Err(domain("tau", format!("{tau} is not positive")));
            }
            if tau > tau_max * (1.0 + 1e-12) {
                return Err(Error::Domain {
                    name: "tau",
                    detail: format!(
                        "{tau} exceeds R_h/ln K = {tau_max}; the helper cannot index every noise sequence"
                    ),
                });
            }
            if tau > 1.0 {
                return Err(domain("tau", format!("{tau} exceeds 1")));
            }
            tau
        }
    };
    let helped = tau * ln_k;
    if rate <= helped {
        return Ok(ExponentValue::Infinite);
    }
    if tau >= 1.0 {
        return Ok(ExponentValue::Zero);
    }
    Ok(provider
        .exponent((rate - helped) / (1.0 - tau))
        .scale(1.0 - tau))
}

/// Evaluates [`modulo_achievable_exponent`] on `points` values of `τ`
/// spread over `(0, R_h/ln K]` and returns `(τ, exponent)` pairs.
pub fn modulo_tau_sweep<P: ExponentProvider + ?Sized>(
    p: &Pmf,
    rate: f64,
    helper_rate: f64,
    points: usize,
    provider: &P,
) -> Result<Vec<(f64, ExponentValue)>> {
    let tau_max = (helper_rate / (p.len() as f64).ln()).min(1.0);
    if tau_max <= 0.0 {
        return Err(domain("helper_rate", "must be positive for a tau sweep"));
    }
    (1..=points.max(1))
        .map(|i| {
            let tau = tau_max * i as f64 / points.max(1) as f64;
            modulo_achievable_exponent(p, rate, helper_rate, Some(tau), provider).map(|e| (tau, e))
        })
        .collect()
}
