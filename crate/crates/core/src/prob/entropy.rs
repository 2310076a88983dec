//! Shannon and Rényi entropies and the Kullback–Leibler divergence, in nats.

use crate::error::{Error, Result};
use crate::prob::Pmf;
use crate::value::ExponentValue;

/// `x ln x` with the convention `0 ln 0 = 0`.
#[inline]
pub fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `ln Σ exp(a_i)`, stable for large magnitudes. Empty or all `-inf` input
/// yields `-inf`.
pub fn log_sum_exp(terms: impl IntoIterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.into_iter().collect();
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    if m == f64::INFINITY {
        return m;
    }
    m + v.iter().map(|a| (a - m).exp()).sum::<f64>().ln()
}

pub fn shannon_entropy(p: &Pmf) -> f64 {
    0.0 - p.probs().iter().map(|&x| xlnx(x)).sum::<f64>()
}

/// Empirical entropy of a count vector (entropy of `counts / t`).
pub fn empirical_entropy(counts: &[u64]) -> f64 {
    let t: u64 = counts.iter().sum();
    if t == 0 {
        return 0.0;
    }
    let tf = t as f64;
    0.0 - counts.iter().map(|&c| xlnx(c as f64 / tf)).sum::<f64>()
}

/// `D(q‖p) = Σ q ln(q/p)`; infinite when `q` puts mass where `p` has none.
pub fn kl_divergence(q: &Pmf, p: &Pmf) -> Result<ExponentValue> {
    if q.len() != p.len() {
        return Err(Error::DimensionMismatch {
            left: q.len(),
            right: p.len(),
        });
    }
    let mut d = 0.0;
    for (&qz, &pz) in q.probs().iter().zip(p.probs()) {
        if qz > 0.0 {
            if pz == 0.0 {
                return Ok(ExponentValue::Infinite);
            }
            d += qz * (qz / pz).ln();
        }
    }
    Ok(ExponentValue::from_f64(d))
}

/// `ln Σ_{z: p(z)>0} p(z)^order`, accurate also when `order` is near 1.
pub fn log_power_sum(p: &Pmf, order: f64) -> f64 {
    log_power_sum_slice(&p.positive_probs(), order)
}

pub(crate) fn log_power_sum_slice(pos: &[f64], order: f64) -> f64 {
    if (order - 1.0).abs() < 0.5 {
        // Σ p^a - 1 = Σ p (p^{a-1} - 1)
        let excess: f64 = pos
            .iter()
            .map(|&pz| pz * ((order - 1.0) * pz.ln()).exp_m1())
            .sum();
        excess.ln_1p()
    } else {
        log_sum_exp(pos.iter().map(|&pz| order * pz.ln()))
    }
}

/// Rényi entropy `H_a = ln(Σ p^a) / (1 - a)`.
///
/// Order 1 is the Shannon entropy and order 0 is `ln |support|`. A negative
/// order on a pmf with zero entries is infinite and reported as an error.
pub fn renyi_entropy(p: &Pmf, order: f64) -> Result<f64> {
    if !order.is_finite() {
        if order == f64::INFINITY {
            return Ok(-p.max_prob().ln());
        }
        return Err(crate::error::domain("order", "must not be -inf or NaN"));
    }
    if order < 0.0 && !p.has_full_support() {
        return Err(Error::InfiniteRenyi { order });
    }
    if order == 1.0 {
        return Ok(shannon_entropy(p));
    }
    if order == 0.0 {
        return Ok((p.support_size() as f64).ln());
    }
    Ok(log_power_sum(p, order) / (1.0 - order))
}
