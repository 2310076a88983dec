//! Gaussian-specific oracles: variance-ratio divergence and exact
//! chi-square tails of the noise energy.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Result};

/// `D(N(0, v σ²) ‖ N(0, σ²)) = ½[v − ln v − 1]`.
pub fn gaussian_kl_variance_ratio(v: f64) -> Result<f64> {
    if v.is_nan() || v <= 0.0 {
        return Err(domain("variance ratio", format!("{v} is not positive")));
    }
    if v == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let u = v - 1.0;
    // ½[u − ln(1+u)] keeps precision near v = 1
    Ok(0.5 * (u - u.ln_1p()))
}

const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-16;

/// `ln Q(a, x)`, the log of the regularized upper incomplete gamma function.
///
/// Uses the power series for `P` when `x < a + 1` and a Lentz continued
/// fraction for `Q` otherwise, so deep tails never underflow before the log.
pub fn ln_gamma_q(a: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    let ln_prefactor = -x + a * x.ln() - ln_gamma(a);
    if x < a + 1.0 {
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..MAX_ITER {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let p = (ln_prefactor + sum.ln()).exp();
        (-p).ln_1p()
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        ln_prefactor + h.ln()
    }
}

/// Exact upper tail of the normalized noise energy of a length-`t` segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereTail {
    /// `Pr{Σ Z_i² > t σ² (1+s)}`; 0 when it underflows.
    pub prob: f64,
    /// Natural log of the tail probability; finite even when `prob` underflows.
    pub ln_prob: f64,
    pub underflow: bool,
}

/// `Pr{Σ_{i≤t} Z_i² > t σ²(1+s)}` for i.i.d. `Z_i ~ N(0, σ²)`: the upper tail
/// of a chi-square with `t` degrees of freedom at `t(1+s)`. Scale-free.
pub fn gaussian_sphere_tail(t: u64, s: f64) -> Result<SphereTail> {
    if t == 0 {
        return Err(domain("t", "must be at least 1"));
    }
    if s.is_nan() || s < 0.0 {
        return Err(domain("s", format!("{s} is negative")));
    }
    let a = t as f64 / 2.0;
    let x = t as f64 * (1.0 + s) / 2.0;
    let ln_prob = ln_gamma_q(a, x);
    let prob = ln_prob.exp();
    Ok(SphereTail {
        prob,
        ln_prob,
        underflow: prob == 0.0 && ln_prob > f64::NEG_INFINITY,
    })
}

/// Chernoff exponent per sample of the sphere tail, `½[s − ln(1+s)]`.
pub(crate) fn sphere_chernoff(s: f64) -> f64 {
    0.5 * (s - s.ln_1p())
}
