use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute tolerance on `Σ p = 1`.
pub const PMF_SUM_TOL: f64 = 1e-12;

/// A probability mass function over the alphabet `{0, …, K-1}`, `K ≥ 2`.
///
/// Construction validates; nothing is renormalized.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidPmf(format!(
                "alphabet size {} is below 2",
                probs.len()
            )));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidPmf(format!("entry {i} is {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PMF_SUM_TOL {
            return Err(Error::InvalidPmf(format!("entries sum to {sum:.15}")));
        }
        Ok(Pmf { probs })
    }

    pub fn uniform(k: usize) -> Result<Self> {
        Pmf::new(vec![1.0 / k as f64; k])
    }

    /// Binary pmf `(1 - q, q)`.
    pub fn binary(q: f64) -> Result<Self> {
        Pmf::new(vec![1.0 - q, q])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, z: usize) -> f64 {
        self.probs[z]
    }

    /// Symbols with positive probability.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.probs[z] > 0.0).collect()
    }

    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    pub fn has_full_support(&self) -> bool {
        self.support_size() == self.len()
    }

    /// Positive entries only, in alphabet order.
    pub fn positive_probs(&self) -> Vec<f64> {
        self.probs.iter().copied().filter(|&p| p > 0.0).collect()
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest positive entry.
    pub fn min_positive_prob(&self) -> f64 {
        self.probs
            .iter()
            .copied()
            .filter(|&p| p > 0.0)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn ln_probs(&self) -> Vec<f64> {
        self.probs.iter().map(|p| p.ln()).collect()
    }
}

impl FromStr for Pmf {
    type Err = Error;

    /// Parses a comma-separated list such as `0.9,0.1`.
    fn from_str(s: &str) -> Result<Self> {
        let probs = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidPmf(format!("`{}`: {e}", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Pmf::new(probs)
    }
}

impl fmt::Display for Pmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.probs.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(Pmf::new(vec![1.0]).is_err());
        assert!(Pmf::new(vec![0.5, 0.6]).is_err());
        assert!(Pmf::new(vec![1.5, -0.5]).is_err());
        assert!(Pmf::new(vec![f64::NAN, 1.0]).is_err());
        // no silent renormalization
        assert!(Pmf::new(vec![0.5, 0.5 + 1e-10]).is_err());
    }

    #[test]
    fn parses_and_reports_support() {
        let p: Pmf = "0.7, 0.2, 0.1, 0".parse().unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.support(), vec![0, 1, 2]);
        assert!(!p.has_full_support());
        assert_eq!(p.min_positive_prob(), 0.1);
        assert_eq!(p.max_prob(), 0.7);
        assert!("0.5,x".parse::<Pmf>().is_err());
    }
}
