//! Empirical types (compositions of `t` into `K` parts) and their class sizes.

use serde::Serialize;
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};
use crate::prob::entropy::xlnx;
use crate::prob::Pmf;

/// Largest number of types [`type_enumerate`] will produce.
pub const TYPE_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Symbol counts of a length-`t` sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EmpiricalType {
    counts: Vec<u64>,
    t: u64,
}

impl EmpiricalType {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidPmf("type needs K >= 2 counts".into()));
        }
        let t = counts.iter().sum();
        if t == 0 {
            return Err(Error::InvalidPmf("type of an empty sequence".into()));
        }
        Ok(EmpiricalType { counts, t })
    }

    /// Type of a symbol sequence over an alphabet of size `k`.
    pub fn of_sequence(seq: &[usize], k: usize) -> Result<Self> {
        let mut counts = vec![0u64; k];
        for &z in seq {
            *counts
                .get_mut(z)
                .ok_or_else(|| Error::InvalidPmf(format!("symbol {z} outside alphabet")))? += 1;
        }
        EmpiricalType::new(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> u64 {
        self.t
    }

    pub fn is_empty(&self) -> bool {
        self.t == 0
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub fn to_pmf(&self) -> Pmf {
        let t = self.t as f64;
        Pmf::new(self.counts.iter().map(|&c| c as f64 / t).collect())
            .expect("counts/t is a valid pmf")
    }

    /// Entropy of `counts / t`, nats.
    pub fn entropy(&self) -> f64 {
        let t = self.t as f64;
        0.0 - self.counts.iter().map(|&c| xlnx(c as f64 / t)).sum::<f64>()
    }

    /// `ln P(z^t)` for any sequence of this type under `p`; `-inf` if the
    /// type uses a symbol outside the support.
    pub fn log_prob(&self, p: &Pmf) -> f64 {
        let mut acc = 0.0;
        for (&c, &pz) in self.counts.iter().zip(p.probs()) {
            if c > 0 {
                if pz == 0.0 {
                    return f64::NEG_INFINITY;
                }
                acc += c as f64 * pz.ln();
            }
        }
        acc
    }

    /// `-E_Q ln P` with `Q = counts / t`: the per-sample log-loss.
    pub fn log_loss(&self, p: &Pmf) -> f64 {
        -self.log_prob(p) / self.t as f64
    }
}

/// Number of types of length `t` over `k` symbols, `C(t + k - 1, k - 1)`,
/// as a float (may exceed `u64`).
pub fn type_count(k: usize, t: u64) -> f64 {
    let k1 = (k as u64).saturating_sub(1);
    (ln_factorial(t + k1) - ln_factorial(t) - ln_factorial(k1))
        .exp()
        .round()
}

/// Every composition of `t` into `k` parts, each exactly once, starting
/// from `(t, 0, …, 0)` and ending at `(0, …, 0, t)`.
pub fn type_enumerate(k: usize, t: u64) -> Result<TypeIter> {
    if k < 2 {
        return Err(crate::error::domain("K", format!("{k} is below 2")));
    }
    if t == 0 {
        return Err(crate::error::domain("t", "must be at least 1"));
    }
    let count = type_count(k, t);
    if count > TYPE_ENUMERATION_LIMIT as f64 {
        return Err(Error::EnumerationGuard {
            count,
            limit: TYPE_ENUMERATION_LIMIT,
        });
    }
    let mut first = vec![0u64; k];
    first[0] = t;
    Ok(TypeIter {
        next: Some(first),
        t,
    })
}

/// Iterator returned by [`type_enumerate`].
#[derive(Debug, Clone)]
pub struct TypeIter {
    next: Option<Vec<u64>>,
    t: u64,
}

impl Iterator for TypeIter {
    type Item = EmpiricalType;

    fn next(&mut self) -> Option<EmpiricalType> {
        let cur = self.next.take()?;
        let k = cur.len();
        // rightmost non-last position with a positive count
        if let Some(j) = (0..k - 1).rev().find(|&j| cur[j] > 0) {
            let mut succ = cur.clone();
            let tail = succ[k - 1];
            succ[k - 1] = 0;
            succ[j] -= 1;
            succ[j + 1] = tail + 1;
            self.next = Some(succ);
        }
        Some(EmpiricalType {
            counts: cur,
            t: self.t,
        })
    }
}

/// `ln (t! / Π c_i!)`, the log-size of the type class.
pub fn log_multinomial(tp: &EmpiricalType) -> f64 {
    ln_factorial(tp.t) - tp.counts.iter().map(|&c| ln_factorial(c)).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(k: usize, t: u64) -> Vec<Vec<u64>> {
        type_enumerate(k, t)
            .unwrap()
            .map(|tp| tp.counts().to_vec())
            .collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(all(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(all(2, 12).len(), 13);
        assert_eq!(all(3, 4).len(), 15);
        assert_eq!(type_count(3, 4), 15.0);
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        let v = all(4, 6);
        assert_eq!(v.len(), 84);
        let set: std::collections::HashSet<_> = v.iter().cloned().collect();
        assert_eq!(set.len(), v.len());
        assert!(v.iter().all(|c| c.iter().sum::<u64>() == 6));
    }

    #[test]
    fn guard_refuses_huge_enumerations() {
        assert!(matches!(
            type_enumerate(10, 200),
            Err(Error::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn multinomial_examples() {
        let tp = EmpiricalType::new(vec![5, 0, 0]).unwrap();
        assert_eq!(log_multinomial(&tp), 0.0);
        let tp = EmpiricalType::new(vec![1, 1]).unwrap();
        assert!((log_multinomial(&tp) - 2f64.ln()).abs() < 1e-15);
        let tp = EmpiricalType::new(vec![6, 6]).unwrap();
        assert!((log_multinomial(&tp) - 924f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn multinomial_relative_accuracy_large_t() {
        // ln C(10000, 3) computed as a sum of small logs
        let exact = (10000f64).ln() + 9999f64.ln() + 9998f64.ln() - 6f64.ln();
        let tp = EmpiricalType::new(vec![9997, 3]).unwrap();
        assert!(((log_multinomial(&tp) - exact) / exact).abs() < 1e-9);
    }

    #[test]
    fn class_sizes_sum_to_k_pow_t() {
        for t in 1..=20u64 {
            let total: u64 = type_enumerate(2, t)
                .unwrap()
                .map(|tp| log_multinomial(&tp).exp().round() as u64)
                .sum();
            assert_eq!(total, 1u64 << t, "t = {t}");
        }
    }

    #[test]
    fn type_statistics() {
        let tp = EmpiricalType::of_sequence(&[0, 1, 1, 0, 0, 0, 0, 0, 0, 0], 2).unwrap();
        assert_eq!(tp.counts(), &[8, 2]);
        let p = Pmf::binary(0.1).unwrap();
        let expected = 8.0 * 0.9f64.ln() + 2.0 * 0.1f64.ln();
        assert!((tp.log_prob(&p) - expected).abs() < 1e-14);
        let q = Pmf::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(tp.log_prob(&q), f64::NEG_INFINITY);
        assert!(EmpiricalType::of_sequence(&[2], 2).is_err());
    }
}
