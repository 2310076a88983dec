//! Two-user Gaussian multiple-access channel with a shared noise helper:
//! capacity regions, the symmetric random-coding exponent with help-rate
//! allocation, and the weak sphere-packing bound.

use serde::{Deserialize, Serialize};

use crate::awgn::wsp_branch;
use crate::error::{domain, Result};
use crate::value::{ExponentValue, Regime};

fn c(snr: f64) -> f64 {
    0.5 * snr.ln_1p()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacParams {
    pub p1: f64,
    pub p2: f64,
    pub sigma2: f64,
}

impl MacParams {
    pub fn new(p1: f64, p2: f64, sigma2: f64) -> Result<Self> {
        for (name, v) in [("p1", p1), ("p2", p2), ("sigma2", sigma2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(name, format!("{v} is not positive")));
            }
        }
        Ok(MacParams { p1, p2, sigma2 })
    }

    /// Unit noise variance with SNRs `γ1`, `γ2`.
    pub fn from_snr(gamma1: f64, gamma2: f64) -> Result<Self> {
        MacParams::new(gamma1, gamma2, 1.0)
    }

    pub fn gamma1(&self) -> f64 {
        self.p1 / self.sigma2
    }

    pub fn gamma2(&self) -> f64 {
        self.p2 / self.sigma2
    }

    /// The three corner capacities `(c(γ1), c(γ2), c(γ1+γ2))`.
    pub fn capacities(&self) -> (f64, f64, f64) {
        let (g1, g2) = (self.gamma1(), self.gamma2());
        (c(g1), c(g2), c(g1 + g2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r1 >= 0.0) || !(r2 >= 0.0) {
            return Err(domain("rate pair", format!("({r1}, {r2}) has a negative rate")));
        }
        Ok(RatePair { r1, r2 })
    }

    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }
}

/// Allocation of the helper rate between the two encoders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelpSplit {
    pub rh1: f64,
    pub rh2: f64,
}

impl HelpSplit {
    pub fn new(rh1: f64, rh2: f64, helper_rate: f64) -> Result<Self> {
        if !(rh1 >= 0.0) || !(rh2 >= 0.0) {
            return Err(domain("split", format!("({rh1}, {rh2}) has a negative share")));
        }
        if rh1 + rh2 > helper_rate * (1.0 + 1e-12) + 1e-15 {
            return Err(domain(
                "split",
                format!("{rh1} + {rh2} exceeds R_h = {helper_rate}"),
            ));
        }
        Ok(HelpSplit { rh1, rh2 })
    }

    pub fn equal(helper_rate: f64) -> Self {
        HelpSplit {
            rh1: helper_rate / 2.0,
            rh2: helper_rate / 2.0,
        }
    }
}

/// Membership in the (closed) capacity region without help.
pub fn in_mac_region(rp: RatePair, mac: &MacParams) -> bool {
    in_helped_mac_region(rp, mac, 0.0)
}

/// Membership in the helped region: every constraint of the plain region
/// relaxed by `R_h`.
pub fn in_helped_mac_region(rp: RatePair, mac: &MacParams, helper_rate: f64) -> bool {
    let (c1, c2, c12) = mac.capacities();
    rp.r1 <= c1 + helper_rate && rp.r2 <= c2 + helper_rate && rp.sum() <= c12 + helper_rate
}

/// A symmetric random-coding exponent together with whether the rates meet
/// the small-rate condition `R_i < c(γ/2)` under which the closed form holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlaggedExponent {
    pub value: ExponentValue,
    pub within_stated_validity: bool,
}

fn symmetric_rc(r1: f64, r2: f64, gamma: f64) -> ExponentValue {
    let half = c(gamma / 2.0);
    let e = (half - r1).min(half - r2).min(c(gamma) - r1 - r2);
    ExponentValue::from_f64(e.max(0.0))
}

/// `min{c(γ/2) − R1, c(γ/2) − R2, c(γ) − R1 − R2}` floored at zero, for
/// equal SNRs `γ1 = γ2 = γ`.
pub fn rc_exponent_symmetric(rp: RatePair, gamma: f64) -> FlaggedExponent {
    let half = c(gamma / 2.0);
    FlaggedExponent {
        value: symmetric_rc(rp.r1, rp.r2, gamma),
        within_stated_validity: rp.r1 < half && rp.r2 < half,
    }
}

/// Symmetric random-coding exponent of the rates left after each user's
/// share of help is subtracted. Shares larger than a user's rate are wasted
/// (shifted rates clamp at zero); when both users are fully served by their
/// shares the exponent is infinite.
pub fn helped_rc_exponent_symmetric(rp: RatePair, gamma: f64, split: HelpSplit) -> FlaggedExponent {
    if rp.r1 <= split.rh1 && rp.r2 <= split.rh2 {
        return FlaggedExponent {
            value: ExponentValue::Infinite,
            within_stated_validity: true,
        };
    }
    let s1 = (rp.r1 - split.rh1).max(0.0);
    let s2 = (rp.r2 - split.rh2).max(0.0);
    let half = c(gamma / 2.0);
    FlaggedExponent {
        value: symmetric_rc(s1, s2, gamma),
        within_stated_validity: s1 < half && s2 < half,
    }
}

/// Help split equalizing the two single-user terms,
/// `R_h1 = (R1 − R2 + R_h)/2`, clamped to `[0, R_h]` with `R_h2 = R_h − R_h1`.
pub fn optimal_help_split(rp: RatePair, helper_rate: f64) -> HelpSplit {
    let rh1 = (0.5 * (rp.r1 - rp.r2 + helper_rate)).clamp(0.0, helper_rate);
    HelpSplit {
        rh1,
        rh2: helper_rate - rh1,
    }
}

/// The three divergence branches of the MAC weak sphere-packing bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MacWsp {
    pub e1: ExponentValue,
    pub e2: ExponentValue,
    pub e3: ExponentValue,
    pub value: ExponentValue,
}

/// `min{E1(R1), E2(R2), E3(R1+R2)}`, each branch the Gaussian variance-ratio
/// divergence at the smallest noise variance that pushes the corresponding
/// rate above its helped capacity.
pub fn wsp_mac_branches(rp: RatePair, mac: &MacParams, helper_rate: f64) -> MacWsp {
    let (g1, g2) = (mac.gamma1(), mac.gamma2());
    let e1 = wsp_branch(rp.r1, helper_rate, g1);
    let e2 = wsp_branch(rp.r2, helper_rate, g2);
    let e3 = wsp_branch(rp.sum(), helper_rate, g1 + g2);
    MacWsp {
        e1,
        e2,
        e3,
        value: e1.min(e2).min(e3),
    }
}

pub fn wsp_mac(rp: RatePair, mac: &MacParams, helper_rate: f64) -> ExponentValue {
    wsp_mac_branches(rp, mac, helper_rate).value
}

/// Which exponent regime a rate pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RateClass {
    InfiniteExponent,
    FiniteExponent,
    ZeroExponent,
}

impl RateClass {
    pub fn as_str(self) -> &'static str {
        self.regime().as_str()
    }

    pub fn regime(self) -> Regime {
        match self {
            RateClass::InfiniteExponent => Regime::Infinite,
            RateClass::FiniteExponent => Regime::Finite,
            RateClass::ZeroExponent => Regime::Zero,
        }
    }
}

/// Infinite when the sum rate fits in the helper pipe (`R1 + R2 ≤ R_h`),
/// zero when the pair is not in the interior of the helped region, finite
/// otherwise.
pub fn classify_rate_point(rp: RatePair, mac: &MacParams, helper_rate: f64) -> RateClass {
    let (c1, c2, c12) = mac.capacities();
    if rp.sum() <= helper_rate {
        RateClass::InfiniteExponent
    } else if rp.r1 - helper_rate >= c1 || rp.r2 - helper_rate >= c2 || rp.sum() - helper_rate >= c12 {
        RateClass::ZeroExponent
    } else {
        RateClass::FiniteExponent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(a: f64, b: f64) -> RatePair {
        RatePair::new(a, b).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn region_examples() {
        let mac = MacParams::from_snr(1.0, 1.0).unwrap();
        assert!(in_mac_region(rp(0.0, 0.0), &mac));
        let c1 = c(1.0);
        assert!(!in_mac_region(rp(c1, c1), &mac));
        assert!(in_mac_region(rp(c1, 0.0), &mac));
        assert!(in_helped_mac_region(rp(0.7, 0.0), &mac, 0.7));
        assert!(!in_helped_mac_region(rp(0.45, 0.45), &mac, 0.2));
        assert_eq!(
            in_helped_mac_region(rp(0.3, 0.2), &mac, 0.0),
            in_mac_region(rp(0.3, 0.2), &mac)
        );
        assert!(RatePair::new(-0.1, 0.0).is_err());
    }

    #[test]
    fn rc_examples() {
        let e = rc_exponent_symmetric(rp(0.0, 0.0), 1.0);
        assert!(close(e.value.to_f64(), c(0.5), 1e-15));
        assert!(rc_exponent_symmetric(rp(0.2, c(1.0) - 0.2), 1.0).value.is_zero());
        let e = rc_exponent_symmetric(rp(0.1, 0.1), 1.0);
        assert!(close(e.value.to_f64(), 0.102_733, 1e-6));
        assert!(e.within_stated_validity);
        assert!(!rc_exponent_symmetric(rp(0.3, 0.1), 1.0).within_stated_validity);
    }

    #[test]
    fn helped_rc_examples() {
        let e = helped_rc_exponent_symmetric(rp(0.2, 0.2), 1.0, HelpSplit::equal(0.2));
        assert!(close(e.value.to_f64(), 0.102_733, 1e-6));
        let e = helped_rc_exponent_symmetric(rp(0.05, 0.1), 1.0, HelpSplit::equal(0.2));
        assert!(e.value.is_infinite());
        // swap symmetry
        let s = HelpSplit::new(0.05, 0.15, 0.2).unwrap();
        let a = helped_rc_exponent_symmetric(rp(0.3, 0.2), 1.0, s);
        let b = helped_rc_exponent_symmetric(rp(0.2, 0.3), 1.0, HelpSplit { rh1: 0.15, rh2: 0.05 });
        assert_eq!(a, b);
    }

    #[test]
    fn split_examples() {
        assert_eq!(optimal_help_split(rp(0.3, 0.3), 0.2), HelpSplit::equal(0.2));
        let s = optimal_help_split(rp(0.5, 0.1), 0.2);
        assert_eq!((s.rh1, s.rh2), (0.2, 0.0));
        let s = optimal_help_split(rp(0.3, 0.1), 0.1);
        assert_eq!((s.rh1, s.rh2), (0.1, 0.0));
        assert!(HelpSplit::new(0.15, 0.1, 0.2).is_err());
    }

    #[test]
    fn wsp_mac_examples() {
        let mac = MacParams::from_snr(1.0, 1.0).unwrap();
        assert!(wsp_mac(rp(0.6, 0.6), &mac, 0.2).is_zero());
        assert!(wsp_mac(rp(0.05, 0.1), &mac, 0.2).is_infinite());
        let w = wsp_mac_branches(rp(0.3, 0.3), &mac, 0.2);
        // E3 at v = 2/(e^{0.8} − 1)
        let v = 2.0 / (0.8f64.exp() - 1.0);
        let e3 = 0.5 * (v - v.ln() - 1.0);
        assert!(close(w.e3.to_f64(), e3, 1e-14));
        assert!(close(w.e3.to_f64(), 0.071_083_791, 1e-9));
        let v1 = 1.0 / (0.2f64.exp() - 1.0);
        assert!(close(w.e1.to_f64(), 0.5 * (v1 - v1.ln() - 1.0), 1e-14));
        assert_eq!(w.value, w.e3);
    }

    #[test]
    fn single_user_branch_matches_awgn_bound() {
        let mac = MacParams::new(2.0, 1e-9, 1.0).unwrap();
        let w = wsp_mac_branches(rp(0.6, 0.0), &mac, 0.3);
        let single = crate::awgn::wsp_awgn(0.6, 2.0, 0.3).unwrap();
        assert_eq!(w.e1.to_f64().to_bits(), single.to_f64().to_bits());
    }

    #[test]
    fn classification_examples() {
        let mac = MacParams::from_snr(1.0, 1.0).unwrap();
        assert_eq!(classify_rate_point(rp(0.05, 0.05), &mac, 0.2), RateClass::InfiniteExponent);
        assert_eq!(classify_rate_point(rp(2.0, 2.0), &mac, 0.2), RateClass::ZeroExponent);
        assert_eq!(classify_rate_point(rp(0.2, 0.2), &mac, 0.2), RateClass::FiniteExponent);
    }
}
