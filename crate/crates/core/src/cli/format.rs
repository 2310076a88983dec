//! Number formatting, unit conversion and grid specifications.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::value::{ExponentValue, LogSize, ThetaRate};

/// Nine significant digits, `%g` style, with the sentinels `inf`,
/// `neg_inf` and `nan`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x == f64::INFINITY {
        return "inf".into();
    }
    if x == f64::NEG_INFINITY {
        return "neg_inf".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let mut s = trim_zeros(mantissa.to_string());
        let _ = write!(s, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        s
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Output units. Everything is computed in nats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    /// Converts a quantity in nats for output.
    pub fn scale(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }

    pub fn num(self, nats: f64) -> String {
        fmt_num(self.scale(nats))
    }

    pub fn exponent(self, e: ExponentValue) -> String {
        self.num(e.to_f64())
    }

    pub fn log_size(self, l: LogSize) -> String {
        self.num(l.to_f64())
    }

    pub fn theta(self, t: ThetaRate) -> String {
        self.num(t.to_f64())
    }
}

/// Sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    #[serde(rename = "R")]
    Rate,
    #[serde(rename = "R_h")]
    HelperRate,
    #[serde(rename = "tau")]
    Tau,
    #[serde(rename = "s")]
    Slack,
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "R1")]
    Rate1,
    #[serde(rename = "R2")]
    Rate2,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Rate => "R",
            Axis::HelperRate => "R_h",
            Axis::Tau => "tau",
            Axis::Slack => "s",
            Axis::Theta => "theta",
            Axis::Gamma => "gamma",
            Axis::Rate1 => "R1",
            Axis::Rate2 => "R2",
        }
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "R" | "rate" => Axis::Rate,
            "R_h" | "Rh" | "rate-helper" => Axis::HelperRate,
            "tau" => Axis::Tau,
            "s" | "slack" => Axis::Slack,
            "theta" => Axis::Theta,
            "gamma" => Axis::Gamma,
            "R1" => Axis::Rate1,
            "R2" => Axis::Rate2,
            _ => return Err(format!("unknown axis `{s}`")),
        })
    }
}

/// `AXIS=lo:hi:N`, evenly spaced and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(axis: Axis, lo: f64, hi: f64, points: usize) -> Result<Self, String> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(format!("grid for {} has a non-finite end", axis.name()));
        }
        // a single point is written lo:lo:1
        let single = points == 1 && lo == hi;
        if !single && !(lo < hi && points >= 2) {
            return Err(format!("grid for {} needs lo < hi and N >= 2, or lo:lo:1", axis.name()));
        }
        Ok(GridSpec { axis, lo, hi, points })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (axis, range) = s
            .split_once('=')
            .ok_or_else(|| format!("grid `{s}` is not of the form AXIS=lo:hi:N"))?;
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid `{s}` is not of the form AXIS=lo:hi:N"));
        }
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("grid `{s}`: {e}"));
        let points = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("grid `{s}`: {e}"))?;
        GridSpec::new(axis.trim().parse()?, num(parts[0])?, num(parts[1])?, points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_num(1.004_441_882_578), "1.00444188");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(2.0), "2");
        assert_eq!(fmt_num(-0.25), "-0.25");
        assert_eq!(fmt_num(123_456_789.0), "123456789");
        assert_eq!(fmt_num(1.5e9), "1.5e+09");
        assert_eq!(fmt_num(1.234_567_891_2e-7), "1.23456789e-07");
        assert_eq!(fmt_num(0.000_123_456_789_1), "0.000123456789");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(f64::NEG_INFINITY), "neg_inf");
        assert_eq!(fmt_num(f64::NAN), "nan");
        assert_eq!(fmt_num(0.0), "0");
        // rounding that carries into a new digit
        assert_eq!(fmt_num(9.999_999_999_6), "10");
    }

    #[test]
    fn grid_parsing() {
        let g: GridSpec = "R=0:1:5".parse().unwrap();
        assert_eq!(g.axis, Axis::Rate);
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!("R=1:0:5".parse::<GridSpec>().is_err());
        assert!("R=0:1:1".parse::<GridSpec>().is_err());
        assert!("Q=0:1:3".parse::<GridSpec>().is_err());
        assert!("R=0:1".parse::<GridSpec>().is_err());
        assert_eq!("R=0.6:0.6:1".parse::<GridSpec>().unwrap().values(), vec![0.6]);
        assert_eq!("theta=0.1:2:3".parse::<GridSpec>().unwrap().axis, Axis::Theta);
    }

    #[test]
    fn bits() {
        assert_eq!(Units::Bits.num(std::f64::consts::LN_2), "1");
        assert_eq!(Units::Bits.exponent(ExponentValue::Infinite), "inf");
    }
}
