//! Extended-real value types for exponents and log-sizes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// An error exponent in nats: a nonnegative extended real.
///
/// `Zero` and `Finite(0.0)` compare equal.
#[derive(Debug, Clone, Copy)]
pub enum ExponentValue {
    Zero,
    Finite(f64),
    Infinite,
}

impl ExponentValue {
    /// Builds a value from a float, mapping `+inf` to `Infinite` and
    /// nonpositive inputs to `Zero`.
    ///
    /// Callers pass values that are nonnegative up to roundoff; a NaN is a bug.
    pub fn from_f64(x: f64) -> Self {
        debug_assert!(!x.is_nan(), "exponent is NaN");
        if x == f64::INFINITY {
            ExponentValue::Infinite
        } else if x <= 0.0 {
            ExponentValue::Zero
        } else {
            ExponentValue::Finite(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExponentValue::Zero => 0.0,
            ExponentValue::Finite(x) => x,
            ExponentValue::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExponentValue::Infinite)
    }

    pub fn is_zero(self) -> bool {
        self.to_f64() == 0.0
    }

    /// Finite and strictly positive.
    pub fn is_positive_finite(self) -> bool {
        matches!(self, ExponentValue::Finite(x) if x > 0.0)
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Multiplies by a positive weight (segment fraction). `Infinite` stays infinite.
    pub fn scale(self, weight: f64) -> Self {
        debug_assert!(weight > 0.0);
        match self {
            ExponentValue::Infinite => ExponentValue::Infinite,
            other => ExponentValue::from_f64(other.to_f64() * weight),
        }
    }

    /// Coarse regime used by curve output and classification.
    pub fn regime(self) -> Regime {
        match self {
            ExponentValue::Infinite => Regime::Infinite,
            v if v.is_zero() => Regime::Zero,
            _ => Regime::Finite,
        }
    }
}

impl PartialEq for ExponentValue {
    fn eq(&self, other: &Self) -> bool {
        self.to_f64() == other.to_f64()
    }
}

impl PartialOrd for ExponentValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Infinite => f.pad("inf"),
            other => fmt::Display::fmt(&other.to_f64(), f),
        }
    }
}

impl Serialize for ExponentValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExponentValue::Infinite => s.serialize_str("inf"),
            other => s.serialize_f64(other.to_f64()),
        }
    }
}

/// Which of the three exponent regimes a value falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Infinite,
    Finite,
    Zero,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Infinite => "infinite",
            Regime::Finite => "finite",
            Regime::Zero => "zero",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Logarithm of the size of a set (or a normalized log-size such as an
/// entropy bound), with an explicit sentinel for the empty set (`-inf`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogSize {
    Empty,
    Finite(f64),
}

impl LogSize {
    pub fn to_f64(self) -> f64 {
        match self {
            LogSize::Empty => f64::NEG_INFINITY,
            LogSize::Finite(x) => x,
        }
    }

    pub fn is_empty(self) -> bool {
        matches!(self, LogSize::Empty)
    }
}

impl fmt::Display for LogSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogSize::Empty => f.pad("neg_inf"),
            LogSize::Finite(x) => fmt::Display::fmt(x, f),
        }
    }
}

impl PartialOrd for LogSize {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

/// Log-probability threshold θ (nats per sample), possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaRate {
    Finite(f64),
    Infinite,
}

impl ThetaRate {
    pub fn to_f64(self) -> f64 {
        match self {
            ThetaRate::Finite(x) => x,
            ThetaRate::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for ThetaRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaRate::Infinite => f.pad("inf"),
            ThetaRate::Finite(x) => fmt::Display::fmt(x, f),
        }
    }
}
