//! Error exponents of channels whose encoder receives a rate-limited
//! description of the noise from a helper, and Monte Carlo simulation of
//! the flash-help schemes that achieve them.
//!
//! Modules:
//!
//! - [`prob`]: pmfs, entropies, divergences, types, Gaussian tail oracles
//! - [`awgn`]: single-user AWGN capacities, flash design, achievable and
//!   weak sphere-packing exponents
//! - [`modulo`]: modulo-additive channel helper functions and bounds
//! - [`mac`]: Gaussian multiple-access regions, split, and converse
//! - [`sim`]: seeded Monte Carlo and exact small-instance error computation
//! - [`cli`]: curve sweeps, simulation records, and the verification suites
//!   behind the `flashhelp` binary
//!
//! All rates, entropies and exponents are in nats.

pub mod awgn;
pub mod cli;
pub mod error;
pub mod mac;
pub mod modulo;
pub mod optim;
pub mod oracle;
pub mod prob;
pub mod sim;
pub mod value;

pub use error::{Error, Result};
pub use value::{ExponentValue, LogSize, Regime, ThetaRate};
