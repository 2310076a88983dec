//! Variable-rate helper: the description length of the noise type must fit a
//! buffer of n R_h nats. Compares the overflow exponent with exact overflow
//! probabilities at growing block lengths.

use flashhelp::modulo::{overflow_exponent, overflow_exponent_dual, ModuloParams};
use flashhelp::prob::Pmf;
use flashhelp::sim::{exact_overflow_modulo, VariableRateConfig};

fn main() -> flashhelp::Result<()> {
    let p = Pmf::binary(0.1)?;
    let mp = ModuloParams::new(p.clone());
    let (rh, tau) = (0.15, 0.3);

    let primal = overflow_exponent(&p, rh, tau)?;
    let dual = overflow_exponent_dual(&p, rh, tau)?;
    println!("per helped sample: {primal:.6}; per block symbol: {dual:.6} (= tau x primal)");

    for n in [100u64, 200, 400, 800] {
        let cfg = VariableRateConfig::new(rh, tau, n)?;
        let pr = exact_overflow_modulo(&mp, &cfg)?;
        println!("n={n:<4} t={:<4} P(overflow)={pr:.4e}  -ln(P)/n={:.5}", cfg.segment_length(), -pr.ln() / n as f64);
    }

    // below R_h / ln K the buffer always suffices
    let safe = 0.8 * rh / 2f64.ln();
    println!("tau={safe:.3}: exponent {}", overflow_exponent(&p, rh, safe)?);
    Ok(())
}
