//! Monte Carlo of the modulo-additive helper schemes against their exact
//! type-enumeration probabilities.

use flashhelp::modulo::ModuloParams;
use flashhelp::prob::Pmf;
use flashhelp::sim::{
    binomial_acceptance, exact_error_modulo_fixed, exact_overflow_modulo, simulate_modulo_fixed,
    simulate_modulo_variable, RngPlan, VariableRateConfig,
};

fn main() -> flashhelp::Result<()> {
    let mp = ModuloParams::new(Pmf::binary(0.1)?);
    let plan = RngPlan::new(7, 2);
    let trials = 200_000;

    for theta in [0.8, 1.0, 1.5, 2.4] {
        let r = simulate_modulo_fixed(&mp, theta, 12, trials, plan)?;
        let exact = exact_error_modulo_fixed(&mp, theta, 12)?;
        let (lo, hi) = binomial_acceptance(exact, trials, 0.99)?;
        println!(
            "fixed theta={theta:<4} failures={:<6} exact mean={:<9.1} 99% band [{lo},{hi}]",
            r.errors_total,
            exact * trials as f64
        );
    }

    for n in [40u64, 80, 160] {
        let cfg = VariableRateConfig::new(0.12, 0.4, n)?;
        let r = simulate_modulo_variable(&mp, &cfg, trials, plan)?;
        let exact = exact_overflow_modulo(&mp, &cfg)?;
        println!(
            "variable n={n:<4} overflows={:<6} p_hat={:.4e} exact={exact:.4e}",
            r.errors_total, r.p_hat
        );
    }
    Ok(())
}
