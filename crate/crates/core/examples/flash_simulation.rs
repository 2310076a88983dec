//! Monte Carlo of the flash-help segment. Decoding never fails once the
//! noise is inside the sphere; the only errors are sphere overflows, whose
//! rate matches the chi-square tail.

use flashhelp::awgn::{AwgnParams, FlashDesign, HelpMode};
use flashhelp::prob::gaussian_sphere_tail;
use flashhelp::sim::{simulate_flash_awgn, AwgnFlashConfig, RngPlan};

fn main() -> flashhelp::Result<()> {
    let awgn = AwgnParams::new(1.0, 1.0)?;
    for (t, slack) in [(64u64, 1.0), (32, 0.5), (16, 0.25)] {
        let design = FlashDesign::new(0.5, 0.1, slack, HelpMode::FixedRate)?;
        let cfg = AwgnFlashConfig::new(awgn, design, t)?;
        let r = simulate_flash_awgn(&cfg, 100_000, RngPlan::new(2024, 4))?;
        let exact = gaussian_sphere_tail(t, slack)?.prob;
        println!(
            "t={t:<3} s={slack:<5} failures={:<6} decode errors={} p_hat={:.3e} exact={exact:.3e} ci=[{:.2e},{:.2e}] power={:.3}",
            r.errors_by_cause.helper_failure,
            r.errors_by_cause.decode_error,
            r.p_hat,
            r.ci95.0,
            r.ci95.1,
            r.realized_power_mean.unwrap_or(f64::NAN),
        );
        println!(
            "      exponent over n={}: {} (lower {}, censored {})",
            r.n, r.exponent.point, r.exponent.lower, r.exponent.censored
        );
    }
    Ok(())
}
