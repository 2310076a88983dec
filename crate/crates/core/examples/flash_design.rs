//! Design numbers of one flash-help segment: quantizer step, the rate the
//! segment carries, and how the two segments trade off in the exponent.

use flashhelp::awgn::{
    achievable_breakdown, chernoff_sphere_exponent, flash_rate, quantizer_step, variable_rate_step,
    GaussianRandomCoding,
};

fn main() -> flashhelp::Result<()> {
    let (power, sigma2) = (1.0, 1.0);
    let rh = 0.5;
    let provider = GaussianRandomCoding::new(power / sigma2);

    for &(tau, slack) in &[(0.1, 1.0), (0.1, 9.0), (0.05, 19.0), (0.01, 99.0)] {
        let step = quantizer_step(sigma2, slack, rh, tau)?;
        let fr = flash_rate(rh, tau, slack, power, sigma2)?;
        let chernoff = chernoff_sphere_exponent(slack)?;
        println!(
            "tau={tau:<5} s={slack:<4} step={step:.3e} R'={:.4}{} sphere exponent/sample={chernoff:.4}",
            fr.rate,
            if fr.carries_no_rate { " (idle)" } else { "" },
        );
        for rate in [0.6, 0.8] {
            let b = achievable_breakdown(rate, power / sigma2, rh, tau, slack, &provider)?;
            println!(
                "    R={rate}: flash branch {:.4}, ordinary branch {:.4} at dR={:.4} -> {:.4}",
                b.flash_branch.to_f64(),
                b.ordinary_branch.to_f64(),
                b.delta_rate,
                b.value.to_f64()
            );
        }
    }
    println!("variable-rate step at tau=0.1: {:.3e}", variable_rate_step(sigma2, rh, 0.1)?);
    Ok(())
}
