//! Fixed-rate helper on a modulo-additive channel: the helper indexes every
//! noise sequence with probability at least e^{-t theta}. Shows r(theta),
//! the failure exponent E(theta), the inverse theta(r), and the exact set
//! sizes converging to r(theta).

use flashhelp::modulo::{
    helper_failure_exponent, helper_set_log_size, r_of_theta, theta_max, theta_min, theta_of_r,
    theta_saturation,
};
use flashhelp::prob::{shannon_entropy, Pmf};

fn main() -> flashhelp::Result<()> {
    let p: Pmf = "0.9,0.1".parse()?;
    println!(
        "H = {:.4}, theta_min = {:.4}, saturation = {:.4}, theta_max = {:.4}",
        shannon_entropy(&p),
        theta_min(&p),
        theta_saturation(&p),
        theta_max(&p)
    );
    for i in 0..=12 {
        let theta = 2.5 * i as f64 / 12.0;
        println!(
            "theta={theta:.3}  r={:>10}  E={:>10}",
            format!("{:.5}", r_of_theta(&p, theta)?.to_f64()),
            format!("{:.5}", helper_failure_exponent(&p, theta)?.to_f64())
        );
    }
    println!("theta(r=0.5) = {}", theta_of_r(&p, 0.5)?);

    let r = r_of_theta(&p, 1.0)?.to_f64();
    for t in [8u64, 12, 16, 20, 40, 80] {
        let ls = helper_set_log_size(&p, t, 1.0)?.to_f64();
        println!("t={t:<3} (1/t) ln|set| = {:.5}  vs r(1) = {r:.5}", ls / t as f64);
    }
    Ok(())
}
