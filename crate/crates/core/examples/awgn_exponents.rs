//! AWGN exponent curves with a noise helper: the weak sphere-packing
//! converse against the optimized flash-help achievable exponent.
//!
//! ```text
//! cargo run --example awgn_exponents -- 1.0 0.5
//! ```

use flashhelp::awgn::{
    achievable_exponent, awgn_regime, capacity_awgn, wsp_awgn, FlashScheme, GaussianRandomCoding,
};

fn main() -> flashhelp::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let gamma = args.next().unwrap_or(1.0);
    let rh = args.next().unwrap_or(0.5);
    let c = capacity_awgn(gamma)?;
    let provider = GaussianRandomCoding::new(gamma);

    println!("gamma = {gamma}, R_h = {rh}, C = {c:.6} nats");
    println!("{:>8} {:>12} {:>12}  regime", "R", "E_wsp", "E_ach");
    for i in 0..=24 {
        let r = 1.2 * (rh + c) * i as f64 / 24.0;
        let wsp = wsp_awgn(r, gamma, rh)?;
        let ach = achievable_exponent(r, gamma, rh, FlashScheme::OptimizedLimit, &provider)?;
        println!(
            "{r:8.4} {:>12} {:>12}  {}",
            format!("{wsp:.6}"),
            format!("{ach:.6}"),
            awgn_regime(r, gamma, rh).as_str()
        );
    }
    Ok(())
}
